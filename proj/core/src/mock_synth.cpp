// Copyright 2026 The synthfuzz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "synthfuzz/mock_synth.hpp"

#include <fmt/format.h>

#include "synthfuzz/metrics.hpp"
#include "synthfuzz/printer.hpp"
#include "synthfuzz/rng.hpp"
#include "synthfuzz/validate.hpp"

namespace synthfuzz {

const char* to_string(FaultClass f) {
  switch (f) {
    case FaultClass::None: return "none";
    case FaultClass::A: return "A";
    case FaultClass::B: return "B";
    case FaultClass::C: return "C";
  }
  return "?";
}

std::optional<FaultClass> fault_class_from_string(const std::string& text) {
  if (text == "none") return FaultClass::None;
  if (text == "A") return FaultClass::A;
  if (text == "B") return FaultClass::B;
  if (text == "C") return FaultClass::C;
  return std::nullopt;
}

namespace {

std::size_t swap_deep(std::vector<Stmt>& body, unsigned depth) {
  std::size_t n = 0;
  for (auto& s : body) {
    if (auto* i = std::get_if<IfStmt>(&s.node)) {
      if (depth + 1 >= 3) {
        std::swap(i->then_body, i->else_body);
        ++n;
      }
      n += swap_deep(i->then_body, depth + 1);
      n += swap_deep(i->else_body, depth + 1);
    } else if (auto* c = std::get_if<CaseStmt>(&s.node)) {
      for (auto& item : c->items) n += swap_deep(item.body, depth + 1);
      n += swap_deep(c->default_body, depth + 1);
    }
  }
  return n;
}

bool has_process(const ModuleDef& m) {
  for (const auto& item : m.items)
    if (std::holds_alternative<AlwaysBlock>(item)) return true;
  return false;
}

}  // namespace

MockResult mock_synthesize(const Design& d, FaultClass fault, std::uint64_t seed, const std::string& source_path) {
  MockResult r;
  r.netlist = d;
  r.log = fmt::format("mock-synth: elaborating {} ({} modules)\n", d.top, d.modules.size());
  if (fault == FaultClass::C) {
    const std::size_t refs = structural_metrics(d).refs;
    if (refs > kMockRefLimit) {
      // Mimics a tool assertion: the path, line and address vary from run to
      // run and are stripped by signature normalization.
      const std::size_t line = printed_line_count(d);
      r.crashed = true;
      r.exit_code = 134;
      r.log += fmt::format(
          "ERROR: [Synth 8-6156] internal exception: hierarchy reference table overflow\n"
          "  while elaborating {}:{}:7\n"
          "  backtrace: 0x{:012x} in HierTable::insert\n"
          "Abort (core dumped)\n",
          source_path, line, 0x7f0000000000ULL + (refs << 12) + (line & 0xfff));
      r.netlist = Design{};
      return r;
    }
  }
  std::size_t changed = 0;
  if (fault == FaultClass::A) {
    for (auto& m : r.netlist.modules)
      for (auto& item : m.items)
        if (auto* b = std::get_if<AlwaysBlock>(&item)) changed += swap_deep(b->body, 0);
  } else if (fault == FaultClass::B) {
    Rng rng(seed);
    for (auto& m : r.netlist.modules) {
      for (auto& item : m.items) {
        auto* inst = std::get_if<Instance>(&item);
        if (inst == nullptr) continue;
        const ModuleDef* child = d.find(inst->module);
        if (child == nullptr || has_process(*child)) continue;
        for (auto& b : inst->bindings) {
          const Port* p = child->find_port(b.port);
          if (p == nullptr || p->direction != Direction::Input || b.value.kind == Expr::Kind::Const) continue;
          b.value = Expr::constant(p->width, rng.bits(p->width), p->is_signed);
          ++changed;
          break;
        }
      }
    }
  }
  r.log += fmt::format("mock-synth: {} rewrites, netlist written\n", changed);
  return r;
}

}  // namespace synthfuzz
