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

#include "synthfuzz/metrics.hpp"

#include "synthfuzz/printer.hpp"
#include "synthfuzz/validate.hpp"

namespace synthfuzz {

Metrics structural_metrics(const Design& design) {
  Metrics m;
  for (const auto& mod : design.modules) {
    for (const auto& item : mod.items) {
      if (std::holds_alternative<NetDecl>(item) || std::holds_alternative<RegDecl>(item)) {
        ++m.v;
      } else if (std::holds_alternative<ContinuousAssign>(item)) {
        ++m.c;
      } else if (const auto* inst = std::get_if<Instance>(&item)) {
        m.c += inst->bindings.size();
      } else if (std::holds_alternative<AlwaysBlock>(item)) {
        ++m.s;
      }
    }
  }
  // Each instantiation statement in a module reachable from top counts once,
  // however many times its enclosing module is itself instantiated.
  for (const auto& name : reachable_modules_bottom_up(design)) {
    if (const ModuleDef* mod = design.find(name))
      for (const auto& item : mod->items) m.refs += std::holds_alternative<Instance>(item);
  }
  m.lines = printed_line_count(design);
  return m;
}

std::string to_string(const Metrics& m) {
  return "v=" + std::to_string(m.v) + " c=" + std::to_string(m.c) + " s=" + std::to_string(m.s) +
         " refs=" + std::to_string(m.refs) + " lines=" + std::to_string(m.lines);
}

}  // namespace synthfuzz
