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

#include "synthfuzz/flatten.hpp"

#include "synthfuzz/error.hpp"

namespace synthfuzz {

std::size_t FlatScope::lookup(const std::string& local) const {
  auto it = signals.find(local);
  if (it == signals.end())
    throw InvalidDesign("unresolved signal '" + local + "' in instance '" + path + "'");
  return it->second;
}

namespace {

class Flattener {
 public:
  explicit Flattener(const Design& d) : design_(d) {}

  FlatDesign run() {
    const ModuleDef& top = design_.top_module();
    std::size_t scope = instantiate(top, "");
    for (const auto& p : top.ports) {
      std::size_t idx = flat_.scopes[scope].lookup(p.name);
      if (p.direction == Direction::Input) {
        flat_.signals[idx].kind = SignalKind::Input;
        flat_.inputs.push_back(idx);
      } else {
        flat_.outputs.push_back(idx);
      }
    }
    return std::move(flat_);
  }

 private:
  std::size_t add_signal(std::size_t scope, const std::string& local, unsigned width,
                         bool is_signed, SignalKind kind, std::uint64_t reset) {
    FlatSignal s;
    const std::string& path = flat_.scopes[scope].path;
    s.name = path.empty() ? local : path + "." + local;
    s.width = width;
    s.is_signed = is_signed;
    s.kind = kind;
    s.reset = reset;
    s.scope = scope;
    flat_.signals.push_back(std::move(s));
    std::size_t idx = flat_.signals.size() - 1;
    flat_.scopes[scope].signals.emplace(local, idx);
    return idx;
  }

  std::size_t instantiate(const ModuleDef& m, const std::string& path) {
    flat_.scopes.push_back(FlatScope{path, m.name, {}});
    std::size_t scope = flat_.scopes.size() - 1;
    for (const auto& p : m.ports) add_signal(scope, p.name, p.width, p.is_signed, SignalKind::Net, 0);
    for (const auto& item : m.items) {
      if (const auto* n = std::get_if<NetDecl>(&item)) {
        add_signal(scope, n->name, n->width, n->is_signed, SignalKind::Net, 0);
      } else if (const auto* r = std::get_if<RegDecl>(&item)) {
        add_signal(scope, r->name, r->width, r->is_signed, SignalKind::Reg, r->reset);
      }
    }
    for (std::size_t i = 0; i < m.items.size(); ++i) {
      const Item& item = m.items[i];
      if (const auto* a = std::get_if<ContinuousAssign>(&item)) {
        flat_.assigns.push_back(FlatAssign{flat_.scopes[scope].lookup(a->target), a->value, scope});
      } else if (const auto* b = std::get_if<AlwaysBlock>(&item)) {
        flat_.blocks.push_back(FlatBlock{scope, i, *b});
      } else if (const auto* inst = std::get_if<Instance>(&item)) {
        const ModuleDef* child = design_.find(inst->module);
        if (child == nullptr) throw InvalidDesign("unknown module '" + inst->module + "'");
        std::string child_path = path.empty() ? inst->name : path + "." + inst->name;
        std::size_t child_scope = instantiate(*child, child_path);
        for (const auto& binding : inst->bindings) {
          const Port* port = child->find_port(binding.port);
          if (port == nullptr) throw InvalidDesign("unknown port '" + binding.port + "'");
          std::size_t port_sig = flat_.scopes[child_scope].lookup(binding.port);
          if (port->direction == Direction::Input) {
            flat_.assigns.push_back(FlatAssign{port_sig, binding.value, scope});
          } else {
            std::size_t parent_net = flat_.scopes[scope].lookup(binding.value.name);
            flat_.assigns.push_back(FlatAssign{parent_net, Expr::ref(binding.port), child_scope});
          }
        }
      }
    }
    return scope;
  }

  const Design& design_;
  FlatDesign flat_;
};

}  // namespace

FlatDesign flatten(const Design& design) { return Flattener(design).run(); }

}  // namespace synthfuzz
