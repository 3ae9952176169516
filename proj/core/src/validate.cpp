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

#include "synthfuzz/validate.hpp"

#include <functional>
#include <map>
#include <set>

#include "synthfuzz/bits.hpp"
#include "synthfuzz/error.hpp"

namespace synthfuzz {
namespace {

void check_expr(const Expr& e, const Scope& scope, const std::string& where) {
  SignalType t;
  try {
    t = infer_type(e, scope);
  } catch (const InvalidDesign& err) {
    throw InvalidDesign(where + ": " + err.what());
  }
  if (t.width == 0 || t.width > kMaxWidth) throw WidthMismatch(where + ": expression width out of range");
  for (const auto& a : e.args) {
    SignalType at = infer_type(a, scope);
    if (at.width > kMaxWidth) throw WidthMismatch(where + ": operand wider than 64 bits");
  }
  if (e.kind == Expr::Kind::Const && (e.width == 0 || e.width > kMaxWidth))
    throw WidthMismatch(where + ": bad literal width");
}

void check_body(const std::vector<Stmt>& body, const ModuleDef& m, const Scope& scope,
                std::map<std::string, int>& targets) {
  for (const auto& s : body) {
    if (const auto* a = std::get_if<AssignStmt>(&s.node)) {
      if (!scope.is_reg(a->target))
        throw InvalidDesign("module '" + m.name + "': procedural assignment to non-register '" +
                            a->target + "'");
      check_expr(a->value, scope, "module '" + m.name + "'");
      // Bit 0: non-blocking, bit 1: blocking.
      targets[a->target] |= a->blocking ? 2 : 1;
    } else if (const auto* i = std::get_if<IfStmt>(&s.node)) {
      check_expr(i->cond, scope, "module '" + m.name + "'");
      check_body(i->then_body, m, scope, targets);
      check_body(i->else_body, m, scope, targets);
    } else if (const auto* c = std::get_if<CaseStmt>(&s.node)) {
      check_expr(c->subject, scope, "module '" + m.name + "'");
      for (const auto& item : c->items) {
        if (item.labels.empty()) throw InvalidDesign("case item without labels");
        for (const auto& l : item.labels) check_expr(l, scope, "module '" + m.name + "'");
        check_body(item.body, m, scope, targets);
      }
      check_body(c->default_body, m, scope, targets);
    }
  }
}

void check_module(const Design& d, const ModuleDef& m) {
  std::set<std::string> names;
  auto declare = [&](const std::string& name) {
    if (name.empty()) throw InvalidDesign("module '" + m.name + "': empty identifier");
    if (name == kClock || name == kReset)
      throw InvalidDesign("module '" + m.name + "': '" + name + "' is reserved");
    if (!names.insert(name).second)
      throw InvalidDesign("module '" + m.name + "': duplicate identifier '" + name + "'");
  };
  std::set<std::string> nets;  // nets and output ports: may be driven by assigns
  for (const auto& p : m.ports) {
    declare(p.name);
    if (p.width == 0 || p.width > kMaxWidth) throw WidthMismatch("port '" + p.name + "' width");
    if (p.direction == Direction::Output) nets.insert(p.name);
  }
  for (const auto& item : m.items) {
    if (const auto* n = std::get_if<NetDecl>(&item)) {
      declare(n->name);
      nets.insert(n->name);
      if (n->width == 0 || n->width > kMaxWidth) throw WidthMismatch("net '" + n->name + "' width");
    } else if (const auto* r = std::get_if<RegDecl>(&item)) {
      declare(r->name);
      if (r->width == 0 || r->width > kMaxWidth) throw WidthMismatch("reg '" + r->name + "' width");
    } else if (const auto* inst = std::get_if<Instance>(&item)) {
      declare(inst->name);
    }
  }
  Scope scope(m);
  std::map<std::string, int> drivers;
  std::set<std::string> reg_owner_seen;
  for (const auto& item : m.items) {
    if (const auto* a = std::get_if<ContinuousAssign>(&item)) {
      if (nets.count(a->target) == 0)
        throw InvalidDesign("module '" + m.name + "': continuous assign to non-net '" + a->target + "'");
      check_expr(a->value, scope, "module '" + m.name + "'");
      ++drivers[a->target];
    } else if (const auto* blk = std::get_if<AlwaysBlock>(&item)) {
      std::map<std::string, int> targets;
      check_body(blk->body, m, scope, targets);
      for (const auto& [t, kinds] : targets) {
        if (kinds == 3)
          throw InvalidDesign("module '" + m.name + "': register '" + t +
                              "' mixes blocking and non-blocking assignments");
        if (!reg_owner_seen.insert(t).second)
          throw InvalidDesign("module '" + m.name + "': register '" + t +
                              "' assigned in more than one always block");
      }
    } else if (const auto* inst = std::get_if<Instance>(&item)) {
      const ModuleDef* child = d.find(inst->module);
      if (child == nullptr)
        throw InvalidDesign("module '" + m.name + "': instance of unknown module '" + inst->module + "'");
      std::set<std::string> bound;
      for (const auto& b : inst->bindings) {
        const Port* p = child->find_port(b.port);
        if (p == nullptr)
          throw InvalidDesign("instance '" + inst->name + "': no port '" + b.port + "' on '" +
                              child->name + "'");
        if (!bound.insert(b.port).second)
          throw InvalidDesign("instance '" + inst->name + "': port '" + b.port + "' bound twice");
        check_expr(b.value, scope, "instance '" + inst->name + "'");
        if (p->direction == Direction::Output) {
          if (b.value.kind != Expr::Kind::Ref || nets.count(b.value.name) == 0)
            throw InvalidDesign("instance '" + inst->name + "': output port '" + b.port +
                                "' must bind a whole net");
          ++drivers[b.value.name];
        }
      }
    }
  }
  for (const auto& [name, count] : drivers)
    if (count > 1) throw InvalidDesign("module '" + m.name + "': net '" + name + "' has multiple drivers");
}

}  // namespace

void validate_design(const Design& d) {
  std::set<std::string> module_names;
  for (const auto& m : d.modules) {
    if (m.name.empty()) throw InvalidDesign("module without a name");
    if (!module_names.insert(m.name).second) throw InvalidDesign("duplicate module '" + m.name + "'");
  }
  if (module_names.count(d.top) == 0) throw InvalidDesign("top module '" + d.top + "' not found");
  for (const auto& m : d.modules) check_module(d, m);

  // Instantiation graph must be acyclic.
  std::map<std::string, int> state;
  std::function<void(const ModuleDef&)> visit = [&](const ModuleDef& m) {
    state[m.name] = 1;
    for (const auto& item : m.items) {
      const auto* inst = std::get_if<Instance>(&item);
      if (inst == nullptr) continue;
      int s = state[inst->module];
      if (s == 1) throw InvalidDesign("recursive instantiation of '" + inst->module + "'");
      if (s == 0) visit(*d.find(inst->module));
    }
    state[m.name] = 2;
  };
  for (const auto& m : d.modules)
    if (state[m.name] == 0) visit(m);
}

std::string validation_error(const Design& design) {
  try {
    validate_design(design);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

std::vector<std::string> reachable_modules_bottom_up(const Design& d) {
  std::vector<std::string> order;
  std::set<std::string> done;
  std::function<void(const std::string&)> visit = [&](const std::string& name) {
    if (done.count(name)) return;
    done.insert(name);
    const ModuleDef* m = d.find(name);
    if (m == nullptr) return;
    for (const auto& item : m->items)
      if (const auto* inst = std::get_if<Instance>(&item)) visit(inst->module);
    order.push_back(name);
  };
  visit(d.top);
  return order;
}

}  // namespace synthfuzz
