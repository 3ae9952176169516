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

#pragma once

// Symbolic execution of clocked statement lists into next-state functions.
//
// The executor is generic over a term Builder so the same walk produces
// printable Verilog expressions (subsystem extraction, dependency graphs) and
// SMT-LIB terms (miter export). A Builder provides:
//
//   using Term = ...;
//   Term read(const std::string& reg);                 // pre-edge value
//   Term eval(const Expr&, const std::map<std::string, Term>& overrides);
//   Term fit(Term value, const Expr& source, const std::string& target);
//   Term truth(Term cond);                             // nonzero test
//   Term ite(Term c, Term a, Term b, GuardKind guard);
//   Term equals(Term a, Term b);                       // case label match
//   Term either(Term a, Term b);                       // logical or
//   Term one(); Term zero();                           // 1-bit constants
//   bool same(const Term&, const Term&);

#include <map>
#include <set>
#include <string>
#include <vector>

#include "synthfuzz/ast.hpp"

namespace synthfuzz {

template <typename Builder>
class SymbolicExecutor {
 public:
  using Term = typename Builder::Term;

  struct State {
    std::map<std::string, Term> current;  // values visible to later reads (blocking writes)
    std::map<std::string, Term> next;     // value committed at the clock edge
    std::map<std::string, Term> enable;   // 1-bit: register written on this path
  };

  explicit SymbolicExecutor(Builder& builder) : b_(builder) {}

  State run(const std::vector<Stmt>& body) {
    State s;
    exec(body, s);
    return s;
  }

  void exec(const std::vector<Stmt>& body, State& s) {
    for (const auto& stmt : body) exec(stmt, s);
  }

 private:
  void exec(const Stmt& stmt, State& s) {
    if (const auto* a = std::get_if<AssignStmt>(&stmt.node)) {
      Term v = b_.fit(b_.eval(a->value, s.current), a->value, a->target);
      if (a->blocking) assign(s.current, a->target, v);
      assign(s.next, a->target, v);
      assign(s.enable, a->target, b_.one());
    } else if (const auto* i = std::get_if<IfStmt>(&stmt.node)) {
      Term c = b_.truth(b_.eval(i->cond, s.current));
      branch(c, i->then_body, i->else_body, i->guard, s);
    } else if (const auto* c = std::get_if<CaseStmt>(&stmt.node)) {
      Term subject = b_.eval(c->subject, s.current);
      case_chain(*c, 0, subject, s);
    }
  }

  void case_chain(const CaseStmt& c, std::size_t k, const Term& subject, State& s) {
    if (k == c.items.size()) {
      exec(c.default_body, s);
      return;
    }
    const CaseItem& item = c.items[k];
    Term cond = b_.equals(subject, b_.eval(item.labels[0], s.current));
    for (std::size_t l = 1; l < item.labels.size(); ++l)
      cond = b_.either(cond, b_.equals(subject, b_.eval(item.labels[l], s.current)));
    State then_state = s;
    exec(item.body, then_state);
    State else_state = s;
    case_chain(c, k + 1, subject, else_state);
    merge(cond, then_state, else_state, GuardKind::None, s);
  }

  void branch(const Term& c, const std::vector<Stmt>& then_body,
              const std::vector<Stmt>& else_body, GuardKind guard, State& s) {
    State then_state = s;
    exec(then_body, then_state);
    State else_state = s;
    exec(else_body, else_state);
    merge(c, then_state, else_state, guard, s);
  }

  void merge(const Term& c, const State& t, const State& e, GuardKind guard, State& out) {
    merge_map(c, t.current, e.current, guard, out.current, true);
    merge_map(c, t.next, e.next, guard, out.next, true);
    merge_map(c, t.enable, e.enable, guard, out.enable, false);
  }

  void merge_map(const Term& c, const std::map<std::string, Term>& t,
                 const std::map<std::string, Term>& e, GuardKind guard,
                 std::map<std::string, Term>& out, bool hold_is_read) {
    std::set<std::string> keys;
    for (const auto& [k, v] : t) keys.insert(k);
    for (const auto& [k, v] : e) keys.insert(k);
    for (const auto& k : keys) {
      auto ti = t.find(k);
      auto ei = e.find(k);
      Term tv = ti != t.end() ? ti->second : (hold_is_read ? b_.read(k) : b_.zero());
      Term ev = ei != e.end() ? ei->second : (hold_is_read ? b_.read(k) : b_.zero());
      if (b_.same(tv, ev)) {
        assign(out, k, tv);
      } else {
        assign(out, k, b_.ite(c, tv, ev, guard));
      }
    }
  }

  static void assign(std::map<std::string, Term>& m, const std::string& k, Term v) {
    auto it = m.find(k);
    if (it == m.end()) {
      m.emplace(k, std::move(v));
    } else {
      it->second = std::move(v);
    }
  }

  Builder& b_;
};

/// Builder producing subset expressions over a module scope.
///
/// In strict mode (used for subsystem extraction) the result must stay
/// printable and width-exact: truncating assignments and bit-selects of
/// blocking-updated registers raise UnextractableRegion. In dependency mode
/// widths are ignored and only the read structure is preserved.
class ExprBuilder {
 public:
  using Term = Expr;

  ExprBuilder(const Scope& scope, bool strict) : scope_(scope), strict_(strict) {}

  Expr read(const std::string& reg) const { return Expr::ref(reg); }
  Expr eval(const Expr& e, const std::map<std::string, Expr>& overrides) const;
  Expr fit(Expr value, const Expr& source, const std::string& target) const;
  Expr truth(Expr cond) const { return cond; }
  Expr ite(Expr c, Expr a, Expr b, GuardKind guard) const {
    return Expr::ternary(std::move(c), std::move(a), std::move(b), guard);
  }
  Expr equals(Expr a, Expr b) const { return Expr::binary(BinaryOp::Eq, std::move(a), std::move(b)); }
  Expr either(Expr a, Expr b) const {
    return Expr::binary(BinaryOp::LogicOr, std::move(a), std::move(b));
  }
  Expr one() const { return Expr::constant(1, 1); }
  Expr zero() const { return Expr::constant(1, 0); }
  bool same(const Expr& a, const Expr& b) const { return a == b; }

 private:
  const Scope& scope_;
  bool strict_;
};

}  // namespace synthfuzz
