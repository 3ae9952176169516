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

#include "synthfuzz/ast.hpp"

#include <algorithm>

#include "synthfuzz/bits.hpp"
#include "synthfuzz/error.hpp"

namespace synthfuzz {

SyntaxError::SyntaxError(std::size_t line, std::size_t column, const std::string& message)
    : Error("syntax error at " + std::to_string(line) + ":" + std::to_string(column) +
            ": " + message),
      line_(line),
      column_(column) {}

UnsupportedConstruct::UnsupportedConstruct(std::string construct)
    : Error("unsupported construct: " + construct), construct_(std::move(construct)) {}

const char* to_string(UnaryOp op) {
  switch (op) {
    case UnaryOp::Not: return "~";
    case UnaryOp::Neg: return "-";
    case UnaryOp::LogicNot: return "!";
    case UnaryOp::RedAnd: return "&";
    case UnaryOp::RedOr: return "|";
    case UnaryOp::RedXor: return "^";
  }
  return "?";
}

const char* to_string(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::And: return "&";
    case BinaryOp::Or: return "|";
    case BinaryOp::Xor: return "^";
    case BinaryOp::Shl: return "<<";
    case BinaryOp::Shr: return ">>";
    case BinaryOp::AShr: return ">>>";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::LogicAnd: return "&&";
    case BinaryOp::LogicOr: return "||";
  }
  return "?";
}

const char* to_string(GuardKind kind) {
  switch (kind) {
    case GuardKind::None: return "none";
    case GuardKind::Profiled: return "profiled";
    case GuardKind::Tautological: return "tautological";
  }
  return "none";
}

std::optional<GuardKind> guard_kind_from_string(const std::string& text) {
  if (text == "none") return GuardKind::None;
  if (text == "profiled") return GuardKind::Profiled;
  if (text == "tautological") return GuardKind::Tautological;
  return std::nullopt;
}

bool is_comparison(BinaryOp op) {
  switch (op) {
    case BinaryOp::Eq: case BinaryOp::Ne: case BinaryOp::Lt:
    case BinaryOp::Le: case BinaryOp::Gt: case BinaryOp::Ge:
      return true;
    default:
      return false;
  }
}

bool is_shift(BinaryOp op) {
  return op == BinaryOp::Shl || op == BinaryOp::Shr || op == BinaryOp::AShr;
}

bool is_logical(BinaryOp op) {
  return op == BinaryOp::LogicAnd || op == BinaryOp::LogicOr;
}

bool is_reduction(UnaryOp op) {
  return op == UnaryOp::RedAnd || op == UnaryOp::RedOr || op == UnaryOp::RedXor;
}

Expr Expr::constant(unsigned width, std::uint64_t value, bool is_signed) {
  Expr e;
  e.kind = Kind::Const;
  e.width = width;
  e.value = truncate(value, width);
  e.is_signed = is_signed;
  return e;
}

Expr Expr::ref(std::string name) {
  Expr e;
  e.kind = Kind::Ref;
  e.name = std::move(name);
  return e;
}

Expr Expr::select(std::string name, unsigned msb, unsigned lsb) {
  Expr e;
  e.kind = Kind::Select;
  e.name = std::move(name);
  e.msb = msb;
  e.lsb = lsb;
  return e;
}

Expr Expr::concat(std::vector<Expr> parts) {
  Expr e;
  e.kind = Kind::Concat;
  e.args = std::move(parts);
  return e;
}

Expr Expr::unary(UnaryOp op, Expr arg) {
  Expr e;
  e.kind = Kind::Unary;
  e.uop = op;
  e.args.push_back(std::move(arg));
  return e;
}

Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs) {
  Expr e;
  e.kind = Kind::Binary;
  e.bop = op;
  e.args.push_back(std::move(lhs));
  e.args.push_back(std::move(rhs));
  return e;
}

Expr Expr::ternary(Expr cond, Expr then_value, Expr else_value, GuardKind guard) {
  Expr e;
  e.kind = Kind::Ternary;
  e.guard = guard;
  e.args.push_back(std::move(cond));
  e.args.push_back(std::move(then_value));
  e.args.push_back(std::move(else_value));
  return e;
}

Stmt make_assign(std::string target, Expr value, bool blocking) {
  return Stmt{AssignStmt{std::move(target), std::move(value), blocking}};
}

Stmt make_if(Expr cond, std::vector<Stmt> then_body, std::vector<Stmt> else_body,
             GuardKind guard) {
  return Stmt{IfStmt{std::move(cond), std::move(then_body), std::move(else_body), guard}};
}

const Port* ModuleDef::find_port(const std::string& port) const {
  for (const auto& p : ports)
    if (p.name == port) return &p;
  return nullptr;
}

const ModuleDef* Design::find(const std::string& module) const {
  for (const auto& m : modules)
    if (m.name == module) return &m;
  return nullptr;
}

ModuleDef* Design::find(const std::string& module) {
  for (auto& m : modules)
    if (m.name == module) return &m;
  return nullptr;
}

const ModuleDef& Design::top_module() const {
  const ModuleDef* m = find(top);
  if (m == nullptr) throw InvalidDesign("top module '" + top + "' not found");
  return *m;
}

Scope::Scope(const ModuleDef& module) {
  for (const auto& p : module.ports) signals_.emplace_back(p.name, SignalType{p.width, p.is_signed});
  for (const auto& item : module.items) {
    if (const auto* net = std::get_if<NetDecl>(&item)) {
      signals_.emplace_back(net->name, SignalType{net->width, net->is_signed});
    } else if (const auto* reg = std::get_if<RegDecl>(&item)) {
      signals_.emplace_back(reg->name, SignalType{reg->width, reg->is_signed});
      regs_.push_back(reg->name);
    }
  }
  std::sort(signals_.begin(), signals_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::sort(regs_.begin(), regs_.end());
}

const SignalType* Scope::lookup(const std::string& name) const {
  auto it = std::lower_bound(signals_.begin(), signals_.end(), name,
                             [](const auto& entry, const std::string& key) { return entry.first < key; });
  if (it == signals_.end() || it->first != name) return nullptr;
  return &it->second;
}

bool Scope::is_reg(const std::string& name) const {
  return std::binary_search(regs_.begin(), regs_.end(), name);
}

SignalType infer_type(const Expr& expr, const Scope& scope) {
  switch (expr.kind) {
    case Expr::Kind::Const:
      return {expr.width, expr.is_signed};
    case Expr::Kind::Ref: {
      const SignalType* t = scope.lookup(expr.name);
      if (t == nullptr) throw InvalidDesign("undeclared signal '" + expr.name + "'");
      return *t;
    }
    case Expr::Kind::Select: {
      const SignalType* t = scope.lookup(expr.name);
      if (t == nullptr) throw InvalidDesign("undeclared signal '" + expr.name + "'");
      if (expr.msb < expr.lsb || expr.msb >= t->width)
        throw WidthMismatch("select out of range on '" + expr.name + "'");
      return {expr.msb - expr.lsb + 1, false};
    }
    case Expr::Kind::Concat: {
      unsigned w = 0;
      for (const auto& a : expr.args) w += infer_type(a, scope).width;
      if (w == 0 || w > kMaxWidth) throw WidthMismatch("concatenation width out of range");
      return {w, false};
    }
    case Expr::Kind::Unary: {
      SignalType t = infer_type(expr.args[0], scope);
      if (expr.uop == UnaryOp::LogicNot || is_reduction(expr.uop)) return {1, false};
      return t;
    }
    case Expr::Kind::Binary: {
      SignalType a = infer_type(expr.args[0], scope);
      SignalType b = infer_type(expr.args[1], scope);
      if (is_comparison(expr.bop) || is_logical(expr.bop)) return {1, false};
      if (is_shift(expr.bop)) return a;
      return {std::max(a.width, b.width), a.is_signed && b.is_signed};
    }
    case Expr::Kind::Ternary: {
      infer_type(expr.args[0], scope);
      SignalType a = infer_type(expr.args[1], scope);
      SignalType b = infer_type(expr.args[2], scope);
      return {std::max(a.width, b.width), a.is_signed && b.is_signed};
    }
  }
  return {};
}

std::size_t count_statements(const std::vector<Stmt>& body) {
  std::size_t n = 0;
  for (const auto& s : body) {
    ++n;
    if (const auto* i = std::get_if<IfStmt>(&s.node)) {
      n += count_statements(i->then_body) + count_statements(i->else_body);
    } else if (const auto* c = std::get_if<CaseStmt>(&s.node)) {
      for (const auto& item : c->items) n += count_statements(item.body);
      n += count_statements(c->default_body);
    }
  }
  return n;
}

std::size_t statement_count(const Design& design) {
  std::size_t n = 0;
  for (const auto& m : design.modules) {
    for (const auto& item : m.items) {
      if (const auto* a = std::get_if<AlwaysBlock>(&item)) {
        n += count_statements(a->body);
      } else if (std::holds_alternative<ContinuousAssign>(item) ||
                 std::holds_alternative<Instance>(item)) {
        ++n;
      }
    }
  }
  return n;
}

std::size_t operator_count(const Expr& expr) {
  std::size_t n = (expr.kind == Expr::Kind::Unary || expr.kind == Expr::Kind::Binary ||
                   expr.kind == Expr::Kind::Ternary)
                      ? 1
                      : 0;
  for (const auto& a : expr.args) n += operator_count(a);
  return n;
}

}  // namespace synthfuzz
