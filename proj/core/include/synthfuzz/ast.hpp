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

// Typed AST for the synthesizable two-state Verilog subset.
//
// Every module has an implicit single clock `clk` and a synchronous active-high
// reset `rst`; they are not listed in ModuleDef::ports. Always blocks trigger on
// the rising clock edge and load every register they drive with its reset value
// while `rst` is high.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace synthfuzz {

enum class UnaryOp { Not, Neg, LogicNot, RedAnd, RedOr, RedXor };

enum class BinaryOp {
  Add, Sub, Mul, And, Or, Xor,
  Shl, Shr, AShr,
  Eq, Ne, Lt, Le, Gt, Ge,
  LogicAnd, LogicOr,
};

/// Marks control constructs inserted as always-true guards.
enum class GuardKind { None, Profiled, Tautological };

const char* to_string(UnaryOp op);
const char* to_string(BinaryOp op);
const char* to_string(GuardKind kind);
std::optional<GuardKind> guard_kind_from_string(const std::string& text);

bool is_comparison(BinaryOp op);
bool is_shift(BinaryOp op);
bool is_logical(BinaryOp op);
bool is_reduction(UnaryOp op);

struct Expr {
  enum class Kind { Const, Ref, Select, Concat, Unary, Binary, Ternary };

  Kind kind = Kind::Const;
  // Const
  unsigned width = 0;
  bool is_signed = false;
  std::uint64_t value = 0;
  // Ref / Select
  std::string name;
  unsigned msb = 0;
  unsigned lsb = 0;
  UnaryOp uop = UnaryOp::Not;
  BinaryOp bop = BinaryOp::Add;
  // Ternary produced from an extracted guard keeps its tag.
  GuardKind guard = GuardKind::None;
  std::vector<Expr> args;

  bool operator==(const Expr&) const = default;

  static Expr constant(unsigned width, std::uint64_t value, bool is_signed = false);
  static Expr ref(std::string name);
  static Expr select(std::string name, unsigned msb, unsigned lsb);
  static Expr concat(std::vector<Expr> parts);
  static Expr unary(UnaryOp op, Expr arg);
  static Expr binary(BinaryOp op, Expr lhs, Expr rhs);
  static Expr ternary(Expr cond, Expr then_value, Expr else_value,
                      GuardKind guard = GuardKind::None);
};

struct Stmt;

struct AssignStmt {
  std::string target;
  Expr value;
  bool blocking = false;
  bool operator==(const AssignStmt&) const = default;
};

struct IfStmt {
  Expr cond;
  std::vector<Stmt> then_body;
  std::vector<Stmt> else_body;
  GuardKind guard = GuardKind::None;
  bool operator==(const IfStmt&) const = default;
};

struct CaseItem {
  std::vector<Expr> labels;
  std::vector<Stmt> body;
  bool operator==(const CaseItem&) const = default;
};

struct CaseStmt {
  Expr subject;
  std::vector<CaseItem> items;
  bool has_default = false;
  std::vector<Stmt> default_body;
  bool operator==(const CaseStmt&) const = default;
};

struct Stmt {
  std::variant<AssignStmt, IfStmt, CaseStmt> node;
  bool operator==(const Stmt&) const = default;
};

Stmt make_assign(std::string target, Expr value, bool blocking = false);
Stmt make_if(Expr cond, std::vector<Stmt> then_body, std::vector<Stmt> else_body = {},
             GuardKind guard = GuardKind::None);

struct NetDecl {
  std::string name;
  unsigned width = 1;
  bool is_signed = false;
  bool operator==(const NetDecl&) const = default;
};

struct RegDecl {
  std::string name;
  unsigned width = 1;
  bool is_signed = false;
  std::uint64_t reset = 0;
  bool operator==(const RegDecl&) const = default;
};

struct ContinuousAssign {
  std::string target;
  Expr value;
  bool operator==(const ContinuousAssign&) const = default;
};

struct AlwaysBlock {
  std::vector<Stmt> body;
  bool operator==(const AlwaysBlock&) const = default;
};

struct PortBinding {
  std::string port;
  Expr value;
  bool operator==(const PortBinding&) const = default;
};

struct Instance {
  std::string module;
  std::string name;
  std::vector<PortBinding> bindings;
  bool operator==(const Instance&) const = default;
};

using Item = std::variant<NetDecl, RegDecl, ContinuousAssign, AlwaysBlock, Instance>;

enum class Direction { Input, Output };

struct Port {
  std::string name;
  Direction direction = Direction::Input;
  unsigned width = 1;
  bool is_signed = false;
  bool operator==(const Port&) const = default;
};

struct ModuleDef {
  std::string name;
  std::vector<Port> ports;
  std::vector<Item> items;

  const Port* find_port(const std::string& port) const;
  bool operator==(const ModuleDef&) const = default;
};

struct Design {
  std::vector<ModuleDef> modules;
  std::string top;

  const ModuleDef* find(const std::string& module) const;
  ModuleDef* find(const std::string& module);
  const ModuleDef& top_module() const;
  bool operator==(const Design&) const = default;
};

/// Names of the implicit clock and reset ports.
inline constexpr const char* kClock = "clk";
inline constexpr const char* kReset = "rst";

/// Width and signedness of a named signal in a module scope.
struct SignalType {
  unsigned width = 1;
  bool is_signed = false;
};

/// Symbol table of one module: ports, nets and registers.
class Scope {
 public:
  explicit Scope(const ModuleDef& module);
  const SignalType* lookup(const std::string& name) const;
  bool is_reg(const std::string& name) const;

 private:
  std::vector<std::pair<std::string, SignalType>> signals_;
  std::vector<std::string> regs_;
};

/// Self-determined type of an expression under the subset's width rule:
/// operands extend to the widest operand, comparisons and logical operators
/// yield one unsigned bit, shifts take the left operand's type.
SignalType infer_type(const Expr& expr, const Scope& scope);

/// Invokes `fn(name)` for every signal read by the expression.
template <typename Fn>
void for_each_read(const Expr& expr, Fn&& fn) {
  if (expr.kind == Expr::Kind::Ref || expr.kind == Expr::Kind::Select) fn(expr.name);
  for (const auto& arg : expr.args) for_each_read(arg, fn);
}

/// Counts every Stmt node in a statement list, recursively.
std::size_t count_statements(const std::vector<Stmt>& body);

/// Statement count of a design: always-block statements plus continuous
/// assigns and instances.
std::size_t statement_count(const Design& design);

/// Number of operator nodes in an expression.
std::size_t operator_count(const Expr& expr);

}  // namespace synthfuzz
