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

#include "synthfuzz/smt.hpp"

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "synthfuzz/bits.hpp"
#include "synthfuzz/comb_graph.hpp"
#include "synthfuzz/error.hpp"
#include "synthfuzz/flatten.hpp"
#include "synthfuzz/simulator.hpp"
#include "synthfuzz/symexec.hpp"

namespace synthfuzz {

namespace {

struct Term {
  std::string s;
  unsigned w = 1;
  bool sg = false;
};

std::string bv(std::uint64_t v, unsigned w) { return fmt::format("(_ bv{} {})", truncate(v, w), w); }

Term ext(const Term& t, unsigned to, bool is_signed) {
  if (to == t.w) return {t.s, to, t.sg};
  if (to < t.w) return {fmt::format("((_ extract {} 0) {})", to - 1, t.s), to, t.sg};
  return {fmt::format("((_ {} {}) {})", is_signed ? "sign_extend" : "zero_extend", to - t.w, t.s), to, t.sg};
}

Term bit(const std::string& boolean) { return {fmt::format("(ite {} #b1 #b0)", boolean), 1, false}; }

std::string nonzero(const Term& t) { return fmt::format("(distinct {} {})", t.s, bv(0, t.w)); }

bool has_profiled(const std::vector<Stmt>& body);

bool has_profiled(const Expr& e) {
  if (e.kind == Expr::Kind::Ternary && e.guard == GuardKind::Profiled) return true;
  for (const auto& a : e.args)
    if (has_profiled(a)) return true;
  return false;
}

bool has_profiled(const std::vector<Stmt>& body) {
  for (const auto& s : body) {
    if (const auto* a = std::get_if<AssignStmt>(&s.node)) {
      if (has_profiled(a->value)) return true;
    } else if (const auto* i = std::get_if<IfStmt>(&s.node)) {
      if (i->guard == GuardKind::Profiled || has_profiled(i->cond) || has_profiled(i->then_body) ||
          has_profiled(i->else_body))
        return true;
    } else if (const auto* c = std::get_if<CaseStmt>(&s.node)) {
      if (has_profiled(c->subject) || has_profiled(c->default_body)) return true;
      for (const auto& item : c->items)
        if (has_profiled(item.body)) return true;
    }
  }
  return false;
}

bool has_profiled(const Design& d) {
  for (const auto& m : d.modules)
    for (const auto& item : m.items) {
      if (const auto* b = std::get_if<AlwaysBlock>(&item); b && has_profiled(b->body)) return true;
      if (const auto* a = std::get_if<ContinuousAssign>(&item); a && has_profiled(a->value)) return true;
    }
  return false;
}

/// Unrolls one flattened design into define-fun declarations.
class Unroller {
 public:
  Unroller(const Design& d, std::string prefix, std::ostringstream& out)
      : flat_(flatten(d)), order_(assign_order(flat_)), prefix_(std::move(prefix)), out_(out) {
    for (std::size_t i : flat_.inputs) is_input_[i] = true;
  }

  const FlatDesign& flat() const { return flat_; }

  std::string symbol(std::size_t sig, std::size_t t) const {
    if (is_input_.count(sig)) return fmt::format("|in_{}@{}|", flat_.signals[sig].name, t);
    return fmt::format("|{}_{}@{}|", prefix_, flat_.signals[sig].name, t);
  }

  void initial_state() {
    for (std::size_t i = 0; i < flat_.signals.size(); ++i) {
      const FlatSignal& s = flat_.signals[i];
      if (s.kind != SignalKind::Reg) continue;
      define(i, 0, bv(s.reset, s.width));
    }
  }

  /// Settles the combinational logic of cycle `t`.
  void settle(std::size_t t) {
    t_ = t;
    for (std::size_t k : order_) {
      const FlatAssign& a = flat_.assigns[k];
      Term v = eval(a.expr, a.scope, {});
      define(a.target, t, ext(v, flat_.signals[a.target].width, v.sg).s);
    }
  }

  /// Register values of cycle t + 1.
  void step(std::size_t t);

  Term eval(const Expr& e, std::size_t scope, const std::map<std::string, Term>& overrides) const;
  Term read(std::size_t sig) const {
    const FlatSignal& s = flat_.signals[sig];
    if (!is_input_.count(sig) && !defined_.count({sig, t_})) return {bv(0, s.width), s.width, s.is_signed};
    return {symbol(sig, t_), s.width, s.is_signed};
  }

 private:
  void define(std::size_t sig, std::size_t t, const std::string& body) {
    out_ << fmt::format("(define-fun {} () (_ BitVec {}) {})\n", symbol(sig, t), flat_.signals[sig].width, body);
    defined_.insert({sig, t});
  }

  FlatDesign flat_;
  std::vector<std::size_t> order_;
  std::string prefix_;
  std::ostringstream& out_;
  std::map<std::size_t, bool> is_input_;
  std::set<std::pair<std::size_t, std::size_t>> defined_;
  std::size_t t_ = 0;
};

class SmtBuilder {
 public:
  using Term = synthfuzz::Term;
  SmtBuilder(const Unroller& u, std::size_t scope) : u_(u), scope_(scope) {}

  Term read(const std::string& reg) const { return u_.read(u_.flat().scopes[scope_].lookup(reg)); }
  Term eval(const Expr& e, const std::map<std::string, Term>& overrides) const {
    return u_.eval(e, scope_, overrides);
  }
  Term fit(Term v, const Expr&, const std::string& target) const {
    const FlatSignal& s = u_.flat().signals[u_.flat().scopes[scope_].lookup(target)];
    Term r = ext(v, s.width, v.sg);
    r.sg = s.is_signed;
    return r;
  }
  Term truth(Term c) const { return c.w == 1 ? c : bit(nonzero(c)); }
  Term ite(Term c, Term a, Term b, GuardKind) const {
    return {fmt::format("(ite (= {} #b1) {} {})", c.s, a.s, b.s), a.w, a.sg};
  }
  Term equals(Term a, Term b) const {
    unsigned w = std::max(a.w, b.w);
    bool sg = a.sg && b.sg;
    return bit(fmt::format("(= {} {})", ext(a, w, sg).s, ext(b, w, sg).s));
  }
  Term either(Term a, Term b) const { return {fmt::format("(bvor {} {})", a.s, b.s), 1, false}; }
  Term one() const { return {"#b1", 1, false}; }
  Term zero() const { return {"#b0", 1, false}; }
  bool same(const Term& a, const Term& b) const { return a.s == b.s; }

 private:
  const Unroller& u_;
  std::size_t scope_;
};

Term Unroller::eval(const Expr& e, std::size_t scope, const std::map<std::string, Term>& overrides) const {
  auto ref = [&](const std::string& name) {
    auto it = overrides.find(name);
    if (it != overrides.end()) return it->second;
    return read(flat_.scopes[scope].lookup(name));
  };
  switch (e.kind) {
    case Expr::Kind::Const:
      return {bv(e.value, e.width), e.width, e.is_signed};
    case Expr::Kind::Ref:
      return ref(e.name);
    case Expr::Kind::Select: {
      Term base = ref(e.name);
      return {fmt::format("((_ extract {} {}) {})", e.msb, e.lsb, base.s), e.msb - e.lsb + 1, false};
    }
    case Expr::Kind::Concat: {
      if (e.args.size() == 1) {
        Term t = eval(e.args[0], scope, overrides);
        t.sg = false;
        return t;
      }
      std::string s = "(concat";
      unsigned w = 0;
      for (const auto& a : e.args) {
        Term t = eval(a, scope, overrides);
        s += " " + t.s;
        w += t.w;
      }
      return {s + ")", w, false};
    }
    case Expr::Kind::Unary: {
      Term a = eval(e.args[0], scope, overrides);
      switch (e.uop) {
        case UnaryOp::Not: return {fmt::format("(bvnot {})", a.s), a.w, a.sg};
        case UnaryOp::Neg: return {fmt::format("(bvneg {})", a.s), a.w, a.sg};
        case UnaryOp::LogicNot: return bit(fmt::format("(= {} {})", a.s, bv(0, a.w)));
        case UnaryOp::RedAnd: return bit(fmt::format("(= {} {})", a.s, bv(width_mask(a.w), a.w)));
        case UnaryOp::RedOr: return bit(nonzero(a));
        case UnaryOp::RedXor: {
          if (a.w == 1) return {a.s, 1, false};
          std::string s = fmt::format("((_ extract 0 0) {})", a.s);
          for (unsigned i = 1; i < a.w; ++i) s = fmt::format("(bvxor {} ((_ extract {} {}) {}))", s, i, i, a.s);
          return {s, 1, false};
        }
      }
      break;
    }
    case Expr::Kind::Binary: {
      Term a = eval(e.args[0], scope, overrides);
      Term b = eval(e.args[1], scope, overrides);
      if (is_logical(e.bop))
        return bit(fmt::format("({} {} {})", e.bop == BinaryOp::LogicAnd ? "and" : "or", nonzero(a), nonzero(b)));
      if (is_shift(e.bop)) {
        unsigned w = std::max(a.w, b.w);
        const bool arith = e.bop == BinaryOp::AShr && a.sg;
        const char* op = e.bop == BinaryOp::Shl ? "bvshl" : arith ? "bvashr" : "bvlshr";
        Term wide{fmt::format("({} {} {})", op, ext(a, w, arith).s, ext(b, w, false).s), w, a.sg};
        Term r = ext(wide, a.w, false);
        r.sg = a.sg;
        return r;
      }
      const unsigned w = std::max(a.w, b.w);
      const bool sg = a.sg && b.sg;
      const std::string x = ext(a, w, sg).s, y = ext(b, w, sg).s;
      auto arith = [&](const char* op) { return Term{fmt::format("({} {} {})", op, x, y), w, sg}; };
      auto cmp = [&](const char* op) { return bit(fmt::format("({} {} {})", op, x, y)); };
      switch (e.bop) {
        case BinaryOp::Add: return arith("bvadd");
        case BinaryOp::Sub: return arith("bvsub");
        case BinaryOp::Mul: return arith("bvmul");
        case BinaryOp::And: return arith("bvand");
        case BinaryOp::Or: return arith("bvor");
        case BinaryOp::Xor: return arith("bvxor");
        case BinaryOp::Eq: return cmp("=");
        case BinaryOp::Ne: return cmp("distinct");
        case BinaryOp::Lt: return cmp(sg ? "bvslt" : "bvult");
        case BinaryOp::Le: return cmp(sg ? "bvsle" : "bvule");
        case BinaryOp::Gt: return cmp(sg ? "bvsgt" : "bvugt");
        case BinaryOp::Ge: return cmp(sg ? "bvsge" : "bvuge");
        default: break;
      }
      break;
    }
    case Expr::Kind::Ternary: {
      Term c = eval(e.args[0], scope, overrides);
      Term a = eval(e.args[1], scope, overrides);
      Term b = eval(e.args[2], scope, overrides);
      const unsigned w = std::max(a.w, b.w);
      const bool sg = a.sg && b.sg;
      return {fmt::format("(ite {} {} {})", nonzero(c), ext(a, w, sg).s, ext(b, w, sg).s), w, sg};
    }
  }
  throw UnsupportedConstruct("expression kind in SMT export");
}

void Unroller::step(std::size_t t) {
  t_ = t;
  std::map<std::size_t, std::string> next;
  for (const auto& b : flat_.blocks) {
    SmtBuilder builder(*this, b.scope);
    SymbolicExecutor<SmtBuilder> exec(builder);
    auto state = exec.run(b.block.body);
    for (const auto& [local, term] : state.next) next[flat_.scopes[b.scope].lookup(local)] = term.s;
  }
  for (std::size_t i = 0; i < flat_.signals.size(); ++i) {
    if (flat_.signals[i].kind != SignalKind::Reg) continue;
    auto it = next.find(i);
    define(i, t + 1, it != next.end() ? it->second : symbol(i, t));
  }
}

void check_interfaces(const Design& a, const Design& b) {
  if (input_interface(a) != input_interface(b) || output_interface(a) != output_interface(b))
    throw PreconditionError("designs have different top-level interfaces");
}

}  // namespace

std::size_t miter_input_bits(const Design& d, std::size_t unroll) {
  std::size_t bits = 0;
  for (const auto& s : input_interface(d)) bits += s.width;
  return bits * unroll;
}

std::string export_smt_miter(const Design& seed, const Design& variant, std::size_t unroll) {
  if (unroll == 0) throw PreconditionError("unroll must be at least 1");
  if (has_profiled(variant) || has_profiled(seed))
    throw PreconditionError(
        "SMT miter requires tautological guards: a profiled guard is only true under the profiling stimulus, "
        "so free symbolic inputs would report false inequivalence");
  check_interfaces(seed, variant);
  std::ostringstream out;
  out << "(set-logic QF_BV)\n";
  const auto inputs = input_interface(seed);
  for (std::size_t t = 0; t < unroll; ++t)
    for (const auto& in : inputs) out << fmt::format("(declare-fun |in_{}@{}| () (_ BitVec {}))\n", in.name, t, in.width);
  Unroller a(seed, "a", out), b(variant, "b", out);
  a.initial_state();
  b.initial_state();
  std::vector<std::string> diffs;
  for (std::size_t t = 0; t < unroll; ++t) {
    a.settle(t);
    b.settle(t);
    for (std::size_t k = 0; k < a.flat().outputs.size(); ++k)
      diffs.push_back(fmt::format("(distinct {} {})", a.symbol(a.flat().outputs[k], t),
                                  b.symbol(b.flat().outputs[k], t)));
    if (t + 1 < unroll) {
      a.step(t);
      b.step(t);
    }
  }
  if (diffs.empty()) {
    out << "(assert false)\n";
  } else {
    out << "(assert (or";
    for (const auto& d : diffs) out << "\n  " << d;
    out << "))\n";
  }
  out << "(check-sat)\n(exit)\n";
  return out.str();
}

ExhaustiveResult exhaustive_equivalence(const Design& a, const Design& b, std::size_t unroll, std::size_t max_bits) {
  check_interfaces(a, b);
  const std::size_t bits = miter_input_bits(a, unroll);
  if (bits > max_bits || bits >= 63)
    throw PreconditionError(fmt::format("{} symbolic input bits exceed the exhaustive limit {}", bits, max_bits));
  Simulator sa(a), sb(b);
  ExhaustiveResult r;
  Stimulus s;
  s.inputs = input_interface(a);
  s.rst.assign(unroll, false);
  s.values.assign(unroll, std::vector<std::uint64_t>(s.inputs.size(), 0));
  const std::uint64_t total = std::uint64_t{1} << bits;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (std::size_t t = 0; t < unroll; ++t)
      for (std::size_t i = 0; i < s.inputs.size(); ++i) {
        s.values[t][i] = c & width_mask(s.inputs[i].width);
        c >>= s.inputs[i].width;
      }
    ++r.sequences;
    Verdict v = compare_traces(sa.run(s), sb.run(s));
    if (!v.equivalent()) {
      r.equivalent = false;
      r.counterexample = s;
      r.verdict = v;
      return r;
    }
  }
  return r;
}

std::optional<std::string> solve_external(const std::string& smt, const std::string& solver, double timeout_seconds) {
  bool found = solver.find('/') != std::string::npos;
  if (!found) {
    const char* path = std::getenv("PATH");
    std::stringstream ss(path ? path : "");
    std::string dir;
    while (!found && std::getline(ss, dir, ':'))
      found = !dir.empty() && access((std::filesystem::path(dir) / solver).c_str(), X_OK) == 0;
  }
  if (!found) return std::nullopt;
  char tmpl[] = "/tmp/synthfuzz_miter_XXXXXX";
  int fd = mkstemp(tmpl);
  if (fd < 0) throw IoError("cannot create temporary SMT file");
  close(fd);
  {
    std::ofstream f(tmpl);
    f << smt;
  }
  const std::string cmd = fmt::format("{} -T:{} {} 2>&1", solver, static_cast<int>(timeout_seconds + 0.5), tmpl);
  std::string output;
  if (FILE* p = popen(cmd.c_str(), "r")) {
    char buf[256];
    while (fgets(buf, sizeof buf, p)) output += buf;
    pclose(p);
  }
  std::filesystem::remove(tmpl);
  std::istringstream lines(output);
  std::string line;
  while (std::getline(lines, line)) {
    if (line == "sat" || line == "unsat" || line == "unknown") return line;
  }
  return std::string("unknown");
}

}  // namespace synthfuzz
