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

#include "oracles.hpp"

#include <cmath>
#include <stdexcept>

#include "synthfuzz/flatten.hpp"

namespace oracle {

using namespace synthfuzz;

namespace {

std::uint64_t mask(unsigned w) { return w >= 64 ? ~0ULL : (1ULL << w) - 1; }

// Value extended to `w` bits, sign-extending only when `as_signed`.
std::uint64_t widen(const Value& v, unsigned w, bool as_signed) {
  std::uint64_t x = v.bits & mask(v.width);
  if (as_signed && v.width < 64 && (x >> (v.width - 1)) & 1) x |= ~mask(v.width);
  return x & mask(w);
}

std::int64_t as_int(std::uint64_t x, unsigned w) {
  if (w < 64 && (x >> (w - 1)) & 1) x |= ~mask(w);
  return static_cast<std::int64_t>(x);
}

Value bit(bool b) { return {b ? 1u : 0u, 1, false}; }

}  // namespace

Value eval(const Expr& e, const Env& env) {
  switch (e.kind) {
    case Expr::Kind::Const:
      return {e.value & mask(e.width), e.width, e.is_signed};
    case Expr::Kind::Ref: {
      auto it = env.find(e.name);
      if (it == env.end()) throw std::runtime_error("unbound " + e.name);
      return it->second;
    }
    case Expr::Kind::Select: {
      auto it = env.find(e.name);
      if (it == env.end()) throw std::runtime_error("unbound " + e.name);
      unsigned w = e.msb - e.lsb + 1;
      return {(it->second.bits >> e.lsb) & mask(w), w, false};
    }
    case Expr::Kind::Concat: {
      std::uint64_t x = 0;
      unsigned w = 0;
      for (const auto& a : e.args) {
        Value v = eval(a, env);
        x = (v.width >= 64 ? 0 : x << v.width) | (v.bits & mask(v.width));
        w += v.width;
      }
      return {x & mask(w), w, false};
    }
    case Expr::Kind::Unary: {
      Value a = eval(e.args[0], env);
      std::uint64_t x = a.bits & mask(a.width);
      switch (e.uop) {
        case UnaryOp::Not: return {~x & mask(a.width), a.width, a.is_signed};
        case UnaryOp::Neg: return {(0 - x) & mask(a.width), a.width, a.is_signed};
        case UnaryOp::LogicNot: return bit(x == 0);
        case UnaryOp::RedAnd: return bit(x == mask(a.width));
        case UnaryOp::RedOr: return bit(x != 0);
        case UnaryOp::RedXor: {
          unsigned ones = 0;
          for (unsigned i = 0; i < a.width; ++i) ones += (x >> i) & 1;
          return bit(ones % 2 == 1);
        }
      }
      break;
    }
    case Expr::Kind::Binary: {
      Value a = eval(e.args[0], env);
      Value b = eval(e.args[1], env);
      if (e.bop == BinaryOp::LogicAnd) return bit((a.bits & mask(a.width)) && (b.bits & mask(b.width)));
      if (e.bop == BinaryOp::LogicOr) return bit((a.bits & mask(a.width)) || (b.bits & mask(b.width)));
      if (e.bop == BinaryOp::Shl || e.bop == BinaryOp::Shr || e.bop == BinaryOp::AShr) {
        std::uint64_t x = a.bits & mask(a.width);
        std::uint64_t n = b.bits & mask(b.width);
        std::uint64_t r = 0;
        if (e.bop == BinaryOp::Shl) {
          r = n >= a.width ? 0 : x << n;
        } else if (e.bop == BinaryOp::AShr && a.is_signed) {
          std::int64_t s = as_int(x, a.width);
          r = static_cast<std::uint64_t>(s >> std::min<std::uint64_t>(n, a.width - 1));
        } else {
          r = n >= a.width ? 0 : x >> n;
        }
        return {r & mask(a.width), a.width, a.is_signed};
      }
      const unsigned w = std::max(a.width, b.width);
      const bool sg = a.is_signed && b.is_signed;
      const std::uint64_t x = widen(a, w, sg);
      const std::uint64_t y = widen(b, w, sg);
      auto less = [&](std::uint64_t p, std::uint64_t q) { return sg ? as_int(p, w) < as_int(q, w) : p < q; };
      switch (e.bop) {
        case BinaryOp::Add: return {(x + y) & mask(w), w, sg};
        case BinaryOp::Sub: return {(x - y) & mask(w), w, sg};
        case BinaryOp::Mul: return {(x * y) & mask(w), w, sg};
        case BinaryOp::And: return {x & y, w, sg};
        case BinaryOp::Or: return {x | y, w, sg};
        case BinaryOp::Xor: return {x ^ y, w, sg};
        case BinaryOp::Eq: return bit(x == y);
        case BinaryOp::Ne: return bit(x != y);
        case BinaryOp::Lt: return bit(less(x, y));
        case BinaryOp::Le: return bit(!less(y, x));
        case BinaryOp::Gt: return bit(less(y, x));
        case BinaryOp::Ge: return bit(!less(x, y));
        default: break;
      }
      break;
    }
    case Expr::Kind::Ternary: {
      Value c = eval(e.args[0], env);
      Value a = eval(e.args[1], env);
      Value b = eval(e.args[2], env);
      const unsigned w = std::max(a.width, b.width);
      const bool sg = a.is_signed && b.is_signed;
      return {(c.bits & mask(c.width)) ? widen(a, w, sg) : widen(b, w, sg), w, sg};
    }
  }
  throw std::runtime_error("bad expression");
}

namespace {

void expr_guards(const std::string& module, const Expr& e, std::vector<GuardSite>& out) {
  if (e.kind == Expr::Kind::Ternary && e.guard != GuardKind::None) out.push_back({module, e.args[0], e.guard});
  for (const auto& a : e.args) expr_guards(module, a, out);
}

void stmt_guards(const std::string& module, const std::vector<Stmt>& body, std::vector<GuardSite>& out) {
  for (const auto& s : body) {
    if (const auto* a = std::get_if<AssignStmt>(&s.node)) {
      expr_guards(module, a->value, out);
    } else if (const auto* i = std::get_if<IfStmt>(&s.node)) {
      if (i->guard != GuardKind::None) out.push_back({module, i->cond, i->guard});
      expr_guards(module, i->cond, out);
      stmt_guards(module, i->then_body, out);
      stmt_guards(module, i->else_body, out);
    } else if (const auto* c = std::get_if<CaseStmt>(&s.node)) {
      for (const auto& item : c->items) stmt_guards(module, item.body, out);
      stmt_guards(module, c->default_body, out);
    }
  }
}

}  // namespace

std::vector<GuardSite> guard_sites(const Design& d) {
  std::vector<GuardSite> out;
  for (const auto& m : d.modules)
    for (const auto& item : m.items) {
      if (const auto* a = std::get_if<ContinuousAssign>(&item)) expr_guards(m.name, a->value, out);
      if (const auto* b = std::get_if<AlwaysBlock>(&item)) stmt_guards(m.name, b->body, out);
    }
  return out;
}

bool guard_holds_exhaustively(const Expr& cond, const std::string& var, unsigned width, bool is_signed) {
  const std::uint64_t n = 1ULL << width;
  for (std::uint64_t x = 0; x < n; ++x) {
    Env env{{var, Value{x, width, is_signed}}};
    Value v = eval(cond, env);
    if ((v.bits & mask(v.width)) == 0) return false;
  }
  return true;
}

bool has_comb_loop(const Design& d) {
  FlatDesign flat = flatten(d);
  const std::size_t n = flat.signals.size();
  std::vector<std::vector<std::size_t>> reads(n);
  for (const auto& a : flat.assigns) {
    const FlatScope& scope = flat.scopes[a.scope];
    for_each_read(a.expr, [&](const std::string& name) { reads[a.target].push_back(scope.lookup(name)); });
  }
  // 0 unvisited, 1 on stack, 2 done
  std::vector<int> color(n, 0);
  for (std::size_t root = 0; root < n; ++root) {
    if (color[root]) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
    color[root] = 1;
    while (!stack.empty()) {
      auto& [node, next] = stack.back();
      if (next < reads[node].size()) {
        std::size_t m = reads[node][next++];
        if (color[m] == 1) return true;
        if (color[m] == 0) {
          color[m] = 1;
          stack.push_back({m, 0});
        }
      } else {
        color[node] = 2;
        stack.pop_back();
      }
    }
  }
  return false;
}

namespace {

bool delete_nth(std::vector<Stmt>& list, std::size_t& n) {
  for (std::size_t j = 0; j < list.size(); ++j) {
    if (n == 0) {
      list.erase(list.begin() + static_cast<std::ptrdiff_t>(j));
      return true;
    }
    --n;
    if (auto* i = std::get_if<IfStmt>(&list[j].node)) {
      if (delete_nth(i->then_body, n) || delete_nth(i->else_body, n)) return true;
    } else if (auto* c = std::get_if<CaseStmt>(&list[j].node)) {
      for (auto& item : c->items)
        if (delete_nth(item.body, n)) return true;
      if (delete_nth(c->default_body, n)) return true;
    }
  }
  return false;
}

std::size_t tree_size(const std::vector<Stmt>& list) {
  std::size_t n = 0;
  for (const auto& s : list) {
    ++n;
    if (const auto* i = std::get_if<IfStmt>(&s.node)) n += tree_size(i->then_body) + tree_size(i->else_body);
    if (const auto* c = std::get_if<CaseStmt>(&s.node)) {
      for (const auto& item : c->items) n += tree_size(item.body);
      n += tree_size(c->default_body);
    }
  }
  return n;
}

}  // namespace

std::vector<Design> single_deletions(const Design& d) {
  std::vector<Design> out;
  for (std::size_t m = 0; m < d.modules.size(); ++m) {
    const ModuleDef& mod = d.modules[m];
    for (std::size_t i = 0; i < mod.items.size(); ++i) {
      Design c = d;
      c.modules[m].items.erase(c.modules[m].items.begin() + static_cast<std::ptrdiff_t>(i));
      out.push_back(std::move(c));
      if (const auto* b = std::get_if<AlwaysBlock>(&mod.items[i])) {
        for (std::size_t k = 0, total = tree_size(b->body); k < total; ++k) {
          Design c2 = d;
          std::size_t n = k;
          delete_nth(std::get<AlwaysBlock>(c2.modules[m].items[i]).body, n);
          out.push_back(std::move(c2));
        }
      }
    }
    if (mod.name == d.top) {
      for (const auto& p : mod.ports) {
        if (p.direction != Direction::Output) continue;
        Design c = d;
        ModuleDef& top = c.modules[m];
        std::erase_if(top.ports, [&](const Port& q) { return q.name == p.name; });
        std::erase_if(top.items, [&](const Item& it) {
          const auto* a = std::get_if<ContinuousAssign>(&it);
          return a && a->target == p.name;
        });
        out.push_back(std::move(c));
      }
    } else {
      Design c = d;
      c.modules.erase(c.modules.begin() + static_cast<std::ptrdiff_t>(m));
      out.push_back(std::move(c));
    }
  }
  return out;
}

double distance(const Metrics& a, const Metrics& b) {
  auto sq = [](std::size_t x, std::size_t y) {
    double d = static_cast<double>(x) - static_cast<double>(y);
    return d * d;
  };
  return std::sqrt(sq(a.v, b.v) + sq(a.c, b.c) + sq(a.s, b.s));
}

std::vector<double> posterior(const std::vector<double>& distance, const std::vector<double>& timing) {
  double sd = 0, st = 0;
  for (double x : distance) sd += x;
  for (double x : timing) st += x;
  std::vector<double> p(distance.size());
  double z = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    double like = sd > 0 ? distance[i] / sd : 1.0 / p.size();
    double pri = st > 0 ? timing[i] / st : 1.0 / p.size();
    p[i] = like * pri;
    z += p[i];
  }
  for (double& x : p) x = z > 0 ? x / z : 1.0 / p.size();
  return p;
}

double sign_test_p(std::size_t wins, std::size_t n) {
  // Sum of C(n, k) / 2^n in log space.
  double p = 0;
  for (std::size_t k = wins; k <= n; ++k)
    p += std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) - n * std::log(2.0));
  return std::min(p, 1.0);
}

std::size_t newline_count(const std::string& text) {
  std::size_t n = 0;
  for (char c : text) n += c == '\n';
  return n;
}

Expr random_expr(Rng& rng, const std::vector<std::pair<std::string, unsigned>>& signals, unsigned depth) {
  if (depth == 0 || rng.chance(0.25)) {
    if (signals.empty() || rng.chance(0.3)) {
      unsigned w = 1 + static_cast<unsigned>(rng.below(16));
      return Expr::constant(w, rng.bits(w), rng.chance(0.3));
    }
    const auto& [name, w] = signals[rng.below(signals.size())];
    if (w > 1 && rng.chance(0.3)) {
      unsigned lsb = static_cast<unsigned>(rng.below(w));
      unsigned msb = lsb + static_cast<unsigned>(rng.below(w - lsb));
      return Expr::select(name, msb, lsb);
    }
    return Expr::ref(name);
  }
  switch (rng.below(4)) {
    case 0: {
      static const UnaryOp ops[] = {UnaryOp::Not, UnaryOp::Neg, UnaryOp::LogicNot,
                                    UnaryOp::RedAnd, UnaryOp::RedOr, UnaryOp::RedXor};
      return Expr::unary(ops[rng.below(6)], random_expr(rng, signals, depth - 1));
    }
    case 1: {
      auto op = static_cast<BinaryOp>(rng.below(static_cast<std::uint64_t>(BinaryOp::LogicOr) + 1));
      return Expr::binary(op, random_expr(rng, signals, depth - 1), random_expr(rng, signals, depth - 1));
    }
    case 2:
      return Expr::ternary(random_expr(rng, signals, depth - 1), random_expr(rng, signals, depth - 1),
                           random_expr(rng, signals, depth - 1));
    default: {
      // Concatenate constants and refs only, keeping the width small.
      std::vector<Expr> parts;
      for (std::size_t i = 0, n = 2 + rng.below(2); i < n; ++i) parts.push_back(random_expr(rng, signals, 0));
      return Expr::concat(std::move(parts));
    }
  }
}

namespace {

bool perturb_expr(Expr& e, std::size_t& skip) {
  if (e.kind == Expr::Kind::Binary) {
    BinaryOp to = e.bop;
    switch (e.bop) {
      case BinaryOp::Add: to = BinaryOp::Sub; break;
      case BinaryOp::Sub: to = BinaryOp::Add; break;
      case BinaryOp::Mul: to = BinaryOp::Add; break;
      case BinaryOp::And: to = BinaryOp::Or; break;
      case BinaryOp::Or: to = BinaryOp::And; break;
      case BinaryOp::Xor: to = BinaryOp::Or; break;
      case BinaryOp::Eq: to = BinaryOp::Ne; break;
      case BinaryOp::Ne: to = BinaryOp::Eq; break;
      case BinaryOp::Lt: to = BinaryOp::Le; break;
      case BinaryOp::Le: to = BinaryOp::Lt; break;
      case BinaryOp::Gt: to = BinaryOp::Ge; break;
      case BinaryOp::Ge: to = BinaryOp::Gt; break;
      default: break;
    }
    if (to != e.bop) {
      if (skip == 0) {
        e.bop = to;
        return true;
      }
      --skip;
    }
  }
  for (auto& a : e.args)
    if (perturb_expr(a, skip)) return true;
  return false;
}

bool perturb_body(std::vector<Stmt>& body, std::size_t& skip) {
  for (auto& s : body) {
    if (auto* a = std::get_if<AssignStmt>(&s.node)) {
      if (perturb_expr(a->value, skip)) return true;
    } else if (auto* i = std::get_if<IfStmt>(&s.node)) {
      if (perturb_body(i->then_body, skip) || perturb_body(i->else_body, skip)) return true;
    } else if (auto* c = std::get_if<CaseStmt>(&s.node)) {
      for (auto& item : c->items)
        if (perturb_body(item.body, skip)) return true;
      if (perturb_body(c->default_body, skip)) return true;
    }
  }
  return false;
}

}  // namespace

bool perturb_operator(Design& d, std::size_t skip) {
  std::vector<ModuleDef*> order;
  if (ModuleDef* top = d.find(d.top)) order.push_back(top);
  for (auto& m : d.modules)
    if (m.name != d.top) order.push_back(&m);
  for (ModuleDef* m : order) {
    for (auto& item : m->items)
      if (auto* a = std::get_if<ContinuousAssign>(&item))
        if (perturb_expr(a->value, skip)) return true;
    for (auto& item : m->items)
      if (auto* b = std::get_if<AlwaysBlock>(&item))
        if (perturb_body(b->body, skip)) return true;
  }
  return false;
}

}  // namespace oracle
