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

// Random width-exact expression builder shared by the seed generator and the
// dead-code injector. Every operand of an arithmetic, bitwise or ternary node
// has the node's own width, so the subset's self-determined width rule and
// Verilog's context-determined sizing agree on every generated expression.

#include <string>
#include <vector>

#include "synthfuzz/ast.hpp"
#include "synthfuzz/rng.hpp"
#include "synthfuzz/seed_gen.hpp"

namespace synthfuzz::detail {

struct PoolSig {
  std::string name;
  unsigned width = 1;
  bool is_signed = false;
};

class ExprGen {
 public:
  ExprGen(Rng& rng, const std::vector<unsigned>& widths, const OpWeights& weights)
      : rng_(rng), widths_(widths), weights_(weights) {}

  unsigned pick_width() { return rng_.pick(widths_); }

  Expr leaf(const std::vector<PoolSig>& pool, unsigned w) {
    if (pool.empty() || rng_.chance(0.12)) return Expr::constant(w, rng_.bits(w));
    std::vector<const PoolSig*> exact, wider, narrower;
    for (const auto& s : pool) {
      if (s.width == w) exact.push_back(&s);
      else if (s.width > w) wider.push_back(&s);
      else narrower.push_back(&s);
    }
    if (!exact.empty() && (rng_.chance(0.75) || (wider.empty() && narrower.empty())))
      return Expr::ref(rng_.pick(exact)->name);
    if (!wider.empty() && (narrower.empty() || rng_.chance(0.6))) {
      const PoolSig* s = rng_.pick(wider);
      unsigned lsb = static_cast<unsigned>(rng_.below(s->width - w + 1));
      return Expr::select(s->name, lsb + w - 1, lsb);
    }
    if (!narrower.empty()) {
      const PoolSig* s = rng_.pick(narrower);
      return Expr::concat({Expr::constant(w - s->width, 0), Expr::ref(s->name)});
    }
    return Expr::ref(rng_.pick(exact)->name);
  }

  Expr expr(const std::vector<PoolSig>& pool, unsigned w, unsigned depth) {
    if (depth == 0) return leaf(pool, w);
    const OpWeights& ow = weights_;
    enum { Leaf, Arith, Bitwise, Unary, Shift, Ternary, Concat, Compare, Reduce, Logical };
    std::vector<double> weights{2.0,
                                ow.arith,
                                ow.bitwise,
                                ow.unary,
                                w > 1 ? ow.shift : 0.0,
                                ow.ternary,
                                w > 1 ? ow.concat : 0.0,
                                w == 1 ? ow.compare : 0.0,
                                w == 1 ? ow.reduce : 0.0,
                                w == 1 ? ow.logical : 0.0};
    // Operands are drawn in sequence so the output does not depend on the
    // compiler's argument evaluation order.
    switch (rng_.weighted(weights)) {
      case Arith: {
        static const BinaryOp ops[] = {BinaryOp::Add, BinaryOp::Sub, BinaryOp::Mul};
        BinaryOp op = ops[rng_.below(3)];
        Expr a = expr(pool, w, depth - 1);
        Expr b = expr(pool, w, depth - 1);
        return Expr::binary(op, std::move(a), std::move(b));
      }
      case Bitwise: {
        static const BinaryOp ops[] = {BinaryOp::And, BinaryOp::Or, BinaryOp::Xor};
        BinaryOp op = ops[rng_.below(3)];
        Expr a = expr(pool, w, depth - 1);
        Expr b = expr(pool, w, depth - 1);
        return Expr::binary(op, std::move(a), std::move(b));
      }
      case Unary: {
        UnaryOp op = rng_.chance(0.7) ? UnaryOp::Not : UnaryOp::Neg;
        return Expr::unary(op, expr(pool, w, depth - 1));
      }
      case Shift: {
        BinaryOp op = rng_.chance(0.5) ? BinaryOp::Shl : BinaryOp::Shr;
        Expr a = expr(pool, w, depth - 1);
        Expr amount = rng_.chance(0.5) ? Expr::constant(3, rng_.below(w < 8 ? w : 8)) : leaf(pool, 3);
        return Expr::binary(op, std::move(a), std::move(amount));
      }
      case Ternary: {
        Expr c = condition(pool, depth - 1);
        Expr a = expr(pool, w, depth - 1);
        Expr b = expr(pool, w, depth - 1);
        return Expr::ternary(std::move(c), std::move(a), std::move(b));
      }
      case Concat: {
        unsigned hi = 1 + static_cast<unsigned>(rng_.below(w - 1));
        Expr a = expr(pool, hi, depth - 1);
        Expr b = expr(pool, w - hi, depth - 1);
        return Expr::concat({std::move(a), std::move(b)});
      }
      case Compare:
        return comparison(pool, depth);
      case Reduce: {
        static const UnaryOp ops[] = {UnaryOp::RedAnd, UnaryOp::RedOr, UnaryOp::RedXor, UnaryOp::LogicNot};
        UnaryOp op = ops[rng_.below(4)];
        unsigned v = std::max(2U, pick_width());
        return Expr::unary(op, expr(pool, v, depth - 1));
      }
      case Logical: {
        BinaryOp op = rng_.chance(0.5) ? BinaryOp::LogicAnd : BinaryOp::LogicOr;
        Expr a = condition(pool, depth - 1);
        Expr b = condition(pool, depth - 1);
        return Expr::binary(op, std::move(a), std::move(b));
      }
      default:
        return leaf(pool, w);
    }
  }

  Expr comparison(const std::vector<PoolSig>& pool, unsigned depth) {
    static const BinaryOp ops[] = {BinaryOp::Eq, BinaryOp::Ne, BinaryOp::Lt,
                                   BinaryOp::Le, BinaryOp::Gt, BinaryOp::Ge};
    BinaryOp op = ops[rng_.below(6)];
    unsigned v = pick_width();
    Expr a = expr(pool, v, depth - 1);
    Expr b = expr(pool, v, depth - 1);
    return Expr::binary(op, std::move(a), std::move(b));
  }

  Expr condition(const std::vector<PoolSig>& pool, unsigned depth) {
    if (depth == 0) return leaf(pool, 1);
    if (rng_.chance(0.8)) return comparison(pool, depth);
    return expr(pool, 1, depth);
  }


 private:
  Rng& rng_;
  const std::vector<unsigned>& widths_;
  const OpWeights& weights_;
};

}  // namespace synthfuzz::detail
