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

#include "synthfuzz/seed_gen.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "expr_gen.hpp"
#include "synthfuzz/bits.hpp"
#include "synthfuzz/error.hpp"
#include "synthfuzz/printer.hpp"
#include "synthfuzz/rng.hpp"

namespace synthfuzz {

void GenConfig::check() const {
  if (line_min < 1) throw ConfigError("line budget minimum must be at least 1");
  if (line_max < line_min) throw ConfigError("line budget maximum below minimum");
  if (max_submodules < min_submodules) throw ConfigError("max_submodules below min_submodules");
  if (widths.empty()) throw ConfigError("width choices are empty");
  for (unsigned w : widths)
    if (w == 0 || w > kMaxWidth) throw ConfigError("width choice out of range");
  const double ws[] = {weights.arith, weights.bitwise, weights.unary, weights.shift, weights.ternary,
                       weights.concat, weights.compare, weights.reduce, weights.logical};
  bool positive = false;
  for (double w : ws) {
    if (w < 0) throw ConfigError("operator weights must be nonnegative");
    positive = positive || w > 0;
  }
  if (!positive) throw ConfigError("at least one operator weight must be positive");
  if (p_sequential < 0 || p_sequential > 1 || p_signed < 0 || p_signed > 1)
    throw ConfigError("probabilities must lie in [0, 1]");
}

namespace {

using detail::PoolSig;
using Sig = PoolSig;

struct Block {
  std::size_t item = 0;                // index into ModBuilder::body
  std::vector<std::string> nba_regs;   // registers written with <=
  std::string temp;                    // blocking temporary, if any
  std::size_t body_lines = 0;
};

struct ModBuilder {
  ModuleDef def;
  std::vector<Item> decls;
  std::vector<Item> body;
  std::vector<Sig> readable;  // inputs, registers and nets already driven
  std::vector<Sig> pending;   // registers declared but not yet assigned
  std::vector<Block> blocks;
  std::size_t next_id = 0;
  std::size_t lines = 0;       // printed lines, excluding output drivers
  std::size_t instances = 0;   // instances reachable below this module
};

class Generator {
 public:
  Generator(const GenConfig& cfg, std::uint64_t seed)
      : cfg_(cfg), rng_(seed), gen_(rng_, cfg_.widths, cfg_.weights) {}

  Design run() {
    const std::size_t target = cfg_.line_min + (cfg_.line_max - cfg_.line_min) * 3 / 10;
    std::size_t subs = static_cast<std::size_t>(
        rng_.range(static_cast<std::int64_t>(cfg_.min_submodules), static_cast<std::int64_t>(cfg_.max_submodules)));
    std::size_t fit = cfg_.line_max > 40 ? (cfg_.line_max - 40) / 40 : 0;
    subs = std::min({subs, fit, cfg_.max_instances});

    std::vector<ModBuilder> mods;
    for (std::size_t i = 0; i < subs; ++i) mods.push_back(skeleton("sub" + std::to_string(i), false, mods));
    mods.push_back(skeleton("top", true, mods));
    // Submodules skipped for the instance cap are dropped.
    std::set<std::string> used{"top"};
    for (auto it = mods.rbegin(); it != mods.rend(); ++it) {
      if (!used.count(it->def.name)) continue;
      for (const auto& item : it->body)
        if (const auto* inst = std::get_if<Instance>(&item)) used.insert(inst->module);
    }
    std::vector<ModBuilder> kept;
    for (auto& m : mods)
      if (used.count(m.def.name)) kept.push_back(std::move(m));
    mods = std::move(kept);

    auto total = [&] {
      std::size_t n = mods.empty() ? 0 : mods.size() - 1;
      for (const auto& m : mods)
        for (const auto& p : m.def.ports) n += p.direction == Direction::Output ? 1 : 0;
      for (const auto& m : mods) n += m.lines;
      return n;
    };
    // Grow, favouring the top module, until the estimate reaches the target.
    std::vector<double> share;
    for (std::size_t i = 0; i < mods.size(); ++i) share.push_back(i + 1 == mods.size() ? 2.0 : 1.0);
    std::size_t guard = 0;
    while (total() < target && guard++ < 100000) {
      ModBuilder& m = mods[rng_.weighted(share)];
      if (rng_.chance(cfg_.p_sequential)) {
        grow_sequential(m);
      } else {
        grow_combinational(m);
      }
    }
    Design d;
    for (auto& m : mods) {
      finish(m);
      d.modules.push_back(std::move(m.def));
    }
    d.top = "top";
    return d;
  }

 private:
  // ---- signals -----------------------------------------------------------

  unsigned pick_width() { return gen_.pick_width(); }

  bool pick_signed(unsigned width) { return width > 1 && rng_.chance(cfg_.p_signed); }

  std::string fresh(ModBuilder& m, const char* prefix) { return prefix + std::to_string(m.next_id++); }

  Sig new_net(ModBuilder& m, unsigned width) {
    Sig s{fresh(m, "n"), width, pick_signed(width)};
    m.decls.push_back(NetDecl{s.name, s.width, s.is_signed});
    ++m.lines;
    return s;
  }

  Sig new_reg(ModBuilder& m, unsigned width) {
    Sig s{fresh(m, "r"), width, pick_signed(width)};
    m.decls.push_back(RegDecl{s.name, s.width, s.is_signed, rng_.bits(width)});
    ++m.lines;
    return s;
  }

  // ---- expressions -------------------------------------------------------

  unsigned depth() { return 1 + static_cast<unsigned>(rng_.below(cfg_.max_expr_depth)); }

  // ---- statements --------------------------------------------------------

  Stmt statement(ModBuilder& m, Block& b, unsigned level) {
    const bool nest = level < cfg_.max_control_depth;
    std::vector<double> weights{6.0, nest ? 2.0 : 0.0, nest ? 1.0 : 0.0};
    switch (rng_.weighted(weights)) {
      case 1: {
        Expr cond = gen_.condition(m.readable, depth());
        std::vector<Stmt> then_body = statements(m, b, level + 1, 1 + rng_.below(3));
        std::vector<Stmt> else_body;
        if (rng_.chance(0.5)) else_body = statements(m, b, level + 1, 1 + rng_.below(2));
        return make_if(std::move(cond), std::move(then_body), std::move(else_body));
      }
      case 2: {
        CaseStmt c;
        unsigned sw = 2 + static_cast<unsigned>(rng_.below(2));
        c.subject = gen_.leaf(m.readable, sw);
        std::vector<std::uint64_t> labels;
        for (std::uint64_t v = 0; v < (1ULL << sw); ++v) labels.push_back(v);
        for (std::size_t i = labels.size(); i > 1; --i) std::swap(labels[i - 1], labels[rng_.below(i)]);
        std::size_t items = 2 + rng_.below(3);
        for (std::size_t i = 0; i < items; ++i) {
          CaseItem item;
          item.labels.push_back(Expr::constant(sw, labels[i]));
          item.body = statements(m, b, level + 1, 1 + rng_.below(2));
          c.items.push_back(std::move(item));
        }
        if (rng_.chance(0.5)) {
          c.has_default = true;
          c.default_body = statements(m, b, level + 1, 1);
        }
        return Stmt{std::move(c)};
      }
      default:
        return assignment(m, b);
    }
  }

  Stmt assignment(ModBuilder& m, Block& b) {
    if (b.nba_regs.empty() || rng_.chance(0.25)) {
      Sig r = new_reg(m, pick_width());
      b.nba_regs.push_back(r.name);
      m.pending.push_back(r);
      m.lines += 1;  // reset branch line
    }
    const std::string& target = rng_.pick(b.nba_regs);
    unsigned w = width_of(m, target);
    return make_assign(target, gen_.expr(m.readable, w, depth()));
  }

  std::vector<Stmt> statements(ModBuilder& m, Block& b, unsigned level, std::size_t n) {
    std::vector<Stmt> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(statement(m, b, level));
    return out;
  }

  unsigned width_of(const ModBuilder& m, const std::string& name) const {
    for (const auto& d : m.decls)
      if (const auto* r = std::get_if<RegDecl>(&d); r && r->name == name) return r->width;
    return 1;
  }

  // Registers become readable once some statement drives them.
  void publish_pending(ModBuilder& m) {
    for (auto& s : m.pending) m.readable.push_back(std::move(s));
    m.pending.clear();
  }

  void add_statements(ModBuilder& m, Block& b, std::size_t n) {
    auto& blk = std::get<AlwaysBlock>(m.body[b.item]);
    for (std::size_t i = 0; i < n; ++i) {
      Stmt s = statement(m, b, 0);
      std::size_t l = stmt_line_count(s);
      b.body_lines += l;
      m.lines += l;
      blk.body.push_back(std::move(s));
    }
    publish_pending(m);
  }

  void new_block(ModBuilder& m) {
    m.body.push_back(AlwaysBlock{});
    m.lines += 5;
    Block b;
    b.item = m.body.size() - 1;
    if (rng_.chance(0.15)) {
      // Blocking temporary computed first and read by later statements.
      Sig t = new_reg(m, pick_width());
      m.lines += 1;
      b.temp = t.name;
      Stmt s = make_assign(t.name, gen_.expr(m.readable, t.width, depth()), true);
      m.lines += 1;
      std::get<AlwaysBlock>(m.body[b.item]).body.push_back(std::move(s));
      m.readable.push_back(t);
    }
    m.blocks.push_back(b);
    add_statements(m, m.blocks.back(), 2 + rng_.below(4));
  }

  void grow_sequential(ModBuilder& m) {
    if (m.blocks.empty() || rng_.chance(0.3)) {
      new_block(m);
    } else {
      Block& b = m.blocks[rng_.below(m.blocks.size())];
      add_statements(m, b, 1 + rng_.below(2));
    }
  }

  void grow_combinational(ModBuilder& m) {
    Sig n = new_net(m, pick_width());
    m.body.push_back(ContinuousAssign{n.name, gen_.expr(m.readable, n.width, depth())});
    ++m.lines;
    m.readable.push_back(n);
  }

  // ---- modules -----------------------------------------------------------

  ModBuilder skeleton(const std::string& name, bool is_top, std::vector<ModBuilder>& subs) {
    ModBuilder m;
    m.def.name = name;
    std::size_t n_in = is_top ? 3 + rng_.below(4) : 2 + rng_.below(3);
    std::size_t n_out = is_top ? 2 + rng_.below(3) : 1 + rng_.below(3);
    std::size_t budget = is_top && cfg_.max_input_bits > 0 ? cfg_.max_input_bits : 0;
    if (budget > 0) n_in = std::min(n_in, budget);
    for (std::size_t i = 0; i < n_in; ++i) {
      unsigned w = i == 0 ? 8 : pick_width();
      if (budget > 0) {
        // Leave at least one bit for each remaining input.
        w = static_cast<unsigned>(std::min<std::size_t>(w, budget - (n_in - 1 - i)));
        budget -= w;
      }
      Port p{"i" + std::to_string(i), Direction::Input, w, pick_signed(w)};
      m.readable.push_back(Sig{p.name, p.width, p.is_signed});
      m.def.ports.push_back(p);
    }
    for (std::size_t i = 0; i < n_out; ++i) {
      unsigned w = pick_width();
      m.def.ports.push_back(Port{"o" + std::to_string(i), Direction::Output, w, pick_signed(w)});
    }
    // module line, clk, rst, ports, ");", endmodule
    m.lines = 5 + m.def.ports.size();
    if (is_top) {
      std::size_t used = 0;
      for (auto& s : subs) {
        if (used + 1 + s.instances > cfg_.max_instances) continue;
        used += 1 + s.instances;
        instantiate(m, s);
      }
      m.instances = used;
    } else if (!subs.empty() && rng_.chance(0.3)) {
      // Nested reference to an earlier submodule.
      ModBuilder& child = subs[rng_.below(subs.size())];
      if (child.instances == 0) {
        instantiate(m, child);
        m.instances = 1;
      }
    }
    new_block(m);
    return m;
  }

  void instantiate(ModBuilder& parent, const ModBuilder& child) {
    Instance inst;
    inst.module = child.def.name;
    inst.name = fresh(parent, "u");
    std::vector<Sig> outputs;
    for (const auto& p : child.def.ports) {
      if (p.direction == Direction::Input) {
        inst.bindings.push_back(PortBinding{p.name, gen_.expr(parent.readable, p.width, rng_.below(2))});
      } else {
        Sig net{inst.name + "_" + p.name, p.width, p.is_signed};
        parent.decls.push_back(NetDecl{net.name, net.width, net.is_signed});
        ++parent.lines;
        inst.bindings.push_back(PortBinding{p.name, Expr::ref(net.name)});
        outputs.push_back(net);
      }
    }
    parent.lines += 4 + inst.bindings.size();
    parent.body.push_back(std::move(inst));
    for (auto& s : outputs) parent.readable.push_back(std::move(s));
  }

  void finish(ModBuilder& m) {
    for (const auto& p : m.def.ports) {
      if (p.direction != Direction::Output) continue;
      m.body.push_back(ContinuousAssign{p.name, gen_.expr(m.readable, p.width, depth())});
    }
    m.def.items = std::move(m.decls);
    for (auto& item : m.body) m.def.items.push_back(std::move(item));
  }

  const GenConfig& cfg_;
  Rng rng_;
  detail::ExprGen gen_;
};

}  // namespace

Design generate_seed(const GenConfig& cfg) {
  cfg.check();
  std::size_t best_lines = 0;
  for (std::uint64_t attempt = 0; attempt < 10; ++attempt) {
    std::uint64_t seed = attempt == 0 ? cfg.seed : derive_seed(cfg.seed, attempt);
    Design d = Generator(cfg, seed).run();
    std::size_t lines = printed_line_count(d);
    if (lines >= cfg.line_min && lines <= cfg.line_max) return d;
    best_lines = lines;
  }
  throw BudgetInfeasible("no design within " + std::to_string(cfg.line_min) + ".." +
                         std::to_string(cfg.line_max) + " lines after 10 attempts (last had " +
                         std::to_string(best_lines) + ")");
}

Stimulus generate_stimulus(const Design& d, std::size_t cycles, std::uint64_t seed,
                           std::size_t reset_cycles) {
  if (cycles == 0) throw PreconditionError("stimulus needs at least one cycle");
  Stimulus s;
  for (const auto& p : d.top_module().ports)
    if (p.direction == Direction::Input) s.inputs.push_back({p.name, p.width});
  Rng rng(seed);
  s.values.resize(cycles);
  s.rst.resize(cycles);
  for (std::size_t t = 0; t < cycles; ++t) {
    s.rst[t] = t < reset_cycles;
    for (const auto& in : s.inputs) s.values[t].push_back(rng.bits(in.width));
  }
  return s;
}

}  // namespace synthfuzz
