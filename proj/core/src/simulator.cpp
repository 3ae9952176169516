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

#include "synthfuzz/simulator.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

#include "synthfuzz/bits.hpp"
#include "synthfuzz/comb_graph.hpp"
#include "synthfuzz/error.hpp"
#include "synthfuzz/flatten.hpp"
#include "synthfuzz/validate.hpp"

namespace synthfuzz {

const char* to_string(DriverClass c) {
  switch (c) {
    case DriverClass::Input: return "input";
    case DriverClass::Combinational: return "combinational";
    case DriverClass::Sequential: return "sequential";
  }
  return "?";
}

const PointProfile* ValuationProfile::find(const InsertionPoint& p) const {
  auto it = std::lower_bound(points.begin(), points.end(), p,
                             [](const PointProfile& a, const InsertionPoint& key) { return a.point < key; });
  if (it == points.end() || !(it->point == p)) return nullptr;
  return &*it;
}

namespace {

void collect_targets(const std::vector<Stmt>& body, std::set<std::string>& out) {
  for (const auto& s : body) {
    if (const auto* a = std::get_if<AssignStmt>(&s.node)) {
      out.insert(a->target);
    } else if (const auto* i = std::get_if<IfStmt>(&s.node)) {
      collect_targets(i->then_body, out);
      collect_targets(i->else_body, out);
    } else if (const auto* c = std::get_if<CaseStmt>(&s.node)) {
      for (const auto& item : c->items) collect_targets(item.body, out);
      collect_targets(c->default_body, out);
    }
  }
}

}  // namespace

std::vector<VarFacts> eligible_variables(const Design& d, const ModuleDef& m) {
  std::set<std::string> driven_nets, driven_regs;
  for (const auto& item : m.items) {
    if (const auto* a = std::get_if<ContinuousAssign>(&item)) {
      driven_nets.insert(a->target);
    } else if (const auto* b = std::get_if<AlwaysBlock>(&item)) {
      collect_targets(b->body, driven_regs);
    } else if (const auto* inst = std::get_if<Instance>(&item)) {
      const ModuleDef* child = d.find(inst->module);
      for (const auto& bind : inst->bindings) {
        const Port* p = child ? child->find_port(bind.port) : nullptr;
        if (p != nullptr && p->direction == Direction::Output) driven_nets.insert(bind.value.name);
      }
    }
  }
  std::vector<VarFacts> out;
  auto add = [&](const std::string& name, unsigned width, bool is_signed, DriverClass driver) {
    if (width < 2) return;
    VarFacts f;
    f.name = name;
    f.width = width;
    f.is_signed = is_signed;
    f.driver = driver;
    out.push_back(std::move(f));
  };
  for (const auto& p : m.ports) {
    if (p.direction == Direction::Input) {
      add(p.name, p.width, p.is_signed, DriverClass::Input);
    } else if (driven_nets.count(p.name)) {
      add(p.name, p.width, p.is_signed, DriverClass::Combinational);
    }
  }
  for (const auto& item : m.items) {
    if (const auto* n = std::get_if<NetDecl>(&item)) {
      if (driven_nets.count(n->name)) add(n->name, n->width, n->is_signed, DriverClass::Combinational);
    } else if (const auto* r = std::get_if<RegDecl>(&item)) {
      if (driven_regs.count(r->name)) add(r->name, r->width, r->is_signed, DriverClass::Sequential);
    }
  }
  return out;
}

namespace {

constexpr std::uint32_t kNoPoint = static_cast<std::uint32_t>(-1);

struct CExpr {
  Expr::Kind kind = Expr::Kind::Const;
  UnaryOp uop = UnaryOp::Not;
  BinaryOp bop = BinaryOp::Add;
  unsigned width = 1;      // result type
  bool is_signed = false;
  unsigned op_width = 1;   // common operand width for binary ops and ternary branches
  bool op_signed = false;
  std::uint64_t value = 0;
  std::uint32_t slot = 0;
  unsigned lsb = 0;
  std::uint32_t a = 0, b = 0, c = 0;
  unsigned wa = 0, wb = 0, wc = 0;
  bool sa = false, sb = false, sc = false;
  std::vector<std::uint32_t> parts;
  bool check_guard = false;
  std::uint32_t guard_id = 0;
};

struct CBody;

struct CCaseItem {
  std::vector<std::uint32_t> labels;
  std::vector<unsigned> label_widths;
  std::vector<bool> label_signed;
  std::unique_ptr<CBody> body;
};

struct CStmt {
  enum class Kind { Assign, If, Case } kind = Kind::Assign;
  // Assign
  std::uint32_t slot = 0;
  bool blocking = false;
  unsigned target_width = 1;
  std::uint32_t expr = 0;
  unsigned value_width = 1;
  bool value_signed = false;
  // If / Case
  std::uint32_t cond = 0;
  std::unique_ptr<CBody> then_body, else_body;
  bool check_guard = false;
  std::uint32_t guard_id = 0;
  unsigned subject_width = 1;
  bool subject_signed = false;
  std::vector<CCaseItem> items;
  std::unique_ptr<CBody> default_body;
};

struct CBody {
  std::vector<CStmt> stmts;
  std::vector<std::uint32_t> points;  // size stmts+1 when profiled
};

struct CBlock {
  std::size_t scope = 0;
  CBody body;
};

struct CAssign {
  std::uint32_t slot = 0;
  unsigned target_width = 1;
  std::uint32_t expr = 0;
  unsigned value_width = 1;
  bool value_signed = false;
};

struct VarAcc {
  std::uint64_t hits = 0, min = 0, max = 0, first = 0, changed = 0;
  std::uint32_t distinct = 0;
  std::uint64_t seen[VarFacts::kDistinctCap];
};

}  // namespace

struct Simulator::Impl {
  FlatDesign flat;
  std::vector<CExpr> exprs;
  std::vector<CAssign> assigns;  // topological order
  std::vector<CBlock> blocks;
  std::vector<std::uint32_t> reset_slots;
  std::vector<TraceSignal> input_sigs, output_sigs;

  // Profiling layout.
  std::vector<PointProfile> points;                     // sorted by point
  std::map<std::string, std::vector<VarFacts>> module_vars;
  std::vector<std::vector<std::uint32_t>> scope_var_slots;  // per flat scope
  std::vector<std::string> guard_sites;

  // Run state.
  std::vector<std::uint64_t> cur, nxt;
  std::vector<std::pair<std::uint32_t, std::uint64_t>> undo;
  std::vector<std::uint64_t> mark;
  std::uint64_t epoch = 1;
  bool profiling = false;
  bool checking = false;
  std::vector<VarAcc> acc;  // [point * stride + var]
  std::vector<std::size_t> acc_offset;
  std::vector<std::uint64_t> point_hits;
  GuardCheck guard_result;
  std::size_t cycle = 0;
  const std::vector<std::uint32_t>* active_vars = nullptr;

  explicit Impl(const Design& d);
  std::uint32_t compile_expr(const Expr& e, const FlatScope& scope, bool procedural,
                             const std::string& site);
  void compile_body(CBody& out, const std::vector<Stmt>& body, const FlatScope& scope,
                    const InsertionPoint& base, std::vector<PathStep>& path,
                    const std::map<InsertionPoint, std::uint32_t>& point_ids, bool live);
  std::uint64_t eval(std::uint32_t idx);
  void exec(const CBody& body);
  void record(std::uint32_t point);
  void run_cycles(const Stimulus& s, Trace* trace);
};

Simulator::Impl::Impl(const Design& d) {
  validate_design(d);
  flat = flatten(d);
  for (std::size_t i : flat.inputs) input_sigs.push_back({flat.signals[i].name, flat.signals[i].width});
  for (std::size_t i : flat.outputs) output_sigs.push_back({flat.signals[i].name, flat.signals[i].width});

  // Profiling layout: every statement position of every instantiated module.
  std::set<std::string> instantiated;
  for (const auto& sc : flat.scopes) instantiated.insert(sc.module);
  for (const auto& name : instantiated) {
    const ModuleDef* m = d.find(name);
    module_vars[name] = eligible_variables(d, *m);
    for (auto& p : statement_positions(*m)) {
      PointProfile pp;
      pp.point = std::move(p);
      pp.vars = module_vars[name];
      points.push_back(std::move(pp));
    }
  }
  std::sort(points.begin(), points.end(),
            [](const PointProfile& a, const PointProfile& b) { return a.point < b.point; });
  std::map<InsertionPoint, std::uint32_t> point_ids;
  for (std::size_t i = 0; i < points.size(); ++i) point_ids.emplace(points[i].point, static_cast<std::uint32_t>(i));
  acc_offset.resize(points.size() + 1, 0);
  for (std::size_t i = 0; i < points.size(); ++i) acc_offset[i + 1] = acc_offset[i] + points[i].vars.size();
  scope_var_slots.resize(flat.scopes.size());
  for (std::size_t s = 0; s < flat.scopes.size(); ++s)
    for (const auto& v : module_vars[flat.scopes[s].module])
      scope_var_slots[s].push_back(static_cast<std::uint32_t>(flat.scopes[s].lookup(v.name)));

  for (std::size_t idx : assign_order(flat)) {
    const FlatAssign& fa = flat.assigns[idx];
    CAssign ca;
    ca.slot = static_cast<std::uint32_t>(fa.target);
    ca.target_width = flat.signals[fa.target].width;
    ca.expr = compile_expr(fa.expr, flat.scopes[fa.scope], false, "");
    ca.value_width = exprs[ca.expr].width;
    ca.value_signed = exprs[ca.expr].is_signed;
    assigns.push_back(ca);
  }
  std::set<std::uint32_t> resets;
  for (const auto& fb : flat.blocks) {
    CBlock cb;
    cb.scope = fb.scope;
    const FlatScope& scope = flat.scopes[fb.scope];
    InsertionPoint base{scope.module, fb.item_index, {}, 0};
    std::vector<PathStep> path;
    compile_body(cb.body, fb.block.body, scope, base, path, point_ids, true);
    std::set<std::string> targets;
    collect_targets(fb.block.body, targets);
    for (const auto& t : targets) resets.insert(static_cast<std::uint32_t>(scope.lookup(t)));
    blocks.push_back(std::move(cb));
  }
  reset_slots.assign(resets.begin(), resets.end());
  mark.assign(flat.signals.size(), 0);
}

std::uint32_t Simulator::Impl::compile_expr(const Expr& e, const FlatScope& scope, bool procedural,
                                            const std::string& site) {
  CExpr c;
  c.kind = e.kind;
  switch (e.kind) {
    case Expr::Kind::Const:
      c.width = e.width;
      c.is_signed = e.is_signed;
      c.value = truncate(e.value, e.width);
      break;
    case Expr::Kind::Ref: {
      std::size_t s = scope.lookup(e.name);
      c.slot = static_cast<std::uint32_t>(s);
      c.width = flat.signals[s].width;
      c.is_signed = flat.signals[s].is_signed;
      break;
    }
    case Expr::Kind::Select: {
      std::size_t s = scope.lookup(e.name);
      if (e.msb < e.lsb || e.msb >= flat.signals[s].width)
        throw WidthMismatch("select out of range on '" + e.name + "'");
      c.slot = static_cast<std::uint32_t>(s);
      c.lsb = e.lsb;
      c.width = e.msb - e.lsb + 1;
      break;
    }
    case Expr::Kind::Concat: {
      unsigned w = 0;
      for (const auto& a : e.args) {
        std::uint32_t k = compile_expr(a, scope, procedural, site);
        w += exprs[k].width;
        c.parts.push_back(k);
      }
      if (w == 0 || w > kMaxWidth) throw WidthMismatch("concatenation width out of range");
      c.width = w;
      break;
    }
    case Expr::Kind::Unary: {
      c.uop = e.uop;
      c.a = compile_expr(e.args[0], scope, procedural, site);
      c.wa = exprs[c.a].width;
      c.sa = exprs[c.a].is_signed;
      if (e.uop == UnaryOp::LogicNot || is_reduction(e.uop)) {
        c.width = 1;
      } else {
        c.width = c.wa;
        c.is_signed = c.sa;
      }
      break;
    }
    case Expr::Kind::Binary: {
      c.bop = e.bop;
      c.a = compile_expr(e.args[0], scope, procedural, site);
      c.b = compile_expr(e.args[1], scope, procedural, site);
      c.wa = exprs[c.a].width;
      c.sa = exprs[c.a].is_signed;
      c.wb = exprs[c.b].width;
      c.sb = exprs[c.b].is_signed;
      c.op_width = std::max(c.wa, c.wb);
      c.op_signed = c.sa && c.sb;
      if (is_comparison(e.bop) || is_logical(e.bop)) {
        c.width = 1;
      } else if (is_shift(e.bop)) {
        c.width = c.wa;
        c.is_signed = c.sa;
      } else {
        c.width = c.op_width;
        c.is_signed = c.op_signed;
      }
      break;
    }
    case Expr::Kind::Ternary: {
      c.a = compile_expr(e.args[0], scope, procedural, site);
      c.b = compile_expr(e.args[1], scope, procedural, site);
      c.c = compile_expr(e.args[2], scope, procedural, site);
      c.wb = exprs[c.b].width;
      c.sb = exprs[c.b].is_signed;
      c.wc = exprs[c.c].width;
      c.sc = exprs[c.c].is_signed;
      c.width = c.op_width = std::max(c.wb, c.wc);
      c.is_signed = c.op_signed = c.sb && c.sc;
      if (procedural && e.guard != GuardKind::None) {
        c.check_guard = true;
        c.guard_id = static_cast<std::uint32_t>(guard_sites.size());
        guard_sites.push_back(site + " (ternary)");
      }
      break;
    }
  }
  exprs.push_back(std::move(c));
  return static_cast<std::uint32_t>(exprs.size() - 1);
}

void Simulator::Impl::compile_body(CBody& out, const std::vector<Stmt>& body, const FlatScope& scope,
                                   const InsertionPoint& base, std::vector<PathStep>& path,
                                   const std::map<InsertionPoint, std::uint32_t>& point_ids,
                                   bool live) {
  InsertionPoint here = base;
  here.path = path;
  std::string site = to_string(here);
  site = site.substr(0, site.rfind('@'));
  auto point_id = [&](std::size_t k) -> std::uint32_t {
    if (!live) return kNoPoint;
    here.position = k;
    auto it = point_ids.find(here);
    return it == point_ids.end() ? kNoPoint : it->second;
  };
  for (std::size_t k = 0; k < body.size(); ++k) {
    out.points.push_back(point_id(k));
    const Stmt& s = body[k];
    CStmt cs;
    if (const auto* a = std::get_if<AssignStmt>(&s.node)) {
      cs.kind = CStmt::Kind::Assign;
      std::size_t slot = scope.lookup(a->target);
      if (flat.signals[slot].kind != SignalKind::Reg)
        throw InvalidDesign("procedural assignment to non-register '" + a->target + "'");
      cs.slot = static_cast<std::uint32_t>(slot);
      cs.blocking = a->blocking;
      cs.target_width = flat.signals[slot].width;
      cs.expr = compile_expr(a->value, scope, true, site);
      cs.value_width = exprs[cs.expr].width;
      cs.value_signed = exprs[cs.expr].is_signed;
    } else if (const auto* i = std::get_if<IfStmt>(&s.node)) {
      cs.kind = CStmt::Kind::If;
      cs.cond = compile_expr(i->cond, scope, true, site);
      if (i->guard != GuardKind::None) {
        cs.check_guard = true;
        cs.guard_id = static_cast<std::uint32_t>(guard_sites.size());
        guard_sites.push_back(site + "@" + std::to_string(k));
      }
      cs.then_body = std::make_unique<CBody>();
      cs.else_body = std::make_unique<CBody>();
      path.push_back(PathStep{k, 't', 0});
      compile_body(*cs.then_body, i->then_body, scope, base, path, point_ids, live);
      path.back() = PathStep{k, 'e', 0};
      compile_body(*cs.else_body, i->else_body, scope, base, path, point_ids,
                   live && i->guard == GuardKind::None);
      path.pop_back();
    } else if (const auto* c = std::get_if<CaseStmt>(&s.node)) {
      cs.kind = CStmt::Kind::Case;
      cs.cond = compile_expr(c->subject, scope, true, site);
      cs.subject_width = exprs[cs.cond].width;
      cs.subject_signed = exprs[cs.cond].is_signed;
      for (std::size_t j = 0; j < c->items.size(); ++j) {
        CCaseItem item;
        for (const auto& l : c->items[j].labels) {
          std::uint32_t li = compile_expr(l, scope, true, site);
          item.labels.push_back(li);
          item.label_widths.push_back(exprs[li].width);
          item.label_signed.push_back(exprs[li].is_signed);
        }
        item.body = std::make_unique<CBody>();
        path.push_back(PathStep{k, 'c', j});
        compile_body(*item.body, c->items[j].body, scope, base, path, point_ids, live);
        path.pop_back();
        cs.items.push_back(std::move(item));
      }
      cs.default_body = std::make_unique<CBody>();
      if (c->has_default) {
        path.push_back(PathStep{k, 'd', 0});
        compile_body(*cs.default_body, c->default_body, scope, base, path, point_ids, live);
        path.pop_back();
      }
    }
    out.stmts.push_back(std::move(cs));
  }
  out.points.push_back(point_id(body.size()));
}

std::uint64_t Simulator::Impl::eval(std::uint32_t idx) {
  const CExpr& e = exprs[idx];
  switch (e.kind) {
    case Expr::Kind::Const:
      return e.value;
    case Expr::Kind::Ref:
      return cur[e.slot];
    case Expr::Kind::Select:
      return (cur[e.slot] >> e.lsb) & width_mask(e.width);
    case Expr::Kind::Concat: {
      std::uint64_t v = 0;
      for (std::uint32_t p : e.parts) {
        unsigned w = exprs[p].width;
        v = (w >= 64 ? 0 : (v << w)) | eval(p);
      }
      return v;
    }
    case Expr::Kind::Unary: {
      std::uint64_t a = eval(e.a);
      switch (e.uop) {
        case UnaryOp::Not: return truncate(~a, e.width);
        case UnaryOp::Neg: return truncate(~a + 1, e.width);
        case UnaryOp::LogicNot: return a == 0 ? 1 : 0;
        case UnaryOp::RedAnd: return a == width_mask(e.wa) ? 1 : 0;
        case UnaryOp::RedOr: return a != 0 ? 1 : 0;
        case UnaryOp::RedXor: return static_cast<std::uint64_t>(std::popcount(a) & 1);
      }
      return 0;
    }
    case Expr::Kind::Binary: {
      std::uint64_t ra = eval(e.a);
      std::uint64_t rb = eval(e.b);
      if (is_logical(e.bop)) {
        bool x = ra != 0, y = rb != 0;
        return (e.bop == BinaryOp::LogicAnd ? (x && y) : (x || y)) ? 1 : 0;
      }
      if (is_shift(e.bop)) {
        unsigned w = e.wa;
        if (e.bop == BinaryOp::Shl) return rb >= w ? 0 : truncate(ra << rb, w);
        if (e.bop == BinaryOp::AShr && e.sa) {
          std::int64_t s = as_signed(ra, w);
          return truncate(static_cast<std::uint64_t>(s >> (rb >= w ? w - 1 : rb)), w);
        }
        return rb >= w ? 0 : (ra >> rb);
      }
      const unsigned w = e.op_width;
      std::uint64_t a = extend(ra, e.wa, w, e.op_signed);
      std::uint64_t b = extend(rb, e.wb, w, e.op_signed);
      switch (e.bop) {
        case BinaryOp::Add: return truncate(a + b, w);
        case BinaryOp::Sub: return truncate(a - b, w);
        case BinaryOp::Mul: return truncate(a * b, w);
        case BinaryOp::And: return a & b;
        case BinaryOp::Or: return a | b;
        case BinaryOp::Xor: return a ^ b;
        case BinaryOp::Eq: return a == b ? 1 : 0;
        case BinaryOp::Ne: return a != b ? 1 : 0;
        default: break;
      }
      bool lt, eq = a == b;
      if (e.op_signed) {
        lt = as_signed(a, w) < as_signed(b, w);
      } else {
        lt = a < b;
      }
      switch (e.bop) {
        case BinaryOp::Lt: return lt ? 1 : 0;
        case BinaryOp::Le: return (lt || eq) ? 1 : 0;
        case BinaryOp::Gt: return (!lt && !eq) ? 1 : 0;
        case BinaryOp::Ge: return !lt ? 1 : 0;
        default: break;
      }
      return 0;
    }
    case Expr::Kind::Ternary: {
      bool cond = eval(e.a) != 0;
      if (checking && e.check_guard) {
        ++guard_result.evaluations;
        if (!cond) {
          ++guard_result.violations;
          if (guard_result.violated.size() < 16)
            guard_result.violated.push_back(guard_sites[e.guard_id] + ": cycle " + std::to_string(cycle));
        }
      }
      return cond ? extend(eval(e.b), e.wb, e.op_width, e.op_signed)
                  : extend(eval(e.c), e.wc, e.op_width, e.op_signed);
    }
  }
  return 0;
}

void Simulator::Impl::record(std::uint32_t point) {
  ++point_hits[point];
  const auto& vars = points[point].vars;
  VarAcc* a = &acc[acc_offset[point]];
  for (std::size_t j = 0; j < vars.size(); ++j, ++a) {
    std::uint64_t v = cur[(*active_vars)[j]];
    if (a->hits++ == 0) {
      a->min = a->max = a->first = v;
      a->seen[0] = v;
      a->distinct = 1;
      continue;
    }
    if (vars[j].is_signed) {
      std::int64_t sv = as_signed(v, vars[j].width);
      if (sv < as_signed(a->min, vars[j].width)) a->min = v;
      if (sv > as_signed(a->max, vars[j].width)) a->max = v;
    } else {
      if (v < a->min) a->min = v;
      if (v > a->max) a->max = v;
    }
    a->changed |= v ^ a->first;
    if (a->distinct < VarFacts::kDistinctCap) {
      bool found = false;
      for (std::uint32_t k = 0; k < a->distinct; ++k)
        if (a->seen[k] == v) {
          found = true;
          break;
        }
      if (!found) a->seen[a->distinct++] = v;
    }
  }
}

void Simulator::Impl::exec(const CBody& body) {
  const bool prof = profiling && !body.points.empty();
  for (std::size_t k = 0; k < body.stmts.size(); ++k) {
    if (prof && body.points[k] != kNoPoint) record(body.points[k]);
    const CStmt& s = body.stmts[k];
    switch (s.kind) {
      case CStmt::Kind::Assign: {
        std::uint64_t v = extend(eval(s.expr), s.value_width, s.target_width, s.value_signed);
        if (s.blocking) {
          if (mark[s.slot] != epoch) {
            mark[s.slot] = epoch;
            undo.emplace_back(s.slot, cur[s.slot]);
          }
          cur[s.slot] = v;
        } else {
          nxt[s.slot] = v;
        }
        break;
      }
      case CStmt::Kind::If: {
        bool cond = eval(s.cond) != 0;
        if (checking && s.check_guard) {
          ++guard_result.evaluations;
          if (!cond) {
            ++guard_result.violations;
            if (guard_result.violated.size() < 16)
              guard_result.violated.push_back(guard_sites[s.guard_id] + ": cycle " + std::to_string(cycle));
          }
        }
        exec(cond ? *s.then_body : *s.else_body);
        break;
      }
      case CStmt::Kind::Case: {
        std::uint64_t subject = eval(s.cond);
        const CBody* chosen = s.default_body.get();
        for (const auto& item : s.items) {
          bool hit = false;
          for (std::size_t l = 0; l < item.labels.size() && !hit; ++l) {
            unsigned w = std::max(s.subject_width, item.label_widths[l]);
            bool sign = s.subject_signed && item.label_signed[l];
            hit = extend(subject, s.subject_width, w, sign) ==
                  extend(eval(item.labels[l]), item.label_widths[l], w, sign);
          }
          if (hit) {
            chosen = item.body.get();
            break;
          }
        }
        exec(*chosen);
        break;
      }
    }
  }
  if (prof && body.points.back() != kNoPoint) record(body.points.back());
}

void Simulator::Impl::run_cycles(const Stimulus& s, Trace* trace) {
  if (s.inputs.size() != input_sigs.size())
    throw PreconditionError("stimulus has " + std::to_string(s.inputs.size()) + " inputs, design has " +
                            std::to_string(input_sigs.size()));
  for (std::size_t i = 0; i < input_sigs.size(); ++i)
    if (!(s.inputs[i] == input_sigs[i]))
      throw PreconditionError("stimulus input '" + s.inputs[i].name + "' does not match design input '" +
                              input_sigs[i].name + "'");
  if (s.rst.size() != s.values.size()) throw PreconditionError("stimulus reset column length mismatch");

  cur.assign(flat.signals.size(), 0);
  for (std::size_t i = 0; i < flat.signals.size(); ++i)
    if (flat.signals[i].kind == SignalKind::Reg) cur[i] = truncate(flat.signals[i].reset, flat.signals[i].width);
  if (trace != nullptr) {
    trace->signals = output_sigs;
    trace->records.clear();
    trace->records.reserve(s.cycles());
  }
  for (cycle = 0; cycle < s.cycles(); ++cycle) {
    const auto& row = s.values[cycle];
    if (row.size() != flat.inputs.size()) throw PreconditionError("stimulus row has wrong input count");
    for (std::size_t i = 0; i < flat.inputs.size(); ++i) {
      if (row[i] != truncate(row[i], input_sigs[i].width))
        throw PreconditionError("stimulus value does not fit input '" + input_sigs[i].name + "'");
      cur[flat.inputs[i]] = row[i];
    }
    for (const auto& a : assigns)
      cur[a.slot] = extend(eval(a.expr), a.value_width, a.target_width, a.value_signed);
    if (trace != nullptr) {
      std::vector<std::uint64_t> rec;
      rec.reserve(flat.outputs.size());
      for (std::size_t o : flat.outputs) rec.push_back(cur[o]);
      trace->records.push_back(std::move(rec));
    }
    if (s.rst[cycle]) {
      for (std::uint32_t r : reset_slots) cur[r] = truncate(flat.signals[r].reset, flat.signals[r].width);
      continue;
    }
    nxt = cur;
    for (const auto& b : blocks) {
      active_vars = &scope_var_slots[b.scope];
      exec(b.body);
      for (const auto& [slot, old] : undo) {
        nxt[slot] = cur[slot];
        cur[slot] = old;
      }
      undo.clear();
      ++epoch;
    }
    cur.swap(nxt);
  }
}

Simulator::Simulator(const Design& design) : impl_(std::make_unique<Impl>(design)) {}
Simulator::~Simulator() = default;
Simulator::Simulator(Simulator&&) noexcept = default;
Simulator& Simulator::operator=(Simulator&&) noexcept = default;

const std::vector<TraceSignal>& Simulator::inputs() const { return impl_->input_sigs; }
const std::vector<TraceSignal>& Simulator::outputs() const { return impl_->output_sigs; }

Trace Simulator::run(const Stimulus& s) {
  impl_->profiling = false;
  impl_->checking = false;
  Trace t;
  impl_->run_cycles(s, &t);
  return t;
}

ValuationProfile Simulator::profile(const Stimulus& s) {
  Impl& im = *impl_;
  im.profiling = true;
  im.checking = false;
  im.acc.assign(im.acc_offset.back(), VarAcc{});
  im.point_hits.assign(im.points.size(), 0);
  im.run_cycles(s, nullptr);
  im.profiling = false;
  ValuationProfile out;
  out.stimulus = s;
  out.points = im.points;
  for (std::size_t p = 0; p < out.points.size(); ++p) {
    out.points[p].hits = im.point_hits[p];
    for (std::size_t j = 0; j < out.points[p].vars.size(); ++j) {
      const VarAcc& a = im.acc[im.acc_offset[p] + j];
      VarFacts& f = out.points[p].vars[j];
      f.hits = a.hits;
      f.min = a.min;
      f.max = a.max;
      f.first = a.first;
      f.constant_mask = a.hits == 0 ? 0 : (~a.changed & width_mask(f.width));
      f.distinct = a.distinct;
    }
  }
  return out;
}

GuardCheck Simulator::check_guards(const Stimulus& s) {
  Impl& im = *impl_;
  im.profiling = false;
  im.checking = true;
  im.guard_result = GuardCheck{};
  im.run_cycles(s, nullptr);
  im.checking = false;
  return im.guard_result;
}

Trace simulate(const Design& d, const Stimulus& s) { return Simulator(d).run(s); }
ValuationProfile profile(const Design& d, const Stimulus& s) { return Simulator(d).profile(s); }
GuardCheck check_guards(const Design& d, const Stimulus& s) { return Simulator(d).check_guards(s); }

std::vector<TraceSignal> input_interface(const Design& d) {
  std::vector<TraceSignal> out;
  for (const auto& p : d.top_module().ports)
    if (p.direction == Direction::Input) out.push_back({p.name, p.width});
  return out;
}

std::vector<TraceSignal> output_interface(const Design& d) {
  std::vector<TraceSignal> out;
  for (const auto& p : d.top_module().ports)
    if (p.direction == Direction::Output) out.push_back({p.name, p.width});
  return out;
}

}  // namespace synthfuzz
