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

#include "synthfuzz/mutator.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "expr_gen.hpp"
#include "synthfuzz/comb_graph.hpp"
#include "synthfuzz/error.hpp"
#include "synthfuzz/parser.hpp"
#include "synthfuzz/printer.hpp"
#include "synthfuzz/seed_gen.hpp"
#include "synthfuzz/symexec.hpp"
#include "synthfuzz/validate.hpp"

namespace synthfuzz {

const char* to_string(GuardMode m) { return m == GuardMode::Profiled ? "profiled" : "tautological"; }

GuardMode guard_mode_from_string(const std::string& text) {
  if (text == "profiled") return GuardMode::Profiled;
  if (text == "tautological") return GuardMode::Tautological;
  throw ConfigError("unknown guard mode '" + text + "'");
}

void MutationConfig::check() const {
  if (p_wrap < 0 || p_wrap > 1) throw ConfigError("p_wrap must lie in [0, 1]");
  if (dead_max < dead_min) throw ConfigError("dead-code budget maximum below minimum");
  if (max_guards < 1) throw ConfigError("max_guards must be at least 1");
}

namespace {

using detail::PoolSig;

void collect_targets(const std::vector<Stmt>& body, std::map<std::string, bool>& out) {
  for (const auto& s : body) {
    if (const auto* a = std::get_if<AssignStmt>(&s.node)) {
      out[a->target] = a->blocking;
    } else if (const auto* i = std::get_if<IfStmt>(&s.node)) {
      collect_targets(i->then_body, out);
      collect_targets(i->else_body, out);
    } else if (const auto* c = std::get_if<CaseStmt>(&s.node)) {
      for (const auto& item : c->items) collect_targets(item.body, out);
      collect_targets(c->default_body, out);
    }
  }
}

bool has_blocking(const std::vector<Stmt>& body) {
  std::map<std::string, bool> t;
  collect_targets(body, t);
  for (const auto& [name, blocking] : t)
    if (blocking) return true;
  return false;
}

void collect_reads(const std::vector<Stmt>& body, std::set<std::string>& out) {
  auto add = [&](const std::string& n) { out.insert(n); };
  for (const auto& s : body) {
    if (const auto* a = std::get_if<AssignStmt>(&s.node)) {
      for_each_read(a->value, add);
    } else if (const auto* i = std::get_if<IfStmt>(&s.node)) {
      for_each_read(i->cond, add);
      collect_reads(i->then_body, out);
      collect_reads(i->else_body, out);
    } else if (const auto* c = std::get_if<CaseStmt>(&s.node)) {
      for_each_read(c->subject, add);
      for (const auto& item : c->items) {
        for (const auto& l : item.labels) for_each_read(l, add);
        collect_reads(item.body, out);
      }
      collect_reads(c->default_body, out);
    }
  }
}

std::size_t leading_decls(const ModuleDef& m) {
  std::size_t n = 0;
  while (n < m.items.size() &&
         (std::holds_alternative<NetDecl>(m.items[n]) || std::holds_alternative<RegDecl>(m.items[n])))
    ++n;
  return n;
}

bool name_taken(const ModuleDef& m, const std::string& name) {
  for (const auto& p : m.ports)
    if (p.name == name) return true;
  for (const auto& item : m.items) {
    if (const auto* n = std::get_if<NetDecl>(&item); n && n->name == name) return true;
    if (const auto* r = std::get_if<RegDecl>(&item); r && r->name == name) return true;
    if (const auto* i = std::get_if<Instance>(&item); i && i->name == name) return true;
  }
  return false;
}

std::vector<PoolSig> module_signals(const ModuleDef& m) {
  std::vector<PoolSig> out;
  for (const auto& p : m.ports) out.push_back({p.name, p.width, p.is_signed});
  for (const auto& item : m.items) {
    if (const auto* n = std::get_if<NetDecl>(&item)) out.push_back({n->name, n->width, n->is_signed});
    if (const auto* r = std::get_if<RegDecl>(&item)) out.push_back({r->name, r->width, r->is_signed});
  }
  return out;
}

IfStmt& guard_at(std::vector<Stmt>* body, const InsertionPoint& at) {
  if (body == nullptr || at.position >= body->size())
    throw PreconditionError("no statement at " + to_string(at));
  auto* i = std::get_if<IfStmt>(&(*body)[at.position].node);
  if (i == nullptr || i->guard == GuardKind::None)
    throw PreconditionError("statement at " + to_string(at) + " is not an inserted guard");
  return *i;
}

Expr literal(const VarFacts& v, std::uint64_t value) { return Expr::constant(v.width, value, v.is_signed); }

std::string hex(std::uint64_t v) {
  std::ostringstream os;
  os << "0x" << std::hex << v;
  return os.str();
}

GuardPredicate tautology(const VarFacts& v, Rng& rng) {
  GuardPredicate g;
  g.kind = GuardKind::Tautological;
  g.variable = v.name;
  Expr x = Expr::ref(v.name);
  switch (rng.below(3)) {
    case 0:
      g.expr = Expr::binary(BinaryOp::Eq, Expr::binary(BinaryOp::And, x, Expr::constant(v.width, 0)),
                            Expr::constant(v.width, 0));
      g.justification = "x & 0 == 0";
      break;
    case 1:
      g.expr = Expr::binary(BinaryOp::Eq, x, x);
      g.justification = "x == x";
      break;
    default:
      g.expr = Expr::binary(
          BinaryOp::Eq,
          Expr::unary(UnaryOp::RedAnd, Expr::binary(BinaryOp::Or, x, Expr::unary(UnaryOp::Not, x))),
          Expr::constant(1, 1));
      g.justification = "&(x | ~x) == 1";
      break;
  }
  return g;
}

}  // namespace

std::vector<InsertionPoint> enumerate_insertion_points(const Design& d) {
  std::vector<InsertionPoint> out;
  for (const auto& name : reachable_modules_bottom_up(d)) {
    const ModuleDef* m = d.find(name);
    if (m == nullptr || eligible_variables(d, *m).empty()) continue;
    for (auto& p : statement_positions(*m)) out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end());
  return out;
}

GuardPredicate synthesize_guard(const ValuationProfile& profile, const Design& d,
                                const InsertionPoint& point, GuardMode mode, Rng& rng) {
  const ModuleDef* m = d.find(point.module);
  if (m == nullptr) throw PreconditionError("unknown module in " + to_string(point));
  std::vector<VarFacts> vars = eligible_variables(d, *m);
  if (vars.empty()) throw NoEligibleVariable("no guard-eligible variable at " + to_string(point));

  const PointProfile* pp = mode == GuardMode::Profiled ? profile.find(point) : nullptr;
  if (pp == nullptr || pp->hits == 0) {
    GuardPredicate g = tautology(vars[rng.below(vars.size())], rng);
    if (mode == GuardMode::Profiled) g.justification += " (point not reached by the profile)";
    return g;
  }
  const VarFacts& v = pp->vars[rng.below(pp->vars.size())];
  GuardPredicate g;
  g.kind = GuardKind::Profiled;
  g.variable = v.name;
  Expr x = Expr::ref(v.name);
  const std::string seen = " over " + std::to_string(v.hits) + " observations";
  if (v.min == v.max) {
    g.expr = Expr::binary(BinaryOp::Eq, x, literal(v, v.min));
    g.justification = v.name + " constant " + hex(v.min) + seen;
    return g;
  }
  const bool use_mask = v.constant_mask != 0 && rng.chance(0.5);
  if (use_mask) {
    g.expr = Expr::binary(BinaryOp::Eq, Expr::binary(BinaryOp::And, x, Expr::constant(v.width, v.constant_mask)),
                          Expr::constant(v.width, v.first & v.constant_mask));
    g.justification = v.name + " bits " + hex(v.constant_mask) + " fixed at " + hex(v.first & v.constant_mask) + seen;
  } else {
    g.expr = Expr::binary(BinaryOp::LogicAnd, Expr::binary(BinaryOp::Ge, x, literal(v, v.min)),
                          Expr::binary(BinaryOp::Le, x, literal(v, v.max)));
    g.justification = v.name + " in [" + hex(v.min) + ", " + hex(v.max) + "]" + seen;
  }
  return g;
}

Design clone_path_with_guard(const Design& d, const InsertionPoint& point, const GuardPredicate& guard) {
  Design out = d;
  std::vector<Stmt>* body = resolve_body(out, point);
  if (body == nullptr || point.position > body->size())
    throw PreconditionError("invalid insertion point " + to_string(point));
  std::vector<Stmt> suffix(std::make_move_iterator(body->begin() + static_cast<std::ptrdiff_t>(point.position)),
                           std::make_move_iterator(body->end()));
  body->erase(body->begin() + static_cast<std::ptrdiff_t>(point.position), body->end());
  body->push_back(make_if(guard.expr, std::move(suffix), {}, guard.kind));
  return out;
}

namespace {

class DeadCode {
 public:
  DeadCode(ModuleDef& m, const std::map<std::string, bool>& targets, std::uint64_t seed)
      : m_(m), rng_(seed), gen_(rng_, defaults_.widths, defaults_.weights), pool_(module_signals(m)) {
    for (const auto& [name, blocking] : targets) targets_.emplace_back(name, blocking);
  }

  std::vector<Stmt> statements(std::size_t count, unsigned level) {
    std::vector<Stmt> out;
    while (count > 0) {
      if (count >= 2 && level < 4 && rng_.chance(0.35)) {
        std::size_t inner = 1 + rng_.below(std::min<std::size_t>(count - 1, 3));
        std::size_t then_n = inner > 1 ? 1 + rng_.below(inner) : 1;
        if (then_n > inner) then_n = inner;
        Expr cond = gen_.condition(pool_, 1 + static_cast<unsigned>(rng_.below(2)));
        std::vector<Stmt> t = statements(then_n, level + 1);
        std::vector<Stmt> e = statements(inner - then_n, level + 1);
        out.push_back(make_if(std::move(cond), std::move(t), std::move(e)));
        count -= 1 + inner;
      } else {
        out.push_back(assignment());
        count -= 1;
      }
    }
    return out;
  }

  std::vector<Item> decls;
  std::vector<Item> assigns;

 private:
  std::string fresh(const char* prefix) {
    for (;;) {
      std::string name = prefix + std::to_string(next_++);
      if (!name_taken(m_, name) && !declared_.count(name)) {
        declared_.insert(name);
        return name;
      }
    }
  }

  Stmt assignment() {
    if (targets_.empty() || rng_.chance(0.25)) {
      unsigned w = gen_.pick_width();
      std::string name = fresh("emi_d");
      decls.push_back(RegDecl{name, w, false, 0});
      targets_.emplace_back(name, false);
    }
    if (rng_.chance(0.15)) {
      // A fresh net read only by this dead branch.
      unsigned w = gen_.pick_width();
      std::string name = fresh("emi_n");
      Expr value = gen_.expr(pool_, w, 1 + static_cast<unsigned>(rng_.below(2)));
      decls.push_back(NetDecl{name, w, false});
      assigns.push_back(ContinuousAssign{name, std::move(value)});
      pool_.push_back({name, w, false});
    }
    const auto& [target, blocking] = targets_[rng_.below(targets_.size())];
    unsigned w = width_of(target);
    Expr value = gen_.expr(pool_, w, 1 + static_cast<unsigned>(rng_.below(3)));
    return make_assign(target, std::move(value), blocking);
  }

  unsigned width_of(const std::string& name) const {
    for (const auto& d : decls)
      if (const auto* r = std::get_if<RegDecl>(&d); r && r->name == name) return r->width;
    Scope scope(m_);
    const SignalType* t = scope.lookup(name);
    return t ? t->width : 1;
  }

  ModuleDef& m_;
  GenConfig defaults_;
  Rng rng_;
  detail::ExprGen gen_;
  std::vector<PoolSig> pool_;
  std::vector<std::pair<std::string, bool>> targets_;
  std::set<std::string> declared_;
  std::size_t next_ = 0;
};

}  // namespace

Design inject_dead_code(const Design& d, const InsertionPoint& at, std::size_t count, std::uint64_t seed,
                        InsertionPoint* moved) {
  if (moved != nullptr) *moved = at;
  Design out = d;
  IfStmt& guard = guard_at(resolve_body(out, at), at);
  if (count == 0) return d;
  ModuleDef& m = *out.find(at.module);
  std::map<std::string, bool> targets;
  collect_targets(std::get<AlwaysBlock>(m.items[at.item]).body, targets);
  DeadCode gen(m, targets, seed);
  std::vector<Stmt> dead = gen.statements(count, 0);
  for (auto& s : dead) guard.else_body.push_back(std::move(s));
  const std::size_t pos = leading_decls(m);
  m.items.insert(m.items.begin() + static_cast<std::ptrdiff_t>(pos), gen.decls.begin(), gen.decls.end());
  for (auto& a : gen.assigns) m.items.push_back(std::move(a));
  if (moved != nullptr && at.item >= pos) moved->item += gen.decls.size();
  return out;
}

Design wrap_subsystem(const Design& d, const InsertionPoint& at, std::string* module_name) {
  Design out = d;
  std::vector<Stmt>* body = resolve_body(out, at);
  guard_at(body, at);
  ModuleDef& m = *out.find(at.module);
  const Stmt region = (*body)[at.position];

  if (has_blocking({region})) throw UnextractableRegion("region contains blocking assignments");
  std::map<std::string, bool> block_targets;
  collect_targets(std::get<AlwaysBlock>(m.items[at.item]).body, block_targets);
  std::set<std::string> region_reads;
  collect_reads({region}, region_reads);
  for (const auto& r : region_reads) {
    auto it = block_targets.find(r);
    if (it != block_targets.end() && it->second)
      throw UnextractableRegion("region reads blocking-assigned register '" + r + "'");
  }

  // Every assigned value becomes a named net of the subsystem, the way a
  // netlist names each right-hand side; the next-state logic muxes those nets.
  Stmt lowered = region;
  std::vector<std::pair<NetDecl, Expr>> values;
  {
    Scope parent(m);
    std::size_t k = 0;
    std::function<void(std::vector<Stmt>&)> name_values = [&](std::vector<Stmt>& list) {
      for (auto& st : list) {
        if (auto* a = std::get_if<AssignStmt>(&st.node)) {
          while (name_taken(m, "emi_v" + std::to_string(k))) ++k;
          const SignalType t = infer_type(a->value, parent);
          NetDecl net{"emi_v" + std::to_string(k++), t.width, t.is_signed};
          values.emplace_back(net, std::move(a->value));
          a->value = Expr::ref(net.name);
        } else if (auto* i = std::get_if<IfStmt>(&st.node)) {
          name_values(i->then_body);
          name_values(i->else_body);
        } else if (auto* c = std::get_if<CaseStmt>(&st.node)) {
          for (auto& item : c->items) name_values(item.body);
          name_values(c->default_body);
        }
      }
    };
    std::vector<Stmt> one{lowered};
    name_values(one);
    lowered = std::move(one.front());
  }
  ModuleDef extended = m;
  std::set<std::string> value_nets;
  for (const auto& [net, e] : values) {
    extended.items.push_back(net);
    value_nets.insert(net.name);
  }
  Scope scope(extended);
  ExprBuilder builder(scope, true);
  SymbolicExecutor<ExprBuilder> exec(builder);
  auto state = exec.run({lowered});

  // Registers the rest of the block also writes need an explicit enable, since
  // their pending value at the region is not observable from outside the block.
  std::map<std::string, bool> elsewhere;
  {
    AlwaysBlock copy = std::get<AlwaysBlock>(m.items[at.item]);
    std::vector<Stmt>* list = &copy.body;
    for (const auto& step : at.path) {
      Stmt& s = (*list)[step.stmt];
      if (auto* i = std::get_if<IfStmt>(&s.node)) {
        list = step.branch == 't' ? &i->then_body : &i->else_body;
      } else {
        auto& c = std::get<CaseStmt>(s.node);
        list = step.branch == 'd' ? &c.default_body : &c.items[step.item].body;
      }
    }
    list->erase(list->begin() + static_cast<std::ptrdiff_t>(at.position));
    collect_targets(copy.body, elsewhere);
  }

  std::size_t n = 0;
  while (out.find("emi_sub" + std::to_string(n)) != nullptr || name_taken(m, "emi_u" + std::to_string(n))) ++n;
  const std::string tag = std::to_string(n);

  ModuleDef sub;
  sub.name = "emi_sub" + tag;
  std::vector<std::string> inputs;
  std::set<std::string> seen;
  auto add_input = [&](const std::string& name) {
    if (!value_nets.count(name) && seen.insert(name).second) inputs.push_back(name);
  };
  for (const auto& [net, e] : values) for_each_read(e, add_input);
  struct Out {
    std::string reg;
    bool enable;
  };
  std::vector<Out> outs;
  for (const auto& [q, value] : state.next) {
    const Expr& en = state.enable.at(q);
    bool need_enable = elsewhere.count(q) && !(en == Expr::constant(1, 1));
    for_each_read(value, add_input);
    if (need_enable) for_each_read(en, add_input);
    outs.push_back(Out{q, need_enable});
  }
  for (const auto& name : inputs) {
    const SignalType* t = scope.lookup(name);
    if (t == nullptr) throw UnextractableRegion("region reads undeclared signal '" + name + "'");
    sub.ports.push_back(Port{name, Direction::Input, t->width, t->is_signed});
  }
  for (const auto& [net, e] : values) sub.items.push_back(net);
  for (const auto& [net, e] : values) sub.items.push_back(ContinuousAssign{net.name, e});
  Instance inst;
  inst.module = sub.name;
  inst.name = "emi_u" + tag;
  for (const auto& name : inputs) inst.bindings.push_back(PortBinding{name, Expr::ref(name)});

  std::vector<Item> decls;
  std::vector<Stmt> replacement;
  for (const auto& o : outs) {
    const SignalType* t = scope.lookup(o.reg);
    const std::string value_port = "emi_o_" + o.reg;
    const std::string value_net = "emi_w" + tag + "_" + o.reg;
    sub.ports.push_back(Port{value_port, Direction::Output, t->width, t->is_signed});
    sub.items.push_back(ContinuousAssign{value_port, state.next.at(o.reg)});
    decls.push_back(NetDecl{value_net, t->width, t->is_signed});
    inst.bindings.push_back(PortBinding{value_port, Expr::ref(value_net)});
    Stmt assign = make_assign(o.reg, Expr::ref(value_net));
    if (o.enable) {
      const std::string en_port = "emi_e_" + o.reg;
      const std::string en_net = value_net + "_en";
      sub.ports.push_back(Port{en_port, Direction::Output, 1, false});
      sub.items.push_back(ContinuousAssign{en_port, state.enable.at(o.reg)});
      decls.push_back(NetDecl{en_net, 1, false});
      inst.bindings.push_back(PortBinding{en_port, Expr::ref(en_net)});
      replacement.push_back(make_if(Expr::ref(en_net), {std::move(assign)}));
    } else {
      replacement.push_back(std::move(assign));
    }
  }

  body->erase(body->begin() + static_cast<std::ptrdiff_t>(at.position));
  body->insert(body->begin() + static_cast<std::ptrdiff_t>(at.position),
               std::make_move_iterator(replacement.begin()), std::make_move_iterator(replacement.end()));
  const std::size_t pos = leading_decls(m);
  m.items.insert(m.items.begin() + static_cast<std::ptrdiff_t>(pos), decls.begin(), decls.end());
  m.items.push_back(std::move(inst));
  out.modules.push_back(std::move(sub));
  if (module_name != nullptr) *module_name = "emi_sub" + tag;
  return out;
}

std::string serialize_lineage(const Lineage& l) {
  std::string out = "seed " + l.seed_id + "\n";
  for (const auto& r : l.log) {
    switch (r.kind) {
      case MutationRecord::Kind::Clone:
        out += "clone " + to_string(r.point) + " " + to_string(r.guard) + " " + r.guard_text + "\n";
        break;
      case MutationRecord::Kind::Inject:
        out += "inject " + to_string(r.point) + " " + std::to_string(r.count) + " " + std::to_string(r.seed) + "\n";
        break;
      case MutationRecord::Kind::Wrap:
        out += "wrap " + to_string(r.point) + " " + r.module + "\n";
        break;
    }
  }
  return out;
}

Lineage parse_lineage(const std::string& text) {
  Lineage l;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string kind;
    ls >> kind;
    if (first) {
      if (kind != "seed") throw IoError("lineage must start with a seed line");
      std::getline(ls, l.seed_id);
      if (!l.seed_id.empty() && l.seed_id[0] == ' ') l.seed_id.erase(0, 1);
      first = false;
      continue;
    }
    MutationRecord r;
    std::string point;
    ls >> point;
    r.point = parse_insertion_point(point);
    if (kind == "clone") {
      std::string mode;
      ls >> mode;
      auto g = guard_kind_from_string(mode);
      if (!g || *g == GuardKind::None) throw IoError("bad guard kind in lineage: " + line);
      r.kind = MutationRecord::Kind::Clone;
      r.guard = *g;
      std::getline(ls, r.guard_text);
      if (!r.guard_text.empty() && r.guard_text[0] == ' ') r.guard_text.erase(0, 1);
    } else if (kind == "inject") {
      r.kind = MutationRecord::Kind::Inject;
      if (!(ls >> r.count >> r.seed)) throw IoError("bad inject line in lineage: " + line);
    } else if (kind == "wrap") {
      r.kind = MutationRecord::Kind::Wrap;
      ls >> r.module;
    } else {
      throw IoError("unknown lineage record: " + line);
    }
    l.log.push_back(std::move(r));
  }
  if (first) throw IoError("empty lineage");
  return l;
}

Design replay_lineage(const Design& seed, const Lineage& l) {
  Design d = seed;
  for (const auto& r : l.log) {
    switch (r.kind) {
      case MutationRecord::Kind::Clone: {
        GuardPredicate g;
        g.expr = parse_expr(r.guard_text);
        g.kind = r.guard;
        d = clone_path_with_guard(d, r.point, g);
        break;
      }
      case MutationRecord::Kind::Inject:
        d = inject_dead_code(d, r.point, r.count, r.seed);
        break;
      case MutationRecord::Kind::Wrap: {
        std::string name;
        d = wrap_subsystem(d, r.point, &name);
        if (name != r.module) throw IoError("replayed wrap produced '" + name + "', log says '" + r.module + "'");
        break;
      }
    }
  }
  return d;
}

Variant mutate(const Design& d, const ValuationProfile& profile, const MutationConfig& cfg) {
  cfg.check();
  Rng rng(cfg.seed);
  Variant v;
  Design cur = d;
  ValuationProfile prof = profile;
  const std::size_t rounds = static_cast<std::size_t>(rng.range(1, static_cast<std::int64_t>(cfg.max_guards)));
  for (std::size_t round = 0; round < rounds; ++round) {
    auto points = enumerate_insertion_points(cur);
    if (points.empty()) break;
    const InsertionPoint p = points[rng.below(points.size())];
    GuardPredicate g = synthesize_guard(prof, cur, p, cfg.mode, rng);
    cur = clone_path_with_guard(cur, p, g);
    MutationRecord clone;
    clone.kind = MutationRecord::Kind::Clone;
    clone.point = p;
    clone.guard = g.kind;
    clone.guard_text = print_expr(g.expr);
    v.lineage.log.push_back(clone);

    InsertionPoint at = p;
    const std::size_t count = static_cast<std::size_t>(
        rng.range(static_cast<std::int64_t>(cfg.dead_min), static_cast<std::int64_t>(cfg.dead_max)));
    const std::uint64_t sub_seed = rng.next();
    if (count > 0) {
      cur = inject_dead_code(cur, p, count, sub_seed, &at);
      MutationRecord inject;
      inject.kind = MutationRecord::Kind::Inject;
      inject.point = p;
      inject.count = count;
      inject.seed = sub_seed;
      v.lineage.log.push_back(inject);
    }
    if (cfg.verify_guards && !prof.stimulus.values.empty()) {
      GuardCheck c = check_guards(cur, prof.stimulus);
      v.guard_check.evaluations += c.evaluations;
      v.guard_check.violations += c.violations;
      for (auto& s : c.violated)
        if (v.guard_check.violated.size() < 16) v.guard_check.violated.push_back(std::move(s));
    }
    if (rng.chance(cfg.p_wrap)) {
      try {
        MutationRecord wrap;
        wrap.kind = MutationRecord::Kind::Wrap;
        wrap.point = at;
        cur = wrap_subsystem(cur, at, &wrap.module);
        v.lineage.log.push_back(wrap);
      } catch (const UnextractableRegion&) {
        // Leave the guard in place.
      }
    }
    if (round + 1 < rounds && cfg.mode == GuardMode::Profiled && !prof.stimulus.values.empty())
      prof = synthfuzz::profile(cur, prof.stimulus);
  }
  v.noop = v.lineage.log.empty();
  v.design = std::move(cur);
  v.metrics = structural_metrics(v.design);
  v.timing = timing_complexity(v.design);
  return v;
}

}  // namespace synthfuzz
