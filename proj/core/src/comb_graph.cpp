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

#include "synthfuzz/comb_graph.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "synthfuzz/error.hpp"
#include "synthfuzz/symexec.hpp"
#include "synthfuzz/validate.hpp"

namespace synthfuzz {

std::size_t CombDAG::edge_count() const {
  std::size_t n = 0;
  for (const auto& s : succ) n += s.size();
  return n;
}

namespace {

class DagBuilder {
 public:
  explicit DagBuilder(const FlatDesign& flat) : flat_(flat) {
    for (std::size_t i = 0; i < flat.signals.size(); ++i)
      add_node(CombDAG::NodeKind::Signal, flat.signals[i].name, i);
    reg_input_.assign(flat.signals.size(), kNone);
    for (std::size_t i = 0; i < flat.signals.size(); ++i)
      if (flat.signals[i].kind == SignalKind::Reg)
        reg_input_[i] = add_node(CombDAG::NodeKind::RegInput, flat.signals[i].name + ".D", i);
  }

  CombDAG run() {
    for (const auto& a : flat_.assigns)
      for (std::size_t src : drivers(a.expr, a.scope)) edge(src, a.target);
    for (const auto& b : flat_.blocks) add_block(b);
    return std::move(dag_);
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  std::size_t add_node(CombDAG::NodeKind kind, std::string label, std::size_t signal) {
    dag_.nodes.push_back(CombDAG::Node{kind, std::move(label), signal});
    dag_.succ.emplace_back();
    return dag_.nodes.size() - 1;
  }

  void edge(std::size_t from, std::size_t to) { dag_.succ[from].push_back(to); }

  // Nodes whose outputs feed the value of `e`.
  std::vector<std::size_t> drivers(const Expr& e, std::size_t scope) {
    switch (e.kind) {
      case Expr::Kind::Const:
        return {};
      case Expr::Kind::Ref:
      case Expr::Kind::Select:
        return {flat_.scopes[scope].lookup(e.name)};
      case Expr::Kind::Concat: {
        std::vector<std::size_t> out;
        for (const auto& a : e.args) {
          auto d = drivers(a, scope);
          out.insert(out.end(), d.begin(), d.end());
        }
        return out;
      }
      default: {
        std::string label = e.kind == Expr::Kind::Unary    ? to_string(e.uop)
                            : e.kind == Expr::Kind::Binary ? to_string(e.bop)
                                                           : "?:";
        std::size_t op = add_node(CombDAG::NodeKind::Operator, label, 0);
        std::set<std::size_t> seen;
        for (const auto& a : e.args)
          for (std::size_t src : drivers(a, scope))
            if (seen.insert(src).second) edge(src, op);
        return {op};
      }
    }
  }

  void add_block(const FlatBlock& b) {
    const FlatScope& scope = flat_.scopes[b.scope];
    // Dependency mode never consults the scope.
    static const ModuleDef kEmpty{};
    Scope empty(kEmpty);
    ExprBuilder builder(empty, false);
    SymbolicExecutor<ExprBuilder> exec(builder);
    auto state = exec.run(b.block.body);
    for (const auto& [reg, value] : state.next) {
      std::size_t sig = scope.lookup(reg);
      for (std::size_t src : drivers(value, b.scope)) edge(src, reg_input_[sig]);
    }
  }

  const FlatDesign& flat_;
  CombDAG dag_;
  std::vector<std::size_t> reg_input_;
};

}  // namespace

CombDAG build_comb_dag(const FlatDesign& flat) { return DagBuilder(flat).run(); }

CombDAG build_comb_dag(const Design& design) { return build_comb_dag(flatten(design)); }

std::vector<std::vector<std::string>> detect_comb_loops(const CombDAG& dag) {
  // Tarjan's strongly connected components, iterative.
  const std::size_t n = dag.nodes.size();
  const std::size_t unvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, unvisited), low(n, 0), comp(n, unvisited);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> components;
  std::size_t counter = 0;
  std::vector<std::pair<std::size_t, std::size_t>> work;  // (node, next successor)

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != unvisited) continue;
    work.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!work.empty()) {
      auto& [v, k] = work.back();
      if (k < dag.succ[v].size()) {
        std::size_t w = dag.succ[v][k++];
        if (index[w] == unvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          work.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      std::size_t done = v;
      work.pop_back();
      if (!work.empty()) low[work.back().first] = std::min(low[work.back().first], low[done]);
      if (low[done] == index[done]) {
        std::vector<std::size_t> c;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = components.size();
          c.push_back(w);
        } while (w != done);
        components.push_back(std::move(c));
      }
    }
  }

  std::vector<std::vector<std::string>> loops;
  for (std::size_t ci = 0; ci < components.size(); ++ci) {
    const auto& c = components[ci];
    bool cyclic = c.size() > 1;
    if (!cyclic) {
      const auto& s = dag.succ[c[0]];
      cyclic = std::find(s.begin(), s.end(), c[0]) != s.end();
    }
    if (!cyclic) continue;
    // Start from the smallest-named signal node and walk a simple cycle back to it.
    std::size_t start = c[0];
    bool have_signal = false;
    for (std::size_t v : c) {
      if (dag.nodes[v].kind != CombDAG::NodeKind::Signal) continue;
      if (!have_signal || dag.nodes[v].label < dag.nodes[start].label) start = v;
      have_signal = true;
    }
    // BFS inside the component for the shortest cycle through `start`.
    std::vector<std::size_t> parent(n, unvisited);
    std::vector<std::size_t> queue{start};
    std::size_t closing = unvisited;
    std::vector<bool> seen(n, false);
    seen[start] = true;
    for (std::size_t qi = 0; qi < queue.size() && closing == unvisited; ++qi) {
      std::size_t v = queue[qi];
      for (std::size_t w : dag.succ[v]) {
        if (comp[w] != ci) continue;
        if (w == start) {
          closing = v;
          break;
        }
        if (!seen[w]) {
          seen[w] = true;
          parent[w] = v;
          queue.push_back(w);
        }
      }
    }
    std::vector<std::size_t> path;
    for (std::size_t v = closing; v != start; v = parent[v]) path.push_back(v);
    path.push_back(start);
    std::reverse(path.begin(), path.end());
    std::vector<std::string> names;
    for (std::size_t v : path)
      if (dag.nodes[v].kind == CombDAG::NodeKind::Signal) names.push_back(dag.nodes[v].label);
    loops.push_back(std::move(names));
  }
  std::sort(loops.begin(), loops.end());
  return loops;
}

std::vector<std::vector<std::string>> detect_comb_loops(const Design& design) {
  return detect_comb_loops(build_comb_dag(design));
}

std::size_t timing_complexity(const CombDAG& dag) {
  const std::size_t n = dag.nodes.size();
  std::vector<std::size_t> indegree(n, 0);
  for (const auto& s : dag.succ)
    for (std::size_t w : s) ++indegree[w];
  std::vector<std::size_t> arrival(n, 0);
  std::vector<std::size_t> ready;
  for (std::size_t v = 0; v < n; ++v)
    if (indegree[v] == 0) ready.push_back(v);
  std::size_t processed = 0, worst = 0;
  while (!ready.empty()) {
    std::size_t v = ready.back();
    ready.pop_back();
    ++processed;
    std::size_t out = arrival[v] + (dag.nodes[v].kind == CombDAG::NodeKind::Operator ? 1 : 0);
    worst = std::max(worst, out);
    for (std::size_t w : dag.succ[v]) {
      arrival[w] = std::max(arrival[w], out);
      if (--indegree[w] == 0) ready.push_back(w);
    }
  }
  if (processed != n) {
    auto loops = detect_comb_loops(dag);
    std::string what = "combinational loop";
    if (!loops.empty()) {
      what += ":";
      for (const auto& s : loops.front()) what += " " + s;
    }
    throw CombLoopError(what);
  }
  return worst;
}

std::size_t timing_complexity(const Design& design) { return timing_complexity(build_comb_dag(design)); }

std::vector<std::size_t> assign_order(const FlatDesign& flat) {
  const std::size_t n = flat.assigns.size();
  std::vector<std::size_t> driver(flat.signals.size(), static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < n; ++i) driver[flat.assigns[i].target] = i;
  std::vector<std::vector<std::size_t>> users(n);
  std::vector<std::size_t> indegree(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::set<std::size_t> deps;
    for_each_read(flat.assigns[i].expr, [&](const std::string& name) {
      std::size_t d = driver[flat.scopes[flat.assigns[i].scope].lookup(name)];
      if (d != static_cast<std::size_t>(-1)) deps.insert(d);
    });
    for (std::size_t d : deps) {
      users[d].push_back(i);
      ++indegree[i];
    }
  }
  std::vector<std::size_t> order, ready;
  for (std::size_t i = n; i-- > 0;)
    if (indegree[i] == 0) ready.push_back(i);
  while (!ready.empty()) {
    std::size_t i = ready.back();
    ready.pop_back();
    order.push_back(i);
    for (std::size_t u : users[i])
      if (--indegree[u] == 0) ready.push_back(u);
  }
  if (order.size() != n) throw CombLoopError("combinational loop among continuous assigns");
  return order;
}

}  // namespace synthfuzz
