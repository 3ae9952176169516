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

#include <cstddef>
#include <string>
#include <vector>

#include "synthfuzz/ast.hpp"
#include "synthfuzz/flatten.hpp"

namespace synthfuzz {

/// Combinational dependency graph of a flattened design.
///
/// Signal nodes stand for flat nets, inputs and register outputs; every
/// register also gets a data-input sink node. Each operator occurrence is its
/// own node, so a path's operator count is its logic depth. Selects and
/// concatenations are wiring and add no node. Procedural branches become
/// multiplexer operator nodes in front of the register sinks.
struct CombDAG {
  enum class NodeKind { Signal, RegInput, Operator };

  struct Node {
    NodeKind kind = NodeKind::Signal;
    std::string label;       // signal name, "<reg>.D", or operator text
    std::size_t signal = 0;  // flat signal index for Signal/RegInput
  };

  std::vector<Node> nodes;
  std::vector<std::vector<std::size_t>> succ;

  std::size_t edge_count() const;
};

CombDAG build_comb_dag(const FlatDesign& flat);
CombDAG build_comb_dag(const Design& design);

/// Combinational cycles, one per strongly connected component, each given as
/// the signal names along the cycle starting at the lexicographically smallest.
/// Sorted; empty for a loop-free design.
std::vector<std::vector<std::string>> detect_comb_loops(const CombDAG& dag);
std::vector<std::vector<std::string>> detect_comb_loops(const Design& design);

/// Largest number of operator nodes on any path. Throws CombLoopError when the
/// graph is cyclic.
std::size_t timing_complexity(const CombDAG& dag);
std::size_t timing_complexity(const Design& design);

/// Indices into FlatDesign::assigns in an order where every net is computed
/// after the nets it reads. Throws CombLoopError on a cycle.
std::vector<std::size_t> assign_order(const FlatDesign& flat);

}  // namespace synthfuzz
