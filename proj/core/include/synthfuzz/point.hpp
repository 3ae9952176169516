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

namespace synthfuzz {

/// One step from a statement list into a nested list: statement `stmt` of the
/// current list, then its then-branch ('t'), else-branch ('e'), case item
/// `item` ('c') or case default ('d').
struct PathStep {
  std::size_t stmt = 0;
  char branch = 't';
  std::size_t item = 0;

  bool operator==(const PathStep&) const = default;
  auto operator<=>(const PathStep&) const = default;
};

/// A position between statements of an always block: the point before
/// statement `position` of the list reached by `path` from the body of the
/// always block at `module.items[item]`. `position` may equal the list size.
struct InsertionPoint {
  std::string module;
  std::size_t item = 0;
  std::vector<PathStep> path;
  std::size_t position = 0;

  bool operator==(const InsertionPoint&) const = default;
  auto operator<=>(const InsertionPoint&) const = default;
};

/// Text form `module/item/steps@position`, steps like `3t.0c2` (possibly empty).
std::string to_string(const InsertionPoint& p);
InsertionPoint parse_insertion_point(const std::string& text);

/// Statement list addressed by the point's module, item and path, or nullptr.
const std::vector<Stmt>* resolve_body(const Design& d, const InsertionPoint& p);
std::vector<Stmt>* resolve_body(Design& d, const InsertionPoint& p);
const std::vector<Stmt>* resolve_body(const ModuleDef& m, const InsertionPoint& p);

/// Every statement position inside the always blocks of `m`, in program order.
/// Positions inside the else-branch of an inserted guard are dead and skipped.
std::vector<InsertionPoint> statement_positions(const ModuleDef& m);

}  // namespace synthfuzz
