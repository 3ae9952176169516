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

#include "synthfuzz/ast.hpp"

namespace synthfuzz {

/// Structural complexity counts of a design.
struct Metrics {
  std::size_t v = 0;      // net + register declarations, all modules
  std::size_t c = 0;      // continuous assigns + instance port bindings, all modules
  std::size_t s = 0;      // always blocks, all modules
  std::size_t refs = 0;   // instantiation statements in modules reachable from top
  std::size_t lines = 0;  // printed line count

  bool operator==(const Metrics&) const = default;
};

Metrics structural_metrics(const Design& design);

std::string to_string(const Metrics& m);

}  // namespace synthfuzz
