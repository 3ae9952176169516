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

#include <string>
#include <vector>

#include "synthfuzz/ast.hpp"

namespace synthfuzz {

/// Checks every structural invariant of a Design and throws InvalidDesign (or
/// WidthMismatch) describing the first violation:
///   - exactly one module named `top`; instance targets resolve; no recursive
///     instantiation;
///   - identifiers unique within a module; clk/rst are reserved;
///   - continuous assigns and instance outputs drive nets or output ports,
///     always blocks assign registers, every signal has at most one driver;
///   - selects in range, expression widths within 64 bits, instance bindings
///     name existing ports and output bindings are whole nets.
void validate_design(const Design& design);

/// Non-throwing variant; returns an empty string when valid.
std::string validation_error(const Design& design);

/// Module names in dependency order: every module appears after the modules it
/// instantiates. Only modules reachable from top are listed.
std::vector<std::string> reachable_modules_bottom_up(const Design& design);

}  // namespace synthfuzz
