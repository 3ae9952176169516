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

#include <string_view>

#include "synthfuzz/ast.hpp"

namespace synthfuzz {

/// Parses source in the supported subset. Throws SyntaxError (with line and
/// column) on malformed input and UnsupportedConstruct for valid Verilog that
/// lies outside the subset (real/integer declarations, initial blocks, delays,
/// four-state literals, ...).
///
/// The top module is the one carrying a `(* top *)` attribute; without one, the
/// single module that no other module instantiates.
Design parse_design(std::string_view text);

/// Parses a single expression (used to read guard text back from mutation logs).
Expr parse_expr(std::string_view text);

}  // namespace synthfuzz
