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

/// Prints a design as canonical Verilog-2005 source. Output is a pure function
/// of the AST: binary and unary operators are fully parenthesized, one item per
/// line, two-space indentation, LF endings.
std::string print_design(const Design& design);

std::string print_module(const ModuleDef& module);

std::string print_expr(const Expr& expr);

/// Number of lines print_design would produce.
std::size_t printed_line_count(const Design& design);

/// Lines contributed to a module by one item (depends on the module for the
/// always block's reset branch).
std::size_t item_line_count(const ModuleDef& module, const Item& item);

/// Lines a single procedural statement prints as, nested bodies included.
std::size_t stmt_line_count(const Stmt& stmt);

}  // namespace synthfuzz
