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

// Reference computations for tests, written independently of the library
// code they check.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "synthfuzz/ast.hpp"
#include "synthfuzz/metrics.hpp"
#include "synthfuzz/rng.hpp"

namespace oracle {

using synthfuzz::Design;
using synthfuzz::Expr;

struct Value {
  std::uint64_t bits = 0;
  unsigned width = 1;
  bool is_signed = false;
};

using Env = std::map<std::string, Value>;

/// Direct recursive evaluation with self-determined widths. Every name the
/// expression reads must be bound in `env`.
Value eval(const Expr& e, const Env& env);

/// Every tagged guard condition in a design: tagged If conditions and the
/// conditions of tagged ternaries.
struct GuardSite {
  std::string module;
  Expr cond;
  synthfuzz::GuardKind kind;
};
std::vector<GuardSite> guard_sites(const Design& d);

/// Evaluates a guard over every value of its single variable. Returns false
/// on the first assignment making it false.
bool guard_holds_exhaustively(const Expr& cond, const std::string& var, unsigned width, bool is_signed);

/// Depth-first search for a cycle through continuous drivers of the
/// flattened design. Registers break cycles.
bool has_comb_loop(const Design& d);

/// Every design obtained by removing one statement (at any depth), one module
/// item, one top-level output port or one non-top module.
std::vector<Design> single_deletions(const Design& d);

/// sqrt(dv^2 + dc^2 + ds^2)
double distance(const synthfuzz::Metrics& a, const synthfuzz::Metrics& b);

/// P(Vi|D) = (d_i / sum d)(T_i / sum T) / Z
std::vector<double> posterior(const std::vector<double>& distance, const std::vector<double>& timing);

/// One-sided sign test: P(X >= wins) for X ~ Binomial(n, 1/2).
double sign_test_p(std::size_t wins, std::size_t n);

std::size_t newline_count(const std::string& text);

/// Random expression over `signals` (name -> width), for property tests.
Expr random_expr(synthfuzz::Rng& rng, const std::vector<std::pair<std::string, unsigned>>& signals, unsigned depth);

/// Replaces the first binary operator met in program order (assigns before
/// always blocks, top module first) by a different operator of the same
/// class. Returns false when the design has none.
bool perturb_operator(Design& d, std::size_t skip);

}  // namespace oracle
