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
#include <optional>
#include <string>

#include "synthfuzz/ast.hpp"
#include "synthfuzz/trace.hpp"

namespace synthfuzz {

/// Bounded miter in SMT-LIB2 (QF_BV). Both designs start from their reset
/// values with `rst` low, share one symbolic input `|in_<port>@<t>|` per top
/// input and cycle, and the assertion is the disjunction of output
/// inequalities over `unroll` cycles: `unsat` means equivalent on the horizon.
/// Variants carrying profiled guards are rejected with PreconditionError.
std::string export_smt_miter(const Design& seed, const Design& variant, std::size_t unroll);

/// Total symbolic input bits of a miter: input port widths times `unroll`.
std::size_t miter_input_bits(const Design& d, std::size_t unroll);

struct ExhaustiveResult {
  bool equivalent = true;
  std::size_t sequences = 0;  // input sequences simulated
  Stimulus counterexample;    // set when !equivalent
  Verdict verdict;
};

/// Simulates both designs on every input sequence of length `unroll` with
/// `rst` low throughout. Refuses more than `max_bits` symbolic bits.
ExhaustiveResult exhaustive_equivalence(const Design& a, const Design& b, std::size_t unroll,
                                        std::size_t max_bits = 20);

/// Runs an SMT-LIB solver binary (default `z3`) on `smt`; returns "sat",
/// "unsat" or "unknown", or nullopt when the solver is not on PATH.
std::optional<std::string> solve_external(const std::string& smt, const std::string& solver = "z3",
                                          double timeout_seconds = 60);

}  // namespace synthfuzz
