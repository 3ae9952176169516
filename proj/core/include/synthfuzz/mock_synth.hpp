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

#include <cstdint>
#include <optional>
#include <string>

#include "synthfuzz/ast.hpp"

namespace synthfuzz {

/// Injected fault of the mock synthesizer.
///  A: swaps the branches of every If nested three or more control levels deep.
///  B: replaces the first non-constant input binding of each instance of a
///     module without always blocks with a constant.
///  C: aborts when the design has more than kMockRefLimit instantiations.
enum class FaultClass { None, A, B, C };

inline constexpr std::size_t kMockRefLimit = 6;

const char* to_string(FaultClass f);
std::optional<FaultClass> fault_class_from_string(const std::string& text);

struct MockResult {
  bool crashed = false;
  int exit_code = 0;
  Design netlist;   // valid when !crashed
  std::string log;  // tool console output
};

/// Deterministic faulty "compilation". Without a fault, or when the fault's
/// trigger is absent, the netlist equals the input.
MockResult mock_synthesize(const Design& d, FaultClass fault, std::uint64_t seed = 0,
                           const std::string& source_path = "design.v");

}  // namespace synthfuzz
