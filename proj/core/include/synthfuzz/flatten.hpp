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
#include <string>
#include <unordered_map>
#include <vector>

#include "synthfuzz/ast.hpp"

namespace synthfuzz {

enum class SignalKind { Input, Net, Reg };

struct FlatSignal {
  std::string name;  // hierarchical, e.g. "u_core.acc"
  unsigned width = 1;
  bool is_signed = false;
  SignalKind kind = SignalKind::Net;
  std::uint64_t reset = 0;
  std::size_t scope = 0;  // owning instance
};

/// One instantiated module; scope 0 is top.
struct FlatScope {
  std::string path;  // "" for top
  std::string module;
  std::unordered_map<std::string, std::size_t> signals;

  std::size_t lookup(const std::string& local) const;
};

/// Continuous driver of a net: a module assign, an instance input binding, or
/// an instance output binding. `expr` is resolved in `scope`.
struct FlatAssign {
  std::size_t target = 0;
  Expr expr;
  std::size_t scope = 0;
};

struct FlatBlock {
  std::size_t scope = 0;
  std::size_t item_index = 0;  // index of the AlwaysBlock in its module's items
  AlwaysBlock block;
};

/// Design with the instance hierarchy inlined.
struct FlatDesign {
  std::vector<FlatSignal> signals;
  std::vector<FlatScope> scopes;
  std::vector<FlatAssign> assigns;
  std::vector<FlatBlock> blocks;
  std::vector<std::size_t> inputs;   // top-level input ports, declaration order
  std::vector<std::size_t> outputs;  // top-level output ports, declaration order
};

/// Inlines every instance reachable from top. The design must be valid.
FlatDesign flatten(const Design& design);

}  // namespace synthfuzz
