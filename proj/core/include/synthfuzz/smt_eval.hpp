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
#include <string_view>

namespace synthfuzz {

/// Decides a quantifier-free bit-vector SMT-LIB2 script by enumerating every
/// assignment of its declared constants. Understands declare-fun and
/// define-fun of arity zero, assert, check-sat and the QF_BV operators used
/// by the miter exporter. Returns "sat" or "unsat". Throws
/// UnsupportedConstruct for anything else and PreconditionError when the
/// declared constants exceed `max_bits` bits.
std::string smt_brute_force(std::string_view script, std::size_t max_bits = 20);

}  // namespace synthfuzz
