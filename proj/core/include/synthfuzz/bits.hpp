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

namespace synthfuzz {

/// Largest bit-vector width representable by the subset.
inline constexpr unsigned kMaxWidth = 64;

constexpr std::uint64_t width_mask(unsigned width) {
  return width >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << width) - 1);
}

constexpr std::uint64_t truncate(std::uint64_t value, unsigned width) {
  return value & width_mask(width);
}

/// Sign-extends the low `from` bits of `value` to 64 bits.
constexpr std::uint64_t sign_extend(std::uint64_t value, unsigned from) {
  if (from == 0 || from >= 64) return value;
  const std::uint64_t sign = std::uint64_t{1} << (from - 1);
  value &= width_mask(from);
  return (value ^ sign) - sign;
}

/// Extends `value` (of width `from`) to width `to`, sign-extending when asked.
constexpr std::uint64_t extend(std::uint64_t value, unsigned from, unsigned to,
                               bool is_signed) {
  if (is_signed) return truncate(sign_extend(value, from), to);
  return truncate(value, to);
}

constexpr std::int64_t as_signed(std::uint64_t value, unsigned width) {
  return static_cast<std::int64_t>(sign_extend(value, width));
}

}  // namespace synthfuzz
