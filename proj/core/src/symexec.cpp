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

#include "synthfuzz/symexec.hpp"

#include "synthfuzz/error.hpp"

namespace synthfuzz {

Expr ExprBuilder::eval(const Expr& e, const std::map<std::string, Expr>& overrides) const {
  if (overrides.empty()) return e;
  switch (e.kind) {
    case Expr::Kind::Const:
      return e;
    case Expr::Kind::Ref: {
      auto it = overrides.find(e.name);
      return it == overrides.end() ? e : it->second;
    }
    case Expr::Kind::Select: {
      auto it = overrides.find(e.name);
      if (it == overrides.end()) return e;
      if (strict_) throw UnextractableRegion("bit-select of blocking-updated register '" + e.name + "'");
      return it->second;
    }
    default: {
      Expr out = e;
      for (auto& a : out.args) a = eval(a, overrides);
      return out;
    }
  }
}

Expr ExprBuilder::fit(Expr value, const Expr& source, const std::string& target) const {
  if (!strict_) return value;
  const SignalType* t = scope_.lookup(target);
  if (t == nullptr) throw InvalidDesign("unknown assignment target '" + target + "'");
  SignalType s = infer_type(source, scope_);
  if (s.width == t->width) return value;
  if (s.width > t->width)
    throw UnextractableRegion("truncating assignment to '" + target + "'");
  // Adding a zero of the target width extends the value with its own signedness.
  return Expr::binary(BinaryOp::Add, std::move(value), Expr::constant(t->width, 0, s.is_signed));
}

}  // namespace synthfuzz
