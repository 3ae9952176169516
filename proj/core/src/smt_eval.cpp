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

#include "synthfuzz/smt_eval.hpp"

#include <cctype>
#include <map>
#include <memory>
#include <vector>

#include "synthfuzz/bits.hpp"
#include "synthfuzz/error.hpp"

namespace synthfuzz {

namespace {

struct SExpr {
  bool atom = true;
  std::string text;
  std::vector<SExpr> items;
};

class Reader {
 public:
  explicit Reader(std::string_view s) : s_(s) {}

  bool done() {
    skip();
    return i_ >= s_.size();
  }

  SExpr read() {
    skip();
    if (i_ >= s_.size()) throw SyntaxError(0, 0, "smt: unexpected end of input");
    if (s_[i_] == '(') {
      ++i_;
      SExpr e;
      e.atom = false;
      for (;;) {
        skip();
        if (i_ >= s_.size()) throw SyntaxError(0, 0, "smt: unbalanced parenthesis");
        if (s_[i_] == ')') {
          ++i_;
          return e;
        }
        e.items.push_back(read());
      }
    }
    if (s_[i_] == ')') throw SyntaxError(0, 0, "smt: unexpected ')'");
    SExpr e;
    if (s_[i_] == '|') {
      std::size_t end = s_.find('|', i_ + 1);
      if (end == std::string_view::npos) throw SyntaxError(0, 0, "smt: unterminated quoted symbol");
      e.text = std::string(s_.substr(i_ + 1, end - i_ - 1));
      i_ = end + 1;
      return e;
    }
    std::size_t start = i_;
    while (i_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[i_])) && s_[i_] != '(' && s_[i_] != ')')
      ++i_;
    e.text = std::string(s_.substr(start, i_ - start));
    return e;
  }

 private:
  void skip() {
    while (i_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[i_]))) {
        ++i_;
      } else if (s_[i_] == ';') {
        while (i_ < s_.size() && s_[i_] != '\n') ++i_;
      } else {
        break;
      }
    }
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

// Width 0 marks a Boolean.
struct Val {
  std::uint64_t v = 0;
  unsigned w = 0;
};

enum class Op {
  Const, Var, Def,
  True, False, Not, And, Or, Xor, Implies, Eq, Distinct, Ite,
  BvNot, BvNeg, BvAdd, BvSub, BvMul, BvAnd, BvOr, BvXor, BvShl, BvLshr, BvAshr,
  BvUlt, BvUle, BvUgt, BvUge, BvSlt, BvSle, BvSgt, BvSge,
  Concat, Extract, ZeroExt, SignExt,
};

struct Node {
  Op op = Op::Const;
  Val value;            // Const
  std::size_t ref = 0;  // Var / Def slot
  unsigned hi = 0, lo = 0;
  std::vector<Node> args;
};

class Script {
 public:
  explicit Script(std::string_view text) {
    Reader r(text);
    while (!r.done()) command(r.read());
  }

  std::string decide(std::size_t max_bits) const {
    if (!check_sat_) throw UnsupportedConstruct("script without check-sat");
    std::size_t bits = 0;
    for (unsigned w : var_width_) bits += w == 0 ? 1 : w;
    if (bits > max_bits || bits >= 63) throw PreconditionError("too many symbolic bits for brute force");
    std::vector<Val> vars(var_width_.size());
    std::vector<Val> defs(defs_.size());
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << bits); ++code) {
      std::uint64_t c = code;
      for (std::size_t i = 0; i < vars.size(); ++i) {
        unsigned w = var_width_[i];
        vars[i] = {c & width_mask(w == 0 ? 1 : w), w};
        c >>= (w == 0 ? 1 : w);
      }
      for (std::size_t i = 0; i < defs_.size(); ++i) defs[i] = eval(defs_[i], vars, defs);
      bool all = true;
      for (const auto& a : asserts_)
        if (eval(a, vars, defs).v == 0) {
          all = false;
          break;
        }
      if (all) return "sat";
    }
    return "unsat";
  }

 private:
  void command(const SExpr& e) {
    if (e.atom || e.items.empty() || !e.items[0].atom) throw UnsupportedConstruct("smt command");
    const std::string& head = e.items[0].text;
    if (head == "set-logic" || head == "set-option" || head == "set-info" || head == "exit" ||
        head == "get-model")
      return;
    if (head == "check-sat") {
      check_sat_ = true;
      return;
    }
    if (head == "declare-fun" || head == "declare-const") {
      const bool fun = head == "declare-fun";
      if (e.items.size() != (fun ? 4u : 3u) || (fun && (e.items[2].atom || !e.items[2].items.empty())))
        throw UnsupportedConstruct("declare-fun with arguments");
      names_[e.items[1].text] = {false, var_width_.size()};
      var_width_.push_back(sort(e.items[fun ? 3 : 2]));
      return;
    }
    if (head == "define-fun") {
      if (e.items.size() != 5 || e.items[2].atom || !e.items[2].items.empty())
        throw UnsupportedConstruct("define-fun with arguments");
      Node body = term(e.items[4]);
      names_[e.items[1].text] = {true, defs_.size()};
      defs_.push_back(std::move(body));
      return;
    }
    if (head == "assert") {
      asserts_.push_back(term(e.items.at(1)));
      return;
    }
    throw UnsupportedConstruct("smt command " + head);
  }

  static unsigned sort(const SExpr& s) {
    if (s.atom && s.text == "Bool") return 0;
    if (!s.atom && s.items.size() == 3 && s.items[0].text == "_" && s.items[1].text == "BitVec") {
      unsigned w = static_cast<unsigned>(std::stoul(s.items[2].text));
      if (w == 0 || w > 64) throw UnsupportedConstruct("bit-vector width");
      return w;
    }
    throw UnsupportedConstruct("sort");
  }

  Node term(const SExpr& e) const {
    Node n;
    if (e.atom) {
      const std::string& t = e.text;
      if (t == "true" || t == "false") {
        n.op = Op::Const;
        n.value = {t == "true" ? 1u : 0u, 0};
        return n;
      }
      if (t.size() > 2 && t[0] == '#' && (t[1] == 'b' || t[1] == 'x')) {
        const bool bin = t[1] == 'b';
        const unsigned digits = static_cast<unsigned>(t.size() - 2);
        const unsigned w = bin ? digits : digits * 4;
        if (w > 64) throw UnsupportedConstruct("literal wider than 64 bits");
        n.value = {std::stoull(t.substr(2), nullptr, bin ? 2 : 16), w};
        return n;
      }
      auto it = names_.find(t);
      if (it == names_.end()) throw UnsupportedConstruct("unknown symbol " + t);
      n.op = it->second.first ? Op::Def : Op::Var;
      n.ref = it->second.second;
      return n;
    }
    if (e.items.empty()) throw UnsupportedConstruct("empty term");
    const SExpr& h = e.items[0];
    if (h.atom && h.text == "_") {
      // (_ bvN W)
      if (e.items.size() == 3 && e.items[1].text.rfind("bv", 0) == 0) {
        unsigned w = static_cast<unsigned>(std::stoul(e.items[2].text));
        n.value = {truncate(std::stoull(e.items[1].text.substr(2)), w), w};
        return n;
      }
      throw UnsupportedConstruct("indexed constant");
    }
    if (!h.atom) {
      // ((_ extract hi lo) x), ((_ zero_extend k) x), ((_ sign_extend k) x)
      if (h.items.size() < 3 || h.items[0].text != "_") throw UnsupportedConstruct("indexed operator");
      const std::string& f = h.items[1].text;
      if (f == "extract") {
        n.op = Op::Extract;
        n.hi = static_cast<unsigned>(std::stoul(h.items[2].text));
        n.lo = static_cast<unsigned>(std::stoul(h.items.at(3).text));
      } else if (f == "zero_extend" || f == "sign_extend") {
        n.op = f == "zero_extend" ? Op::ZeroExt : Op::SignExt;
        n.hi = static_cast<unsigned>(std::stoul(h.items[2].text));
      } else {
        throw UnsupportedConstruct("indexed operator " + f);
      }
      n.args.push_back(term(e.items.at(1)));
      return n;
    }
    static const std::map<std::string, Op> ops{
        {"not", Op::Not},       {"and", Op::And},       {"or", Op::Or},         {"xor", Op::Xor},
        {"=>", Op::Implies},    {"=", Op::Eq},          {"distinct", Op::Distinct}, {"ite", Op::Ite},
        {"bvnot", Op::BvNot},   {"bvneg", Op::BvNeg},   {"bvadd", Op::BvAdd},   {"bvsub", Op::BvSub},
        {"bvmul", Op::BvMul},   {"bvand", Op::BvAnd},   {"bvor", Op::BvOr},     {"bvxor", Op::BvXor},
        {"bvshl", Op::BvShl},   {"bvlshr", Op::BvLshr}, {"bvashr", Op::BvAshr}, {"bvult", Op::BvUlt},
        {"bvule", Op::BvUle},   {"bvugt", Op::BvUgt},   {"bvuge", Op::BvUge},   {"bvslt", Op::BvSlt},
        {"bvsle", Op::BvSle},   {"bvsgt", Op::BvSgt},   {"bvsge", Op::BvSge},   {"concat", Op::Concat},
    };
    auto it = ops.find(h.text);
    if (it == ops.end()) throw UnsupportedConstruct("smt operator " + h.text);
    n.op = it->second;
    for (std::size_t i = 1; i < e.items.size(); ++i) n.args.push_back(term(e.items[i]));
    if (n.args.empty()) throw UnsupportedConstruct("operator without operands");
    return n;
  }

  static Val boolean(bool b) { return {b ? 1u : 0u, 0}; }

  static Val eval(const Node& n, const std::vector<Val>& vars, const std::vector<Val>& defs) {
    auto arg = [&](std::size_t i) { return eval(n.args[i], vars, defs); };
    switch (n.op) {
      case Op::Const: return n.value;
      case Op::Var: return vars[n.ref];
      case Op::Def: return defs[n.ref];
      case Op::True: return boolean(true);
      case Op::False: return boolean(false);
      case Op::Not: return boolean(arg(0).v == 0);
      case Op::And: {
        for (std::size_t i = 0; i < n.args.size(); ++i)
          if (arg(i).v == 0) return boolean(false);
        return boolean(true);
      }
      case Op::Or: {
        for (std::size_t i = 0; i < n.args.size(); ++i)
          if (arg(i).v != 0) return boolean(true);
        return boolean(false);
      }
      case Op::Xor: {
        bool x = false;
        for (std::size_t i = 0; i < n.args.size(); ++i) x ^= arg(i).v != 0;
        return boolean(x);
      }
      case Op::Implies: return boolean(arg(0).v == 0 || arg(1).v != 0);
      case Op::Eq: {
        Val a = arg(0);
        for (std::size_t i = 1; i < n.args.size(); ++i)
          if (arg(i).v != a.v) return boolean(false);
        return boolean(true);
      }
      case Op::Distinct: {
        std::vector<std::uint64_t> seen;
        for (std::size_t i = 0; i < n.args.size(); ++i) {
          std::uint64_t v = arg(i).v;
          for (auto s : seen)
            if (s == v) return boolean(false);
          seen.push_back(v);
        }
        return boolean(true);
      }
      case Op::Ite: return arg(0).v != 0 ? arg(1) : arg(2);
      default: break;
    }
    Val a = arg(0);
    const unsigned w = a.w;
    switch (n.op) {
      case Op::BvNot: return {truncate(~a.v, w), w};
      case Op::BvNeg: return {truncate(~a.v + 1, w), w};
      case Op::Extract: return {truncate(a.v >> n.lo, n.hi - n.lo + 1), n.hi - n.lo + 1};
      case Op::ZeroExt: return {a.v, w + n.hi};
      case Op::SignExt: return {truncate(sign_extend(a.v, w), w + n.hi), w + n.hi};
      case Op::Concat: {
        Val r = a;
        for (std::size_t i = 1; i < n.args.size(); ++i) {
          Val b = arg(i);
          r = {(b.w >= 64 ? 0 : (r.v << b.w)) | b.v, r.w + b.w};
        }
        return r;
      }
      default: break;
    }
    // Left-associative chains for the n-ary arithmetic and bitwise operators.
    Val b = arg(1);
    const std::int64_t sa = as_signed(a.v, w), sb = as_signed(b.v, w);
    switch (n.op) {
      case Op::BvAdd:
      case Op::BvMul:
      case Op::BvAnd:
      case Op::BvOr:
      case Op::BvXor: {
        std::uint64_t r = a.v;
        for (std::size_t i = 1; i < n.args.size(); ++i) {
          std::uint64_t x = i == 1 ? b.v : arg(i).v;
          switch (n.op) {
            case Op::BvAdd: r = r + x; break;
            case Op::BvMul: r = r * x; break;
            case Op::BvAnd: r = r & x; break;
            case Op::BvOr: r = r | x; break;
            default: r = r ^ x; break;
          }
        }
        return {truncate(r, w), w};
      }
      case Op::BvSub: return {truncate(a.v - b.v, w), w};
      case Op::BvShl: return {b.v >= w ? 0 : truncate(a.v << b.v, w), w};
      case Op::BvLshr: return {b.v >= w ? 0 : a.v >> b.v, w};
      case Op::BvAshr: {
        std::uint64_t sh = b.v >= w ? w - 1 : b.v;
        return {truncate(static_cast<std::uint64_t>(sa >> sh), w), w};
      }
      case Op::BvUlt: return boolean(a.v < b.v);
      case Op::BvUle: return boolean(a.v <= b.v);
      case Op::BvUgt: return boolean(a.v > b.v);
      case Op::BvUge: return boolean(a.v >= b.v);
      case Op::BvSlt: return boolean(sa < sb);
      case Op::BvSle: return boolean(sa <= sb);
      case Op::BvSgt: return boolean(sa > sb);
      case Op::BvSge: return boolean(sa >= sb);
      default: break;
    }
    throw UnsupportedConstruct("smt operator");
  }

  std::map<std::string, std::pair<bool, std::size_t>> names_;  // (is definition, slot)
  std::vector<unsigned> var_width_;
  std::vector<Node> defs_;
  std::vector<Node> asserts_;
  bool check_sat_ = false;
};

}  // namespace

std::string smt_brute_force(std::string_view script, std::size_t max_bits) {
  return Script(script).decide(max_bits);
}

}  // namespace synthfuzz
