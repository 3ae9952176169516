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

#include "synthfuzz/parser.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "synthfuzz/bits.hpp"
#include "synthfuzz/error.hpp"

namespace synthfuzz {
namespace {

enum class Tok { Ident, Number, String, Punct, AttrOpen, AttrClose, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
  // Number payload.
  unsigned width = 32;
  bool sized = false;
  bool is_signed = true;
  std::uint64_t value = 0;
};

const std::set<std::string>& unsupported_keywords() {
  static const std::set<std::string> kw = {
      "real",     "realtime", "integer",   "time",    "initial",  "task",
      "function", "generate", "genvar",    "for",     "while",    "repeat",
      "forever",  "parameter", "localparam", "inout", "negedge",  "supply0",
      "supply1",  "tri",      "wand",      "wor",     "fork",     "join",
      "casex",    "casez",    "defparam",  "specify", "primitive", "event",
      "wait",     "force",    "release",   "assign_deassign", "logic", "always_ff",
      "always_comb", "shortreal",
  };
  return kw;
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.line = line_;
      t.column = col_;
      if (pos_ >= src_.size()) {
        t.kind = Tok::End;
        out.push_back(t);
        return out;
      }
      char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '\\') {
        if (c == '\\') throw UnsupportedConstruct("escaped identifier");
        std::size_t start = pos_;
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                      src_[pos_] == '_' || src_[pos_] == '$'))
          advance();
        t.kind = Tok::Ident;
        t.text = std::string(src_.substr(start, pos_ - start));
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '\'') {
        lex_number(t);
      } else if (c == '"') {
        advance();
        std::size_t start = pos_;
        while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') advance();
        if (pos_ >= src_.size() || src_[pos_] != '"')
          throw SyntaxError(t.line, t.column, "unterminated string");
        t.kind = Tok::String;
        t.text = std::string(src_.substr(start, pos_ - start));
        advance();
      } else if (c == '$') {
        throw UnsupportedConstruct("system task or function");
      } else if (c == '`') {
        throw UnsupportedConstruct("compiler directive");
      } else if (c == '#') {
        throw UnsupportedConstruct("delay control");
      } else {
        lex_punct(t);
      }
      out.push_back(std::move(t));
    }
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  bool starts_with(std::string_view s) const { return src_.substr(pos_, s.size()) == s; }

  void skip_space() {
    for (;;) {
      while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
      if (starts_with("//")) {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (starts_with("/*")) {
        std::size_t l = line_, c = col_;
        advance();
        advance();
        while (pos_ < src_.size() && !starts_with("*/")) advance();
        if (pos_ >= src_.size()) throw SyntaxError(l, c, "unterminated block comment");
        advance();
        advance();
      } else {
        return;
      }
    }
  }

  void lex_punct(Token& t) {
    static const char* ops[] = {"(*", "*)", ">>>", "<<<", "===", "!==", "&&", "||", "==", "!=",
                                "<=", ">=", "<<", ">>", "~&", "~|", "~^", "^~"};
    for (const char* op : ops) {
      if (starts_with(op)) {
        std::string s(op);
        if (s == "(*" && pos_ + 2 < src_.size() && src_[pos_ + 2] == ')') break;  // @(*)
        for (std::size_t i = 0; i < s.size(); ++i) advance();
        if (s == "(*") {
          t.kind = Tok::AttrOpen;
        } else if (s == "*)") {
          t.kind = Tok::AttrClose;
        } else {
          if (s == "===" || s == "!==") throw UnsupportedConstruct("case equality operator " + s);
          if (s == "<<<") throw UnsupportedConstruct("arithmetic left shift");
          if (s[0] == '~' || s == "^~") throw UnsupportedConstruct("reduction operator " + s);
          t.kind = Tok::Punct;
        }
        t.text = s;
        return;
      }
    }
    static const std::string singles = "()[]{};:,.=<>+-*/%&|^~!?@";
    char c = src_[pos_];
    if (singles.find(c) == std::string::npos)
      throw SyntaxError(line_, col_, std::string("unexpected character '") + c + "'");
    if (c == '/' || c == '%') throw UnsupportedConstruct(std::string("operator ") + c);
    advance();
    t.kind = Tok::Punct;
    t.text = std::string(1, c);
  }

  static int digit_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  }

  void lex_number(Token& t) {
    t.kind = Tok::Number;
    std::size_t start_line = line_, start_col = col_;
    std::string size_digits;
    while (pos_ < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[pos_])) ||
                                  src_[pos_] == '_')) {
      if (src_[pos_] != '_') size_digits += src_[pos_];
      advance();
    }
    skip_inline_space();
    if (pos_ >= src_.size() || src_[pos_] != '\'') {
      // Plain decimal: 32-bit signed.
      if (size_digits.empty()) throw SyntaxError(start_line, start_col, "malformed number");
      t.value = parse_digits(size_digits, 10, start_line, start_col);
      t.width = 32;
      t.sized = false;
      t.is_signed = true;
      t.text = size_digits;
      return;
    }
    advance();  // '
    bool is_signed = false;
    if (pos_ < src_.size() && (src_[pos_] == 's' || src_[pos_] == 'S')) {
      is_signed = true;
      advance();
    }
    if (pos_ >= src_.size()) throw SyntaxError(start_line, start_col, "malformed literal");
    char base_char = static_cast<char>(std::tolower(static_cast<unsigned char>(src_[pos_])));
    int base = 0;
    switch (base_char) {
      case 'd': base = 10; break;
      case 'h': base = 16; break;
      case 'b': base = 2; break;
      case 'o': base = 8; break;
      default: throw SyntaxError(line_, col_, "unknown literal base");
    }
    advance();
    skip_inline_space();
    std::string digits;
    while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                  src_[pos_] == '_' || src_[pos_] == '?')) {
      char c = static_cast<char>(std::tolower(static_cast<unsigned char>(src_[pos_])));
      if (c == 'x' || c == 'z' || c == '?') throw UnsupportedConstruct("four-state literal");
      if (c != '_') digits += c;
      advance();
    }
    if (digits.empty()) throw SyntaxError(start_line, start_col, "literal without digits");
    t.value = parse_digits(digits, base, start_line, start_col);
    if (size_digits.empty()) {
      t.width = 32;
      t.sized = false;
    } else {
      unsigned long w = std::stoul(size_digits);
      if (w == 0) throw SyntaxError(start_line, start_col, "zero-width literal");
      if (w > kMaxWidth) throw UnsupportedConstruct("literal wider than 64 bits");
      t.width = static_cast<unsigned>(w);
      t.sized = true;
    }
    t.is_signed = is_signed;
    t.value = truncate(t.value, t.width);
    t.text = size_digits + "'" + (is_signed ? "s" : "") + base_char + digits;
  }

  void skip_inline_space() {
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t')) advance();
  }

  static std::uint64_t parse_digits(const std::string& digits, int base, std::size_t line,
                                    std::size_t col) {
    unsigned __int128 v = 0;
    for (char c : digits) {
      int d = digit_value(c);
      if (d < 0 || d >= base) throw SyntaxError(line, col, "invalid digit in literal");
      v = v * static_cast<unsigned>(base) + static_cast<unsigned>(d);
      if (v > (static_cast<unsigned __int128>(1) << 64))
        throw UnsupportedConstruct("literal wider than 64 bits");
    }
    return static_cast<std::uint64_t>(v);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

struct Attribute {
  std::string name;
  std::string value;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Design design() {
    Design d;
    std::vector<std::string> tops;
    if (peek().kind == Tok::End) fail("empty input: expected 'module'");
    while (peek().kind != Tok::End) {
      auto attrs = attributes();
      bool is_top = false;
      for (const auto& a : attrs) {
        if (a.name == "top") is_top = true;
      }
      ModuleDef m = module();
      if (is_top) tops.push_back(m.name);
      for (const auto& existing : d.modules)
        if (existing.name == m.name) fail("duplicate module '" + m.name + "'");
      d.modules.push_back(std::move(m));
    }
    if (tops.size() > 1) throw InvalidDesign("multiple modules marked (* top *)");
    if (tops.size() == 1) {
      d.top = tops.front();
    } else {
      std::set<std::string> instantiated;
      for (const auto& m : d.modules)
        for (const auto& item : m.items)
          if (const auto* inst = std::get_if<Instance>(&item)) instantiated.insert(inst->module);
      std::vector<std::string> roots;
      for (const auto& m : d.modules)
        if (instantiated.count(m.name) == 0) roots.push_back(m.name);
      if (roots.size() != 1)
        throw InvalidDesign("cannot determine top module (mark it with (* top *))");
      d.top = roots.front();
    }
    return d;
  }

  Expr standalone_expr() {
    Expr e = expr();
    if (peek().kind != Tok::End) fail("trailing input after expression");
    return e;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }
  Token next() {
    Token t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(peek().line, peek().column, msg);
  }
  bool is_punct(const char* p, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::Punct && peek(ahead).text == p;
  }
  bool is_keyword(const char* k, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::Ident && peek(ahead).text == k;
  }
  void expect_punct(const char* p) {
    if (!is_punct(p)) fail(std::string("expected '") + p + "' but found '" + describe(peek()) + "'");
    next();
  }
  void expect_keyword(const char* k) {
    if (!is_keyword(k)) fail(std::string("expected '") + k + "' but found '" + describe(peek()) + "'");
    next();
  }
  static std::string describe(const Token& t) {
    return t.kind == Tok::End ? std::string("end of input") : t.text;
  }

  std::string identifier() {
    if (peek().kind != Tok::Ident) fail("expected identifier but found '" + describe(peek()) + "'");
    const std::string& text = peek().text;
    if (unsupported_keywords().count(text)) throw UnsupportedConstruct(text);
    if (is_reserved(text)) fail("unexpected keyword '" + text + "'");
    return next().text;
  }

  static bool is_reserved(const std::string& s) {
    static const std::set<std::string> kw = {
        "module", "endmodule", "input", "output", "wire", "reg", "assign", "always",
        "begin", "end", "if", "else", "case", "endcase", "default", "posedge", "signed"};
    return kw.count(s) > 0;
  }

  std::vector<Attribute> attributes() {
    std::vector<Attribute> out;
    while (peek().kind == Tok::AttrOpen) {
      next();
      for (;;) {
        Attribute a;
        if (peek().kind != Tok::Ident) fail("expected attribute name");
        a.name = next().text;
        if (is_punct("=")) {
          next();
          if (peek().kind == Tok::String || peek().kind == Tok::Number || peek().kind == Tok::Ident)
            a.value = next().text;
          else
            fail("expected attribute value");
        }
        out.push_back(std::move(a));
        if (is_punct(",")) {
          next();
          continue;
        }
        break;
      }
      if (peek().kind != Tok::AttrClose) fail("expected '*)'");
      next();
    }
    return out;
  }

  GuardKind guard_from(const std::vector<Attribute>& attrs) {
    GuardKind g = GuardKind::None;
    for (const auto& a : attrs) {
      if (a.name != "emi_guard") continue;
      auto k = guard_kind_from_string(a.value);
      if (!k) fail("unknown emi_guard kind '" + a.value + "'");
      g = *k;
    }
    return g;
  }

  unsigned number_value(const char* what) {
    if (peek().kind != Tok::Number) fail(std::string("expected ") + what);
    return static_cast<unsigned>(next().value);
  }

  // [msb:0] -> width; absent -> 1.
  unsigned optional_range() {
    if (!is_punct("[")) return 1;
    next();
    unsigned msb = number_value("range msb");
    expect_punct(":");
    unsigned lsb = number_value("range lsb");
    expect_punct("]");
    if (lsb != 0 || msb < lsb) throw UnsupportedConstruct("range not of the form [N:0]");
    if (msb + 1 > kMaxWidth) throw UnsupportedConstruct("signal wider than 64 bits");
    return msb + 1;
  }

  ModuleDef module() {
    if (is_keyword("macromodule")) throw UnsupportedConstruct("macromodule");
    expect_keyword("module");
    ModuleDef m;
    m.name = identifier();
    if (is_punct("#")) throw UnsupportedConstruct("module parameters");
    expect_punct("(");
    if (!is_punct(")")) {
      for (;;) {
        Port p;
        if (is_keyword("inout")) throw UnsupportedConstruct("inout");
        if (is_keyword("input")) {
          p.direction = Direction::Input;
        } else if (is_keyword("output")) {
          p.direction = Direction::Output;
        } else if (peek().kind == Tok::Ident && !is_reserved(peek().text)) {
          throw UnsupportedConstruct("non-ANSI port list");
        } else {
          fail("expected port direction");
        }
        next();
        if (is_keyword("wire")) next();
        if (is_keyword("reg")) throw UnsupportedConstruct("output reg port");
        if (is_keyword("signed")) {
          next();
          p.is_signed = true;
        }
        p.width = optional_range();
        p.name = identifier();
        bool implicit = (p.name == kClock || p.name == kReset) &&
                        p.direction == Direction::Input && p.width == 1 && !p.is_signed;
        if (!implicit) m.ports.push_back(std::move(p));
        if (is_punct(",")) {
          next();
          continue;
        }
        break;
      }
    }
    expect_punct(")");
    expect_punct(";");
    std::map<std::string, std::uint64_t> resets;
    std::set<std::string> initialized;
    while (!is_keyword("endmodule")) {
      if (peek().kind == Tok::End) fail("expected 'endmodule'");
      item(m, resets, initialized);
    }
    next();
    for (auto& it : m.items) {
      if (auto* reg = std::get_if<RegDecl>(&it)) {
        auto r = resets.find(reg->name);
        if (r != resets.end()) reg->reset = truncate(r->second, reg->width);
      }
    }
    return m;
  }

  std::uint64_t constant_value() {
    Expr e = expr();
    if (e.kind != Expr::Kind::Const) fail("expected a constant");
    return e.value;
  }

  void item(ModuleDef& m, std::map<std::string, std::uint64_t>& resets,
            std::set<std::string>& initialized) {
    auto attrs = attributes();
    (void)attrs;
    if (peek().kind != Tok::Ident) fail("expected module item but found '" + describe(peek()) + "'");
    const std::string& kw = peek().text;
    if (unsupported_keywords().count(kw)) throw UnsupportedConstruct(kw);
    if (kw == "wire") {
      next();
      NetDecl n;
      if (is_keyword("signed")) {
        next();
        n.is_signed = true;
      }
      n.width = optional_range();
      n.name = identifier();
      if (is_punct("=")) throw UnsupportedConstruct("net declaration assignment");
      if (is_punct(",")) throw UnsupportedConstruct("multiple declarations per statement");
      expect_punct(";");
      m.items.emplace_back(std::move(n));
    } else if (kw == "reg") {
      next();
      RegDecl r;
      if (is_keyword("signed")) {
        next();
        r.is_signed = true;
      }
      r.width = optional_range();
      r.name = identifier();
      if (is_punct("[")) throw UnsupportedConstruct("memory array");
      if (is_punct("=")) {
        next();
        r.reset = truncate(constant_value(), r.width);
        initialized.insert(r.name);
      }
      if (is_punct(",")) throw UnsupportedConstruct("multiple declarations per statement");
      expect_punct(";");
      m.items.emplace_back(std::move(r));
    } else if (kw == "assign") {
      next();
      ContinuousAssign a;
      a.target = identifier();
      if (is_punct("[")) throw UnsupportedConstruct("part-select assignment target");
      expect_punct("=");
      a.value = expr();
      expect_punct(";");
      m.items.emplace_back(std::move(a));
    } else if (kw == "always") {
      next();
      m.items.emplace_back(always_block(resets));
    } else if (kw == "input" || kw == "output") {
      throw UnsupportedConstruct("non-ANSI port declaration");
    } else {
      Instance inst;
      inst.module = identifier();
      if (is_punct("#")) throw UnsupportedConstruct("parameter override");
      inst.name = identifier();
      expect_punct("(");
      if (!is_punct(")")) {
        for (;;) {
          if (!is_punct(".")) throw UnsupportedConstruct("positional port connection");
          next();
          PortBinding b;
          b.port = identifier();
          expect_punct("(");
          if (is_punct(")")) {
            next();  // unconnected
          } else {
            b.value = expr();
            expect_punct(")");
            bool implicit = (b.port == kClock || b.port == kReset) &&
                            b.value.kind == Expr::Kind::Ref && b.value.name == b.port;
            if (!implicit) inst.bindings.push_back(std::move(b));
          }
          if (is_punct(",")) {
            next();
            continue;
          }
          break;
        }
      }
      expect_punct(")");
      expect_punct(";");
      m.items.emplace_back(std::move(inst));
    }
  }

  AlwaysBlock always_block(std::map<std::string, std::uint64_t>& resets) {
    expect_punct("@");
    expect_punct("(");
    if (is_keyword("negedge")) throw UnsupportedConstruct("negedge");
    if (!is_keyword("posedge")) {
      if (is_punct("*")) throw UnsupportedConstruct("combinational always block");
      throw UnsupportedConstruct("level-sensitive always block");
    }
    next();
    std::string clock = identifier();
    if (clock != kClock) throw UnsupportedConstruct("clock other than 'clk'");
    if (is_keyword("or") || is_punct(",")) throw UnsupportedConstruct("multiple event controls");
    expect_punct(")");
    expect_keyword("begin");
    if (!is_keyword("if") || !(peek(1).kind == Tok::Punct && peek(1).text == "(") ||
        !(peek(2).kind == Tok::Ident && peek(2).text == kReset))
      throw UnsupportedConstruct("always block without synchronous reset branch");
    next();
    expect_punct("(");
    next();
    expect_punct(")");
    expect_keyword("begin");
    while (!is_keyword("end")) {
      std::string target = identifier();
      expect_punct("<=");
      resets[target] = constant_value();
      expect_punct(";");
    }
    next();
    AlwaysBlock block;
    if (is_keyword("else")) {
      next();
      block.body = branch_body();
    }
    expect_keyword("end");
    return block;
  }

  std::vector<Stmt> branch_body() {
    std::vector<Stmt> out;
    if (is_keyword("begin")) {
      next();
      while (!is_keyword("end")) {
        if (peek().kind == Tok::End) fail("expected 'end'");
        out.push_back(statement());
      }
      next();
    } else {
      out.push_back(statement());
    }
    return out;
  }

  Stmt statement() {
    auto attrs = attributes();
    GuardKind guard = guard_from(attrs);
    if (peek().kind != Tok::Ident) fail("expected statement but found '" + describe(peek()) + "'");
    const std::string& kw = peek().text;
    if (unsupported_keywords().count(kw)) throw UnsupportedConstruct(kw);
    if (kw == "if") {
      next();
      expect_punct("(");
      IfStmt s;
      s.guard = guard;
      s.cond = expr();
      expect_punct(")");
      s.then_body = branch_body();
      if (is_keyword("else")) {
        next();
        s.else_body = branch_body();
      }
      return Stmt{std::move(s)};
    }
    if (kw == "case") {
      next();
      expect_punct("(");
      CaseStmt c;
      c.subject = expr();
      expect_punct(")");
      while (!is_keyword("endcase")) {
        if (peek().kind == Tok::End) fail("expected 'endcase'");
        if (is_keyword("default")) {
          next();
          if (is_punct(":")) next();
          if (c.has_default) fail("duplicate default");
          c.has_default = true;
          c.default_body = branch_body();
          continue;
        }
        CaseItem item;
        for (;;) {
          item.labels.push_back(expr());
          if (is_punct(",")) {
            next();
            continue;
          }
          break;
        }
        expect_punct(":");
        item.body = branch_body();
        c.items.push_back(std::move(item));
      }
      next();
      return Stmt{std::move(c)};
    }
    if (kw == "begin") throw UnsupportedConstruct("nested begin-end block");
    AssignStmt a;
    a.target = identifier();
    if (is_punct("[")) throw UnsupportedConstruct("part-select assignment target");
    if (is_punct("<=")) {
      a.blocking = false;
    } else if (is_punct("=")) {
      a.blocking = true;
    } else {
      fail("expected '<=' or '='");
    }
    next();
    a.value = expr();
    expect_punct(";");
    return Stmt{std::move(a)};
  }

  // Expression grammar, lowest precedence first.
  Expr expr() { return ternary(); }

  Expr ternary() {
    Expr cond = binary(0);
    if (!is_punct("?")) return cond;
    next();
    auto attrs = attributes();
    GuardKind guard = guard_from(attrs);
    Expr a = ternary();
    expect_punct(":");
    Expr b = ternary();
    return Expr::ternary(std::move(cond), std::move(a), std::move(b), guard);
  }

  struct Level {
    std::vector<std::pair<const char*, BinaryOp>> ops;
  };

  static const std::vector<Level>& levels() {
    static const std::vector<Level> lv = {
        {{{"||", BinaryOp::LogicOr}}},
        {{{"&&", BinaryOp::LogicAnd}}},
        {{{"|", BinaryOp::Or}}},
        {{{"^", BinaryOp::Xor}}},
        {{{"&", BinaryOp::And}}},
        {{{"==", BinaryOp::Eq}, {"!=", BinaryOp::Ne}}},
        {{{"<", BinaryOp::Lt}, {"<=", BinaryOp::Le}, {">", BinaryOp::Gt}, {">=", BinaryOp::Ge}}},
        {{{"<<", BinaryOp::Shl}, {">>", BinaryOp::Shr}, {">>>", BinaryOp::AShr}}},
        {{{"+", BinaryOp::Add}, {"-", BinaryOp::Sub}}},
        {{{"*", BinaryOp::Mul}}},
    };
    return lv;
  }

  Expr binary(std::size_t level) {
    if (level >= levels().size()) return unary();
    Expr lhs = binary(level + 1);
    for (;;) {
      bool matched = false;
      for (const auto& [text, op] : levels()[level].ops) {
        if (is_punct(text)) {
          next();
          Expr rhs = binary(level + 1);
          lhs = Expr::binary(op, std::move(lhs), std::move(rhs));
          matched = true;
          break;
        }
      }
      if (!matched) return lhs;
    }
  }

  Expr unary() {
    static const std::vector<std::pair<const char*, UnaryOp>> ops = {
        {"~", UnaryOp::Not}, {"-", UnaryOp::Neg}, {"!", UnaryOp::LogicNot},
        {"&", UnaryOp::RedAnd}, {"|", UnaryOp::RedOr}, {"^", UnaryOp::RedXor}};
    if (is_punct("+")) throw UnsupportedConstruct("unary plus");
    for (const auto& [text, op] : ops) {
      if (is_punct(text)) {
        next();
        return Expr::unary(op, unary());
      }
    }
    return primary();
  }

  Expr primary() {
    const Token& t = peek();
    if (t.kind == Tok::Number) {
      Token n = next();
      return Expr::constant(n.width, n.value, n.is_signed);
    }
    if (t.kind == Tok::Punct && t.text == "(") {
      next();
      Expr e = expr();
      expect_punct(")");
      return e;
    }
    if (t.kind == Tok::Punct && t.text == "{") {
      next();
      std::vector<Expr> parts;
      parts.push_back(expr());
      if (is_punct("{")) throw UnsupportedConstruct("replication");
      while (is_punct(",")) {
        next();
        parts.push_back(expr());
      }
      if (is_punct("{")) throw UnsupportedConstruct("replication");
      expect_punct("}");
      return Expr::concat(std::move(parts));
    }
    if (t.kind == Tok::Ident) {
      std::string name = identifier();
      if (is_punct("(")) throw UnsupportedConstruct("function call");
      if (is_punct("[")) {
        next();
        unsigned msb = number_value("bit index");
        unsigned lsb = msb;
        if (is_punct(":")) {
          next();
          lsb = number_value("bit index");
        } else if (is_punct("+") || is_punct("-")) {
          throw UnsupportedConstruct("indexed part-select");
        }
        expect_punct("]");
        return Expr::select(std::move(name), msb, lsb);
      }
      return Expr::ref(std::move(name));
    }
    fail("expected expression but found '" + describe(t) + "'");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Design parse_design(std::string_view text) {
  Parser p(Lexer(text).run());
  return p.design();
}

Expr parse_expr(std::string_view text) {
  Parser p(Lexer(text).run());
  return p.standalone_expr();
}

}  // namespace synthfuzz
