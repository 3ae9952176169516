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

#include "synthfuzz/printer.hpp"

#include <algorithm>
#include <set>
#include <string_view>

namespace synthfuzz {
namespace {

void append_expr(std::string& out, const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Const:
      out += std::to_string(e.width);
      out += e.is_signed ? "'sd" : "'d";
      out += std::to_string(e.value);
      return;
    case Expr::Kind::Ref:
      out += e.name;
      return;
    case Expr::Kind::Select:
      out += e.name;
      out += '[';
      out += std::to_string(e.msb);
      if (e.msb != e.lsb) {
        out += ':';
        out += std::to_string(e.lsb);
      }
      out += ']';
      return;
    case Expr::Kind::Concat:
      out += '{';
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (i > 0) out += ", ";
        append_expr(out, e.args[i]);
      }
      out += '}';
      return;
    case Expr::Kind::Unary:
      out += '(';
      out += to_string(e.uop);
      append_expr(out, e.args[0]);
      out += ')';
      return;
    case Expr::Kind::Binary:
      out += '(';
      append_expr(out, e.args[0]);
      out += ' ';
      out += to_string(e.bop);
      out += ' ';
      append_expr(out, e.args[1]);
      out += ')';
      return;
    case Expr::Kind::Ternary:
      out += '(';
      append_expr(out, e.args[0]);
      out += " ? ";
      if (e.guard != GuardKind::None) {
        out += "(* emi_guard = \"";
        out += to_string(e.guard);
        out += "\" *) ";
      }
      append_expr(out, e.args[1]);
      out += " : ";
      append_expr(out, e.args[2]);
      out += ')';
      return;
  }
}

// Condition text without the redundant outer parentheses.
std::string condition_text(const Expr& e) {
  std::string text = print_expr(e);
  if ((e.kind == Expr::Kind::Binary || e.kind == Expr::Kind::Unary ||
       e.kind == Expr::Kind::Ternary) &&
      text.size() >= 2 && text.front() == '(' && text.back() == ')') {
    return text.substr(1, text.size() - 2);
  }
  return text;
}

std::string range_text(unsigned width, bool is_signed) {
  std::string out;
  if (is_signed) out += "signed ";
  if (width > 1) out += "[" + std::to_string(width - 1) + ":0] ";
  return out;
}

class Writer {
 public:
  void line(int indent, std::string_view text) {
    out_.append(static_cast<std::size_t>(indent), ' ');
    out_ += text;
    out_ += '\n';
  }
  std::string take() { return std::move(out_); }

 private:
  std::string out_;
};

void write_body(Writer& w, int indent, const std::vector<Stmt>& body);

void write_stmt(Writer& w, int indent, const Stmt& stmt) {
  if (const auto* a = std::get_if<AssignStmt>(&stmt.node)) {
    w.line(indent, a->target + (a->blocking ? " = " : " <= ") + print_expr(a->value) + ";");
  } else if (const auto* i = std::get_if<IfStmt>(&stmt.node)) {
    std::string head;
    if (i->guard != GuardKind::None)
      head += std::string("(* emi_guard = \"") + to_string(i->guard) + "\" *) ";
    head += "if (" + condition_text(i->cond) + ") begin";
    w.line(indent, head);
    write_body(w, indent + 2, i->then_body);
    if (i->else_body.empty()) {
      w.line(indent, "end");
    } else {
      w.line(indent, "end else begin");
      write_body(w, indent + 2, i->else_body);
      w.line(indent, "end");
    }
  } else if (const auto* c = std::get_if<CaseStmt>(&stmt.node)) {
    w.line(indent, "case (" + condition_text(c->subject) + ")");
    for (const auto& item : c->items) {
      std::string labels;
      for (std::size_t k = 0; k < item.labels.size(); ++k) {
        if (k > 0) labels += ", ";
        labels += print_expr(item.labels[k]);
      }
      w.line(indent + 2, labels + ": begin");
      write_body(w, indent + 4, item.body);
      w.line(indent + 2, "end");
    }
    if (c->has_default) {
      w.line(indent + 2, "default: begin");
      write_body(w, indent + 4, c->default_body);
      w.line(indent + 2, "end");
    }
    w.line(indent, "endcase");
  }
}

void write_body(Writer& w, int indent, const std::vector<Stmt>& body) {
  for (const auto& s : body) write_stmt(w, indent, s);
}

void collect_targets(const std::vector<Stmt>& body, std::set<std::string>& out) {
  for (const auto& s : body) {
    if (const auto* a = std::get_if<AssignStmt>(&s.node)) {
      out.insert(a->target);
    } else if (const auto* i = std::get_if<IfStmt>(&s.node)) {
      collect_targets(i->then_body, out);
      collect_targets(i->else_body, out);
    } else if (const auto* c = std::get_if<CaseStmt>(&s.node)) {
      for (const auto& item : c->items) collect_targets(item.body, out);
      collect_targets(c->default_body, out);
    }
  }
}

std::set<std::string> always_driven_regs(const ModuleDef& m) {
  std::set<std::string> out;
  for (const auto& item : m.items)
    if (const auto* a = std::get_if<AlwaysBlock>(&item)) collect_targets(a->body, out);
  return out;
}

void write_item(Writer& w, const ModuleDef& m, const Item& item,
                const std::set<std::string>& driven) {
  if (const auto* net = std::get_if<NetDecl>(&item)) {
    w.line(2, "wire " + range_text(net->width, net->is_signed) + net->name + ";");
  } else if (const auto* reg = std::get_if<RegDecl>(&item)) {
    std::string text = "reg " + range_text(reg->width, reg->is_signed) + reg->name;
    if (driven.count(reg->name) == 0)
      text += " = " + print_expr(Expr::constant(reg->width, reg->reset, reg->is_signed));
    w.line(2, text + ";");
  } else if (const auto* assign = std::get_if<ContinuousAssign>(&item)) {
    w.line(2, "assign " + assign->target + " = " + print_expr(assign->value) + ";");
  } else if (const auto* always = std::get_if<AlwaysBlock>(&item)) {
    std::set<std::string> targets;
    collect_targets(always->body, targets);
    w.line(2, "always @(posedge clk) begin");
    w.line(4, "if (rst) begin");
    for (const auto& decl : m.items) {
      const auto* reg = std::get_if<RegDecl>(&decl);
      if (reg == nullptr || targets.count(reg->name) == 0) continue;
      w.line(6, reg->name + " <= " +
                    print_expr(Expr::constant(reg->width, reg->reset, reg->is_signed)) + ";");
    }
    w.line(4, "end else begin");
    write_body(w, 6, always->body);
    w.line(4, "end");
    w.line(2, "end");
  } else if (const auto* inst = std::get_if<Instance>(&item)) {
    w.line(2, inst->module + " " + inst->name + " (");
    w.line(4, ".clk(clk),");
    w.line(4, inst->bindings.empty() ? ".rst(rst)" : ".rst(rst),");
    for (std::size_t i = 0; i < inst->bindings.size(); ++i) {
      const auto& b = inst->bindings[i];
      std::string text = "." + b.port + "(" + print_expr(b.value) + ")";
      if (i + 1 < inst->bindings.size()) text += ",";
      w.line(4, text);
    }
    w.line(2, ");");
  }
}

void write_module(Writer& w, const ModuleDef& m, bool is_top) {
  w.line(0, std::string(is_top ? "(* top *) " : "") + "module " + m.name + " (");
  w.line(2, "input clk,");
  w.line(2, m.ports.empty() ? "input rst" : "input rst,");
  for (std::size_t i = 0; i < m.ports.size(); ++i) {
    const auto& p = m.ports[i];
    std::string text = (p.direction == Direction::Input ? "input " : "output ") +
                       range_text(p.width, p.is_signed) + p.name;
    if (i + 1 < m.ports.size()) text += ",";
    w.line(2, text);
  }
  w.line(0, ");");
  const auto driven = always_driven_regs(m);
  for (const auto& item : m.items) write_item(w, m, item, driven);
  w.line(0, "endmodule");
}

std::size_t count_lines(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

}  // namespace

std::string print_expr(const Expr& expr) {
  std::string out;
  append_expr(out, expr);
  return out;
}

std::string print_module(const ModuleDef& module) {
  Writer w;
  write_module(w, module, false);
  return w.take();
}

std::string print_design(const Design& design) {
  Writer w;
  for (std::size_t i = 0; i < design.modules.size(); ++i) {
    if (i > 0) w.line(0, "");
    write_module(w, design.modules[i], design.modules[i].name == design.top);
  }
  return w.take();
}

std::size_t printed_line_count(const Design& design) {
  return count_lines(print_design(design));
}

std::size_t item_line_count(const ModuleDef& module, const Item& item) {
  Writer w;
  write_item(w, module, item, always_driven_regs(module));
  return count_lines(w.take());
}

std::size_t stmt_line_count(const Stmt& stmt) {
  Writer w;
  write_stmt(w, 0, stmt);
  return count_lines(w.take());
}

}  // namespace synthfuzz
