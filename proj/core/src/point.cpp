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

#include "synthfuzz/point.hpp"

#include <cctype>

#include "synthfuzz/error.hpp"

namespace synthfuzz {

std::string to_string(const InsertionPoint& p) {
  std::string out = p.module + "/" + std::to_string(p.item) + "/";
  for (std::size_t i = 0; i < p.path.size(); ++i) {
    if (i > 0) out += '.';
    out += std::to_string(p.path[i].stmt);
    out += p.path[i].branch;
    if (p.path[i].branch == 'c') out += std::to_string(p.path[i].item);
  }
  out += "@" + std::to_string(p.position);
  return out;
}

namespace {

std::size_t read_number(const std::string& text, std::size_t& pos) {
  if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
    throw IoError("malformed insertion point '" + text + "'");
  std::size_t n = 0;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
    n = n * 10 + static_cast<std::size_t>(text[pos++] - '0');
  return n;
}

template <typename BodyPtr, typename ModulePtr>
BodyPtr walk(ModulePtr m, const InsertionPoint& p) {
  if (p.item >= m->items.size()) return nullptr;
  auto* block = std::get_if<AlwaysBlock>(&m->items[p.item]);
  if (block == nullptr) return nullptr;
  BodyPtr body = &block->body;
  for (const auto& step : p.path) {
    if (step.stmt >= body->size()) return nullptr;
    auto& stmt = (*body)[step.stmt];
    if (auto* i = std::get_if<IfStmt>(&stmt.node)) {
      if (step.branch == 't') {
        body = &i->then_body;
      } else if (step.branch == 'e') {
        body = &i->else_body;
      } else {
        return nullptr;
      }
    } else if (auto* c = std::get_if<CaseStmt>(&stmt.node)) {
      if (step.branch == 'c' && step.item < c->items.size()) {
        body = &c->items[step.item].body;
      } else if (step.branch == 'd' && c->has_default) {
        body = &c->default_body;
      } else {
        return nullptr;
      }
    } else {
      return nullptr;
    }
  }
  return body;
}

void collect(const std::string& module, std::size_t item, std::vector<PathStep>& path,
             const std::vector<Stmt>& body, std::vector<InsertionPoint>& out) {
  for (std::size_t k = 0; k <= body.size(); ++k) {
    out.push_back(InsertionPoint{module, item, path, k});
    if (k == body.size()) break;
    const Stmt& s = body[k];
    if (const auto* i = std::get_if<IfStmt>(&s.node)) {
      path.push_back(PathStep{k, 't', 0});
      collect(module, item, path, i->then_body, out);
      path.pop_back();
      if (i->guard == GuardKind::None) {
        path.push_back(PathStep{k, 'e', 0});
        collect(module, item, path, i->else_body, out);
        path.pop_back();
      }
    } else if (const auto* c = std::get_if<CaseStmt>(&s.node)) {
      for (std::size_t j = 0; j < c->items.size(); ++j) {
        path.push_back(PathStep{k, 'c', j});
        collect(module, item, path, c->items[j].body, out);
        path.pop_back();
      }
      if (c->has_default) {
        path.push_back(PathStep{k, 'd', 0});
        collect(module, item, path, c->default_body, out);
        path.pop_back();
      }
    }
  }
}

}  // namespace

InsertionPoint parse_insertion_point(const std::string& text) {
  InsertionPoint p;
  std::size_t slash = text.find('/');
  if (slash == std::string::npos || slash == 0) throw IoError("malformed insertion point '" + text + "'");
  p.module = text.substr(0, slash);
  std::size_t pos = slash + 1;
  p.item = read_number(text, pos);
  if (pos >= text.size() || text[pos] != '/') throw IoError("malformed insertion point '" + text + "'");
  ++pos;
  while (pos < text.size() && text[pos] != '@') {
    PathStep step;
    step.stmt = read_number(text, pos);
    if (pos >= text.size()) throw IoError("malformed insertion point '" + text + "'");
    step.branch = text[pos++];
    if (step.branch == 'c') {
      step.item = read_number(text, pos);
    } else if (step.branch != 't' && step.branch != 'e' && step.branch != 'd') {
      throw IoError("malformed insertion point '" + text + "'");
    }
    p.path.push_back(step);
    if (pos < text.size() && text[pos] == '.') ++pos;
  }
  if (pos >= text.size()) throw IoError("malformed insertion point '" + text + "'");
  ++pos;
  p.position = read_number(text, pos);
  if (pos != text.size()) throw IoError("malformed insertion point '" + text + "'");
  return p;
}

const std::vector<Stmt>* resolve_body(const ModuleDef& m, const InsertionPoint& p) {
  return walk<const std::vector<Stmt>*>(&m, p);
}

const std::vector<Stmt>* resolve_body(const Design& d, const InsertionPoint& p) {
  const ModuleDef* m = d.find(p.module);
  return m == nullptr ? nullptr : resolve_body(*m, p);
}

std::vector<Stmt>* resolve_body(Design& d, const InsertionPoint& p) {
  ModuleDef* m = d.find(p.module);
  return m == nullptr ? nullptr : walk<std::vector<Stmt>*>(m, p);
}

std::vector<InsertionPoint> statement_positions(const ModuleDef& m) {
  std::vector<InsertionPoint> out;
  std::vector<PathStep> path;
  for (std::size_t i = 0; i < m.items.size(); ++i)
    if (const auto* b = std::get_if<AlwaysBlock>(&m.items[i])) collect(m.name, i, path, b->body, out);
  return out;
}

}  // namespace synthfuzz
