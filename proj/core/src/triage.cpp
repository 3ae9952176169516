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

#include "synthfuzz/triage.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>

#include <fmt/format.h>

#include "synthfuzz/comb_graph.hpp"
#include "synthfuzz/error.hpp"
#include "synthfuzz/parser.hpp"
#include "synthfuzz/point.hpp"
#include "synthfuzz/printer.hpp"
#include "synthfuzz/validate.hpp"

namespace synthfuzz {

namespace fs = std::filesystem;

namespace {

// A deletable list of regions in a design.
struct ListRef {
  enum class Kind { Items, Stmts, Outputs, Modules };
  Kind kind = Kind::Items;
  std::string module;
  std::size_t item = 0;
  std::vector<PathStep> path;
};

void stmt_lists(const std::string& module, std::size_t item, std::vector<PathStep>& path,
                const std::vector<Stmt>& body, std::vector<ListRef>& out) {
  out.push_back(ListRef{ListRef::Kind::Stmts, module, item, path});
  for (std::size_t k = 0; k < body.size(); ++k) {
    if (const auto* i = std::get_if<IfStmt>(&body[k].node)) {
      path.push_back(PathStep{k, 't', 0});
      stmt_lists(module, item, path, i->then_body, out);
      path.back().branch = 'e';
      stmt_lists(module, item, path, i->else_body, out);
      path.pop_back();
    } else if (const auto* c = std::get_if<CaseStmt>(&body[k].node)) {
      for (std::size_t j = 0; j < c->items.size(); ++j) {
        path.push_back(PathStep{k, 'c', j});
        stmt_lists(module, item, path, c->items[j].body, out);
        path.pop_back();
      }
      path.push_back(PathStep{k, 'd', 0});
      stmt_lists(module, item, path, c->default_body, out);
      path.pop_back();
    }
  }
}

std::vector<ListRef> all_lists(const Design& d) {
  std::vector<ListRef> out;
  for (const auto& m : d.modules) out.push_back(ListRef{ListRef::Kind::Items, m.name, 0, {}});
  for (const auto& m : d.modules)
    for (std::size_t i = 0; i < m.items.size(); ++i)
      if (const auto* b = std::get_if<AlwaysBlock>(&m.items[i])) {
        std::vector<PathStep> path;
        stmt_lists(m.name, i, path, b->body, out);
      }
  out.push_back(ListRef{ListRef::Kind::Outputs, d.top, 0, {}});
  out.push_back(ListRef{ListRef::Kind::Modules, "", 0, {}});
  return out;
}

std::vector<Stmt>* stmt_list(Design& d, const ListRef& l) {
  InsertionPoint p{l.module, l.item, l.path, 0};
  return resolve_body(d, p);
}

std::size_t list_size(const Design& d, const ListRef& l) {
  switch (l.kind) {
    case ListRef::Kind::Items: {
      const ModuleDef* m = d.find(l.module);
      return m ? m->items.size() : 0;
    }
    case ListRef::Kind::Stmts: {
      const std::vector<Stmt>* b = resolve_body(d, InsertionPoint{l.module, l.item, l.path, 0});
      return b ? b->size() : 0;
    }
    case ListRef::Kind::Outputs: {
      const ModuleDef* m = d.find(d.top);
      if (m == nullptr) return 0;
      return static_cast<std::size_t>(std::count_if(m->ports.begin(), m->ports.end(),
                                                     [](const Port& p) { return p.direction == Direction::Output; }));
    }
    case ListRef::Kind::Modules:
      return d.modules.empty() ? 0 : d.modules.size() - 1;
  }
  return 0;
}

template <typename T>
void erase_range(std::vector<T>& v, std::size_t b, std::size_t e) {
  v.erase(v.begin() + static_cast<std::ptrdiff_t>(b), v.begin() + static_cast<std::ptrdiff_t>(e));
}

Design erase(const Design& d, const ListRef& l, std::size_t b, std::size_t e) {
  Design out = d;
  switch (l.kind) {
    case ListRef::Kind::Items:
      erase_range(out.find(l.module)->items, b, e);
      break;
    case ListRef::Kind::Stmts:
      erase_range(*stmt_list(out, l), b, e);
      break;
    case ListRef::Kind::Outputs: {
      ModuleDef& top = *out.find(out.top);
      std::set<std::string> gone;
      std::size_t k = 0;
      std::vector<Port> kept;
      for (auto& p : top.ports) {
        if (p.direction == Direction::Output) {
          if (k >= b && k < e) {
            gone.insert(p.name);
            ++k;
            continue;
          }
          ++k;
        }
        kept.push_back(std::move(p));
      }
      top.ports = std::move(kept);
      std::erase_if(top.items, [&](const Item& item) {
        const auto* a = std::get_if<ContinuousAssign>(&item);
        return a != nullptr && gone.count(a->target);
      });
      break;
    }
    case ListRef::Kind::Modules: {
      std::vector<ModuleDef> kept;
      std::size_t k = 0;
      for (auto& m : out.modules) {
        if (m.name != out.top) {
          bool drop = k >= b && k < e;
          ++k;
          if (drop) continue;
        }
        kept.push_back(std::move(m));
      }
      out.modules = std::move(kept);
      break;
    }
  }
  return out;
}

bool acceptable(const Design& d) {
  if (!validation_error(d).empty()) return false;
  try {
    return detect_comb_loops(d).empty();
  } catch (const Error&) {
    return false;
  }
}

void rename_expr(Expr& e, const std::map<std::string, std::string>& names) {
  if (e.kind == Expr::Kind::Ref || e.kind == Expr::Kind::Select) {
    auto it = names.find(e.name);
    if (it != names.end()) e.name = it->second;
  }
  for (auto& a : e.args) rename_expr(a, names);
}

void rename_body(std::vector<Stmt>& body, const std::map<std::string, std::string>& names) {
  for (auto& s : body) {
    if (auto* a = std::get_if<AssignStmt>(&s.node)) {
      if (auto it = names.find(a->target); it != names.end()) a->target = it->second;
      rename_expr(a->value, names);
    } else if (auto* i = std::get_if<IfStmt>(&s.node)) {
      rename_expr(i->cond, names);
      rename_body(i->then_body, names);
      rename_body(i->else_body, names);
    } else if (auto* c = std::get_if<CaseStmt>(&s.node)) {
      rename_expr(c->subject, names);
      for (auto& item : c->items) {
        for (auto& l : item.labels) rename_expr(l, names);
        rename_body(item.body, names);
      }
      rename_body(c->default_body, names);
    }
  }
}

std::string now_utc() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

}  // namespace

Design reduce(const Design& d, const DesignPredicate& pred, ReduceStats* stats) {
  ReduceStats local;
  ReduceStats& st = stats ? *stats : local;
  ++st.predicate_calls;
  if (!pred(d)) throw FlakyPredicate("predicate does not hold on the input design");
  Design cur = d;
  auto try_candidate = [&](const Design& cand) {
    if (!acceptable(cand)) {
      ++st.invalid_candidates;
      return false;
    }
    ++st.predicate_calls;
    if (!pred(cand)) return false;
    ++st.accepted;
    return true;
  };
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t li = 0;; ++li) {
      std::vector<ListRef> lists = all_lists(cur);
      if (li >= lists.size()) break;
      const ListRef l = lists[li];
      std::size_t n = list_size(cur, l);
      for (std::size_t chunk = std::max<std::size_t>(1, (n + 1) / 2); n > 0; chunk = (chunk + 1) / 2) {
        for (std::size_t b = 0; b < n;) {
          std::size_t e = std::min(n, b + chunk);
          Design cand = erase(cur, l, b, e);
          if (try_candidate(cand)) {
            cur = std::move(cand);
            n = list_size(cur, l);
            changed = true;
          } else {
            b = e;
          }
        }
        if (chunk == 1) break;
      }
    }
  }
  return cur;
}

std::vector<Design> single_deletions(const Design& d) {
  std::vector<Design> out;
  for (const auto& l : all_lists(d)) {
    std::size_t n = list_size(d, l);
    for (std::size_t i = 0; i < n; ++i) out.push_back(erase(d, l, i, i + 1));
  }
  return out;
}

bool is_one_minimal(const Design& d, const DesignPredicate& pred) {
  for (const auto& cand : single_deletions(d))
    if (acceptable(cand) && pred(cand)) return false;
  return true;
}

Design canonicalize_outputs(const Design& d, const std::string& first) {
  Design out = d;
  ModuleDef* top = out.find(out.top);
  if (top == nullptr) return out;
  if (!first.empty()) {
    auto it = std::find_if(top->ports.begin(), top->ports.end(), [&](const Port& p) {
      return p.direction == Direction::Output && p.name == first;
    });
    if (it != top->ports.end()) std::rotate(top->ports.begin(), it, it + 1);
  }
  std::map<std::string, std::string> names;
  std::size_t k = 0;
  for (const auto& p : top->ports)
    if (p.direction == Direction::Output) names[p.name] = "o" + std::to_string(k++);
  // Give up when a new name collides with a signal that is not being renamed.
  std::set<std::string> targets;
  for (const auto& [from, to] : names) targets.insert(to);
  Scope scope(*top);
  for (const auto& t : targets)
    if (scope.lookup(t) != nullptr && !names.count(t)) return out;
  for (auto& p : top->ports)
    if (auto it = names.find(p.name); it != names.end()) p.name = it->second;
  for (auto& item : top->items) {
    if (auto* a = std::get_if<ContinuousAssign>(&item)) {
      if (auto it = names.find(a->target); it != names.end()) a->target = it->second;
      rename_expr(a->value, names);
    } else if (auto* b = std::get_if<AlwaysBlock>(&item)) {
      rename_body(b->body, names);
    } else if (auto* inst = std::get_if<Instance>(&item)) {
      for (auto& bnd : inst->bindings) rename_expr(bnd.value, names);
    }
  }
  return out;
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string FailureSignature::id() const { return fmt::format("{:016x}", hash); }

std::string normalize_failure_text(const std::string& text) {
  static const std::regex timestamp(R"(\d{4}-\d{2}-\d{2}[T ]\d{2}:\d{2}:\d{2}(\.\d+)?Z?|\b\d{2}:\d{2}:\d{2}\b)");
  static const std::regex address(R"(0[xX][0-9a-fA-F]+)");
  static const std::regex path(R"((/[A-Za-z0-9_.+\-]+)+/?)");
  static const std::regex position(R"(:\d+(:\d+)?\b)");
  static const std::regex line_word(R"(\b([Ll]ine|[Cc]olumn|[Cc]ol)\s+\d+)");
  static const std::regex interesting(R"(error|assert|exception|backtrace|abort|fatal|panic|segmentation)",
                                      std::regex::icase);
  static const std::regex spaces(R"([ \t]+)");
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> all, kept;
  while (std::getline(in, line)) {
    line = std::regex_replace(line, timestamp, "<time>");
    line = std::regex_replace(line, address, "<addr>");
    line = std::regex_replace(line, path, "<path>");
    line = std::regex_replace(line, position, ":<n>");
    line = std::regex_replace(line, line_word, "$1 <n>");
    line = std::regex_replace(line, spaces, " ");
    while (!line.empty() && line.back() == ' ') line.pop_back();
    while (!line.empty() && line.front() == ' ') line.erase(0, 1);
    if (line.empty()) continue;
    all.push_back(line);
    if (std::regex_search(line, interesting)) kept.push_back(line);
  }
  // Diagnostic lines identify the failure; progress chatter around them does not.
  const auto& use = kept.empty() ? all : kept;
  std::string out;
  for (const auto& l : use) out += l + "\n";
  return out;
}

FailureSignature signature(const OracleVerdict& v, const std::string& tool_output) {
  FailureSignature s;
  s.kind = to_string(v.kind);
  switch (v.kind) {
    case OracleVerdict::Kind::Mismatch:
      s.tool = v.tool_b;
      s.text = "signal=" + v.signal + " tools=" + v.tool_a + "," + v.tool_b + "\n";
      break;
    case OracleVerdict::Kind::Crash:
    case OracleVerdict::Kind::Timeout:
      s.tool = v.tool;
      s.text = normalize_failure_text(tool_output.empty() ? v.output : tool_output);
      break;
    default:
      s.tool = v.tool;
      s.text = normalize_failure_text(v.detail);
      break;
  }
  s.hash = fnv1a(s.kind + "\n" + s.tool + "\n" + s.text);
  return s;
}

DedupDb::DedupDb(std::string path) : path_(std::move(path)) {
  std::ifstream in(path_);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string id;
    if (ls >> id) seen_.insert(id);
  }
}

bool DedupDb::contains(const FailureSignature& sig) const { return seen_.count(sig.id()) != 0; }

bool DedupDb::insert(const FailureSignature& sig) {
  if (!seen_.insert(sig.id()).second) return false;
  if (!path_.empty()) {
    std::ofstream out(path_, std::ios::app);
    out << sig.id() << ' ' << sig.kind << ' ' << sig.tool << ' ' << one_line(sig.text) << '\n';
    if (!out) throw IoError("cannot append to signature database " + path_);
  }
  return true;
}

std::string persist_report(const BugReport& r, const std::string& dir) {
  fs::path root = fs::path(dir) / r.id;
  std::error_code ec;
  if (fs::exists(root)) throw IoError("report " + root.string() + " already exists");
  fs::create_directories(root, ec);
  if (ec) throw IoError("cannot create " + root.string() + ": " + ec.message());
  auto write = [&](const char* name, const std::string& text) {
    std::ofstream out(root / name, std::ios::binary);
    out << text;
    if (!out) throw IoError("cannot write " + (root / name).string());
  };
  write("design.v", r.design);
  write("stimulus.txt", dump_stimulus(r.stimulus));
  write("lineage.txt", r.lineage);
  const OracleVerdict& v = r.verdict;
  std::string text;
  auto kv = [&](const char* k, const std::string& value) { text += std::string(k) + ": " + value + "\n"; };
  kv("id", r.id);
  kv("classification", std::string(1, r.classification));
  kv("tool", r.tool.name);
  kv("tool_command", r.tool.command);
  kv("tool_timeout", fmt::format("{}", r.tool.timeout_seconds));
  kv("tool_expected_exit", std::to_string(r.tool.expected_exit));
  kv("tool_normalizer", r.tool.normalizer);
  kv("signature", r.signature.id());
  kv("signature_kind", r.signature.kind);
  kv("signature_text", one_line(r.signature.text));
  kv("seed", r.seed_id);
  kv("seed_rng", fmt::format("{:#x}", r.seed_rng));
  kv("original_statements", std::to_string(r.original_statements));
  kv("reduced_statements", std::to_string(r.reduced_statements));
  kv("verdict", to_string(v));
  kv("verdict_kind", to_string(v.kind));
  kv("verdict_cycle", std::to_string(v.cycle));
  kv("verdict_signal", v.signal);
  kv("verdict_expected", std::to_string(v.expected));
  kv("verdict_actual", std::to_string(v.actual));
  kv("verdict_tools", v.tool_a + "," + v.tool_b);
  kv("verdict_exit", std::to_string(v.exit_code));
  kv("created", r.created.empty() ? now_utc() : r.created);
  kv("design_file", "design.v");
  kv("stimulus_file", "stimulus.txt");
  kv("lineage_file", "lineage.txt");
  kv("replay", "synthfuzz replay " + root.string());
  write("report.txt", text);
  return root.string();
}

BugReport load_report(const std::string& report_dir) {
  fs::path root(report_dir);
  auto read = [&](const char* name) {
    std::ifstream in(root / name, std::ios::binary);
    if (!in) throw IoError("cannot read " + (root / name).string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  };
  std::map<std::string, std::string> kv;
  std::istringstream in(read("report.txt"));
  std::string line;
  while (std::getline(in, line)) {
    auto colon = line.find(": ");
    if (colon == std::string::npos) {
      if (!line.empty() && line.back() == ':') kv[line.substr(0, line.size() - 1)] = "";
      continue;
    }
    kv[line.substr(0, colon)] = line.substr(colon + 2);
  }
  auto get = [&](const char* k) {
    auto it = kv.find(k);
    if (it == kv.end()) throw IoError(std::string("report lacks field '") + k + "'");
    return it->second;
  };
  BugReport r;
  try {
    r.id = get("id");
    r.classification = get("classification").empty() ? 'M' : get("classification")[0];
    r.tool.name = get("tool");
    r.tool.command = get("tool_command");
    r.tool.timeout_seconds = std::stod(get("tool_timeout"));
    r.tool.expected_exit = std::stoi(get("tool_expected_exit"));
    r.tool.normalizer = get("tool_normalizer");
    r.signature.kind = get("signature_kind");
    r.signature.tool = r.tool.name;
    r.signature.hash = std::stoull(get("signature"), nullptr, 16);
    r.seed_id = get("seed");
    r.seed_rng = std::stoull(get("seed_rng"), nullptr, 16);
    r.original_statements = std::stoull(get("original_statements"));
    r.reduced_statements = std::stoull(get("reduced_statements"));
    r.created = get("created");
    const std::string kind = get("verdict_kind");
    for (auto k : {OracleVerdict::Kind::Equivalent, OracleVerdict::Kind::Mismatch, OracleVerdict::Kind::Crash,
                   OracleVerdict::Kind::Timeout, OracleVerdict::Kind::AdapterError})
      if (kind == to_string(k)) r.verdict.kind = k;
    r.verdict.cycle = std::stoull(get("verdict_cycle"));
    r.verdict.signal = get("verdict_signal");
    r.verdict.expected = std::stoull(get("verdict_expected"));
    r.verdict.actual = std::stoull(get("verdict_actual"));
    const std::string tools = get("verdict_tools");
    r.verdict.tool_a = tools.substr(0, tools.find(','));
    r.verdict.tool_b = tools.substr(tools.find(',') + 1);
    r.verdict.exit_code = std::stoi(get("verdict_exit"));
    r.verdict.tool = r.tool.name;
  } catch (const std::invalid_argument&) {
    throw IoError("malformed report " + report_dir);
  } catch (const std::out_of_range&) {
    throw IoError("malformed report " + report_dir);
  }
  r.design = read("design.v");
  r.stimulus = parse_stimulus(read("stimulus.txt"));
  r.lineage = read("lineage.txt");
  return r;
}

OracleVerdict replay_report(const BugReport& r, const std::string& scratch) {
  return reference_check(r.tool, parse_design(r.design), r.stimulus, scratch);
}

bool replay_matches(const BugReport& r, const OracleVerdict& v) {
  return v.kind == r.verdict.kind && signature(v).hash == r.signature.hash;
}

}  // namespace synthfuzz
