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

#include "synthfuzz/trace.hpp"

#include <sstream>

#include "synthfuzz/bits.hpp"
#include "synthfuzz/error.hpp"

namespace synthfuzz {
namespace {

void append_bits(std::string& out, std::uint64_t value, unsigned width) {
  for (unsigned i = width; i-- > 0;) out += ((value >> i) & 1U) ? '1' : '0';
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(pos, end - pos));
    pos = end + 1;
  }
  return lines;
}

std::vector<std::string_view> split_spaces(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    std::size_t end = line.find(' ', pos);
    if (end == std::string_view::npos) end = line.size();
    out.push_back(line.substr(pos, end - pos));
    pos = end + 1;
  }
  return out;
}

struct Table {
  std::vector<TraceSignal> header;
  std::vector<std::vector<std::uint64_t>> rows;
};

std::string dump_table(const std::vector<TraceSignal>& header,
                       const std::vector<std::vector<std::uint64_t>>& rows) {
  std::string out;
  for (const auto& s : header) out += s.name + " " + std::to_string(s.width) + "\n";
  out += "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i > 0) out += ' ';
      append_bits(out, row[i], header[i].width);
    }
    out += '\n';
  }
  return out;
}

Table parse_table(std::string_view text, const char* what) {
  Table t;
  auto lines = split_lines(text);
  std::size_t i = 0;
  for (; i < lines.size() && !lines[i].empty(); ++i) {
    auto fields = split_spaces(lines[i]);
    if (fields.size() != 2 || fields[0].empty())
      throw IoError(std::string("malformed ") + what + " header line " + std::to_string(i + 1));
    unsigned width = 0;
    for (char c : fields[1]) {
      if (c < '0' || c > '9')
        throw IoError(std::string("malformed width in ") + what + " header line " + std::to_string(i + 1));
      width = width * 10 + static_cast<unsigned>(c - '0');
      if (width > kMaxWidth) break;
    }
    if (width == 0 || width > kMaxWidth)
      throw IoError(std::string("width out of range in ") + what + " header line " + std::to_string(i + 1));
    t.header.push_back(TraceSignal{std::string(fields[0]), width});
  }
  if (i == lines.size() && !t.header.empty())
    throw IoError(std::string(what) + " header is not terminated by a blank line");
  for (++i; i < lines.size(); ++i) {
    if (t.header.empty() && lines[i].empty()) {
      t.rows.emplace_back();
      continue;
    }
    auto fields = split_spaces(lines[i]);
    if (fields.size() != t.header.size())
      throw IoError(std::string(what) + " line " + std::to_string(i + 1) + " has wrong field count");
    std::vector<std::uint64_t> row;
    for (std::size_t k = 0; k < fields.size(); ++k) {
      if (fields[k].size() != t.header[k].width)
        throw IoError(std::string(what) + " line " + std::to_string(i + 1) + " has wrong bit count");
      std::uint64_t v = 0;
      for (char c : fields[k]) {
        if (c != '0' && c != '1')
          throw IoError(std::string(what) + " line " + std::to_string(i + 1) + " has a non-binary digit");
        v = (v << 1) | static_cast<std::uint64_t>(c - '0');
      }
      row.push_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace

std::string dump_trace(const Trace& t) { return dump_table(t.signals, t.records); }

Trace parse_trace(std::string_view text) {
  Table table = parse_table(text, "trace");
  return Trace{std::move(table.header), std::move(table.rows)};
}

std::string dump_stimulus(const Stimulus& s) {
  std::vector<TraceSignal> header{{"rst", 1}};
  header.insert(header.end(), s.inputs.begin(), s.inputs.end());
  std::vector<std::vector<std::uint64_t>> rows;
  rows.reserve(s.values.size());
  for (std::size_t t = 0; t < s.values.size(); ++t) {
    std::vector<std::uint64_t> row{s.rst[t] ? 1U : 0U};
    row.insert(row.end(), s.values[t].begin(), s.values[t].end());
    rows.push_back(std::move(row));
  }
  return dump_table(header, rows);
}

Stimulus parse_stimulus(std::string_view text) {
  Table table = parse_table(text, "stimulus");
  if (table.header.empty() || table.header[0].name != "rst" || table.header[0].width != 1)
    throw IoError("stimulus must start with a 1-bit rst column");
  Stimulus s;
  s.inputs.assign(table.header.begin() + 1, table.header.end());
  for (auto& row : table.rows) {
    s.rst.push_back(row[0] != 0);
    s.values.emplace_back(row.begin() + 1, row.end());
  }
  return s;
}

Verdict compare_traces(const Trace& a, const Trace& b) {
  Verdict v;
  if (a.signals != b.signals) {
    v.kind = Verdict::Kind::InterfaceMismatch;
    v.detail = "signal sets differ";
    return v;
  }
  if (a.records.size() != b.records.size()) {
    v.kind = Verdict::Kind::InterfaceMismatch;
    v.detail = "cycle counts differ (" + std::to_string(a.records.size()) + " vs " +
               std::to_string(b.records.size()) + ")";
    return v;
  }
  for (std::size_t t = 0; t < a.records.size(); ++t) {
    for (std::size_t i = 0; i < a.signals.size(); ++i) {
      if (a.records[t][i] == b.records[t][i]) continue;
      v.kind = Verdict::Kind::Mismatch;
      v.cycle = t;
      v.signal = a.signals[i].name;
      v.expected = a.records[t][i];
      v.actual = b.records[t][i];
      return v;
    }
  }
  return v;
}

std::string to_string(const Verdict& v) {
  switch (v.kind) {
    case Verdict::Kind::Equivalent:
      return "equivalent";
    case Verdict::Kind::Mismatch:
      return "mismatch cycle=" + std::to_string(v.cycle) + " signal=" + v.signal +
             " expected=" + std::to_string(v.expected) + " actual=" + std::to_string(v.actual);
    case Verdict::Kind::InterfaceMismatch:
      return "interface-mismatch " + v.detail;
  }
  return "";
}

}  // namespace synthfuzz
