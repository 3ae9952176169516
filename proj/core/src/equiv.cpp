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

#include "synthfuzz/equiv.hpp"

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "synthfuzz/error.hpp"
#include "synthfuzz/mock_synth.hpp"
#include "synthfuzz/printer.hpp"
#include "synthfuzz/simulator.hpp"

namespace synthfuzz {

namespace fs = std::filesystem;

const char* to_string(OracleVerdict::Kind k) {
  switch (k) {
    case OracleVerdict::Kind::Equivalent: return "EQUIVALENT";
    case OracleVerdict::Kind::Mismatch: return "MISMATCH";
    case OracleVerdict::Kind::Crash: return "CRASH";
    case OracleVerdict::Kind::Timeout: return "TIMEOUT";
    case OracleVerdict::Kind::AdapterError: return "ADAPTER_ERROR";
  }
  return "?";
}

std::string to_string(const OracleVerdict& v) {
  switch (v.kind) {
    case OracleVerdict::Kind::Equivalent:
      return "EQUIVALENT";
    case OracleVerdict::Kind::Mismatch:
      return fmt::format("MISMATCH cycle={} signal={} expected={:#x} actual={:#x} tools={},{}", v.cycle, v.signal,
                         v.expected, v.actual, v.tool_a, v.tool_b);
    case OracleVerdict::Kind::Crash:
      return fmt::format("CRASH tool={} exit={}", v.tool, v.exit_code);
    case OracleVerdict::Kind::Timeout:
      return fmt::format("TIMEOUT tool={}", v.tool);
    case OracleVerdict::Kind::AdapterError:
      return "ADAPTER_ERROR " + v.detail;
  }
  return "?";
}

namespace {

OracleVerdict from_trace_verdict(const Verdict& t, const std::string& a, const std::string& b) {
  OracleVerdict v;
  if (t.kind == Verdict::Kind::Equivalent) return v;
  if (t.kind == Verdict::Kind::InterfaceMismatch) {
    v.kind = OracleVerdict::Kind::AdapterError;
    v.detail = "interface mismatch: " + t.detail;
    return v;
  }
  v.kind = OracleVerdict::Kind::Mismatch;
  v.cycle = t.cycle;
  v.signal = t.signal;
  v.expected = t.expected;
  v.actual = t.actual;
  v.tool_a = a;
  v.tool_b = b;
  return v;
}

OracleVerdict from_tool_failure(const ToolAdapter& adapter, const ToolResult& r) {
  OracleVerdict v;
  v.tool = adapter.name;
  v.exit_code = r.exit_code;
  v.output = r.output;
  v.detail = r.detail;
  switch (r.status) {
    case ToolResult::Status::Crash: v.kind = OracleVerdict::Kind::Crash; break;
    case ToolResult::Status::Timeout: v.kind = OracleVerdict::Kind::Timeout; break;
    default:
      v.kind = OracleVerdict::Kind::AdapterError;
      v.detail = adapter.name + ": " + r.detail;
      break;
  }
  return v;
}

std::string replace_all(std::string s, const std::string& from, const std::string& to) {
  for (std::size_t pos = 0; (pos = s.find(from, pos)) != std::string::npos; pos += to.size())
    s.replace(pos, from.size(), to);
  return s;
}

std::string read_file(const fs::path& p, std::size_t limit = std::string::npos) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  std::string s = os.str();
  if (s.size() > limit) s.resize(limit);
  return s;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
  if (!out) throw IoError("cannot write " + p.string());
}

struct ProcessResult {
  bool timed_out = false;
  bool spawn_failed = false;
  int exit_code = 0;
  int signal = 0;
};

ProcessResult run_shell(std::string command, const fs::path& workdir, const fs::path& log, double timeout) {
  ProcessResult r;
  if (const char* prefix = std::getenv("SYNTHFUZZ_TOOL_PREFIX"))
    command = "PATH='" + replace_all(prefix, "'", "'\\''") + "':\"$PATH\"; " + command;
  const std::string wd = workdir.string(), lg = log.string();
  pid_t pid = fork();
  if (pid < 0) {
    r.spawn_failed = true;
    return r;
  }
  if (pid == 0) {
    setpgid(0, 0);
    if (chdir(wd.c_str()) != 0) _exit(127);
    int fd = open(lg.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
    if (fd >= 0) {
      dup2(fd, 1);
      dup2(fd, 2);
      close(fd);
    }
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  setpgid(pid, pid);
  const auto deadline = std::chrono::steady_clock::now() + std::chrono::duration<double>(timeout);
  int status = 0;
  for (;;) {
    pid_t w = waitpid(pid, &status, WNOHANG);
    if (w == pid) break;
    if (w < 0) {
      r.spawn_failed = true;
      return r;
    }
    if (std::chrono::steady_clock::now() >= deadline) {
      kill(-pid, SIGKILL);
      waitpid(pid, &status, 0);
      r.timed_out = true;
      return r;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
  }
  if (WIFEXITED(status)) {
    r.exit_code = WEXITSTATUS(status);
  } else if (WIFSIGNALED(status)) {
    r.signal = WTERMSIG(status);
    r.exit_code = 128 + r.signal;
  }
  return r;
}

std::string binary(std::uint64_t v, unsigned w) {
  std::string s(w, '0');
  for (unsigned i = 0; i < w; ++i)
    if ((v >> i) & 1) s[w - 1 - i] = '1';
  return s;
}

std::string range(unsigned w, bool is_signed) {
  std::string s = is_signed ? "signed " : "";
  if (w > 1) s += fmt::format("[{}:0] ", w - 1);
  return s;
}

}  // namespace

OracleVerdict internal_differential(const Design& seed, const Design& variant, const Stimulus& s) {
  try {
    return from_trace_verdict(compare_traces(simulate(seed, s), simulate(variant, s)), "seed", "variant");
  } catch (const PreconditionError& e) {
    OracleVerdict v;
    v.kind = OracleVerdict::Kind::AdapterError;
    v.detail = e.what();
    return v;
  }
}

bool ToolAdapter::builtin() const { return command.rfind("builtin:", 0) == 0; }

void ToolAdapter::check() const {
  if (name.empty()) throw ConfigError("tool adapter without a name");
  if (!(timeout_seconds > 0)) throw ConfigError("tool '" + name + "': timeout must be positive");
  if (builtin()) {
    const std::string what = command.substr(8);
    if (what == "reference") return;
    if (what.rfind("mock-", 0) == 0 && fault_class_from_string(what.substr(5))) return;
    throw ConfigError("tool '" + name + "': unknown builtin '" + what + "'");
  }
  // Commands may also read design.v from the working directory, so {input}
  // is optional.
  if (command.find_first_not_of(" \t") == std::string::npos) throw ConfigError("tool '" + name + "': empty command");
}

std::string emit_testbench(const Design& d, const Stimulus& s, const std::string& trace_path) {
  const ModuleDef& top = d.top_module();
  std::string out = "`timescale 1ns/1ps\nmodule synthfuzz_tb;\n  reg clk = 1'b0;\n  reg rst = 1'b1;\n";
  std::vector<const Port*> ins, outs;
  for (const auto& p : top.ports) (p.direction == Direction::Input ? ins : outs).push_back(&p);
  for (const Port* p : ins) out += fmt::format("  reg {}{};\n", range(p->width, p->is_signed), p->name);
  for (const Port* p : outs) out += fmt::format("  wire {}{};\n", range(p->width, p->is_signed), p->name);
  out += fmt::format("  {} dut(.clk(clk), .rst(rst)", top.name);
  for (const auto& p : top.ports) out += fmt::format(", .{0}({0})", p.name);
  out += ");\n  integer fd;\n  initial begin\n";
  out += fmt::format("    fd = $fopen(\"{}\", \"w\");\n", trace_path);
  for (const Port* p : outs) out += fmt::format("    $fdisplay(fd, \"{} {}\");\n", p->name, p->width);
  out += "    $fdisplay(fd, \"\");\n";
  // One reset edge before cycle 0 so registers start at their reset values.
  out += "    rst = 1'b1; #1 clk = 1'b1; #1 clk = 1'b0;\n";
  std::string fmt_line, args;
  for (const Port* p : outs) {
    fmt_line += (fmt_line.empty() ? "" : " ") + std::string("%b");
    args += ", " + p->name;
  }
  for (std::size_t c = 0; c < s.cycles(); ++c) {
    out += fmt::format("    rst = 1'b{};", s.rst[c] ? 1 : 0);
    for (std::size_t i = 0; i < ins.size(); ++i)
      out += fmt::format(" {} = {}'b{};", ins[i]->name, ins[i]->width, binary(s.values[c][i], ins[i]->width));
    out += fmt::format("\n    #1 $fdisplay(fd, \"{}\"{}); clk = 1'b1; #1 clk = 1'b0;\n", fmt_line, args);
  }
  out += "    $fclose(fd);\n    $finish;\n  end\nendmodule\n";
  return out;
}

ToolResult run_external_tool(const ToolAdapter& adapter, const Design& d, const Stimulus& s,
                             const std::string& workdir) {
  ToolResult r;
  fs::path dir = fs::absolute(workdir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  const fs::path input = dir / "design.v", trace_out = dir / "trace.txt", stim = dir / "stimulus.txt",
                 tb = dir / "tb.v", log = dir / "tool.log";
  try {
    write_file(input, print_design(d));
    write_file(stim, dump_stimulus(s));
    write_file(tb, emit_testbench(d, s, trace_out.string()));
    fs::remove(trace_out, ec);
    fs::remove(log, ec);
  } catch (const Error& e) {
    r.status = ToolResult::Status::AdapterError;
    r.detail = e.what();
    return r;
  }
  auto expand = [&](std::string cmd) {
    cmd = replace_all(cmd, "{input}", input.string());
    cmd = replace_all(cmd, "{top}", d.top);
    cmd = replace_all(cmd, "{workdir}", dir.string());
    cmd = replace_all(cmd, "{trace_out}", trace_out.string());
    cmd = replace_all(cmd, "{stimulus}", stim.string());
    cmd = replace_all(cmd, "{testbench}", tb.string());
    return cmd;
  };
  ProcessResult p = run_shell(expand(adapter.command), dir, log, adapter.timeout_seconds);
  r.output = read_file(log, 4096);
  r.exit_code = p.exit_code;
  if (p.spawn_failed) {
    r.status = ToolResult::Status::AdapterError;
    r.detail = "could not spawn /bin/sh";
    return r;
  }
  if (p.timed_out) {
    r.status = ToolResult::Status::Timeout;
    r.detail = fmt::format("exceeded {}s", adapter.timeout_seconds);
    return r;
  }
  // The shell reports a missing or non-executable binary as 127 / 126.
  if (p.signal == 0 && (p.exit_code == 127 || p.exit_code == 126)) {
    r.status = ToolResult::Status::AdapterError;
    r.detail = "tool binary not found or not executable";
    return r;
  }
  if (p.signal != 0 || p.exit_code != adapter.expected_exit) {
    r.status = ToolResult::Status::Crash;
    r.detail = p.signal != 0 ? fmt::format("killed by signal {}", p.signal) : fmt::format("exit {}", p.exit_code);
    return r;
  }
  if (!adapter.normalizer.empty()) {
    ProcessResult n = run_shell(expand(adapter.normalizer), dir, dir / "normalizer.log", adapter.timeout_seconds);
    if (n.timed_out || n.spawn_failed || n.signal != 0 || n.exit_code != 0) {
      r.status = ToolResult::Status::AdapterError;
      r.detail = "normalizer failed";
      return r;
    }
  }
  try {
    r.trace = parse_trace(read_file(trace_out));
  } catch (const Error& e) {
    r.status = ToolResult::Status::AdapterError;
    r.detail = std::string("unreadable trace: ") + e.what();
  }
  return r;
}

ToolResult run_tool(const ToolAdapter& adapter, const Design& d, const Stimulus& s, const std::string& workdir) {
  if (!adapter.builtin()) return run_external_tool(adapter, d, s, workdir);
  ToolResult r;
  const std::string what = adapter.command.substr(8);
  try {
    if (what == "reference") {
      r.trace = simulate(d, s);
      return r;
    }
    auto fault = fault_class_from_string(what.rfind("mock-", 0) == 0 ? what.substr(5) : what);
    if (!fault) throw ConfigError("unknown builtin tool '" + what + "'");
    MockResult m = mock_synthesize(d, *fault, 0, (fs::absolute(fs::path(workdir)) / "design.v").string());
    r.output = m.log;
    if (m.crashed) {
      r.status = ToolResult::Status::Crash;
      r.exit_code = m.exit_code;
      r.detail = fmt::format("exit {}", m.exit_code);
      return r;
    }
    r.trace = simulate(m.netlist, s);
  } catch (const Error& e) {
    r.status = ToolResult::Status::AdapterError;
    r.detail = e.what();
  }
  return r;
}

OracleVerdict cross_tool_differential(const Design& d, const std::vector<ToolAdapter>& adapters,
                                      const Stimulus& s, const std::string& scratch) {
  if (adapters.size() < 2) throw PreconditionError("cross-tool comparison needs at least two tools");
  std::vector<ToolResult> results;
  for (std::size_t i = 0; i < adapters.size(); ++i) {
    results.push_back(run_tool(adapters[i], d, s, (fs::path(scratch) / adapters[i].name).string()));
    if (results.back().status != ToolResult::Status::Ok) return from_tool_failure(adapters[i], results.back());
  }
  for (std::size_t i = 0; i < results.size(); ++i)
    for (std::size_t j = i + 1; j < results.size(); ++j) {
      OracleVerdict v = from_trace_verdict(compare_traces(results[i].trace, results[j].trace), adapters[i].name,
                                           adapters[j].name);
      if (!v.equivalent()) return v;
    }
  return {};
}

OracleVerdict tool_differential(const ToolAdapter& adapter, const Design& seed, const Design& variant,
                                const Stimulus& s, const std::string& scratch) {
  ToolResult a = run_tool(adapter, seed, s, (fs::path(scratch) / "seed").string());
  if (a.status != ToolResult::Status::Ok) return from_tool_failure(adapter, a);
  ToolResult b = run_tool(adapter, variant, s, (fs::path(scratch) / "variant").string());
  if (b.status != ToolResult::Status::Ok) return from_tool_failure(adapter, b);
  return from_trace_verdict(compare_traces(a.trace, b.trace), adapter.name + ":seed", adapter.name + ":variant");
}

OracleVerdict reference_check(const ToolAdapter& adapter, const Design& d, const Stimulus& s,
                              const std::string& scratch) {
  ToolResult r = run_tool(adapter, d, s, scratch);
  if (r.status != ToolResult::Status::Ok) return from_tool_failure(adapter, r);
  try {
    return from_trace_verdict(compare_traces(simulate(d, s), r.trace), "reference", adapter.name);
  } catch (const Error& e) {
    OracleVerdict v;
    v.kind = OracleVerdict::Kind::AdapterError;
    v.detail = e.what();
    return v;
  }
}

}  // namespace synthfuzz
