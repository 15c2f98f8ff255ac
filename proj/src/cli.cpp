/*
 * Copyright 2026 The isproc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "isproc/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "isproc/acp.hpp"
#include "isproc/compilers.hpp"
#include "isproc/error.hpp"
#include "isproc/extraction.hpp"
#include "isproc/pga.hpp"
#include "isproc/pgld.hpp"
#include "isproc/protocols.hpp"
#include "isproc/services.hpp"
#include "isproc/suite.hpp"
#include "isproc/thread.hpp"
#include "isproc/timing.hpp"

namespace isproc::cli {
namespace {

// Raised for unreadable files and invalid flag combinations.
class UsageError : public Error {
 public:
  using Error::Error;
};

std::string read_input(const std::string& path, std::istream& in) {
  std::ostringstream buf;
  if (path == "-") {
    buf << in.rdbuf();
    return buf.str();
  }
  std::ifstream f(path);
  if (!f) throw UsageError("cannot read " + path);
  buf << f.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write " + path);
  f << text;
}

std::string line(const std::string& s) { return s.empty() || s.back() == '\n' ? s : s + "\n"; }

const char* yes_no(bool b) { return b ? "true" : "false"; }

// Options shared by the subcommands; CLI11 binds into these fields.
struct Options {
  std::string input = "-";
  std::string output;
  std::string kind = "pga";
  bool minimize_thread = false;
  bool to_pga = false;
  bool use_produces = false;
  std::string thread_path;
  std::string focus;
  std::string service_path;
  std::string register_value;
  bool from_pga = false;
  bool abstract_stp = false;
  bool service_aware = false;
  std::size_t maxlen = 1;
  std::size_t capacity = 1;
  std::string mode = "term-adjusted";
  std::string variant = "original";
  std::string dot;
  std::uint64_t exec = 5;
  std::uint64_t latency = 1;
  std::string protocol = "run-ahead";
  std::size_t steps = 200;
  std::optional<std::uint64_t> seed;
  std::uint64_t horizon = 100000000;
  bool check = false;
  std::uint64_t suite_seed = 1;
  std::size_t budget = 1000000;
  std::size_t jobs = 0;
  bool cases = false;
  std::vector<int> criteria;
  bool skip_repaired = false;
};

TermMode parse_mode(const std::string& s) { return s == "literal" ? TermMode::Literal : TermMode::Adjusted; }

ThreadSpec load_thread(const Options& o, std::istream& in) {
  if (o.thread_path.empty()) throw UsageError("--thread is required");
  return parse_thread(read_input(o.thread_path, in));
}

int cmd_parse(const Options& o, std::istream& in, std::ostream& out) {
  const std::string text = read_input(o.input, in);
  if (o.kind == "pga") out << line(parse_pga(text).str());
  else if (o.kind == "pgld") out << line(parse_pgld(text).str());
  else if (o.kind == "thread") out << line(parse_thread(text).str());
  else if (o.kind == "linear") out << line(parse_linear(text).str());
  else out << line(parse_service(text).str());
  return kExitOk;
}

int cmd_extract(const Options& o, std::istream& in, std::ostream& out) {
  ThreadSpec t = extract(eval(parse_pga(read_input(o.input, in))));
  out << line((o.minimize_thread ? minimize(t) : t).str());
  return kExitOk;
}

int cmd_pgld(const Options& o, std::istream& in, std::ostream& out) {
  PgldProgram p = parse_pgld(read_input(o.input, in));
  if (o.to_pga) out << line(pgld2pga(p).str());
  else out << line((o.use_produces ? produces(p) : interpret(p)).str());
  return kExitOk;
}

int cmd_use(const Options& o, std::istream& in, std::ostream& out) {
  if (o.focus.empty()) throw UsageError("--focus is required");
  if (o.service_path.empty() == o.register_value.empty())
    throw UsageError("exactly one of --service and --register is required");
  Service h = o.service_path.empty() ? Service::boolean_register(parse_reply(o.register_value))
                                     : parse_service(read_input(o.service_path, in));
  out << line(use(load_thread(o, in), o.focus, h).str());
  return kExitOk;
}

int cmd_proc_extract(const Options& o, std::istream& in, std::ostream& out) {
  const std::string text = read_input(o.input, in);
  ThreadSpec t = o.from_pga ? extract(eval(parse_pga(text))) : parse_thread(text);
  ExtractOptions opts;
  opts.abstract_stp = o.abstract_stp;
  opts.service_aware = o.service_aware;
  out << export_dot(process_extract(t, opts));
  return kExitOk;
}

int cmd_verify(const std::string& which, const Options& o, std::istream& in, std::ostream& out) {
  ThreadSpec t = load_thread(o, in);
  const TermMode mode = parse_mode(o.mode);
  ProtocolRun run;
  if (which == "simple") {
    run = build_simple(t, mode, o.budget);
  } else {
    Variant v = o.variant == "repaired" ? Variant::Repaired : Variant::Original;
    run = build_complex(t, ProtocolConfig{o.maxlen, o.capacity, o.budget}, mode, v);
  }
  Lts ref = reference_process(t);
  bool eq = rooted_branching_bisim(observable(run), ref);
  if (!o.dot.empty()) write_output(o.dot, export_dot(run.system), out);
  out << "verify protocol=" << which << " mode=" << o.mode;
  if (which == "complex") out << " variant=" << o.variant << " maxlen=" << o.maxlen << " capacity=" << o.capacity;
  out << " equivalent=" << yes_no(eq) << " states=" << run.stats.states << " transitions=" << run.stats.transitions
      << " reference_states=" << ref.num_states() << " deadlocks=" << run.stats.deadlocks;
  if (which == "complex")
    out << " max_pending_len=" << run.stats.max_pending_len << " max_counter=" << run.stats.max_counter
        << " ambiguous_exec_states=" << run.stats.ambiguous_exec_states;
  out << "\n";
  return eq ? kExitOk : kExitCheckFailed;
}

int cmd_simulate(const Options& o, std::istream& in, std::ostream& out) {
  SimOptions so;
  so.protocol = o.protocol == "simple" ? TimedProtocol::Simple : TimedProtocol::RunAhead;
  so.maxlen = o.maxlen;
  so.timing = Timing{o.exec, o.latency};
  so.replies.seed = o.seed;
  so.horizon = o.horizon;
  ThreadSpec t = o.thread_path.empty() ? straight_line(o.steps) : load_thread(o, in);
  out << export_metrics(simulate_timed(t, so));
  return kExitOk;
}

int cmd_compile(const std::string& which, const Options& o, std::istream& in, std::ostream& out) {
  const std::string text = read_input(o.input, in);
  std::string result;
  std::optional<bool> ok;
  if (which == "thread-to-pga") {
    ThreadSpec t = parse_thread(text);
    PgaTerm p = thread_to_pga(t);
    result = p.str();
    if (o.check) ok = thread_equal(extract(eval(p)), t);
  } else if (which == "acp-to-pga") {
    LinearProcSpec e = parse_linear(text);
    PgaTerm p = acp_to_pgaac(e);
    result = p.str();
    if (o.check) ok = realizes_linear(p, e);
  } else if (which == "pga-to-pgld") {
    PgaTerm t = parse_pga(text);
    PgldProgram p = pga_to_pgld(t);
    result = p.str();
    if (o.check) ok = thread_equal(interpret(p), extract(eval(t)));
  } else {
    PgldProgram p = o.from_pga ? pga_to_pgld(parse_pga(text)) : parse_pgld(text);
    Uniquified u = uniquify_with_registers(p);
    result = u.program.str();
    if (o.check) ok = realizes_thread(u, minimize(interpret(p)));
    if (!o.output.empty()) out << "registers=" << u.registers << "\n";
  }
  write_output(o.output, line(result), out);
  if (!ok) return kExitOk;
  out << "check " << which << " " << (*ok ? "pass" : "fail") << "\n";
  return *ok ? kExitOk : kExitCheckFailed;
}

int cmd_suite(const Options& o, std::ostream& out) {
  SuiteOptions so;
  so.seed = o.suite_seed;
  so.budget = o.budget;
  so.jobs = o.jobs;
  so.repaired_reference = !o.skip_repaired;
  std::vector<int> which = o.criteria;
  if (which.empty())
    for (int n = 1; n <= kCriteria; ++n) which.push_back(n);
  bool all = true;
  for (int n : which) {
    CriterionResult r = run_criterion(n, so);
    all = all && r.pass;
    out << format_result(r, o.cases) << std::flush;
  }
  out << "suite " << (all ? "PASS" : "FAIL") << "\n";
  return all ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Instruction sequences, threads and the processes they produce."};
  app.name(args.empty() ? "isproc" : args[0]);
  app.require_subcommand(1);
  Options o;

  auto* parse = app.add_subcommand("parse", "Parse and print a term, program, thread, linear spec or service");
  parse->add_option("--kind", o.kind, "Input syntax")
      ->check(CLI::IsMember({"pga", "pgld", "thread", "linear", "service"}));
  parse->add_option("input", o.input, "Input file, - for stdin");

  auto* normalize = app.add_subcommand("normalize", "Print the canonical form of a PGA term");
  normalize->add_option("input", o.input, "Input file, - for stdin");

  auto* ext = app.add_subcommand("extract", "Print the thread of a PGA term");
  ext->add_option("input", o.input, "Input file, - for stdin");
  ext->add_flag("--minimize", o.minimize_thread, "Merge equal states");

  auto* pgld = app.add_subcommand("pgld", "Print the thread of a PGLD program");
  pgld->add_option("input", o.input, "Input file, - for stdin");
  auto* to_pga = pgld->add_flag("--to-pga", o.to_pga, "Translate to PGA instead");
  pgld->add_flag("--produces", o.use_produces, "Use the PGA route")->excludes(to_pga);

  auto* usecmd = app.add_subcommand("use", "Let a thread use a service");
  usecmd->add_option("--thread", o.thread_path, "Thread file")->required();
  usecmd->add_option("--focus", o.focus, "Focus to bind")->required();
  usecmd->add_option("--service", o.service_path, "Service description file");
  usecmd->add_option("--register", o.register_value, "Boolean register with this initial value")
      ->check(CLI::IsMember({"T", "F"}));

  auto* proc = app.add_subcommand("proc-extract", "Print the process of a thread as DOT");
  proc->add_option("input", o.input, "Input file, - for stdin");
  proc->add_flag("--pga", o.from_pga, "Input is a PGA term");
  proc->add_flag("--abstract-stp", o.abstract_stp, "Hide the termination action");
  proc->add_flag("--service-aware", o.service_aware, "Add blocked-reply branches");

  auto* verify = app.add_subcommand("verify", "Check a protocol against the process of a thread");
  verify->require_subcommand(1);
  for (const char* which : {"simple", "complex"}) {
    auto* v = verify->add_subcommand(which, std::string("Verify the ") + which + " protocol");
    v->add_option("--thread", o.thread_path, "Thread file")->required();
    v->add_option("--mode", o.mode, "Termination mode")->check(CLI::IsMember({"literal", "term-adjusted"}));
    v->add_option("--dot", o.dot, "Write the composed LTS as DOT to this file, - for stdout");
    v->add_option("--budget", o.budget, "State-space cap");
    if (std::string(which) == "complex") {
      v->add_option("--maxlen", o.maxlen, "Longest reply sequence sent ahead")->check(CLI::Range(1, 31));
      v->add_option("--capacity", o.capacity, "Channel capacity")->check(CLI::PositiveNumber);
      v->add_option("--variant", o.variant, "Protocol variant")
          ->check(CLI::IsMember({"original", "repaired"}));
    }
  }

  auto* sim = app.add_subcommand("simulate", "Timed run reporting execution unit utilization");
  sim->add_option("--exec", o.exec, "Ticks per instruction")->check(CLI::PositiveNumber);
  sim->add_option("--latency", o.latency, "Ticks per channel transfer");
  sim->add_option("--maxlen", o.maxlen, "Run-ahead depth")->check(CLI::Range(1, 31));
  sim->add_option("--protocol", o.protocol, "Protocol")->check(CLI::IsMember({"simple", "run-ahead"}));
  sim->add_option("--steps", o.steps, "Length of the straight-line thread")->check(CLI::PositiveNumber);
  sim->add_option("--thread", o.thread_path, "Simulate this thread instead");
  sim->add_option("--seed", o.seed, "Seed for pseudo-random replies (default all true)");
  sim->add_option("--horizon", o.horizon, "Tick limit");

  auto* compile = app.add_subcommand("compile", "Run one of the compilers");
  compile->require_subcommand(1);
  for (const char* which : {"thread-to-pga", "acp-to-pga", "pga-to-pgld", "uniquify"}) {
    auto* c = compile->add_subcommand(which);
    c->add_option("input", o.input, "Input file, - for stdin");
    c->add_option("-o,--output", o.output, "Output file");
    c->add_flag("--check", o.check, "Check the result against its oracle");
    if (std::string(which) == "uniquify") c->add_flag("--pga", o.from_pga, "Input is a PGA term");
  }

  auto* suite = app.add_subcommand("suite", "Run the acceptance batteries");
  suite->add_option("--seed", o.suite_seed, "Seed for all random cases");
  suite->add_option("--budget", o.budget, "State-space cap");
  suite->add_option("--jobs", o.jobs, "Worker threads, 0 for all cores");
  suite->add_flag("--cases", o.cases, "List every case");
  suite->add_option("--criterion", o.criteria, "Run only these criteria")->check(CLI::Range(1, kCriteria));
  suite->add_flag("--skip-repaired", o.skip_repaired, "Skip the repaired protocol reference run");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (parse->parsed()) return cmd_parse(o, in, out);
    if (normalize->parsed()) {
      out << line(canonical_term(eval(parse_pga(read_input(o.input, in)))).str());
      return kExitOk;
    }
    if (ext->parsed()) return cmd_extract(o, in, out);
    if (pgld->parsed()) return cmd_pgld(o, in, out);
    if (usecmd->parsed()) return cmd_use(o, in, out);
    if (proc->parsed()) return cmd_proc_extract(o, in, out);
    for (auto* v : verify->get_subcommands())
      if (v->parsed()) return cmd_verify(v->get_name(), o, in, out);
    if (sim->parsed()) return cmd_simulate(o, in, out);
    for (auto* c : compile->get_subcommands())
      if (c->parsed()) return cmd_compile(c->get_name(), o, in, out);
    if (suite->parsed()) return cmd_suite(o, out);
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace isproc::cli
