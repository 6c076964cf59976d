// polish: command-line frontend.
//
// Exit status: 0 success, 1 witness mismatch, 2 malformed input or usage,
// 3 cap-limited (unresolved) outcome.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "polish/coded.hpp"
#include "polish/divergence.hpp"
#include "polish/experiments.hpp"
#include "polish/oracle.hpp"
#include "polish/rewrite.hpp"
#include "polish/term.hpp"

namespace {

using namespace polish;

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;
constexpr int kUnresolved = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Law law_arg(const std::string& name) {
  auto law = parse_law(name);
  if (!law) throw UsageError("unknown law '" + name + "'");
  return *law;
}

Term term_arg(const std::string& flag, const std::string& text) {
  try {
    return Term::parse(text);
  } catch (const ParseError& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

std::string approx(const BigCount& n) {
  if (n < 10'000'000) return {};
  std::ostringstream os;
  os << std::setprecision(4) << n.convert_to<double>();
  return "  (~" + os.str() + ")";
}

void print_outcome(std::ostream& os, const RunOutcome& o) {
  os << "status: " << to_string(o.status) << '\n'
     << "steps: " << o.steps << '\n'
     << "relation: " << to_string(o.relation) << '\n'
     << "left length: " << o.left_length << approx(o.left_length) << '\n'
     << "right length: " << o.right_length << approx(o.right_length) << '\n'
     << "common prefix: " << o.common_prefix << '\n';
}

int status_code(const RunOutcome& o) {
  return o.status == RunStatus::Terminated ? kOk : kUnresolved;
}

// run

struct RunArgs {
  std::string law = "ac", left, right;
  bool coded = false, trace = false, emit_codes = false;
  std::uint64_t max_steps = RunLimits{}.max_steps;
  std::uint64_t max_length = RunLimits{}.max_length;
  std::size_t max_ids = CodedLimits{}.max_ids;
};

int cmd_run(const RunArgs& a) {
  const Law law = law_arg(a.law);
  const Term u = term_arg("--left", a.left);
  const Term v = term_arg("--right", a.right);
  if (a.emit_codes && !a.coded) throw UsageError("--emit-codes needs --coded");

  if (!a.coded) {
    RunResult res = run(law, u, v, {a.max_steps, a.max_length}, a.trace);
    if (res.trace) write_trace(std::cout, *res.trace);
    print_outcome(std::cout, res.outcome);
    return status_code(res.outcome);
  }

  if (law != Law::AC) throw UsageError("--coded supports law ac only");
  CodedObserver observer;
  if (a.trace) {
    std::cout << "Step 0:\t" << u.str() << '\t' << v.str() << '\n';
    observer = [](const CodedRunState& s, const CodedStepRecord& rec) {
      std::cout << "Step " << s.steps << ":\t" << render_ids(s.left) << '\t'
                << render_ids(s.right);
      if (rec.new_code) {
        std::cout << "\twith code " << render_ids({*rec.new_code}) << " = "
                  << render_ids(s.table.code(*rec.new_code));
      }
      std::cout << '\n';
    };
  }
  CodedRunResult res = coded_run(u, v, {a.max_steps, a.max_ids}, observer);
  if (a.emit_codes) write_code_report(std::cout, res.state);
  print_outcome(std::cout, res.outcome);
  return status_code(res.outcome);
}

// sweep

struct SweepArgs {
  std::string law = "ac", out, checkpoint;
  std::size_t max_depth = 6;
  std::uint64_t max_steps = SweepConfig{}.max_steps;
  std::uint64_t max_length = SweepConfig{}.max_length;
  bool coded = false, pairs = false;
  unsigned workers = 0;
  std::size_t checkpoint_every = SweepConfig{}.checkpoint_every;
  std::size_t stop_after = 0;
};

int cmd_sweep(const SweepArgs& a) {
  SweepConfig cfg;
  cfg.law = law_arg(a.law);
  cfg.max_depth = a.max_depth;
  cfg.max_steps = a.max_steps;
  cfg.max_length = a.max_length;
  cfg.coded = a.coded;
  cfg.workers = a.workers ? a.workers
                          : std::max(1u, std::thread::hardware_concurrency());
  cfg.checkpoint_path = a.checkpoint;
  cfg.checkpoint_every = a.checkpoint_every;
  if (a.stop_after) cfg.stop_after = a.stop_after;
  cfg.keep_pairs = a.pairs;
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  SweepResult res = sweep(cfg);
  if (!res.complete) {
    const auto st = checkpoint_resume(cfg.checkpoint_path);
    std::cout << "interrupted: " << st.completed_pairs << " of "
              << st.total_pairs << " pairs done, checkpoint "
              << cfg.checkpoint_path << '\n';
    return kUnresolved;
  }

  report(std::cout, res.histogram, ReportFormat::Table);
  for (const auto& w : res.winners) {
    std::cout << "winner\t" << w.left << '\t' << w.right << '\t' << *w.steps
              << " steps\n";
  }
  for (const auto& p : res.unresolved) {
    std::cout << "unresolved\t" << p.left << '\t' << p.right << '\n';
  }

  if (!a.out.empty()) {
    std::ofstream os(a.out);
    if (!os) throw UsageError("cannot write " + a.out);
    const auto ends_with = [&](std::string_view ext) {
      return a.out.size() >= ext.size() &&
             a.out.compare(a.out.size() - ext.size(), ext.size(), ext) == 0;
    };
    if (ends_with(".csv")) {
      report(os, res.histogram, ReportFormat::Csv);
    } else if (ends_with(".jsonl") || ends_with(".json")) {
      report(os, res.histogram, ReportFormat::JsonLines);
      if (a.pairs) write_pairs_jsonl(os, res.pairs);
    } else {
      report(os, res.histogram, ReportFormat::Table);
    }
  }
  return res.histogram.unresolved ? kUnresolved : kOk;
}

// enumerate

int cmd_enumerate(std::size_t depth, bool count_only) {
  if (depth == 0) throw UsageError("--depth must be at least 1");
  if (count_only) {
    std::cout << catalan(static_cast<unsigned>(depth - 1)) << '\n';
    return kOk;
  }
  try {
    for (const Term& t : enumerate_terms(depth)) std::cout << t.str() << '\n';
  } catch (const DepthTooLarge& e) {
    throw UsageError(e.what());
  }
  return kOk;
}

// verify-witness

int cmd_verify(const std::string& file, std::size_t horizon) {
  std::ifstream is(file);
  if (!is) throw UsageError("cannot read " + file);
  DivergenceWitness w;
  try {
    w = read_witness(is);
  } catch (const MalformedWitness& e) {
    throw UsageError(file + ": " + e.what());
  }
  WitnessReport rep = verify_witness(w, horizon);
  for (const auto& pc : rep.phases) {
    std::cout << "phase " << pc.phase.residue << ' '
              << to_string(pc.phase.side) << ": "
              << (pc.passed ? "ok" : "MISMATCH") << '\n';
  }
  if (rep.run_stopped) {
    std::cout << "run stopped early: " << to_string(*rep.run_stopped) << '\n';
  }
  if (rep.first_failing_step) {
    std::cout << "first mismatch at step " << *rep.first_failing_step << '\n';
  }
  std::cout << (rep.verified ? "verified" : "not verified") << " for m in ["
            << w.m_min << ", " << horizon << "] (empirical certificate)\n";
  return rep.verified ? kOk : kMismatch;
}

// detect-divergence

struct DetectArgs {
  std::string law = "cc", left, right, out;
  DetectOptions options;
};

int cmd_detect(const DetectArgs& a) {
  const Law law = law_arg(a.law);
  const Term u = term_arg("--left", a.left);
  const Term v = term_arg("--right", a.right);
  auto w = detect_pump(law, u, v, a.options);
  if (!w) {
    std::cout << "NotFound\n";
    return kUnresolved;
  }
  write_witness(std::cout, *w);
  if (!a.out.empty()) {
    std::ofstream os(a.out);
    if (!os) throw UsageError("cannot write " + a.out);
    write_witness(os, *w);
  }
  return kOk;
}

// oracle-dist

OracleBudget budget_arg(const std::string& text) {
  OracleBudget b;
  std::size_t* fields[] = {&b.max_steps, &b.max_length, &b.max_visited};
  std::istringstream is(text);
  std::string part;
  std::size_t i = 0;
  while (std::getline(is, part, ',')) {
    if (i == 3) throw UsageError("--budget takes at most three numbers");
    try {
      std::size_t used = 0;
      *fields[i++] = std::stoull(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::logic_error&) {
      throw UsageError("--budget: bad number '" + part + "'");
    }
  }
  return b;
}

int cmd_oracle(const std::string& law_name_arg, const std::string& left,
               const std::string& right, const std::string& budget) {
  const Law law = law_arg(law_name_arg);
  const Term u = term_arg("--left", left);
  const Term v = term_arg("--right", right);
  auto d = bounded_distance(law, u, v, budget_arg(budget));
  if (!d) {
    std::cout << "UNKNOWN\n";
    return kUnresolved;
  }
  std::cout << *d << '\n';
  return kOk;
}

// encode-demo

int cmd_encode(const std::string& seq, const std::vector<std::string>& codes) {
  IdSeq s;
  CodeTable table;
  try {
    s = parse_ids(seq);
    std::cout << "s: " << render_ids(s) << '\n';
    for (const auto& c : codes) {
      const SymbolId id = table.add(parse_ids(c));
      std::cout << "pass " << id << " (" << render_ids({id})
                << " := " << c << "): " << render_ids(encode(s, table))
                << '\n';
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  } catch (const std::out_of_range& e) {
    throw UsageError(e.what());
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polish Algorithm for binary-term laws"};
  app.require_subcommand(1);
  int status = kOk;
  auto guard = [&status](auto fn) {
    return [&status, fn] {
      try {
        status = fn();
      } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        status = kUsage;
      }
    };
  };
  const std::string laws = "ac|bc|ca|cb|cc|aac";

  RunArgs ra;
  auto* run_cmd = app.add_subcommand("run", "run the algorithm on one pair");
  run_cmd->add_option("--law", ra.law, laws)->capture_default_str();
  run_cmd->add_option("--left", ra.left, "left term (01 or x*)")->required();
  run_cmd->add_option("--right", ra.right, "right term (01 or x*)")->required();
  run_cmd->add_flag("--coded", ra.coded, "use the coded engine (ac only)");
  run_cmd->add_option("--max-steps", ra.max_steps)->capture_default_str();
  run_cmd->add_option("--max-length", ra.max_length, "plain engine only")
      ->capture_default_str();
  run_cmd->add_option("--max-ids", ra.max_ids, "coded engine only")
      ->capture_default_str();
  run_cmd->add_flag("--trace", ra.trace, "print every step");
  run_cmd->add_flag("--emit-codes", ra.emit_codes, "print the code table");
  run_cmd->callback(guard([&] { return cmd_run(ra); }));

  SweepArgs sa;
  auto* sweep_cmd = app.add_subcommand("sweep", "all pairs up to a depth");
  sweep_cmd->add_option("--law", sa.law, laws)->capture_default_str();
  sweep_cmd->add_option("--max-depth", sa.max_depth)->required();
  sweep_cmd->add_option("--max-steps", sa.max_steps)->capture_default_str();
  sweep_cmd->add_option("--max-length", sa.max_length)->capture_default_str();
  sweep_cmd->add_flag("--coded", sa.coded, "coded engine for long pairs");
  sweep_cmd->add_option("--workers", sa.workers, "0: one per core");
  sweep_cmd->add_option("--out", sa.out, "report file (.csv, .jsonl)");
  sweep_cmd->add_flag("--pairs", sa.pairs, "add per-pair lines to .jsonl");
  sweep_cmd->add_option("--checkpoint", sa.checkpoint, "resumable state");
  sweep_cmd->add_option("--checkpoint-every", sa.checkpoint_every)
      ->capture_default_str();
  sweep_cmd->add_option("--stop-after", sa.stop_after,
                        "checkpoint and stop after this many pairs");
  sweep_cmd->callback(guard([&] { return cmd_sweep(sa); }));

  std::size_t depth = 0;
  bool count_only = false;
  auto* enum_cmd = app.add_subcommand("enumerate", "terms of one depth");
  enum_cmd->add_option("--depth", depth)->required();
  enum_cmd->add_flag("--count", count_only, "print only the count");
  enum_cmd->callback(guard([&] { return cmd_enumerate(depth, count_only); }));

  std::string witness_file;
  std::size_t horizon = 50;
  auto* verify_cmd =
      app.add_subcommand("verify-witness", "check a divergence witness");
  verify_cmd->add_option("--file", witness_file)->required();
  verify_cmd->add_option("--horizon", horizon)->capture_default_str();
  verify_cmd->callback(guard([&] { return cmd_verify(witness_file, horizon); }));

  DetectArgs da;
  auto* detect_cmd =
      app.add_subcommand("detect-divergence", "search for a pump witness");
  detect_cmd->add_option("--law", da.law, laws)->capture_default_str();
  detect_cmd->add_option("--left", da.left)->required();
  detect_cmd->add_option("--right", da.right)->required();
  detect_cmd->add_option("--max-period", da.options.max_period)
      ->capture_default_str();
  detect_cmd->add_option("--warmup", da.options.warmup)->capture_default_str();
  detect_cmd->add_option("--confirm", da.options.confirm_periods)
      ->capture_default_str();
  detect_cmd->add_option("--out", da.out, "also write the witness here");
  detect_cmd->callback(guard([&] { return cmd_detect(da); }));

  std::string olaw = "ac", oleft, oright, obudget = "6,128,1000000";
  auto* oracle_cmd =
      app.add_subcommand("oracle-dist", "bounded law distance by search");
  oracle_cmd->add_option("--law", olaw, laws)->capture_default_str();
  oracle_cmd->add_option("--left", oleft)->required();
  oracle_cmd->add_option("--right", oright)->required();
  oracle_cmd->add_option("--budget", obudget, "STEPS[,LENGTH[,VISITED]]")
      ->capture_default_str();
  oracle_cmd->callback(
      guard([&] { return cmd_oracle(olaw, oleft, oright, obudget); }));

  std::string seq = "110201011100";
  std::vector<std::string> codes{"110", "220"};
  auto* encode_cmd =
      app.add_subcommand("encode-demo", "encode an id sequence pass by pass");
  encode_cmd->add_option("--seq", seq)->capture_default_str();
  encode_cmd->add_option("--codes", codes, "c2 c3 ...")->capture_default_str();
  encode_cmd->callback(guard([&] { return cmd_encode(seq, codes); }));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  return status;
}
