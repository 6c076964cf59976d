#include "polish/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "polish/coded.hpp"

namespace polish {

using nlohmann::json;

namespace {

// Plain-run budget before a pair is handed to the coded engine.
constexpr std::uint64_t kPlainProbeSteps = 256;
constexpr std::uint64_t kPlainProbeLength = std::uint64_t{1} << 22;

struct PairOutcome {
  std::optional<std::uint64_t> steps;
  Relation relation = Relation::Unresolved;
  BigCount left_length;
  BigCount right_length;
};

PairOutcome from_run(const RunOutcome& o) {
  PairOutcome p;
  if (o.status == RunStatus::Terminated) p.steps = o.steps;
  p.relation = o.relation;
  p.left_length = o.left_length;
  p.right_length = o.right_length;
  return p;
}

PairOutcome evaluate(const SweepConfig& cfg, const Term& u, const Term& v) {
  if (!cfg.coded) {
    return from_run(run(cfg.law, u, v, {cfg.max_steps, cfg.max_length}).outcome);
  }
  RunResult probe =
      run(cfg.law, u, v,
          {std::min(cfg.max_steps, kPlainProbeSteps),
           std::min(cfg.max_length, kPlainProbeLength)});
  if (probe.outcome.status == RunStatus::Terminated ||
      (probe.outcome.status == RunStatus::StepLimit &&
       probe.outcome.steps >= cfg.max_steps)) {
    return from_run(probe.outcome);
  }
  return from_run(coded_run(u, v, {cfg.max_steps, CodedLimits{}.max_ids}).outcome);
}

std::uint64_t fnv1a(std::string_view s) noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

/// Maps a linear pair index to (i, j), i < j, rows in universe order.
class PairIndex {
 public:
  explicit PairIndex(std::uint64_t n) : n_(n) {
    row_.reserve(n);
    std::uint64_t off = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
      row_.push_back(off);
      off += n - 1 - i;
    }
    total_ = off;
  }
  std::uint64_t total() const noexcept { return total_; }
  std::pair<std::size_t, std::size_t> operator()(std::uint64_t k) const {
    auto it = std::upper_bound(row_.begin(), row_.end(), k);
    auto i = static_cast<std::size_t>(it - row_.begin() - 1);
    return {i, static_cast<std::size_t>(i + 1 + (k - row_[i]))};
  }

 private:
  std::uint64_t n_;
  std::uint64_t total_ = 0;
  std::vector<std::uint64_t> row_;
};

json config_json(const SweepConfig& c) {
  return {{"law", law_name(c.law)},         {"max_depth", c.max_depth},
          {"max_steps", c.max_steps},       {"max_length", c.max_length},
          {"coded", c.coded}};
}

std::string to_hex_bitmap(const std::vector<std::uint8_t>& done) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out((done.size() + 3) / 4, '0');
  for (std::size_t k = 0; k < done.size(); ++k) {
    if (!done[k]) continue;
    auto& c = out[k / 4];
    int v = (c <= '9' ? c - '0' : c - 'a' + 10) | (1 << (k % 4));
    c = digits[v];
  }
  return out;
}

std::vector<std::uint8_t> from_hex_bitmap(const std::string& hex,
                                          std::uint64_t total) {
  if (hex.size() != (total + 3) / 4) {
    throw CheckpointError("checkpoint bitmap has the wrong size");
  }
  std::vector<std::uint8_t> done(total, 0);
  for (std::uint64_t k = 0; k < total; ++k) {
    char c = hex[k / 4];
    int v;
    if (c >= '0' && c <= '9') {
      v = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      v = c - 'a' + 10;
    } else {
      throw CheckpointError("checkpoint bitmap is not hex");
    }
    done[k] = (v >> (k % 4)) & 1;
  }
  return done;
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CheckpointError("cannot open checkpoint " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw CheckpointError("corrupt checkpoint " + path + ": " + e.what());
  }
}

void write_checkpoint(const SweepConfig& cfg, std::uint64_t total,
                      const std::vector<std::uint8_t>& done,
                      const std::vector<PairOutcome>& results) {
  json results_json = json::array();
  for (std::uint64_t k = 0; k < total; ++k) {
    if (!done[k]) continue;
    const auto& r = results[k];
    results_json.push_back(
        {k, r.steps ? static_cast<std::int64_t>(*r.steps) : -1,
         static_cast<int>(r.relation), r.left_length.str(),
         r.right_length.str()});
  }
  json doc = {{"version", 1},
              {"config_hash", cfg.hash()},
              {"config", config_json(cfg)},
              {"total_pairs", total},
              {"completed_pairs",
               std::count(done.begin(), done.end(), std::uint8_t{1})},
              {"completed", to_hex_bitmap(done)},
              {"results", std::move(results_json)}};

  const std::string tmp = cfg.checkpoint_path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw CheckpointError("cannot write checkpoint " + tmp);
    out << doc.dump() << '\n';
    if (!out) throw CheckpointError("short write to checkpoint " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, cfg.checkpoint_path, ec);
  if (ec) {
    throw CheckpointError("cannot move checkpoint into place: " +
                          ec.message());
  }
}

PairResult make_result(std::size_t i, std::size_t j,
                       const std::vector<Term>& universe,
                       const PairOutcome& o) {
  return {i,          j,          universe[i].str(), universe[j].str(),
          o.steps,    o.relation, o.left_length,     o.right_length};
}

}  // namespace

void SweepConfig::validate() const {
  if (max_depth < 2) throw std::invalid_argument("max_depth must be >= 2");
  if (coded && law != Law::AC) {
    throw std::invalid_argument("the coded engine supports law ac only");
  }
  if (workers == 0) throw std::invalid_argument("workers must be >= 1");
  if (checkpoint_every == 0) {
    throw std::invalid_argument("checkpoint_every must be >= 1");
  }
}

std::string SweepConfig::hash() const {
  std::ostringstream os;
  os << "law=" << law_name(law) << ";depth=" << max_depth
     << ";steps=" << max_steps << ";length=" << max_length
     << ";engine=" << (coded ? "coded" : "plain");
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(os.str())));
  return buf;
}

std::uint64_t Histogram::recorded() const noexcept {
  std::uint64_t total = unresolved;
  for (const auto& [steps, count] : counts) total += count;
  return total;
}

bool Histogram::consistent() const noexcept {
  return terms >= 1 && pairs == terms * (terms - 1) / 2 && recorded() == pairs;
}

std::optional<std::uint64_t> Histogram::max_steps() const noexcept {
  if (counts.empty()) return std::nullopt;
  return counts.rbegin()->first;
}

std::vector<Term> sweep_universe(std::size_t max_depth) {
  return enumerate_universe(2, max_depth);
}

PairResult evaluate_pair(const SweepConfig& cfg, const Term& left,
                         const Term& right) {
  PairOutcome o = evaluate(cfg, left, right);
  return {0,       0,          left.str(),    right.str(),
          o.steps, o.relation, o.left_length, o.right_length};
}

CheckpointState checkpoint_resume(const std::string& path) {
  json doc = read_json(path);
  try {
    CheckpointState st;
    const json& c = doc.at("config");
    auto law = parse_law(c.at("law").get<std::string>());
    if (!law) throw CheckpointError("checkpoint names an unknown law");
    st.config.law = *law;
    st.config.max_depth = c.at("max_depth").get<std::size_t>();
    st.config.max_steps = c.at("max_steps").get<std::uint64_t>();
    st.config.max_length = c.at("max_length").get<std::uint64_t>();
    st.config.coded = c.at("coded").get<bool>();
    st.config.checkpoint_path = path;
    st.config_hash = doc.at("config_hash").get<std::string>();
    st.total_pairs = doc.at("total_pairs").get<std::uint64_t>();
    st.completed_pairs = doc.at("completed_pairs").get<std::uint64_t>();
    if (st.config.hash() != st.config_hash) {
      throw CheckpointError("checkpoint hash does not match its config");
    }
    return st;
  } catch (const json::exception& e) {
    throw CheckpointError("malformed checkpoint " + path + ": " + e.what());
  }
}

SweepResult sweep(const SweepConfig& cfg) {
  cfg.validate();
  const std::vector<Term> universe = sweep_universe(cfg.max_depth);
  const PairIndex index(universe.size());
  const std::uint64_t total = index.total();

  std::vector<std::uint8_t> done(total, 0);
  std::vector<PairOutcome> results(total);

  if (!cfg.checkpoint_path.empty() &&
      std::filesystem::exists(cfg.checkpoint_path)) {
    CheckpointState st = checkpoint_resume(cfg.checkpoint_path);
    if (st.config_hash != cfg.hash()) {
      throw ConfigMismatch("checkpoint " + cfg.checkpoint_path +
                           " was written for a different configuration");
    }
    if (st.total_pairs != total) {
      throw CheckpointError("checkpoint pair count does not match");
    }
    json doc = read_json(cfg.checkpoint_path);
    done = from_hex_bitmap(doc.at("completed").get<std::string>(), total);
    for (const auto& row : doc.at("results")) {
      auto k = row.at(0).get<std::uint64_t>();
      auto steps = row.at(1).get<std::int64_t>();
      if (k >= total || !done[k]) {
        throw CheckpointError("checkpoint result for an unmarked pair");
      }
      PairOutcome& o = results[k];
      if (steps >= 0) o.steps = static_cast<std::uint64_t>(steps);
      o.relation = static_cast<Relation>(row.at(2).get<int>());
      o.left_length = BigCount(row.at(3).get<std::string>());
      o.right_length = BigCount(row.at(4).get<std::string>());
    }
  }

  std::vector<std::uint64_t> pending;
  for (std::uint64_t k = 0; k < total; ++k) {
    if (!done[k]) pending.push_back(k);
  }
  std::size_t budget = pending.size();
  if (cfg.stop_after) budget = std::min(budget, *cfg.stop_after);

  for (std::size_t start = 0; start < budget; start += cfg.checkpoint_every) {
    const std::size_t stop = std::min(budget, start + cfg.checkpoint_every);
    std::atomic<std::size_t> next{start};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
      constexpr std::size_t kChunk = 32;
      for (;;) {
        std::size_t from = next.fetch_add(kChunk);
        if (from >= stop) return;
        std::size_t to = std::min(stop, from + kChunk);
        for (std::size_t q = from; q < to; ++q) {
          const std::uint64_t k = pending[q];
          auto [i, j] = index(k);
          try {
            results[k] = evaluate(cfg, universe[i], universe[j]);
            done[k] = 1;
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next.store(stop);
            return;
          }
        }
      }
    };

    if (cfg.workers == 1) {
      worker();
    } else {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < cfg.workers; ++w) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    if (!cfg.checkpoint_path.empty()) {
      write_checkpoint(cfg, total, done, results);
    }
  }
  if (!cfg.checkpoint_path.empty() && budget == 0) {
    write_checkpoint(cfg, total, done, results);
  }

  SweepResult out;
  Histogram& h = out.histogram;
  h.max_depth = cfg.max_depth;
  h.terms = universe.size();
  h.pairs = total;
  std::optional<std::uint64_t> best;
  out.complete = true;
  for (std::uint64_t k = 0; k < total; ++k) {
    if (!done[k]) {
      out.complete = false;
      continue;
    }
    const PairOutcome& o = results[k];
    auto [i, j] = index(k);
    if (o.steps) {
      ++h.counts[*o.steps];
      if (!best || *o.steps > *best) {
        best = o.steps;
        out.winners.clear();
      }
      if (*o.steps == *best) out.winners.push_back(make_result(i, j, universe, o));
    } else {
      ++h.unresolved;
      out.unresolved.push_back(make_result(i, j, universe, o));
    }
  }
  if (cfg.keep_pairs) {
    for (std::uint64_t k = 0; k < total; ++k) {
      if (!done[k]) continue;
      auto [i, j] = index(k);
      out.pairs.push_back(make_result(i, j, universe, results[k]));
    }
  }
  return out;
}

void report(std::ostream& os, const Histogram& h, ReportFormat format) {
  switch (format) {
    case ReportFormat::Table:
      os << "d\t" << h.max_depth << '\n'
         << "N\t" << h.terms << '\n'
         << "Σ\t" << h.pairs << '\n';
      for (const auto& [steps, count] : h.counts) {
        os << steps << '\t' << count << '\n';
      }
      if (h.unresolved) os << "unresolved\t" << h.unresolved << '\n';
      break;
    case ReportFormat::Csv:
      os << "steps,count\n";
      for (const auto& [steps, count] : h.counts) {
        os << steps << ',' << count << '\n';
      }
      os << "unresolved," << h.unresolved << '\n';
      break;
    case ReportFormat::JsonLines:
      os << json{{"max_depth", h.max_depth},
                 {"N", h.terms},
                 {"sigma", h.pairs},
                 {"unresolved", h.unresolved}}
                .dump()
         << '\n';
      for (const auto& [steps, count] : h.counts) {
        os << json{{"steps", steps}, {"count", count}}.dump() << '\n';
      }
      break;
  }
}

void write_pairs_jsonl(std::ostream& os, const std::vector<PairResult>& pairs) {
  for (const auto& p : pairs) {
    json row = {{"left", p.left},
                {"right", p.right},
                {"relation", to_string(p.relation)},
                {"left_length", p.left_length.str()},
                {"right_length", p.right_length.str()}};
    if (p.steps) {
      row["steps"] = *p.steps;
    } else {
      row["steps"] = nullptr;
    }
    os << row.dump() << '\n';
  }
}

}  // namespace polish
