// Exhaustive sweeps over all unordered pairs of distinct terms with depth in
// [2, max_depth]: step-count histograms, winners and unresolved pairs.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "polish/law.hpp"
#include "polish/rewrite.hpp"
#include "polish/term.hpp"

namespace polish {

struct SweepConfig {
  Law law = Law::AC;
  std::size_t max_depth = 6;
  std::uint64_t max_steps = 10'000;
  std::uint64_t max_length = std::uint64_t{1} << 31;
  /// Route pairs that outlast a short plain run to the coded engine (AC only).
  bool coded = false;
  unsigned workers = 1;
  /// Empty: no checkpointing.
  std::string checkpoint_path;
  std::size_t checkpoint_every = 100'000;
  /// Process at most this many pending pairs, then checkpoint and return.
  std::optional<std::size_t> stop_after;
  /// Keep every completed pair in SweepResult::pairs.
  bool keep_pairs = false;

  /// Throws std::invalid_argument.
  void validate() const;
  /// Fingerprint of everything that determines per-pair results.
  std::string hash() const;
};

struct Histogram {
  std::size_t max_depth = 0;
  std::uint64_t terms = 0;  ///< N
  std::uint64_t pairs = 0;  ///< Σ = N(N-1)/2
  std::map<std::uint64_t, std::uint64_t> counts;
  std::uint64_t unresolved = 0;

  std::uint64_t recorded() const noexcept;
  /// Σ = N(N-1)/2 and every pair counted once.
  bool consistent() const noexcept;
  std::optional<std::uint64_t> max_steps() const noexcept;

  friend bool operator==(const Histogram&, const Histogram&) = default;
};

struct PairResult {
  std::size_t first = 0;   ///< universe indices, first < second
  std::size_t second = 0;
  std::string left;
  std::string right;
  std::optional<std::uint64_t> steps;  ///< nullopt: cap reached
  Relation relation = Relation::Unresolved;
  BigCount left_length;
  BigCount right_length;
};

struct SweepResult {
  Histogram histogram;
  std::vector<PairResult> winners;
  std::vector<PairResult> unresolved;
  std::vector<PairResult> pairs;  ///< every completed pair, index order
  bool complete = false;
};

class ConfigMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The term universe of a sweep (depths 2..max_depth).
std::vector<Term> sweep_universe(std::size_t max_depth);

/// Result of one pair under the sweep's engine and caps.
PairResult evaluate_pair(const SweepConfig& cfg, const Term& left,
                         const Term& right);

/// Runs (or resumes, when the checkpoint file exists) a sweep.
SweepResult sweep(const SweepConfig& cfg);

struct CheckpointState {
  SweepConfig config;
  std::string config_hash;
  std::uint64_t total_pairs = 0;
  std::uint64_t completed_pairs = 0;
};

/// Reads a checkpoint header. Throws CheckpointError.
CheckpointState checkpoint_resume(const std::string& path);

enum class ReportFormat { Table, Csv, JsonLines };

void report(std::ostream& os, const Histogram& h, ReportFormat format);
void write_pairs_jsonl(std::ostream& os, const std::vector<PairResult>& pairs);

}  // namespace polish
