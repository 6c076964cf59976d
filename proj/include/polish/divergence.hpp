// Eventually periodic non-termination: a run whose terms, from some point on,
// have the shape head z^k tail with k growing by one every `period` steps.
// Witnesses are checked over a finite horizon only; they are empirical
// certificates, not proofs.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "polish/law.hpp"
#include "polish/rewrite.hpp"
#include "polish/term.hpp"

namespace polish {

class MalformedWitness : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A further pumped block inside a tail: pump^(m + exponent_offset) + tail.
struct PumpSegment {
  std::string pump;
  long exponent_offset = 0;
  std::string tail;

  friend bool operator==(const PumpSegment&, const PumpSegment&) = default;
};

/// term_at_step(period*m + residue) on `side` equals
/// head + pump^(m + exponent_offset) + tail + segments... for every m >= m_min.
struct WitnessPhase {
  std::size_t residue = 0;
  Side side = Side::Left;
  long exponent_offset = 0;
  std::string tail;
  /// Usually empty; runs that grow in several places need more blocks.
  std::vector<PumpSegment> segments;

  friend bool operator==(const WitnessPhase&, const WitnessPhase&) = default;
};

struct DivergenceWitness {
  Law law = Law::AC;
  Term left;
  Term right;
  std::size_t period = 0;
  std::size_t m_min = 0;
  std::string head;
  std::string pump;
  std::vector<WitnessPhase> phases;  ///< sorted by (residue, side)

  /// The phase's template at m. Throws MalformedWitness on a negative exponent.
  std::string instantiate(const WitnessPhase& phase, std::size_t m) const;

  /// Throws MalformedWitness on structural problems.
  void validate() const;

  friend bool operator==(const DivergenceWitness&,
                         const DivergenceWitness&) = default;
};

struct PhaseCheck {
  WitnessPhase phase;
  bool passed = true;
};

struct WitnessReport {
  std::size_t horizon = 0;
  bool verified = false;
  std::vector<PhaseCheck> phases;
  std::optional<std::uint64_t> first_failing_step;
  /// Set when the run stopped before reaching the horizon.
  std::optional<RunStatus> run_stopped;
};

/// Runs the algorithm from the witness's start pair and compares every
/// templated step with m_min <= m <= horizon bit-exactly.
WitnessReport verify_witness(const DivergenceWitness& w, std::size_t horizon);

struct DetectOptions {
  std::size_t warmup = 30;
  std::size_t max_period = 12;
  std::size_t confirm_periods = 8;
  std::uint64_t max_length = std::uint64_t{1} << 26;
};

std::optional<DivergenceWitness> detect_pump(Law law, const Term& u,
                                             const Term& v,
                                             DetectOptions options = {});

void write_witness(std::ostream& os, const DivergenceWitness& w);
/// Throws MalformedWitness on syntax errors or structural problems.
DivergenceWitness read_witness(std::istream& is);

}  // namespace polish
