// The Polish Algorithm over plain terms: first difference, dynamic range,
// expansion templates, single steps and capped runs.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "polish/law.hpp"
#include "polish/term.hpp"

namespace polish {

/// Returned by first_difference when one word is a prefix of the other.
inline constexpr std::size_t kNoDifference =
    std::numeric_limits<std::size_t>::max();

/// Least index below min(|u|, |v|) where u and v differ, searching from
/// `from` (the caller asserts agreement before it).
std::size_t first_difference(std::string_view u, std::string_view v,
                             std::size_t from = 0) noexcept;

class NoDecomposition : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// w = head u0 u1 u2 0 u3 0 ... un 0 0 tail, with u2 starting at `position`.
struct DynamicRange {
  std::string head;
  std::vector<Term> components;
  std::string tail;
  std::size_t position = 0;

  std::size_t arity() const noexcept { return components.size() - 1; }
  std::string reassemble() const;
};

/// Throws NoDecomposition when w has no dynamic range at d.
DynamicRange dynamic_range(const Term& w, std::size_t d);

Term expand(Law law, const DynamicRange& range);

enum class Side { Left, Right };

struct StepRecord {
  std::size_t difference = 0;
  Side expanded = Side::Left;
  std::size_t arity = 0;
  /// Single law applications the step amounts to (arity - 1).
  std::size_t applications = 0;
};

struct StepResult {
  Term left;
  Term right;
  StepRecord record;
};

/// One step of the algorithm; throws std::invalid_argument when the terms
/// have no difference.
StepResult step(Law law, const Term& u, const Term& v);

enum class RunStatus { Terminated, StepLimit, LengthLimit };

enum class Relation {
  Equivalent,
  LeftIsLeftFactor,   ///< final left side is a proper prefix of the right
  RightIsLeftFactor,  ///< final right side is a proper prefix of the left
  Unresolved,
};

std::string_view to_string(RunStatus status) noexcept;
std::string_view to_string(Relation relation) noexcept;
std::string_view to_string(Side side) noexcept;
Relation mirror(Relation relation) noexcept;

struct RunOutcome {
  RunStatus status = RunStatus::Terminated;
  std::uint64_t steps = 0;
  BigCount left_length;
  BigCount right_length;
  Relation relation = Relation::Unresolved;
  BigCount common_prefix;
};

struct TraceEntry {
  StepRecord record;
  std::vector<std::string> components;
  std::string left;
  std::string right;
};

/// Per-step terms before each step, plus the terms after the last one.
struct Trace {
  std::vector<TraceEntry> steps;
  std::string final_left;
  std::string final_right;
};

/// "Step k:\t<left> <right>\t(d = .., dyn = ..)" lines, final pair last.
void write_trace(std::ostream& os, const Trace& trace);

struct RunLimits {
  std::uint64_t max_steps = 10'000;
  std::uint64_t max_length = std::uint64_t{1} << 31;
};

struct RunResult {
  RunOutcome outcome;
  std::optional<Trace> trace;
  std::string final_left;
  std::string final_right;
};

/// Observer invoked after every step with the step number and both sides.
using StepObserver =
    std::function<void(std::uint64_t, std::string_view, std::string_view)>;

RunResult run(Law law, const Term& u, const Term& v, RunLimits limits = {},
              bool want_trace = false, const StepObserver& observer = {});

enum class Direction { Expand, Reduce };

/// One application of the law to the subterm ending at p, if it has the
/// required shape.
std::optional<Term> apply_law_at(Law law, const Term& t, std::size_t p,
                                 Direction direction);

}  // namespace polish
