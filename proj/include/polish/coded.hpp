// The coded Polish Algorithm for left distributivity. Terms are sequences of
// ids: 0 is the operation, 1 the variable, and every id k >= 2 names a code
// c_k (a sequence of smaller ids) introduced while the algorithm runs.

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "polish/rewrite.hpp"
#include "polish/term.hpp"

namespace polish {

using SymbolId = std::uint32_t;
using IdSeq = std::vector<SymbolId>;

class UnknownId : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class CodeTable {
 public:
  /// c0 = 0, c1 = 1.
  CodeTable();

  std::size_t size() const noexcept { return codes_.size(); }
  const IdSeq& code(SymbolId id) const;
  const BigCount& real_length(SymbolId id) const;

  /// Appends c_k = `code` and returns k. Every id in `code` must be < k and
  /// the code must decode to a term.
  SymbolId add(IdSeq code);

  /// Index of an existing code equal to `code`, if any.
  std::optional<SymbolId> find(const IdSeq& code) const;

 private:
  std::vector<IdSeq> codes_;
  std::vector<BigCount> lengths_;
  std::map<IdSeq, SymbolId> index_;
};

/// Id-weight validity: id 0 weighs -1, every other id +1.
bool is_valid_coded(const IdSeq& ids) noexcept;

/// Substitutes c_i -> i for i = 2..k in order, each pass a leftmost,
/// non-overlapping scan. Throws UnknownId for ids outside the table.
IdSeq encode(const IdSeq& s, const CodeTable& table);

IdSeq decode_full(const IdSeq& ids, const CodeTable& table);
Term decode_term(const IdSeq& ids, const CodeTable& table);
BigCount real_length(const IdSeq& ids, const CodeTable& table);

IdSeq ids_from_term(const Term& t);

/// Digits 0-9, then a-z, then A-Z; ids from 62 on print as "[n]".
std::string render_ids(const IdSeq& ids);
IdSeq parse_ids(std::string_view text);

struct CodedRunState {
  IdSeq left;
  IdSeq right;
  CodeTable table;
  std::uint64_t steps = 0;

  static CodedRunState start(const Term& u, const Term& v);
};

struct CodedStepRecord {
  StepRecord step;
  /// Local decodes performed before the expansion.
  std::size_t decodes = 0;
  /// Id of the code introduced by this step, if any.
  std::optional<SymbolId> new_code;
};

/// Advances one algorithm step in place. Precondition: the sides still
/// differ after local decoding; throws std::invalid_argument otherwise.
CodedStepRecord advance(CodedRunState& state);

/// Value form of advance.
CodedRunState coded_step(CodedRunState state);

struct CodedLimits {
  std::uint64_t max_steps = 10'000;
  /// Bound on the number of codes in the table.
  std::size_t max_ids = 4096;
};

struct CodedRunResult {
  RunOutcome outcome;
  CodedRunState state;
};

using CodedObserver =
    std::function<void(const CodedRunState&, const CodedStepRecord&)>;

CodedRunResult coded_run(const Term& u, const Term& v, CodedLimits limits = {},
                         const CodedObserver& observer = {});

/// Code listing, resulting coded terms and their real lengths.
void write_code_report(std::ostream& os, const CodedRunState& state);

}  // namespace polish
