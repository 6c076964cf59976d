// Terms in one variable and one binary operation, written in right Polish
// notation over the alphabet {1 = variable, 0 = operation}.

#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace polish {

/// Unbounded nonnegative counts (term lengths grow past 2^63 in coded runs).
using BigCount = boost::multiprecision::cpp_int;

inline constexpr char kVar = '1';
inline constexpr char kOp = '0';

constexpr int weight(char symbol) noexcept { return symbol == kVar ? 1 : -1; }

class ParseError : public std::invalid_argument {
 public:
  enum class Kind { Empty, MixedAlphabet, IllegalCharacter, MalformedTerm };

  ParseError(Kind kind, std::size_t index, const std::string& what);

  Kind kind() const noexcept { return kind_; }
  /// Offending position; for MalformedTerm the first index at which the
  /// weight invariant fails.
  std::size_t index() const noexcept { return index_; }

 private:
  Kind kind_;
  std::size_t index_;
};

/// Immutable, validated term. The canonical text is the 01 string.
class Term {
 public:
  /// The lone variable.
  Term();

  /// Parses either alphabet ({1,0} or {x,*}); throws ParseError.
  static Term parse(std::string_view text);

  /// Wraps a 01 string already known to be valid (checked in debug builds).
  static Term from_valid(std::string symbols);

  const std::string& str() const noexcept { return symbols_; }
  std::string_view view() const noexcept { return symbols_; }
  std::size_t length() const noexcept { return symbols_.size(); }
  std::size_t depth() const noexcept { return (symbols_.size() + 1) / 2; }
  char operator[](std::size_t i) const { return symbols_[i]; }

  /// x/* rendering.
  std::string infix_alphabet() const;

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term&, const Term&) = default;

 private:
  explicit Term(std::string symbols) : symbols_(std::move(symbols)) {}
  std::string symbols_;
};

Term parse_term(std::string_view text);

/// s · t = s t 0
Term multiply(const Term& s, const Term& t);

/// Inclusive index span of a subterm.
struct SubtermSpan {
  std::size_t start;
  std::size_t end;

  std::size_t size() const noexcept { return end - start + 1; }
  friend bool operator==(const SubtermSpan&, const SubtermSpan&) = default;
};

/// Shortest segment [q, p] whose weight is +1, found by scanning leftwards
/// from p. Works on any 01 word in which p sits inside a valid term.
SubtermSpan subterm_ending_at(std::string_view word, std::size_t p);
inline SubtermSpan subterm_ending_at(const Term& t, std::size_t p) {
  return subterm_ending_at(t.view(), p);
}

/// True iff the word satisfies the term invariants (total weight 1, every
/// proper prefix of weight >= 1).
bool is_valid_term(std::string_view word) noexcept;

/// Catalan(n) with overflow detection; returns 0 on overflow of uint64.
std::uint64_t catalan(unsigned n) noexcept;

/// Upper bound on the number of terms enumerate_terms will materialise.
inline constexpr std::uint64_t kEnumerationLimit = 50'000'000;

class DepthTooLarge : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// All terms of exactly `depth` variables, sorted lexicographically on the
/// 01 string.
std::vector<Term> enumerate_terms(std::size_t depth);

/// Terms of depth in [min_depth, max_depth], grouped by depth ascending and
/// lexicographic inside each depth.
std::vector<Term> enumerate_universe(std::size_t min_depth,
                                     std::size_t max_depth);

}  // namespace polish
