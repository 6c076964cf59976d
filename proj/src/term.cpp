#include "polish/term.hpp"

#include <cassert>

namespace polish {

ParseError::ParseError(Kind kind, std::size_t index, const std::string& what)
    : std::invalid_argument(what), kind_(kind), index_(index) {}

Term::Term() : symbols_(1, kVar) {}

bool is_valid_term(std::string_view word) noexcept {
  if (word.empty()) return false;
  long w = 0;
  for (std::size_t i = 0; i < word.size(); ++i) {
    char c = word[i];
    if (c != kVar && c != kOp) return false;
    w += weight(c);
    if (i + 1 < word.size() && w < 1) return false;
  }
  return w == 1;
}

Term Term::parse(std::string_view text) {
  using K = ParseError::Kind;
  if (text.empty()) throw ParseError(K::Empty, 0, "empty term");

  enum class Alpha { Unknown, Binary, Symbolic } alpha = Alpha::Unknown;
  std::string symbols;
  symbols.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    Alpha here;
    char mapped;
    if (c == '1' || c == '0') {
      here = Alpha::Binary;
      mapped = c;
    } else if (c == 'x' || c == '*') {
      here = Alpha::Symbolic;
      mapped = c == 'x' ? kVar : kOp;
    } else {
      throw ParseError(K::IllegalCharacter, i,
                       "illegal character '" + std::string(1, c) +
                           "' at index " + std::to_string(i));
    }
    if (alpha == Alpha::Unknown) {
      alpha = here;
    } else if (alpha != here) {
      throw ParseError(K::MixedAlphabet, i,
                       "mixed alphabets at index " + std::to_string(i));
    }
    symbols.push_back(mapped);
  }

  long w = 0;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    w += weight(symbols[i]);
    bool last = i + 1 == symbols.size();
    if ((!last && w < 1) || (last && w != 1)) {
      throw ParseError(K::MalformedTerm, i,
                       "not a term: weight " + std::to_string(w) +
                           " at index " + std::to_string(i));
    }
  }
  return Term(std::move(symbols));
}

Term Term::from_valid(std::string symbols) {
  assert(is_valid_term(symbols));
  return Term(std::move(symbols));
}

std::string Term::infix_alphabet() const {
  std::string out = symbols_;
  for (char& c : out) c = c == kVar ? 'x' : '*';
  return out;
}

Term parse_term(std::string_view text) { return Term::parse(text); }

Term multiply(const Term& s, const Term& t) {
  std::string out;
  out.reserve(s.length() + t.length() + 1);
  out += s.str();
  out += t.str();
  out.push_back(kOp);
  return Term::from_valid(std::move(out));
}

SubtermSpan subterm_ending_at(std::string_view word, std::size_t p) {
  long sum = 0;
  std::size_t q = p + 1;
  while (q > 0) {
    --q;
    sum += weight(word[q]);
    if (sum == 1) return {q, p};
  }
  throw std::logic_error("subterm_ending_at: no subterm ends at " +
                         std::to_string(p));
}

std::uint64_t catalan(unsigned n) noexcept {
  // C(k+1) = C(k) * 2(2k+1) / (k+2), exact at every step.
  unsigned __int128 c = 1;
  for (unsigned k = 0; k < n; ++k) {
    c = c * (2 * (2 * k + 1)) / (k + 2);
    if (c > UINT64_MAX) return 0;
  }
  return static_cast<std::uint64_t>(c);
}

namespace {

void generate(std::string& buf, std::size_t pos, long w,
              std::vector<Term>& out) {
  const std::size_t len = buf.size();
  if (pos == len) {
    out.push_back(Term::from_valid(buf));
    return;
  }
  const long remaining = static_cast<long>(len - pos - 1);
  // '0' sorts before '1'.
  for (char c : {kOp, kVar}) {
    long nw = w + weight(c);
    bool last = remaining == 0;
    if (!last && nw < 1) continue;
    if (last && nw != 1) continue;
    if (nw - remaining > 1) continue;
    buf[pos] = c;
    generate(buf, pos + 1, nw, out);
  }
}

}  // namespace

std::vector<Term> enumerate_terms(std::size_t depth) {
  if (depth == 0) throw std::invalid_argument("depth must be >= 1");
  std::uint64_t count = depth - 1 > 64 ? 0 : catalan(depth - 1);
  if (count == 0 || count > kEnumerationLimit) {
    throw DepthTooLarge("too many terms of depth " + std::to_string(depth));
  }
  std::vector<Term> out;
  out.reserve(count);
  std::string buf(2 * depth - 1, kVar);
  generate(buf, 0, 0, out);
  return out;
}

std::vector<Term> enumerate_universe(std::size_t min_depth,
                                     std::size_t max_depth) {
  std::vector<Term> out;
  for (std::size_t d = min_depth; d <= max_depth; ++d) {
    auto level = enumerate_terms(d);
    out.insert(out.end(), std::make_move_iterator(level.begin()),
               std::make_move_iterator(level.end()));
  }
  return out;
}

}  // namespace polish
