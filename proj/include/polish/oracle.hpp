// Brute-force ground truth on small terms: single applications of a law,
// bounded law-distance, and a bounded version of the enumeration that
// decides the word problem given linearity of the left-factor order.

#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "polish/law.hpp"
#include "polish/rewrite.hpp"
#include "polish/term.hpp"

namespace polish {

struct Neighbor {
  std::size_t position;
  Direction direction;
  Term result;
};

struct NeighborSet {
  Term term;
  Law law;
  std::vector<Neighbor> neighbors;  ///< one entry per distinct result
};

NeighborSet neighbors(Law law, const Term& t);

struct OracleBudget {
  std::size_t max_steps = 6;
  std::size_t max_length = 128;
  std::size_t max_visited = 1'000'000;
};

/// Exact law-distance if it is at most max_steps along paths whose terms
/// stay within max_length; nullopt (UNKNOWN) otherwise.
std::optional<std::size_t> bounded_distance(Law law, const Term& u,
                                            const Term& v,
                                            OracleBudget budget = {});

enum class WordAnswer { Equivalent, LeftFactor, RightFactor, Unknown };

std::string_view to_string(WordAnswer answer) noexcept;

/// Grows the equivalence classes of u and v breadth-first and reports the
/// first equality or proper-prefix relation between a member of each.
WordAnswer check_word_problem(Law law, const Term& u, const Term& v,
                              OracleBudget budget = {});

/// levels[j] = terms reachable from t by exactly j expansions (j <= k).
std::vector<std::set<std::string>> expansion_levels(Law law, const Term& t,
                                                    std::size_t k);

}  // namespace polish
