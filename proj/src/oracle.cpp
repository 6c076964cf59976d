#include "polish/oracle.hpp"

#include <unordered_map>
#include <unordered_set>

namespace polish {

NeighborSet neighbors(Law law, const Term& t) {
  NeighborSet out{t, law, {}};
  std::unordered_set<std::string> seen;
  for (std::size_t p = 0; p < t.length(); ++p) {
    if (t[p] != kOp) continue;
    for (Direction dir : {Direction::Expand, Direction::Reduce}) {
      auto r = apply_law_at(law, t, p, dir);
      if (r && seen.insert(r->str()).second) {
        out.neighbors.push_back({p, dir, std::move(*r)});
      }
    }
  }
  return out;
}

namespace {

using DistMap = std::unordered_map<std::string, std::size_t>;

struct Search {
  DistMap dist;
  std::vector<Term> frontier;
  std::size_t depth = 0;
};

}  // namespace

std::optional<std::size_t> bounded_distance(Law law, const Term& u,
                                            const Term& v,
                                            OracleBudget budget) {
  if (u == v) return 0;
  Search a, b;
  a.dist[u.str()] = 0;
  a.frontier = {u};
  b.dist[v.str()] = 0;
  b.frontier = {v};

  // Level-synchronous bidirectional search: the first level that meets the
  // other side yields the minimum over that level.
  while (!a.frontier.empty() && !b.frontier.empty()) {
    if (a.depth + b.depth >= budget.max_steps) return std::nullopt;
    Search& grow = a.frontier.size() <= b.frontier.size() ? a : b;
    const Search& other = &grow == &a ? b : a;

    std::optional<std::size_t> best;
    std::vector<Term> next;
    for (const Term& t : grow.frontier) {
      for (auto& n : neighbors(law, t).neighbors) {
        if (n.result.length() > budget.max_length) continue;
        if (auto it = other.dist.find(n.result.str()); it != other.dist.end()) {
          std::size_t total = grow.depth + 1 + it->second;
          if (!best || total < *best) best = total;
        }
        if (grow.dist.emplace(n.result.str(), grow.depth + 1).second) {
          next.push_back(std::move(n.result));
        }
      }
      if (a.dist.size() + b.dist.size() > budget.max_visited) {
        return std::nullopt;
      }
    }
    if (best) {
      return *best <= budget.max_steps ? best : std::nullopt;
    }
    grow.frontier = std::move(next);
    ++grow.depth;
  }
  return std::nullopt;
}

std::string_view to_string(WordAnswer answer) noexcept {
  switch (answer) {
    case WordAnswer::Equivalent: return "Equivalent";
    case WordAnswer::LeftFactor: return "LeftFactor";
    case WordAnswer::RightFactor: return "RightFactor";
    case WordAnswer::Unknown: return "Unknown";
  }
  return "?";
}

namespace {

/// One equivalence class under construction, with every proper prefix of
/// its members that is itself a term.
struct ClassGrowth {
  std::unordered_set<std::string> members;
  std::unordered_set<std::string> term_prefixes;
  std::vector<Term> frontier;

  void add_prefixes(const std::string& s) {
    long w = 0;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      w += weight(s[i]);
      if (w == 1) term_prefixes.insert(s.substr(0, i + 1));
    }
  }

  /// Proper prefix of `s` that belongs to this class?
  bool has_prefix_of(const std::string& s) const {
    long w = 0;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      w += weight(s[i]);
      if (w == 1 && members.count(s.substr(0, i + 1))) return true;
    }
    return false;
  }
};

/// Relation between a new member `s` of `mine` and the class `theirs`, seen
/// from `mine`: 0 none, 1 equal, 2 mine is a left factor, 3 theirs is.
int relate(const std::string& s, const ClassGrowth& theirs) {
  if (theirs.members.count(s)) return 1;
  if (theirs.term_prefixes.count(s)) return 2;
  if (theirs.has_prefix_of(s)) return 3;
  return 0;
}

}  // namespace

WordAnswer check_word_problem(Law law, const Term& u, const Term& v,
                              OracleBudget budget) {
  ClassGrowth cu, cv;
  auto answer = [](int rel, bool from_u) {
    switch (rel) {
      case 1: return WordAnswer::Equivalent;
      case 2: return from_u ? WordAnswer::LeftFactor : WordAnswer::RightFactor;
      case 3: return from_u ? WordAnswer::RightFactor : WordAnswer::LeftFactor;
    }
    return WordAnswer::Unknown;
  };

  cu.members.insert(u.str());
  cu.add_prefixes(u.str());
  cu.frontier = {u};
  cv.members.insert(v.str());
  cv.add_prefixes(v.str());
  cv.frontier = {v};
  if (int rel = relate(u.str(), cv)) return answer(rel, true);

  for (std::size_t level = 0; level < budget.max_steps; ++level) {
    for (bool from_u : {true, false}) {
      ClassGrowth& mine = from_u ? cu : cv;
      const ClassGrowth& theirs = from_u ? cv : cu;
      std::vector<Term> next;
      for (const Term& t : mine.frontier) {
        for (auto& n : neighbors(law, t).neighbors) {
          const std::string& s = n.result.str();
          if (s.size() > budget.max_length) continue;
          if (!mine.members.insert(s).second) continue;
          mine.add_prefixes(s);
          if (int rel = relate(s, theirs)) return answer(rel, from_u);
          next.push_back(std::move(n.result));
          if (cu.members.size() + cv.members.size() > budget.max_visited) {
            return WordAnswer::Unknown;
          }
        }
      }
      mine.frontier = std::move(next);
    }
    if (cu.frontier.empty() && cv.frontier.empty()) break;
  }
  return WordAnswer::Unknown;
}

std::vector<std::set<std::string>> expansion_levels(Law law, const Term& t,
                                                    std::size_t k) {
  std::vector<std::set<std::string>> levels{{t.str()}};
  for (std::size_t j = 0; j < k; ++j) {
    std::set<std::string> next;
    for (const auto& s : levels.back()) {
      Term cur = Term::from_valid(s);
      for (std::size_t p = 0; p < cur.length(); ++p) {
        if (auto r = apply_law_at(law, cur, p, Direction::Expand)) {
          next.insert(r->str());
        }
      }
    }
    levels.push_back(std::move(next));
  }
  return levels;
}

}  // namespace polish
