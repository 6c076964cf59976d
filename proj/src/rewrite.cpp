#include "polish/rewrite.hpp"

#include <algorithm>
#include <ostream>

#include "polish/detail/expansion.hpp"

namespace polish {

namespace {

constexpr bool is_op(char c) noexcept { return c == kOp; }

std::span<const char> as_span(std::string_view s) noexcept {
  return {s.data(), s.size()};
}

}  // namespace

std::size_t first_difference(std::string_view u, std::string_view v,
                             std::size_t from) noexcept {
  const std::size_t n = std::min(u.size(), v.size());
  if (from >= n) return kNoDifference;
  auto [a, b] = std::mismatch(u.begin() + from, u.begin() + n,
                              v.begin() + from);
  if (a == u.begin() + n) return kNoDifference;
  return static_cast<std::size_t>(a - u.begin());
}

std::string DynamicRange::reassemble() const {
  std::string out = head;
  for (std::size_t k = 0; k < components.size(); ++k) {
    out += components[k].str();
    if (k >= 2) out.push_back(kOp);
  }
  out.push_back(kOp);
  out += tail;
  return out;
}

DynamicRange dynamic_range(const Term& w, std::size_t d) {
  auto bounds = detail::locate_range(as_span(w.view()), d, is_op);
  if (!bounds) {
    throw NoDecomposition("no dynamic range at position " +
                          std::to_string(d) + " of " + w.str());
  }
  DynamicRange r;
  r.position = d;
  r.head = w.str().substr(0, bounds->region_begin());
  r.tail = w.str().substr(bounds->close + 1);
  for (std::size_t k = 0; k < bounds->begin.size(); ++k) {
    r.components.push_back(Term::from_valid(w.str().substr(
        bounds->begin[k], bounds->end[k] - bounds->begin[k])));
  }
  return r;
}

Term expand(Law law, const DynamicRange& range) {
  std::string out = range.head;
  detail::emit_expansion(
      law, range.arity(),
      [&](std::size_t k) { out += range.components[k].str(); },
      [&] { out.push_back(kOp); });
  out += range.tail;
  return Term::from_valid(std::move(out));
}

StepResult step(Law law, const Term& u, const Term& v) {
  const std::size_t d = first_difference(u.view(), v.view());
  if (d == kNoDifference) {
    throw std::invalid_argument("step: terms have no difference");
  }
  const bool expand_left = v[d] == kOp;
  const Term& src = expand_left ? u : v;
  DynamicRange r = dynamic_range(src, d);
  Term grown = expand(law, r);
  StepRecord rec{d, expand_left ? Side::Left : Side::Right, r.arity(),
                 r.arity() - 1};
  if (expand_left) return {std::move(grown), v, rec};
  return {u, std::move(grown), rec};
}

std::string_view to_string(RunStatus status) noexcept {
  switch (status) {
    case RunStatus::Terminated: return "Terminated";
    case RunStatus::StepLimit: return "StepLimit";
    case RunStatus::LengthLimit: return "LengthLimit";
  }
  return "?";
}

std::string_view to_string(Relation relation) noexcept {
  switch (relation) {
    case Relation::Equivalent: return "Equivalent";
    case Relation::LeftIsLeftFactor: return "LeftIsLeftFactor";
    case Relation::RightIsLeftFactor: return "RightIsLeftFactor";
    case Relation::Unresolved: return "Unresolved";
  }
  return "?";
}

std::string_view to_string(Side side) noexcept {
  return side == Side::Left ? "left" : "right";
}

Relation mirror(Relation relation) noexcept {
  switch (relation) {
    case Relation::LeftIsLeftFactor: return Relation::RightIsLeftFactor;
    case Relation::RightIsLeftFactor: return Relation::LeftIsLeftFactor;
    default: return relation;
  }
}

void write_trace(std::ostream& os, const Trace& trace) {
  std::size_t k = 0;
  for (const auto& e : trace.steps) {
    os << "Step " << k++ << ":\t" << e.left << ' ' << e.right
       << "\t(d = " << e.record.difference << ", dyn = ";
    for (std::size_t i = 0; i < e.components.size(); ++i) {
      if (i) os << ", ";
      os << e.components[i];
    }
    os << ")\n";
  }
  os << "Step " << k << ":\t" << trace.final_left << ' ' << trace.final_right
     << '\n';
}

RunResult run(Law law, const Term& u, const Term& v, RunLimits limits,
              bool want_trace, const StepObserver& observer) {
  RunResult res;
  std::string left = u.str();
  std::string right = v.str();
  std::string scratch;
  if (want_trace) res.trace.emplace();

  RunOutcome& out = res.outcome;
  std::size_t d = first_difference(left, right);
  for (;;) {
    if (d == kNoDifference) {
      out.status = RunStatus::Terminated;
      if (left == right) {
        out.relation = Relation::Equivalent;
      } else if (right.size() < left.size()) {
        out.relation = Relation::RightIsLeftFactor;
      } else {
        out.relation = Relation::LeftIsLeftFactor;
      }
      out.common_prefix = std::min(left.size(), right.size());
      break;
    }
    if (out.steps >= limits.max_steps) {
      out.status = RunStatus::StepLimit;
      out.common_prefix = d;
      break;
    }

    const bool expand_left = right[d] == kOp;
    std::string& src = expand_left ? left : right;
    auto bounds = detail::locate_range(as_span(src), d, is_op);
    if (!bounds) {
      throw NoDecomposition("run: no dynamic range at position " +
                            std::to_string(d));
    }
    scratch.clear();
    detail::append_expansion(law, as_span(src), *bounds, kOp, scratch);

    const std::uint64_t new_size =
        src.size() - bounds->region_size() + scratch.size();
    if (new_size > limits.max_length) {
      out.status = RunStatus::LengthLimit;
      out.common_prefix = d;
      break;
    }

    if (want_trace) {
      TraceEntry e;
      e.record = {d, expand_left ? Side::Left : Side::Right, bounds->arity(),
                  bounds->arity() - 1};
      for (std::size_t k = 0; k < bounds->begin.size(); ++k) {
        e.components.push_back(
            src.substr(bounds->begin[k], bounds->end[k] - bounds->begin[k]));
      }
      e.left = left;
      e.right = right;
      res.trace->steps.push_back(std::move(e));
    }

    src.replace(bounds->region_begin(), bounds->region_size(), scratch);
    ++out.steps;
    if (observer) observer(out.steps, left, right);
    // Both sides now agree through position d.
    d = first_difference(left, right, d + 1);
  }

  out.left_length = left.size();
  out.right_length = right.size();
  if (want_trace) {
    res.trace->final_left = left;
    res.trace->final_right = right;
  }
  res.final_left = std::move(left);
  res.final_right = std::move(right);
  return res;
}

std::optional<Term> apply_law_at(Law law, const Term& t, std::size_t p,
                                 Direction direction) {
  const std::string_view w = t.view();
  if (p >= w.size() || w[p] != kOp) return std::nullopt;

  auto piece = [&](SubtermSpan s) { return w.substr(s.start, s.size()); };
  // Children of the operation at `root`.
  auto children = [&](std::size_t root) {
    SubtermSpan right = subterm_ending_at(w, root - 1);
    SubtermSpan left = subterm_ending_at(w, right.start - 1);
    return std::pair{left, right};
  };

  const auto [l, r] = children(p);
  std::string out(w.substr(0, l.start));

  if (direction == Direction::Expand) {
    if (w[r.end] != kOp) return std::nullopt;
    const auto [bs, cs] = children(r.end);
    std::string_view a = piece(l), b = piece(bs), c = piece(cs);
    out += a;
    out += b;
    out.push_back(kOp);
    switch (law) {
      case Law::AC: out += a; out += c; break;
      case Law::BC: out += b; out += c; break;
      case Law::CA: out += c; out += a; break;
      case Law::CB: out += c; out += b; break;
      case Law::CC: out += c; out += c; break;
      case Law::AAC:
        out += a;
        out += a;
        out += c;
        out.push_back(kOp);
        break;
    }
    out.push_back(kOp);
    out.push_back(kOp);
  } else {
    if (w[l.end] != kOp || w[r.end] != kOp) return std::nullopt;
    const auto [as, bs] = children(l.end);
    const auto [x, y] = children(r.end);
    std::string_view a = piece(as), b = piece(bs);
    std::string_view px = piece(x), py = piece(y);
    std::string_view c;
    switch (law) {
      case Law::AC:
        if (px != a) return std::nullopt;
        c = py;
        break;
      case Law::BC:
        if (px != b) return std::nullopt;
        c = py;
        break;
      case Law::CA:
        if (py != a) return std::nullopt;
        c = px;
        break;
      case Law::CB:
        if (py != b) return std::nullopt;
        c = px;
        break;
      case Law::CC:
        if (px != py) return std::nullopt;
        c = px;
        break;
      case Law::AAC: {
        if (px != a || w[y.end] != kOp) return std::nullopt;
        const auto [ya, yc] = children(y.end);
        if (piece(ya) != a) return std::nullopt;
        c = piece(yc);
        break;
      }
    }
    out += a;
    out += b;
    out += c;
    out.push_back(kOp);
    out.push_back(kOp);
  }
  out += w.substr(p + 1);
  return Term::from_valid(std::move(out));
}

}  // namespace polish
