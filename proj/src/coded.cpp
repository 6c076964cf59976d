#include "polish/coded.hpp"

#include <algorithm>
#include <ostream>

#include "polish/detail/expansion.hpp"

namespace polish {

namespace {

constexpr bool is_op_id(SymbolId id) noexcept { return id == 0; }

std::size_t id_difference(const IdSeq& u, const IdSeq& v) noexcept {
  const std::size_t n = std::min(u.size(), v.size());
  auto [a, b] = std::mismatch(u.begin(), u.begin() + n, v.begin());
  if (a == u.begin() + n) return kNoDifference;
  return static_cast<std::size_t>(a - u.begin());
}

void check_ids(const IdSeq& s, std::size_t table_size) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] >= table_size) {
      throw UnknownId("id " + std::to_string(s[i]) + " at index " +
                      std::to_string(i) + " is not in the code table");
    }
  }
}

}  // namespace

CodeTable::CodeTable() {
  codes_ = {IdSeq{0}, IdSeq{1}};
  lengths_ = {BigCount(1), BigCount(1)};
}

const IdSeq& CodeTable::code(SymbolId id) const {
  if (id >= codes_.size()) throw UnknownId("no code " + std::to_string(id));
  return codes_[id];
}

const BigCount& CodeTable::real_length(SymbolId id) const {
  if (id >= codes_.size()) throw UnknownId("no code " + std::to_string(id));
  return lengths_[id];
}

SymbolId CodeTable::add(IdSeq code) {
  const auto k = static_cast<SymbolId>(codes_.size());
  if (code.empty()) throw std::invalid_argument("empty code");
  for (SymbolId id : code) {
    if (id >= k) {
      throw std::invalid_argument("code " + std::to_string(k) +
                                  " refers to id " + std::to_string(id));
    }
  }
  if (!is_valid_coded(code)) {
    throw std::invalid_argument("code " + std::to_string(k) +
                                " does not decode to a term");
  }
  BigCount len = 0;
  for (SymbolId id : code) len += lengths_[id];
  index_.emplace(code, k);
  codes_.push_back(std::move(code));
  lengths_.push_back(std::move(len));
  return k;
}

std::optional<SymbolId> CodeTable::find(const IdSeq& code) const {
  auto it = index_.find(code);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool is_valid_coded(const IdSeq& ids) noexcept {
  if (ids.empty()) return false;
  long w = 0;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    w += is_op_id(ids[i]) ? -1 : 1;
    if (i + 1 < ids.size() && w < 1) return false;
  }
  return w == 1;
}

IdSeq encode(const IdSeq& s, const CodeTable& table) {
  check_ids(s, table.size());
  IdSeq cur = s;
  IdSeq next;
  for (SymbolId i = 2; i < table.size(); ++i) {
    const IdSeq& c = table.code(i);
    if (c.size() > cur.size()) continue;
    next.clear();
    next.reserve(cur.size());
    std::size_t pos = 0;
    while (pos < cur.size()) {
      if (cur[pos] == c[0] && pos + c.size() <= cur.size() &&
          std::equal(c.begin() + 1, c.end(), cur.begin() + pos + 1)) {
        next.push_back(i);
        pos += c.size();
      } else {
        next.push_back(cur[pos++]);
      }
    }
    cur.swap(next);
  }
  return cur;
}

IdSeq decode_full(const IdSeq& ids, const CodeTable& table) {
  check_ids(ids, table.size());
  IdSeq out;
  // Explicit stack of (code, next index) frames.
  std::vector<std::pair<const IdSeq*, std::size_t>> stack{{&ids, 0}};
  while (!stack.empty()) {
    auto& [seq, pos] = stack.back();
    if (pos == seq->size()) {
      stack.pop_back();
      continue;
    }
    SymbolId id = (*seq)[pos++];
    if (id <= 1) {
      out.push_back(id);
    } else {
      stack.emplace_back(&table.code(id), 0);
    }
  }
  return out;
}

Term decode_term(const IdSeq& ids, const CodeTable& table) {
  IdSeq raw = decode_full(ids, table);
  std::string s(raw.size(), kOp);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] == 1) s[i] = kVar;
  }
  return Term::parse(s);
}

BigCount real_length(const IdSeq& ids, const CodeTable& table) {
  BigCount len = 0;
  for (SymbolId id : ids) len += table.real_length(id);
  return len;
}

IdSeq ids_from_term(const Term& t) {
  IdSeq out(t.length());
  for (std::size_t i = 0; i < t.length(); ++i) out[i] = t[i] == kVar ? 1 : 0;
  return out;
}

std::string render_ids(const IdSeq& ids) {
  static constexpr std::string_view digits =
      "0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";
  std::string out;
  out.reserve(ids.size());
  for (SymbolId id : ids) {
    if (id < digits.size()) {
      out.push_back(digits[id]);
    } else {
      out += '[' + std::to_string(id) + ']';
    }
  }
  return out;
}

IdSeq parse_ids(std::string_view text) {
  IdSeq out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c >= '0' && c <= '9') {
      out.push_back(static_cast<SymbolId>(c - '0'));
    } else if (c >= 'a' && c <= 'z') {
      out.push_back(static_cast<SymbolId>(c - 'a' + 10));
    } else if (c >= 'A' && c <= 'Z') {
      out.push_back(static_cast<SymbolId>(c - 'A' + 36));
    } else if (c == '[') {
      auto close = text.find(']', i);
      if (close == std::string_view::npos || close == i + 1) {
        throw std::invalid_argument("unterminated id at index " +
                                    std::to_string(i));
      }
      out.push_back(static_cast<SymbolId>(
          std::stoul(std::string(text.substr(i + 1, close - i - 1)))));
      i = close;
    } else if (c == ' ') {
      continue;
    } else {
      throw std::invalid_argument("illegal id character '" +
                                  std::string(1, c) + "'");
    }
  }
  return out;
}

CodedRunState CodedRunState::start(const Term& u, const Term& v) {
  return {ids_from_term(u), ids_from_term(v), CodeTable{}, 0};
}

namespace {

/// Locates the first difference, decoding single positions while both sides
/// carry different variable-like ids there.
std::size_t resolve_difference(CodedRunState& s, std::size_t& decodes) {
  for (;;) {
    const std::size_t d = id_difference(s.left, s.right);
    if (d == kNoDifference) return d;
    const SymbolId a = s.left[d];
    const SymbolId b = s.right[d];
    if (a == 0 || b == 0) return d;
    IdSeq& side = a < b ? s.right : s.left;
    const IdSeq& code = s.table.code(std::max(a, b));
    side.erase(side.begin() + static_cast<std::ptrdiff_t>(d));
    side.insert(side.begin() + static_cast<std::ptrdiff_t>(d), code.begin(),
                code.end());
    ++decodes;
  }
}

CodedStepRecord expand_at(CodedRunState& s, std::size_t d,
                          std::size_t decodes) {
  const bool expand_left = s.right[d] == 0;
  IdSeq& src = expand_left ? s.left : s.right;
  std::span<const SymbolId> view(src);
  auto bounds = detail::locate_range(view, d, is_op_id);
  if (!bounds) {
    throw NoDecomposition("coded step: no dynamic range at position " +
                          std::to_string(d));
  }

  CodedStepRecord rec;
  rec.decodes = decodes;
  rec.step = {d, expand_left ? Side::Left : Side::Right, bounds->arity(),
              bounds->arity() - 1};

  IdSeq u0(src.begin() + bounds->begin[0], src.begin() + bounds->end[0]);
  IdSeq grown;
  grown.reserve(src.size() + bounds->arity() * (u0.size() + 1));
  grown.insert(grown.end(), src.begin(), src.begin() + bounds->region_begin());
  detail::append_expansion(Law::AC, view, *bounds, SymbolId{0}, grown);
  grown.insert(grown.end(), src.begin() + bounds->close + 1, src.end());
  src.swap(grown);

  if (u0.size() > 1 && !s.table.find(u0)) {
    rec.new_code = s.table.add(std::move(u0));
  }
  s.left = encode(s.left, s.table);
  s.right = encode(s.right, s.table);
  ++s.steps;
  return rec;
}

}  // namespace

CodedStepRecord advance(CodedRunState& state) {
  std::size_t decodes = 0;
  const std::size_t d = resolve_difference(state, decodes);
  if (d == kNoDifference) {
    throw std::invalid_argument("coded step: sides have no difference");
  }
  return expand_at(state, d, decodes);
}

CodedRunState coded_step(CodedRunState state) {
  advance(state);
  return state;
}

CodedRunResult coded_run(const Term& u, const Term& v, CodedLimits limits,
                         const CodedObserver& observer) {
  CodedRunResult res{RunOutcome{}, CodedRunState::start(u, v)};
  CodedRunState& s = res.state;
  RunOutcome& out = res.outcome;

  for (;;) {
    std::size_t decodes = 0;
    const std::size_t d = resolve_difference(s, decodes);
    if (d == kNoDifference) {
      out.status = RunStatus::Terminated;
      if (s.left == s.right) {
        out.relation = Relation::Equivalent;
      } else if (s.right.size() < s.left.size()) {
        out.relation = Relation::RightIsLeftFactor;
      } else {
        out.relation = Relation::LeftIsLeftFactor;
      }
      break;
    }
    if (s.steps >= limits.max_steps) {
      out.status = RunStatus::StepLimit;
      out.common_prefix =
          real_length(IdSeq(s.left.begin(), s.left.begin() + d), s.table);
      break;
    }
    if (s.table.size() >= limits.max_ids) {
      out.status = RunStatus::LengthLimit;
      out.common_prefix =
          real_length(IdSeq(s.left.begin(), s.left.begin() + d), s.table);
      break;
    }
    CodedStepRecord rec = expand_at(s, d, decodes);
    if (observer) observer(s, rec);
  }

  out.steps = s.steps;
  out.left_length = real_length(s.left, s.table);
  out.right_length = real_length(s.right, s.table);
  if (out.status == RunStatus::Terminated) {
    out.common_prefix = std::min(out.left_length, out.right_length);
  }
  return res;
}

void write_code_report(std::ostream& os, const CodedRunState& state) {
  const CodeTable& t = state.table;
  os << "Codes used:\n";
  for (SymbolId k = 2; k < t.size(); ++k) {
    os << render_ids({k}) << " := " << render_ids(t.code(k))
       << " (code number " << k << ") Real length: " << t.real_length(k)
       << '\n';
  }
  os << "Resulting terms:\n"
     << "Left: " << render_ids(state.left) << '\n'
     << "Right: " << render_ids(state.right) << '\n'
     << "Real length of resulting terms:\n"
     << "Left: " << real_length(state.left, t) << '\n'
     << "Right: " << real_length(state.right, t) << '\n';
}

}  // namespace polish
