#include "polish/divergence.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

namespace polish {

namespace {

long block_weight(std::string_view s) noexcept {
  long w = 0;
  for (char c : s) w += weight(c);
  return w;
}

bool is_binary(std::string_view s) noexcept {
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return c == kVar || c == kOp; });
}

std::size_t common_prefix(std::string_view a, std::string_view b) noexcept {
  std::size_t n = std::min(a.size(), b.size());
  return static_cast<std::size_t>(
      std::mismatch(a.begin(), a.begin() + n, b.begin()).first - a.begin());
}

}  // namespace

std::string DivergenceWitness::instantiate(const WitnessPhase& phase,
                                           std::size_t m) const {
  auto append = [&](std::string& out, const std::string& block, long offset) {
    const long copies = static_cast<long>(m) + offset;
    if (copies < 0) {
      throw MalformedWitness("negative pump exponent at m = " +
                             std::to_string(m));
    }
    for (long j = 0; j < copies; ++j) out += block;
  };
  std::string out = head;
  append(out, pump, phase.exponent_offset);
  out += phase.tail;
  for (const auto& seg : phase.segments) {
    append(out, seg.pump, seg.exponent_offset);
    out += seg.tail;
  }
  return out;
}

void DivergenceWitness::validate() const {
  if (period == 0) throw MalformedWitness("period must be positive");
  if (pump.empty()) throw MalformedWitness("empty pump");
  if (!is_binary(head) || !is_binary(pump)) {
    throw MalformedWitness("head and pump must be 01 strings");
  }
  if (phases.size() != 2 * period) {
    throw MalformedWitness("expected one phase per residue and side");
  }
  std::map<std::pair<std::size_t, Side>, int> seen;
  for (const auto& ph : phases) {
    if (ph.residue >= period) throw MalformedWitness("residue out of range");
    if (!is_binary(ph.tail)) throw MalformedWitness("tail must be 01");
    long total = block_weight(pump);
    for (const auto& seg : ph.segments) total += block_weight(seg.pump);
    if (total != 0) {
      throw MalformedWitness("pump weight is " + std::to_string(total) +
                             ", not 0");
    }
    for (const auto& seg : ph.segments) {
      if (seg.pump.empty() || !is_binary(seg.pump) || !is_binary(seg.tail)) {
        throw MalformedWitness("segment needs a 01 pump and a 01 tail");
      }
      if (static_cast<long>(m_min) + seg.exponent_offset < 0) {
        throw MalformedWitness("negative pump exponent at m_min");
      }
    }
    if (++seen[{ph.residue, ph.side}] > 1) {
      throw MalformedWitness("duplicate phase");
    }
    if (static_cast<long>(m_min) + ph.exponent_offset < 0) {
      throw MalformedWitness("negative pump exponent at m_min");
    }
    if (!is_valid_term(instantiate(ph, m_min))) {
      throw MalformedWitness("phase " + std::to_string(ph.residue) + "/" +
                             std::string(to_string(ph.side)) +
                             " does not instantiate to a term");
    }
  }
}

WitnessReport verify_witness(const DivergenceWitness& w, std::size_t horizon) {
  w.validate();
  WitnessReport rep;
  rep.horizon = horizon;
  for (const auto& ph : w.phases) rep.phases.push_back({ph, true});

  auto check = [&](std::uint64_t n, std::string_view left,
                   std::string_view right) {
    const std::size_t m = n / w.period;
    const std::size_t r = n % w.period;
    if (m < w.m_min || m > horizon) return;
    for (auto& pc : rep.phases) {
      if (pc.phase.residue != r) continue;
      std::string_view actual = pc.phase.side == Side::Left ? left : right;
      if (actual != w.instantiate(pc.phase, m)) {
        pc.passed = false;
        if (!rep.first_failing_step) rep.first_failing_step = n;
      }
    }
  };

  check(0, w.left.view(), w.right.view());
  const std::uint64_t last_step = w.period * (horizon + 1) - 1;
  RunResult res = run(w.law, w.left, w.right,
                      {last_step, std::uint64_t{1} << 32}, false, check);
  if (res.outcome.status != RunStatus::StepLimit) {
    rep.run_stopped = res.outcome.status;
  }

  rep.verified = !rep.run_stopped && !rep.first_failing_step;
  return rep;
}

namespace {

/// Consecutive samples t_0, t_1, ... of one phase, t_j taken at m = m0 + j.
struct Sample {
  std::size_t residue = 0;
  Side side = Side::Left;
  std::size_t m0 = 0;
  std::vector<std::string_view> terms;
};

/// Shared lead, then per sample: exponent offset, tail and further segments.
struct Decomposition {
  std::string lead;
  std::string pump;
  std::vector<long> offsets;
  std::vector<std::string> tails;
  std::vector<std::vector<PumpSegment>> segments;
};

std::optional<std::size_t> growth(const Sample& s) {
  if (s.terms.size() < 3) return std::nullopt;
  const auto g = static_cast<long>(s.terms[1].size()) -
                 static_cast<long>(s.terms[0].size());
  if (g < 0) return std::nullopt;
  for (std::size_t j = 2; j < s.terms.size(); ++j) {
    if (static_cast<long>(s.terms[j].size()) -
            static_cast<long>(s.terms[j - 1].size()) !=
        g) {
      return std::nullopt;
    }
  }
  return static_cast<std::size_t>(g);
}

struct Alignment {
  std::size_t lead = 0;
  std::vector<long> offsets;
  std::vector<std::vector<std::string_view>> rests;
};

std::optional<Decomposition> decompose(const std::vector<Sample>& samples);

/// Splits every sample as lead pump^(k + j) rest_j with lead and pump shared;
/// the rests must shrink to constant strings or decompose further.
std::optional<Decomposition> decompose_with(
    const std::vector<Sample>& samples, const std::vector<std::size_t>& grow,
    std::size_t g) {
  std::size_t prefix = samples[0].terms[0].size();
  for (const auto& s : samples) {
    for (auto t : s.terms) {
      prefix = std::min(prefix, common_prefix(samples[0].terms[0], t));
    }
  }

  std::vector<Alignment> found;
  for (std::size_t h = 0; h <= prefix; ++h) {
    if (h + g > samples[0].terms[1].size()) break;
    std::string_view pump = samples[0].terms[1].substr(h, g);
    Alignment al{h, {}, {}};
    bool ok = true;
    for (std::size_t i = 0; i < samples.size() && ok; ++i) {
      const auto& s = samples[i];
      std::size_t k = 0;
      while (s.terms[0].substr(h + k * g, g) == pump) ++k;
      std::vector<std::string_view> rest;
      for (std::size_t j = 0; j < s.terms.size() && ok; ++j) {
        std::string_view t = s.terms[j];
        const std::size_t end = h + (k + j) * g;
        if (t.size() < end) {
          ok = false;
          break;
        }
        for (std::size_t c = 0; c < k + j && ok; ++c) {
          ok = t.substr(h + c * g, g) == pump;
        }
        rest.push_back(t.substr(end));
      }
      if (ok && grow[i] == g) {
        ok = std::all_of(rest.begin(), rest.end(),
                         [&](std::string_view r) { return r == rest[0]; });
      }
      al.offsets.push_back(static_cast<long>(k) - static_cast<long>(s.m0));
      al.rests.push_back(std::move(rest));
    }
    if (ok) found.push_back(std::move(al));
  }
  if (found.empty()) return std::nullopt;

  // Alignments one pump length apart describe the same decomposition. Within
  // the first such window, prefer the start of the longest run of consecutive
  // offsets sharing the same exponent offsets.
  const std::size_t first = found.front().lead;
  std::size_t window = 0, chosen = 0, run_start = 0, best = 0;
  for (; window < found.size() && found[window].lead < first + g; ++window) {
    const std::size_t i = window;
    if (i > 0 && (found[i].lead != found[i - 1].lead + 1 ||
                  found[i].offsets != found[i - 1].offsets)) {
      run_start = i;
    }
    if (i - run_start + 1 > best) {
      best = i - run_start + 1;
      chosen = run_start;
    }
  }
  std::vector<std::size_t> order{chosen};
  for (std::size_t i = 0; i < window; ++i) {
    if (i != chosen) order.push_back(i);
  }

  for (std::size_t i : order) {
    const Alignment& al = found[i];
    Decomposition d;
    d.lead = std::string(samples[0].terms[0].substr(0, al.lead));
    d.pump = std::string(samples[0].terms[1].substr(al.lead, g));
    d.offsets = al.offsets;
    bool ok = true;
    for (std::size_t s = 0; s < samples.size() && ok; ++s) {
      if (grow[s] == g) {
        d.tails.emplace_back(al.rests[s][0]);
        d.segments.emplace_back();
        continue;
      }
      Sample inner{samples[s].residue, samples[s].side, samples[s].m0,
                   al.rests[s]};
      auto sub = decompose({inner});
      if (!sub) {
        ok = false;
        break;
      }
      d.tails.push_back(sub->lead);
      std::vector<PumpSegment> segs{
          {sub->pump, sub->offsets[0], sub->tails[0]}};
      segs.insert(segs.end(), sub->segments[0].begin(),
                  sub->segments[0].end());
      d.segments.push_back(std::move(segs));
    }
    if (ok) return d;
  }
  return std::nullopt;
}

std::optional<Decomposition> decompose(const std::vector<Sample>& samples) {
  std::vector<std::size_t> grow;
  for (const auto& s : samples) {
    auto g = growth(s);
    if (!g || *g == 0) return std::nullopt;
    grow.push_back(*g);
  }
  const std::size_t smallest = *std::min_element(grow.begin(), grow.end());
  for (std::size_t g = 1; g <= smallest; ++g) {
    if (auto d = decompose_with(samples, grow, g)) return d;
  }
  return std::nullopt;
}

}  // namespace

std::optional<DivergenceWitness> detect_pump(Law law, const Term& u,
                                             const Term& v,
                                             DetectOptions options) {
  const std::size_t total =
      options.warmup + (options.confirm_periods + 1) * options.max_period;
  std::vector<std::string> lefts{u.str()}, rights{v.str()};
  RunResult res = run(law, u, v, {total, options.max_length}, false,
                      [&](std::uint64_t, std::string_view l,
                          std::string_view r) {
                        lefts.emplace_back(l);
                        rights.emplace_back(r);
                      });
  if (res.outcome.status != RunStatus::StepLimit) return std::nullopt;

  const std::size_t warm = options.warmup;
  for (std::size_t p = 1; p <= options.max_period; ++p) {
    std::vector<Sample> samples;
    for (std::size_t r = 0; r < p; ++r) {
      const std::size_t m0 = warm <= r ? 0 : (warm - r + p - 1) / p;
      for (Side side : {Side::Left, Side::Right}) {
        Sample s{r, side, m0, {}};
        const auto& seq = side == Side::Left ? lefts : rights;
        for (std::size_t m = m0; p * m + r <= total; ++m) {
          s.terms.push_back(seq[p * m + r]);
        }
        samples.push_back(std::move(s));
      }
    }
    auto d = decompose(samples);
    if (!d) continue;

    DivergenceWitness w;
    w.law = law;
    w.left = u;
    w.right = v;
    w.period = p;
    w.head = d->lead;
    w.pump = d->pump;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      w.phases.push_back({samples[i].residue, samples[i].side, d->offsets[i],
                          d->tails[i], d->segments[i]});
    }
    std::sort(w.phases.begin(), w.phases.end(), [](const auto& a, const auto& b) {
      return std::pair(a.residue, a.side) < std::pair(b.residue, b.side);
    });

    // Earliest m from which every phase follows its template.
    std::size_t m_min = 0;
    for (const auto& s : samples) m_min = std::max(m_min, s.m0);
    auto holds_at = [&](std::size_t m) {
      for (const auto& ph : w.phases) {
        const auto& seq = ph.side == Side::Left ? lefts : rights;
        try {
          if (seq[p * m + ph.residue] != w.instantiate(ph, m)) return false;
        } catch (const MalformedWitness&) {
          return false;
        }
      }
      return true;
    };
    while (m_min > 0 && holds_at(m_min - 1)) --m_min;
    w.m_min = m_min;

    const std::size_t confirmed = total / p;
    try {
      if (!verify_witness(w, 2 * confirmed).verified) continue;
    } catch (const MalformedWitness&) {
      continue;
    }
    return w;
  }
  return std::nullopt;
}

void write_witness(std::ostream& os, const DivergenceWitness& w) {
  os << "# divergence witness (empirical certificate)\n"
     << "law " << law_name(w.law) << '\n'
     << "left " << w.left.str() << '\n'
     << "right " << w.right.str() << '\n'
     << "period " << w.period << '\n'
     << "m_min " << w.m_min << '\n'
     << "head " << (w.head.empty() ? "-" : w.head) << '\n'
     << "pump " << w.pump << '\n';
  for (const auto& ph : w.phases) {
    os << "phase " << ph.residue << ' ' << to_string(ph.side) << ' '
       << ph.exponent_offset << ' ' << (ph.tail.empty() ? "-" : ph.tail);
    for (const auto& seg : ph.segments) {
      os << ' ' << seg.pump << ' ' << seg.exponent_offset << ' '
         << (seg.tail.empty() ? "-" : seg.tail);
    }
    os << '\n';
  }
}

DivergenceWitness read_witness(std::istream& is) {
  DivergenceWitness w;
  bool have_law = false, have_left = false, have_right = false;
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw MalformedWitness("line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "law") {
      std::string name;
      ls >> name;
      auto law = parse_law(name);
      if (!law) fail("unknown law '" + name + "'");
      w.law = *law;
      have_law = true;
    } else if (key == "left" || key == "right") {
      std::string text;
      ls >> text;
      try {
        (key == "left" ? w.left : w.right) = Term::parse(text);
      } catch (const ParseError& e) {
        fail(e.what());
      }
      (key == "left" ? have_left : have_right) = true;
    } else if (key == "period") {
      if (!(ls >> w.period)) fail("bad period");
    } else if (key == "m_min") {
      if (!(ls >> w.m_min)) fail("bad m_min");
    } else if (key == "head") {
      ls >> w.head;
      if (w.head == "-") w.head.clear();
    } else if (key == "pump") {
      ls >> w.pump;
    } else if (key == "phase") {
      WitnessPhase ph;
      std::string side;
      if (!(ls >> ph.residue >> side >> ph.exponent_offset >> ph.tail)) {
        fail("phase needs: residue side exponent_offset tail");
      }
      if (side == "left") {
        ph.side = Side::Left;
      } else if (side == "right") {
        ph.side = Side::Right;
      } else {
        fail("side must be left or right");
      }
      if (ph.tail == "-") ph.tail.clear();
      PumpSegment seg;
      while (ls >> seg.pump) {
        if (!(ls >> seg.exponent_offset >> seg.tail)) {
          fail("segment needs: pump exponent_offset tail");
        }
        if (seg.tail == "-") seg.tail.clear();
        ph.segments.push_back(seg);
      }
      w.phases.push_back(std::move(ph));
    } else {
      fail("unknown key '" + key + "'");
    }
  }
  if (!have_law || !have_left || !have_right) {
    throw MalformedWitness("witness needs law, left and right");
  }
  std::sort(w.phases.begin(), w.phases.end(), [](const auto& a, const auto& b) {
    return std::pair(a.residue, a.side) < std::pair(b.residue, b.side);
  });
  w.validate();
  return w;
}

}  // namespace polish
