#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "polish/divergence.hpp"

using namespace polish;

namespace {

Term T(std::string_view s) { return Term::parse(s); }

const std::string a = "11010110";
const std::string b = "110010111001000";
const std::string c = "110001101100110110000";
const std::string d = "1100011001110010111001000";
const std::string z = "110001100110";

std::string pow(const std::string& s, std::size_t k) {
  std::string out;
  for (std::size_t i = 0; i < k; ++i) out += s;
  return out;
}

DivergenceWitness cc_witness() {
  DivergenceWitness w;
  w.law = Law::CC;
  w.left = T("11111001000");
  w.right = T("1101011110000");
  w.period = 3;
  w.m_min = 2;
  w.head = a;
  w.pump = z;
  w.phases = {
      {0, Side::Left, -2, d, {}},  {0, Side::Right, -1, c, {}},
      {1, Side::Left, -1, b, {}},  {1, Side::Right, -1, c, {}},
      {2, Side::Left, -1, d, {}},  {2, Side::Right, -1, c, {}},
  };
  return w;
}

const std::vector<std::pair<std::string, std::string>> kCcDivergent = {
    {"11111001000", "1101011110000"},   {"1111101001000", "1101011110000"},
    {"1111011001000", "1101011110000"}, {"1111100101000", "1101011110000"},
    {"1110111001000", "1101110110000"}, {"1110101101000", "1101111010000"},
    {"1110101101000", "1101101101000"}, {"1111100100100", "1101011110000"},
    {"1101011110000", "1111100100010"},
};

}  // namespace

TEST_CASE("right duplication pair follows the closed form") {
  // Direct comparison with a z^(m-1) b etc., no witness machinery.
  std::vector<std::pair<std::string, std::string>> seen{{"", ""}};
  run(Law::CC, T("11111001000"), T("1101011110000"), {40, 1 << 20}, false,
      [&](std::uint64_t, std::string_view l, std::string_view r) {
        seen.emplace_back(l, r);
      });
  REQUIRE(seen.size() == 41);
  for (std::size_t m = 2; 3 * m + 3 <= 40; ++m) {
    CHECK(seen[3 * m + 1].first == a + pow(z, m - 1) + b);
    CHECK(seen[3 * m + 1].second == a + pow(z, m - 1) + c);
    CHECK(seen[3 * m + 2].first == a + pow(z, m - 1) + d);
    CHECK(seen[3 * m + 2].second == a + pow(z, m - 1) + c);
    CHECK(seen[3 * m + 3].first == a + pow(z, m - 1) + d);
    CHECK(seen[3 * m + 3].second == a + pow(z, m) + c);
  }
}

TEST_CASE("hand-written witness verifies") {
  auto w = cc_witness();
  CHECK_NOTHROW(w.validate());
  CHECK(w.instantiate(w.phases[2], 4) == a + pow(z, 3) + b);
  auto rep = verify_witness(w, 50);
  CHECK(rep.verified);
  CHECK(rep.horizon == 50);
  CHECK_FALSE(rep.first_failing_step);
  CHECK(rep.phases.size() == 6);
  for (const auto& p : rep.phases) CHECK(p.passed);
}

TEST_CASE("structural checks") {
  auto w = cc_witness();
  w.pump = "1100011001101";  // weight 1
  CHECK_THROWS_AS(w.validate(), MalformedWitness);

  w = cc_witness();
  w.period = 0;
  CHECK_THROWS_AS(w.validate(), MalformedWitness);

  w = cc_witness();
  w.m_min = 0;  // exponent m - 2 would go negative
  CHECK_THROWS_AS(w.validate(), MalformedWitness);

  w = cc_witness();
  CHECK_THROWS_AS(w.instantiate(w.phases[0], 1), MalformedWitness);
}

TEST_CASE("a corrupted tail fails at the first templated step") {
  auto w = cc_witness();
  w.phases[2].tail = d;  // still a term, just the wrong one
  auto rep = verify_witness(w, 20);
  CHECK_FALSE(rep.verified);
  REQUIRE(rep.first_failing_step);
  CHECK(*rep.first_failing_step == 3 * 2 + 1);
  CHECK_FALSE(rep.phases[2].passed);
  CHECK(rep.phases[0].passed);
}

TEST_CASE("witness files round-trip") {
  for (const auto& w :
       {cc_witness(), *detect_pump(Law::AAC, T("1110100"), T("11010111000"))}) {
    std::ostringstream os;
    write_witness(os, w);
    std::istringstream is(os.str());
    CHECK(read_witness(is) == w);
  }

  std::istringstream bad("law CC\nleft 110\nright 11010\nperiod x\n");
  CHECK_THROWS_AS(read_witness(bad), MalformedWitness);
  std::istringstream unknown("law XY\n");
  CHECK_THROWS_AS(read_witness(unknown), MalformedWitness);
}

TEST_CASE("detection rediscovers the right duplication pump") {
  auto w = detect_pump(Law::CC, T("11111001000"), T("1101011110000"));
  REQUIRE(w);
  CHECK(w->period == 3);
  CHECK(w->pump == z);
  CHECK(w->head == a);
  CHECK(w->m_min <= 2);
  CHECK(verify_witness(*w, 50).verified);
  for (const auto& ph : w->phases) CHECK(ph.segments.empty());
  for (const auto& ph : cc_witness().phases) {
    bool found = false;
    for (const auto& got : w->phases) {
      if (got.residue == ph.residue && got.side == ph.side) {
        CHECK(got.tail == ph.tail);
        CHECK(got.exponent_offset == ph.exponent_offset);
        found = true;
      }
    }
    CHECK(found);
  }
}

TEST_CASE("all nine depth-7 right duplication pairs get witnesses") {
  for (const auto& [l, r] : kCcDivergent) {
    CAPTURE(l);
    CAPTURE(r);
    auto w = detect_pump(Law::CC, T(l), T(r));
    REQUIRE(w);
    CHECK(verify_witness(*w, 50).verified);
  }
}

TEST_CASE("aac pair needs several pumped blocks") {
  auto w = detect_pump(Law::AAC, T("1110100"), T("11010111000"));
  REQUIRE(w);
  CHECK_NOTHROW(w->validate());
  bool segmented = false;
  for (const auto& ph : w->phases) segmented |= !ph.segments.empty();
  CHECK(segmented);
  const std::size_t horizon = 2 * 50 / w->period;
  CHECK(verify_witness(*w, horizon).verified);
}

TEST_CASE("terminating pairs have no witness") {
  CHECK_FALSE(detect_pump(Law::AC, T("111011000"), T("110110100")));
  CHECK_FALSE(detect_pump(Law::CC, T("11100"), T("1101100")));
}

TEST_CASE("the ca pair has no simple pump") {
  DetectOptions o;
  o.warmup = 30;
  o.max_period = 8;
  CHECK_FALSE(
      detect_pump(Law::CA, T("1111101010000"), T("1101011101000"), o));
}
