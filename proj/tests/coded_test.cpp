#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "polish/coded.hpp"
#include "polish/rewrite.hpp"

using namespace polish;

namespace {

Term T(std::string_view s) { return Term::parse(s); }

CodeTable table_of(const std::vector<std::string>& codes) {
  CodeTable t;
  for (const auto& c : codes) t.add(parse_ids(c));
  return t;
}

// Substitutes every id >= 2 by its code, recursively, on strings.
std::string naive_decode(const IdSeq& ids, const CodeTable& t) {
  std::string out;
  for (SymbolId id : ids) {
    out += id < 2 ? std::string(1, static_cast<char>('0' + id))
                  : naive_decode(t.code(id), t);
  }
  return out;
}

}  // namespace

TEST_CASE("id rendering") {
  CHECK(render_ids({3, 1, 0, 1, 2, 0}) == "310120");
  CHECK(render_ids({10, 35, 36, 61, 62}) == "azAZ[62]");
  CHECK(parse_ids("azAZ[62]") == IdSeq{10, 35, 36, 61, 62});
  CHECK_THROWS_AS(parse_ids("1-0"), std::invalid_argument);
}

TEST_CASE("code table") {
  CodeTable t;
  CHECK(t.size() == 2);
  CHECK(t.code(0) == IdSeq{0});
  CHECK(t.code(1) == IdSeq{1});
  CHECK(t.real_length(1) == 1);
  CHECK(t.add({1, 1, 0}) == 2);
  CHECK(t.find({1, 1, 0}) == SymbolId{2});
  CHECK_FALSE(t.find({2, 1, 0}).has_value());
  CHECK_THROWS_AS(t.add({3, 1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(t.add({1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(t.code(7), UnknownId);
}

TEST_CASE("encoding example") {
  CodeTable t = table_of({"110", "220"});
  const IdSeq s = parse_ids("110201011100");
  CHECK(render_ids(encode(s, table_of({"110"}))) == "22010120");
  CHECK(render_ids(encode(s, t)) == "310120");
  CHECK(encode(parse_ids("11010111000"), CodeTable{}) == parse_ids("11010111000"));
  CHECK(encode(parse_ids("110"), table_of({"110"})) == IdSeq{2});
  CHECK_THROWS_AS(encode(IdSeq{5}, t), UnknownId);
}

TEST_CASE("decoding") {
  CodeTable t = table_of({"110", "220"});
  CHECK(decode_term(parse_ids("3"), t).str() == "1101100");
  CHECK(decode_term(parse_ids("32100"), t).str() == "1101100110100");
  CHECK(decode_term(parse_ids("1"), t).str() == "1");
  CHECK(decode_term(parse_ids("2"), t).str() == "110");
  CHECK(real_length(parse_ids("32100"), t) == 13);
}

TEST_CASE("real lengths of printed codes") {
  CodeTable t = table_of({"110", "210", "310", "440"});
  CHECK(t.real_length(2) == 3);
  CHECK(t.real_length(3) == 5);
  CHECK(t.real_length(4) == 7);
  CHECK(t.real_length(5) == 15);
}

TEST_CASE("worked example in coded form") {
  CodedRunState s = CodedRunState::start(T("111011000"), T("110110100"));
  std::vector<std::string> lefts, rights, news;
  while (first_difference(render_ids(s.left), render_ids(s.right)) !=
         kNoDifference) {
    CodedStepRecord rec = advance(s);
    lefts.push_back(render_ids(s.left));
    rights.push_back(render_ids(s.right));
    news.push_back(rec.new_code ? render_ids(s.table.code(*rec.new_code))
                                : "");
  }
  CHECK(lefts == std::vector<std::string>{"1101100111000", "2201200",
                                          "2202200", "22021021000",
                                          "32100321000"});
  CHECK(rights == std::vector<std::string>{"110110100", "2202100", "2202100",
                                           "2202100", "32100"});
  CHECK(news == std::vector<std::string>{"", "110", "", "", "220"});
  CHECK(s.steps == 5);

  auto res = coded_run(T("111011000"), T("110110100"));
  CHECK(res.outcome.steps == 5);
  CHECK(res.outcome.relation == Relation::RightIsLeftFactor);
  CHECK(res.outcome.left_length == 27);
  CHECK(res.outcome.right_length == 13);

  std::ostringstream os;
  write_code_report(os, res.state);
  CHECK(os.str() ==
        "Codes used:\n"
        "2 := 110 (code number 2) Real length: 3\n"
        "3 := 220 (code number 3) Real length: 7\n"
        "Resulting terms:\n"
        "Left: 32100321000\n"
        "Right: 32100\n"
        "Real length of resulting terms:\n"
        "Left: 27\n"
        "Right: 13\n");
}

TEST_CASE("coded_step leaves its input alone") {
  const CodedRunState s0 = CodedRunState::start(T("111011000"), T("110110100"));
  CodedRunState s1 = coded_step(s0);
  CHECK(s0.steps == 0);
  CHECK(s1.steps == 1);
  CHECK(render_ids(s1.left) == "1101100111000");
}

TEST_CASE("first heavy depth-8 pair reproduces the code listing") {
  auto res = coded_run(T("111010101110000"), T("110101011110000"));
  CHECK(res.outcome.status == RunStatus::Terminated);
  CHECK(res.outcome.steps == 473);
  CHECK(res.outcome.relation == Relation::RightIsLeftFactor);
  CHECK(res.outcome.left_length == 72823933);
  CHECK(res.outcome.right_length == 72823685);

  const std::vector<std::pair<std::string, std::string>> codes = {
      {"110", "3"},
      {"210", "5"},
      {"310", "7"},
      {"440", "15"},
      {"540", "23"},
      {"620", "27"},
      {"720", "31"},
      {"87100", "61"},
      {"97100971000971000", "275"},
      {"a7100", "305"},
      {"b6100b61000", "663"},
      {"cb200cb1000cb1000cb200cb1000cb10000cb200cb1000cb10000cb1000", "9725"},
      {"db0", "10031"},
      {"e90", "10093"},
      {"fe71000fe710000fe710000", "60467"},
      {"ge71000", "70529"},
      {"he61000he610000he2000he61000he610000he10000he61000he610000"
       "he10000he61000he610000he2000he61000he610000he10000he61000"
       "he610000he100000he61000he610000he2000he61000he610000he10000"
       "he61000he610000he100000he61000he610000he10000",
       "2417405"},
      {"ie61000ie610000", "4854927"},
  };
  const CodeTable& t = res.state.table;
  REQUIRE(t.size() == codes.size() + 2);
  for (std::size_t i = 0; i < codes.size(); ++i) {
    const auto id = static_cast<SymbolId>(i + 2);
    CHECK(render_ids(t.code(id)) == codes[i].first);
    CHECK(t.real_length(id).str() == codes[i].second);
  }
  CHECK(render_ids(res.state.right) ==
        "jie2000jie10000jie10000jie2000jie10000jie100000jie2000jie10000"
        "jie100000jie10000");
  CHECK(render_ids(res.state.left) ==
        "jie2000jie10000jie10000jie2000jie10000jie100000jie2000jie10000"
        "jie100000jie1000090861000864000864000");
}

TEST_CASE("second heavy depth-8 pair") {
  auto res = coded_run(T("111010101110000"), T("110101010111000"));
  CHECK(res.outcome.steps == 1831);
  CHECK(res.outcome.relation == Relation::RightIsLeftFactor);
  CHECK(res.outcome.left_length == BigCount("13728381775"));
  CHECK(res.outcome.right_length == 87441947);
}

TEST_CASE("coded limits") {
  auto res = coded_run(T("111010101110000"), T("110101011110000"), {100});
  CHECK(res.outcome.status == RunStatus::StepLimit);
  CHECK(res.outcome.steps == 100);
  res = coded_run(T("111010101110000"), T("110101011110000"), {10000, 5});
  CHECK(res.outcome.status == RunStatus::LengthLimit);
  CHECK(res.state.table.size() <= 5);
}

TEST_CASE("coded and plain runs agree on every depth <= 6 pair") {
  const auto terms = enumerate_universe(2, 6);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = i + 1; j < terms.size(); ++j) {
      std::vector<std::pair<std::string, std::string>> plain;
      auto p = run(Law::AC, terms[i], terms[j], {}, false,
                   [&](std::uint64_t, std::string_view l, std::string_view r) {
                     plain.emplace_back(l, r);
                   });
      std::size_t k = 0;
      bool same = true;
      auto c = coded_run(terms[i], terms[j], {}, [&](const CodedRunState& s,
                                                     const CodedStepRecord&) {
        REQUIRE(is_valid_coded(s.left));
        REQUIRE(is_valid_coded(s.right));
        if (k >= plain.size() ||
            decode_term(s.left, s.table).str() != plain[k].first ||
            decode_term(s.right, s.table).str() != plain[k].second) {
          same = false;
        }
        ++k;
      });
      CAPTURE(terms[i].str());
      CAPTURE(terms[j].str());
      REQUIRE(same);
      REQUIRE(c.outcome.steps == p.outcome.steps);
      REQUIRE(c.outcome.relation == p.outcome.relation);
      REQUIRE(c.outcome.left_length == p.outcome.left_length);
      REQUIRE(c.outcome.right_length == p.outcome.right_length);
    }
  }
}

TEST_CASE("tables stay consistent along long runs") {
  std::size_t checked = 0;
  coded_run(T("111010101110000"), T("110101011110000"), {},
            [&](const CodedRunState& s, const CodedStepRecord&) {
              if (s.steps % 50 != 0) return;
              const CodeTable& t = s.table;
              for (SymbolId k = 2; k < t.size(); ++k) {
                for (SymbolId id : t.code(k)) REQUIRE(id < k);
                const Term d = decode_term(t.code(k), t);
                REQUIRE(t.real_length(k) == d.length());
                REQUIRE(d.str() == naive_decode(t.code(k), t));
              }
              if (real_length(s.right, t) <= 1'000'000) {
                REQUIRE(real_length(s.right, t) ==
                        decode_full(s.right, t).size());
              }
              ++checked;
            });
  CHECK(checked > 5);
}

TEST_CASE("encode then decode is the identity") {
  // Tables grown by real runs; any id sequence over {0, 1} round-trips.
  auto res = coded_run(T("111010101110000"), T("110101011110000"), {120});
  const CodeTable& t = res.state.table;
  for (const Term& w : enumerate_universe(1, 7)) {
    const IdSeq raw = ids_from_term(w);
    const IdSeq enc = encode(raw, t);
    REQUIRE(decode_full(enc, t) == raw);
    REQUIRE(encode(enc, t) == enc);
  }
}
