#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "blochlu/bloch.hpp"
#include "blochlu/words.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace blochlu;
using namespace blochlu::testutil;

namespace {

std::string canon(const std::string& text) { return parse_word(text).str(); }

const OrbitSet& family(const std::vector<OrbitSet>& sets,
                       const std::string& label) {
  for (const auto& s : sets)
    if (s.label == label) return s;
  FAIL("missing family " << label);
  return sets.front();
}

bool contains_word(const OrbitSet& set, const std::string& text) {
  Word w = parse_word(text);
  return std::find(set.words.begin(), set.words.end(), w) != set.words.end();
}

}  // namespace

TEST_CASE("canonical strings: transposes, powers, bipartite folds") {
  CHECK(canon("T12 T2") == "T12 T2");
  CHECK(canon("T21 T1") == "T12' T1");  // rows on qubit 2 print primed
  CHECK(canon("T12 T21 T1") == "(T12 T12')^1 T1");
  CHECK(canon("T12 T21 T12 T21 T1") == "(T12 T12')^2 T1");
  CHECK(canon("T1|23' T1") == "T1|23' T1");
  CHECK(canon("(T12 T12')^0 T1") == "T1");  // zero power collapses
  CHECK(canon("T1 T2") == "T1 T2");         // outer product of runs
  CHECK(canon("[(T23 T23')^1 T23]") == "[(T23 T23')^1 T23]");
}

TEST_CASE("admissibility checks junctions and run overlap") {
  CHECK(admissible(parse_word("T12 T21 T1")));
  CHECK(admissible(parse_word("T1 T2")));

  expect_code(ErrorCode::ParseError, [] { parse_word("T12 T12 T2"); });
  try {
    parse_word("T12 T12 T2");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("junction 2") != std::string::npos);
  }

  // Outer product of runs with the same target cannot be formed.
  expect_code(ErrorCode::ParseError, [] { parse_word("T1 T12 T2"); });

  Word clash;
  clash.runs = {Run{{}, 0b01u, {}}, Run{{}, 0b01u, {}}};
  CHECK_FALSE(admissible(clash));
  CHECK(check_word(clash).has_value());
}

TEST_CASE("parse rejects malformed text with positions") {
  for (const char* bad :
       {"", "T0", "T11", "T1|1", "T1|", "(T12 T2", "T12)", "T12^2", "X1",
        "[T12 T2]", "(T12 T12')^99999 T1"})
    expect_code(ErrorCode::ParseError, [&] { parse_word(bad); });
}

TEST_CASE("constructors and targets") {
  Word v = vec_word(0b110u);
  CHECK(v.target() == 0b110u);
  CHECK(v.str() == "T23");

  Word c = chain_word({Atom{0b11u, 0b01u}}, 0b10u);
  CHECK(c.target() == 0b01u);  // T12 maps qubit 2 data into qubit 1 space
  CHECK(c.str() == "T12 T2");
}

TEST_CASE("two-qubit orbit families") {
  auto sets = two_qubit_orbits();
  REQUIRE(sets.size() == 2);
  const OrbitSet& o1 = family(sets, "O1");
  const OrbitSet& o2 = family(sets, "O2");
  CHECK(o1.target == 0b01u);
  CHECK(o2.target == 0b10u);
  CHECK(o1.words.size() == 6);
  CHECK(o2.words.size() == 6);
  CHECK(contains_word(o1, "T1"));
  CHECK(contains_word(o1, "(T12 T12')^2 T12 T2"));
  CHECK(contains_word(o2, "(T12' T12)^1 T2"));
  for (const auto& w : o1.words) CHECK(w.target() == 0b01u);
}

TEST_CASE("three-qubit orbit families") {
  auto sets = three_qubit_orbits();
  REQUIRE(sets.size() == 6);
  for (const char* label : {"O1|23", "O2|13", "O3|12"})
    CHECK(family(sets, label).words.size() == 15);
  for (const char* label : {"O23|1", "O13|2", "O12|3"})
    CHECK(family(sets, label).words.size() == 45);

  CHECK(contains_word(family(sets, "O1|23"), "(T1|23 T1|23')^1 T1"));
  CHECK(contains_word(family(sets, "O1|23"), "T1|23 [(T23 T23')^2 T23]"));
  CHECK(contains_word(family(sets, "O23|1"), "T1|23' T1"));
  CHECK(contains_word(family(sets, "O23|1"), "(T1|23' T1|23)^8 T23"));
  CHECK(family(sets, "O23|1").target == 0b110u);
}

TEST_CASE("four-qubit families") {
  auto sets = four_qubit_families();
  REQUIRE(sets.size() == 8);
  CHECK(family(sets, "O1|234").words.size() == 6);
  CHECK(family(sets, "O234|1").words.size() == 54);
  CHECK(contains_word(family(sets, "O1|234"), "(T1|234 T1|234')^2 T1"));
}

TEST_CASE("parse round-trips every family word") {
  for (const auto& sets :
       {two_qubit_orbits(), three_qubit_orbits(), four_qubit_families()})
    for (const auto& set : sets)
      for (const auto& w : set.words) {
        Word back = parse_word(w.str());
        CHECK(back == w);
        CHECK(back.str() == w.str());
      }
}

TEST_CASE("enumerate_words reproduces the single-index family") {
  auto listed = enumerate_words(2, {1});
  auto sets = two_qubit_orbits();
  const OrbitSet& o1 = family(sets, "O1");
  REQUIRE(listed.size() == o1.words.size());
  std::set<std::string> a, b;
  for (const auto& w : listed) a.insert(w.str());
  for (const auto& w : o1.words) b.insert(w.str());
  CHECK(a == b);
}

TEST_CASE("enumerate_words builds outer-product words for index pairs") {
  auto listed = enumerate_words(3, {3, 1});
  std::set<std::string> strs;
  for (const auto& w : listed) {
    CHECK(w.target() == 0b101u);
    CHECK(admissible(w));
    strs.insert(w.str());
  }
  CHECK(strs.size() == listed.size());  // deduplicated
  CHECK(strs.count("T3|12 T12 T1") == 1);
  CHECK(std::is_sorted(strs.begin(), strs.end()));

  expect_code(ErrorCode::UnsupportedQubitCount,
              [] { enumerate_words(5, {1}); });
  expect_code(ErrorCode::BadPartition, [] { enumerate_words(2, {1, 2}); });
  expect_code(ErrorCode::BadPartition, [] { enumerate_words(3, {}); });
}

TEST_CASE("evaluate_word on |00>") {
  BlochTensors t = extract_tensors(pure_state_density(basis_state(2, 0)));

  RVector v1 = evaluate_word(parse_word("T1"), t);
  CHECK((v1 - Eigen::Vector3d(0, 0, 0.25)).cwiseAbs().maxCoeff() < 1e-15);

  RVector v2 = evaluate_word(parse_word("T12 T2"), t);
  CHECK((v2 - Eigen::Vector3d(0, 0, 1.0 / 16)).cwiseAbs().maxCoeff() < 1e-15);

  RVector v3 = evaluate_word(parse_word("(T12 T12')^1 T1"), t);
  CHECK((v3 - Eigen::Vector3d(0, 0, 1.0 / 64)).cwiseAbs().maxCoeff() < 1e-15);

  // Outer product T1 (x) T2 realigned over {1,2}: single zz entry.
  RVector v4 = evaluate_word(parse_word("T1 T2"), t);
  REQUIRE(v4.size() == 9);
  CHECK(v4(8) == doctest::Approx(1.0 / 16));
  CHECK(v4.cwiseAbs().sum() == doctest::Approx(1.0 / 16));
}

TEST_CASE("evaluate_word agrees with explicit fold algebra") {
  Rng rng(404);
  BlochTensors t = extract_tensors(random_density(3, 8, rng));

  Eigen::MatrixXd f = fold(t, 0b111u, 0b001u).matrix;  // 3x9, rows qubit 1
  RVector direct = f * t.vec(0b110u);
  RVector viaword = evaluate_word(parse_word("T1|23 T23"), t);
  CHECK((direct - viaword).cwiseAbs().maxCoeff() < 1e-14);

  RVector powered =
      evaluate_word(parse_word("(T1|23 T1|23')^1 T1"), t);
  RVector expl = f * f.transpose() * RVector(t.single(1));
  CHECK((powered - expl).cwiseAbs().maxCoeff() < 1e-14);

  expect_code(ErrorCode::MissingTensor, [&] {
    BlochTensors partial = t;
    partial.tensors.erase(0b110u);
    evaluate_word(parse_word("T1|23 T23"), partial);
  });
}
