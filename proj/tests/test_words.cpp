#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "rank2/theta.hpp"
#include "rank2/words.hpp"

using namespace rank2;
using rank2::testing::random_pattern;
using rank2::testing::random_theta;
using rank2::testing::random_word;
using rank2::testing::scrambled_normal_form;

namespace {

const char* kFwd3Cycle = "m 2; n 2; cycle (1,1) (1,2) (2,1)";
const char* kTwoByFour =
    "m 2; n 4; cycle (1,2) (2,1) (1,3); cycle (2,2) (2,3) (1,4)";

ThetaSpec flip(int m) {
  std::vector<IndexPair> pairs;
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= m; ++j) pairs.emplace_back(j, i);
  return ThetaSpec(m, m, pairs);
}

}  // namespace

TEST_CASE("theta parsing: forward 3-cycle relations e_i f_j = f_{i+j} e_j") {
  ThetaSpec t = ThetaSpec::parse(kFwd3Cycle);
  CHECK(t.m() == 2);
  CHECK(t.n() == 2);
  // e_i f_j = f_{i+j mod 2} e_j for all four pairs
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) {
      auto [jp, ip] = swap_ef(t, i, j);
      CHECK(jp == (i + j - 1) % 2 + 1);
      CHECK(ip == j);
    }
}

TEST_CASE("theta parsing: no cycles gives the identity permutation") {
  ThetaSpec t = ThetaSpec::parse("m 2\nn 2\n");
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) CHECK(t.forward(i, j) == IndexPair{i, j});
  CHECK(t == ThetaSpec::identity(2, 2));
}

TEST_CASE("theta parsing: the 2x4 example matches its relation table") {
  ThetaSpec t = ThetaSpec::parse(kTwoByFour);
  // e_1f_1=f_1e_1  e_1f_2=f_1e_2  e_1f_3=f_2e_1  e_1f_4=f_2e_2
  // e_2f_1=f_3e_1  e_2f_2=f_3e_2  e_2f_3=f_4e_1  e_2f_4=f_4e_2
  int expect[2][4][2] = {
      {{1, 1}, {1, 2}, {2, 1}, {2, 2}},
      {{3, 1}, {3, 2}, {4, 1}, {4, 2}},
  };
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 4; ++j) {
      auto [jp, ip] = swap_ef(t, i, j);
      CHECK(jp == expect[i - 1][j - 1][0]);
      CHECK(ip == expect[i - 1][j - 1][1]);
    }
}

TEST_CASE("theta parsing: comments, duplicate pairs, bad indices, 1x1") {
  CHECK_NOTHROW(ThetaSpec::parse("# header\nm 2 # two\nn 3\n\ncycle (1,1) (2,2)\n"));
  CHECK_THROWS_AS(ThetaSpec::parse("m 2; n 2; cycle (1,1) (1,1)"),
                  std::invalid_argument);
  CHECK_THROWS_AS(ThetaSpec::parse("m 2; n 2; cycle (1,1); cycle (1,1) (2,2)"),
                  std::invalid_argument);
  CHECK_THROWS_AS(ThetaSpec::parse("m 2; n 2; cycle (3,1) (1,1)"),
                  std::invalid_argument);
  CHECK_THROWS_AS(ThetaSpec::parse("m 1; n 1"), std::invalid_argument);
  CHECK_THROWS_AS(ThetaSpec::parse("n 2"), std::invalid_argument);
  CHECK_THROWS_AS(ThetaSpec::parse("m 2"), std::invalid_argument);
  CHECK_THROWS_AS(ThetaSpec::parse("m 2; n 2; cycle"), std::invalid_argument);
  CHECK_THROWS_AS(ThetaSpec::parse("m 2; n 2; frob (1,1)"), std::invalid_argument);
}

TEST_CASE("swap_ef / swap_fe on the named examples") {
  ThetaSpec fwd3 = ThetaSpec::parse(kFwd3Cycle);
  CHECK(swap_ef(fwd3, 1, 1) == IndexPair{2, 1});  // e1 f1 = f2 e1
  CHECK(swap_fe(fwd3, 1, 1) == IndexPair{2, 1});  // f1 e1 = e2 f1

  ThetaSpec fl = flip(2);
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) {
      CHECK(swap_ef(fl, i, j) == IndexPair{i, j});  // e_i f_j = f_i e_j
      CHECK(swap_fe(fl, j, i) == IndexPair{j, i});  // f_j e_i = e_j f_i
    }

  ThetaSpec t24 = ThetaSpec::parse(kTwoByFour);
  CHECK(swap_ef(t24, 1, 3) == IndexPair{2, 1});  // e1 f3 = f2 e1
  CHECK(swap_fe(t24, 2, 1) == IndexPair{1, 3});  // f2 e1 = e1 f3
}

TEST_CASE("swap involution over all pairs of random thetas") {
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 50; ++iter) {
    int m = 1 + static_cast<int>(rng() % 5);
    int n = 1 + static_cast<int>(rng() % 5);
    if (m == 1 && n == 1) n = 2;
    ThetaSpec t = random_theta(rng, m, n);
    for (int i = 1; i <= m; ++i)
      for (int j = 1; j <= n; ++j) {
        auto [jp, ip] = swap_ef(t, i, j);
        CHECK(swap_fe(t, jp, ip) == IndexPair{i, j});
        auto [i0, j0] = swap_fe(t, j, i);
        CHECK(swap_ef(t, i0, j0) == IndexPair{j, i});
      }
  }
}

TEST_CASE("normal_form on the named examples") {
  ThetaSpec fwd3 = ThetaSpec::parse(kFwd3Cycle);
  CHECK(normal_form(fwd3, Word::parse("f1 e1"), NormalTarget::EF) ==
        Word::parse("e2 f1"));

  ThetaSpec t24 = ThetaSpec::parse(kTwoByFour);
  CHECK(normal_form(t24, Word::parse("e2 e1 f3"), NormalTarget::FE) ==
        Word::parse("f3 e2 e1"));

  // already in EF form: idempotent
  Word w = Word::parse("e1 e2 f3 f1");
  CHECK(normal_form(t24, w, NormalTarget::EF) == w);
}

TEST_CASE("eight-cycle block identities") {
  // the 4x4 algebra whose commutation pattern is one 8-cycle, two flips and
  // four fixed points
  ThetaSpec t = ThetaSpec::from_cycles(
      4, 4,
      {{{2, 1}, {1, 2}, {3, 1}, {1, 3}, {4, 2}, {2, 4}, {4, 3}, {3, 4}},
       {{1, 4}, {4, 1}},
       {{2, 3}, {3, 2}}});
  // (e1e2)^{2k+1} (f1f1)^{2k+1} = (f1f3)(f3f4 f1f3)^... spelled per block:
  // e_{12}^{2k+1} f_{11}^{2k+1} -> f-part (13 34)^k 13, e-part 11^{2k+1}
  for (int k = 0; k <= 2; ++k) {
    Word w;
    for (int r = 0; r < 2 * k + 1; ++r) w.append(Word::parse("e1 e2"));
    for (int r = 0; r < 2 * k + 1; ++r) w.append(Word::parse("f1 f1"));
    std::vector<int> fpart;
    for (int r = 0; r < k; ++r) { fpart.insert(fpart.end(), {1, 3, 3, 4}); }
    fpart.insert(fpart.end(), {1, 3});
    std::vector<int> epart(2 * (2 * k + 1), 1);
    Word expect = Word::all_f(fpart).append(Word::all_e(epart));
    CHECK(normal_form(t, w, NormalTarget::FE) == expect);
  }
  // e_{12}^{2k} f_{11}^{2k} -> (13 34)^k, 11^{2k}
  for (int k = 1; k <= 2; ++k) {
    Word w;
    for (int r = 0; r < 2 * k; ++r) w.append(Word::parse("e1 e2"));
    for (int r = 0; r < 2 * k; ++r) w.append(Word::parse("f1 f1"));
    std::vector<int> fpart;
    for (int r = 0; r < k; ++r) fpart.insert(fpart.end(), {1, 3, 3, 4});
    std::vector<int> epart(4 * k, 1);
    Word expect = Word::all_f(fpart).append(Word::all_e(epart));
    CHECK(normal_form(t, w, NormalTarget::FE) == expect);
  }
}

TEST_CASE("refactor on the named examples") {
  ThetaSpec fwd3 = ThetaSpec::parse(kFwd3Cycle);
  CHECK(refactor(fwd3, Word::parse("e1 f1"), {Color::F, Color::E}) ==
        Word::parse("f2 e1"));

  ThetaSpec fl = flip(2);
  CHECK(refactor(fl, Word::parse("e1 f1 e2 f2"),
                 {Color::E, Color::E, Color::F, Color::F}) ==
        Word::parse("e1 e1 f2 f2"));

  // identity refactoring
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 20; ++iter) {
    ThetaSpec t = random_theta(rng, 3, 4);
    Word w = random_word(rng, t, 12);
    CHECK(refactor(t, w, w.pattern()) == w);
  }

  CHECK_THROWS_AS(refactor(fl, Word::parse("e1 f1"), {Color::E, Color::E}),
                  std::invalid_argument);
}

TEST_CASE("degree") {
  CHECK(degree(Word()) == Degree{0, 0});
  CHECK(degree(Word::parse("e1 f2 e2")) == Degree{2, 1});
}

TEST_CASE("property: round trip, uniqueness, soundness, degree conservation") {
  std::mt19937_64 rng(20260810);
  for (int iter = 0; iter < 1500; ++iter) {
    int m = 1 + static_cast<int>(rng() % 5);
    int n = 1 + static_cast<int>(rng() % 5);
    if (m == 1 && n == 1) n = 2;
    ThetaSpec t = random_theta(rng, m, n);
    Word w = random_word(rng, t, 16);

    Word ef = normal_form(t, w, NormalTarget::EF);
    Word fe = normal_form(t, w, NormalTarget::FE);
    CHECK(degree(ef) == degree(w));
    CHECK(degree(fe) == degree(w));

    // round trip through the other normal form
    CHECK(normal_form(t, ef, NormalTarget::FE) == fe);
    CHECK(normal_form(t, fe, NormalTarget::EF) == ef);

    // idempotence
    CHECK(normal_form(t, ef, NormalTarget::EF) == ef);

    // uniqueness: a randomized swap schedule reaches the same word
    CHECK(scrambled_normal_form(t, w, NormalTarget::EF, rng) == ef);
    CHECK(scrambled_normal_form(t, w, NormalTarget::FE, rng) == fe);

    // refactor soundness: same EF normal form, exact pattern, degree kept
    ColorPattern p = random_pattern(rng, degree(w));
    Word r = refactor(t, w, p);
    CHECK(r.pattern() == p);
    CHECK(degree(r) == degree(w));
    CHECK(normal_form(t, r, NormalTarget::EF) == ef);
  }
}

TEST_CASE("word parsing and printing") {
  Word w = Word::parse("e1.f12 e3");
  CHECK(w.size() == 3);
  CHECK(w[1] == lf(12));
  CHECK(w.str() == "e1.f12.e3");
  CHECK(Word().str() == "1");
  CHECK_THROWS_AS(Word::parse("g1"), std::invalid_argument);
  CHECK_THROWS_AS(Word::parse("e"), std::invalid_argument);
  CHECK_THROWS_AS(Word::parse("e0"), std::invalid_argument);
}
