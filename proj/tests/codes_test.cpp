#include <lat40/construction.hpp>
#include <lat40/qr_codes.hpp>

#include <gtest/gtest.h>

#include <random>
#include <set>

namespace lat40 {
namespace {

TEST(Legendre, ResiduesModNineteen) {
  // Squares mod 19, computed directly.
  std::set<int> squares;
  for (int x = 1; x < 19; ++x) squares.insert(x * x % 19);
  EXPECT_EQ(squares.size(), 9u);
  for (int x = 0; x < 19; ++x) {
    const int want = x == 0 ? 0 : squares.count(x) ? 1 : -1;
    EXPECT_EQ(legendre19(x), want) << x;
    EXPECT_EQ(legendre19(x + 19), want);
    EXPECT_EQ(legendre19(x - 38), want);
  }
  EXPECT_EQ(legendre(2, 7), 1);
  EXPECT_EQ(legendre(3, 7), -1);
}

TEST(CodeSpec, ParseAndPrint) {
  const CodeSpec s = CodeSpec::parse("21:0,7,1,0,4,17");
  EXPECT_EQ(s.modulus, 21);
  EXPECT_EQ(s, reference_spec21());
  EXPECT_EQ(CodeSpec::parse(s.to_string()), s);
  EXPECT_EQ(CodeSpec(3, {4, -1, 0, 0, 0, 0}).params[1], 2);
  EXPECT_THROW(CodeSpec::parse("21"), FormatError);
  EXPECT_THROW(CodeSpec::parse("3:1,2,x,0,0,0"), FormatError);
  EXPECT_THROW(CodeSpec::parse("3:1,2,0,0,0,0,0"), FormatError);
}

TEST(Gqr, RowsFollowTheTemplate) {
  const CodeSpec s(21, {5, 6, 1, 2, 3, 4});
  const IntMatrix g = gqr_generators(s);
  ASSERT_EQ(g.rows(), 20u);
  ASSERT_EQ(g.cols(), 20u);
  for (int i = 0; i < 19; ++i) {
    const std::size_t r = code_position(i);
    for (int j = 0; j < 19; ++j) {
      const int want = i == j ? 1 : legendre19(i - j) == 1 ? 2 : 3;
      EXPECT_EQ(g(r, code_position(j)), want);
    }
    EXPECT_EQ(g(r, kInfinityPosition), 4);
  }
  for (std::size_t j = 0; j < 19; ++j) EXPECT_EQ(g(kInfinityPosition, j), 5);
  EXPECT_EQ(g(kInfinityPosition, kInfinityPosition), 6);
}

TEST(Isotropy, ReferenceCodesAreIsotropicWithFullIndex) {
  const IntMatrix u = gqr_generators(reference_spec3()), w = gqr_generators(reference_spec21());
  EXPECT_TRUE(isotropy_check(u, w));
  const IntMatrix b = glue_basis(u, w);
  EXPECT_TRUE(index_check(b));
  EXPECT_TRUE(glue_rows_isotropic(*glue_frame(), b));
}

TEST(Isotropy, ZeroCodeIsIsotropicButTooSmall) {
  const IntMatrix z = gqr_generators(CodeSpec(3, {0, 0, 0, 0, 0, 0}));
  const IntMatrix z21 = gqr_generators(CodeSpec(21, {0, 0, 0, 0, 0, 0}));
  EXPECT_TRUE(isotropy_check(z, z21));
  EXPECT_FALSE(index_check(glue_basis(z, z21)));
}

TEST(Isotropy, PerturbedCodeFails) {
  const IntMatrix u = gqr_generators(reference_spec3());
  const IntMatrix w = gqr_generators(CodeSpec(21, {0, 7, 1, 0, 4, 16}));
  EXPECT_FALSE(isotropy_check(u, w));
}

TEST(RankModP, Examples) {
  IntMatrix m(3, 3);
  m(0, 0) = 1; m(0, 1) = 2;
  m(1, 0) = 2; m(1, 1) = 4;
  m(2, 2) = 7;
  EXPECT_EQ(rank_mod_p(m, 7), 1u);
  EXPECT_EQ(rank_mod_p(m, 3), 2u);
  EXPECT_EQ(rank_mod_p(IntMatrix::identity(5), 2), 5u);
}

// The staged sweep splits the conditions by CRT; with both codes fixed it
// must agree with the direct test on the glue rows.
TEST(SearchParams, ScreeningAgreesWithDirectCheck) {
  std::mt19937 rng(11);
  int agreed = 0, isotropic = 0;
  for (int k = 0; k < 300; ++k) {
    std::array<int, 6> a{}, b{};
    for (auto& x : a) x = int(rng() % 3);
    for (auto& x : b) x = int(rng() % 21);
    // Bias half the draws towards the isotropic region.
    if (k % 2) {
      b = reference_spec21().params;
      b[std::size_t(rng() % 6)] = int(rng() % 21);
      a = reference_spec3().params;
    }
    SearchOptions o;
    o.check_index = false;
    o.fixed_p3 = a;
    o.fixed_p21 = b;
    const SearchReport r = search_params(o);
    const bool direct = isotropy_check(gqr_generators(CodeSpec(3, a)), gqr_generators(CodeSpec(21, b)));
    EXPECT_EQ(!r.hits.empty(), direct) << CodeSpec(3, a).to_string() << " " << CodeSpec(21, b).to_string();
    agreed += !r.hits.empty() == direct;
    isotropic += direct;
  }
  EXPECT_EQ(agreed, 300);
  EXPECT_GT(isotropic, 0);
}

TEST(SearchParams, ReferencePairSurvivesMinimumFour) {
  SearchOptions o;
  o.fixed_p3 = reference_spec3().params;
  o.fixed_p21 = reference_spec21().params;
  o.min_norm = 4;
  const SearchReport r = search_params(o);
  ASSERT_EQ(r.hits.size(), 1u);
  EXPECT_TRUE(r.hits[0].isotropic);
  EXPECT_TRUE(r.hits[0].index_ok);
  EXPECT_TRUE(r.hits[0].min_ok);
}

TEST(SearchParams, NothingReachesMinimumSix) {
  SearchOptions o;
  o.fixed_p3 = reference_spec3().params;
  o.fixed_p21 = reference_spec21().params;
  o.min_norm = 6;
  EXPECT_TRUE(search_params(o).hits.empty());
}

TEST(SearchParams, UnitReductionKeepsOneOfEachScaling) {
  // The twelve unit scalings of the reference pair: exactly one survives.
  std::size_t kept = 0;
  std::set<std::pair<std::array<int, 6>, std::array<int, 6>>> seen;
  for (int lambda = 1; lambda < 21; ++lambda) {
    if (lambda % 3 == 0 || lambda % 7 == 0) continue;
    SearchOptions o;
    o.unit_reduce = true;
    o.fixed_p3 = reference_spec3().params;
    o.fixed_p21 = reference_spec21().params;
    for (auto& x : *o.fixed_p3) x = x * lambda % 3;
    for (auto& x : *o.fixed_p21) x = x * lambda % 21;
    if (!seen.insert({*o.fixed_p3, *o.fixed_p21}).second) continue;
    kept += search_params(o).hits.size();
  }
  EXPECT_EQ(kept, 1u);
}

TEST(SearchParams, JsonLine) {
  SearchHit h{reference_spec3(), reference_spec21(), true, true, false};
  EXPECT_EQ(to_json_line(h),
            "{\"p3\":\"3:1,0,0,0,1,1\",\"p21\":\"21:0,7,1,0,4,17\",\"isotropic\":true,"
            "\"index\":true,\"min\":false}");
}

}  // namespace
}  // namespace lat40
