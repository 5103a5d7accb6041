#include <lat40/linalg.hpp>

#include <gtest/gtest.h>

#include <random>
#include <sstream>

namespace lat40 {
namespace {

IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int range) {
  std::uniform_int_distribution<int> dist(-range, range);
  IntMatrix m(r, c);
  for (auto& x : m.data()) x = dist(rng);
  return m;
}

IntMatrix diag_3_21() {
  IntMatrix m(40, 40);
  for (std::size_t i = 0; i < 20; ++i) {
    m(i, i) = 3;
    m(20 + i, 20 + i) = 21;
  }
  return m;
}

void expect_hnf_shape(const IntMatrix& h, std::size_t rank) {
  std::size_t col = 0;
  for (std::size_t r = 0; r < h.rows(); ++r) {
    if (r >= rank) {
      for (std::size_t c = 0; c < h.cols(); ++c) EXPECT_EQ(h(r, c), 0);
      continue;
    }
    while (col < h.cols() && h(r, col) == 0) ++col;
    ASSERT_LT(col, h.cols());
    EXPECT_GT(h(r, col), 0);
    for (std::size_t above = 0; above < r; ++above) {
      EXPECT_GE(h(above, col), 0);
      EXPECT_LT(h(above, col), h(r, col));
    }
    for (std::size_t below = r + 1; below < h.rows(); ++below) EXPECT_EQ(h(below, col), 0);
    ++col;
  }
}

TEST(Hnf, IdentityIsFixed) {
  auto res = hnf(IntMatrix::identity(3));
  EXPECT_EQ(res.h, IntMatrix::identity(3));
  EXPECT_EQ(res.transform, IntMatrix::identity(3));
  EXPECT_EQ(res.rank, 3u);
}

TEST(Hnf, SmallExample) {
  IntMatrix m{{2, 0}, {1, 1}};
  auto res = hnf(m);
  EXPECT_EQ(res.h, (IntMatrix{{1, 1}, {0, 2}}));
  EXPECT_EQ(res.transform * m, res.h);
  EXPECT_EQ(abs(det(res.transform)), 1);
}

TEST(Hnf, DiagonalGlueBaseUnchanged) {
  IntMatrix m = diag_3_21();
  auto res = hnf(m);
  EXPECT_EQ(res.h, m);
  Integer prod = 1;
  for (std::size_t i = 0; i < 40; ++i) prod *= res.h(i, i);
  Integer expected;
  mpz_ui_pow_ui(expected.get_mpz_t(), 63, 20);
  EXPECT_EQ(prod, expected);
  EXPECT_EQ(det(m), expected);
}

TEST(Hnf, RankDeficientPutsZeroRowsLast) {
  IntMatrix m{{1, 2, 3}, {2, 4, 6}, {0, 1, 1}};
  auto res = hnf(m);
  EXPECT_EQ(res.rank, 2u);
  expect_hnf_shape(res.h, res.rank);
  EXPECT_EQ(res.transform * m, res.h);
  EXPECT_EQ(hnf_basis(m).rows(), 2u);
}

TEST(Hnf, RandomizedInvariants) {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = 2 + trial % 5, c = 2 + (trial / 5) % 5;
    IntMatrix m = random_matrix(rng, r, c, 9);
    auto res = hnf(m);
    EXPECT_EQ(res.transform * m, res.h);
    EXPECT_EQ(abs(det(res.transform)), 1);
    expect_hnf_shape(res.h, res.rank);
    // The insertion algorithm behind hnf_basis must land on the same form.
    IntMatrix basis = hnf_basis(m);
    ASSERT_EQ(basis.rows(), res.rank);
    for (std::size_t i = 0; i < res.rank; ++i)
      for (std::size_t j = 0; j < c; ++j) EXPECT_EQ(basis(i, j), res.h(i, j));
    if (r == c && res.rank == r) {
      Integer prod = 1;
      for (std::size_t i = 0; i < r; ++i) prod *= res.h(i, i);
      EXPECT_EQ(prod, abs(det(m)));
    }
    // The HNF is canonical: a unimodular change of rows does not move it.
    IntMatrix e1 = IntMatrix::identity(r), e2 = IntMatrix::identity(r);
    e1(0, r - 1) = 3;
    e2(1, 0) = -2;
    IntMatrix u = e2 * e1;
    EXPECT_EQ(hnf(u * m).h, res.h);
  }
}

TEST(Snf, Examples) {
  EXPECT_EQ(snf_diagonal(IntMatrix::identity(4)), std::vector<Integer>(4, 1));
  std::vector<Integer> expected(20, 3);
  expected.insert(expected.end(), 20, 21);
  EXPECT_EQ(snf_diagonal(diag_3_21()), expected);
  EXPECT_EQ(snf_diagonal(IntMatrix{{2, 0}, {0, 4}}), (std::vector<Integer>{2, 4}));
  EXPECT_EQ(snf_diagonal(IntMatrix{{4, 0}, {0, 6}}), (std::vector<Integer>{2, 12}));
  EXPECT_THROW(snf_diagonal(IntMatrix{{1, 2}, {2, 4}}), LinalgError);
}

// gcd of all k×k minors of a 3×3 matrix, by brute force.
Integer minor_gcd(const IntMatrix& m, std::size_t k) {
  Integer g = 0;
  const std::size_t n = m.rows();
  for (unsigned rs = 0; rs < (1u << n); ++rs) {
    if (std::size_t(__builtin_popcount(rs)) != k) continue;
    for (unsigned cs = 0; cs < (1u << n); ++cs) {
      if (std::size_t(__builtin_popcount(cs)) != k) continue;
      IntMatrix sub(k, k);
      std::size_t a = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (!(rs >> i & 1)) continue;
        std::size_t b = 0;
        for (std::size_t j = 0; j < n; ++j)
          if (cs >> j & 1) sub(a, b++) = m(i, j);
        ++a;
      }
      g = gcd(g, det(sub));
    }
  }
  return g;
}

TEST(Snf, MatchesDeterminantalDivisors) {
  std::mt19937 rng(777);
  int checked = 0;
  while (checked < 100) {
    IntMatrix m = random_matrix(rng, 3, 3, 6);
    if (det(m) == 0) continue;
    ++checked;
    auto d = snf_diagonal(m);
    Integer prefix = 1;
    for (std::size_t k = 1; k <= 3; ++k) {
      prefix *= d[k - 1];
      EXPECT_EQ(prefix, minor_gcd(m, k));
      if (k < 3) EXPECT_EQ(d[k] % d[k - 1], 0);
    }
  }
}

TEST(Det, Examples) {
  EXPECT_EQ(det(IntMatrix::identity(5)), 1);
  EXPECT_EQ(det(IntMatrix{{6, 3}, {3, 12}}), 63);
  EXPECT_EQ(det(IntMatrix{{0, 1}, {1, 0}}), -1);
  EXPECT_EQ(det(IntMatrix{{1, 2}, {2, 4}}), 0);
  RatMatrix q{{Rational(1, 2), 0}, {0, Rational(2, 3)}};
  EXPECT_EQ(det(q), Rational(1, 3));
}

TEST(Det, BareissAgreesWithCofactorExpansion) {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    IntMatrix m = random_matrix(rng, 3, 3, 20);
    Integer cof = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                  m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                  m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    EXPECT_EQ(det(m), cof);
  }
}

TEST(Inverse, RoundTrip) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    IntMatrix m = random_matrix(rng, 4, 4, 5);
    if (det(m) == 0) continue;
    RatMatrix q = to_rational(m);
    EXPECT_EQ(q * inverse(q), RatMatrix::identity(4));
    std::vector<Rational> v{1, 2, 3, 4};
    auto x = solve_left(q, v);
    for (std::size_t c = 0; c < 4; ++c) {
      Rational s = 0;
      for (std::size_t r = 0; r < 4; ++r) s += x[r] * q(r, c);
      EXPECT_EQ(s, v[c]);
    }
  }
  EXPECT_THROW(inverse(RatMatrix{{1, 2}, {2, 4}}), LinalgError);
}

// Independent check of the LLL conditions through rational Gram-Schmidt.
void expect_lll_reduced(const RatMatrix& g, const Rational& delta) {
  const std::size_t n = g.rows();
  std::vector<std::vector<Rational>> mu(n, std::vector<Rational>(n));
  std::vector<Rational> b(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      Rational s = g(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= mu[j][k] * mu[i][k] * b[k];
      mu[i][j] = s / b[j];
      EXPECT_LE(abs(mu[i][j]), Rational(1, 2)) << "size reduction at " << i << "," << j;
    }
    Rational s = g(i, i);
    for (std::size_t k = 0; k < i; ++k) s -= mu[i][k] * mu[i][k] * b[k];
    b[i] = s;
    if (i > 0) EXPECT_GE(b[i], (delta - mu[i][i - 1] * mu[i][i - 1]) * b[i - 1]) << "Lovasz at " << i;
  }
}

TEST(Lll, AlreadyReduced) {
  RatMatrix g{{4, 0}, {0, 4}};
  auto r = lll_reduce_gram(g);
  EXPECT_EQ(r.gram, g);
  EXPECT_EQ(abs(det(r.transform)), 1);
}

TEST(Lll, TwoDimensionalMinimumMatchesBruteForce) {
  RatMatrix g{{4, 3}, {3, 4}};
  auto r = lll_reduce_gram(g);
  EXPECT_EQ(det(r.gram), 7);
  Rational best = 100;
  for (int a = -5; a <= 5; ++a)
    for (int b = -5; b <= 5; ++b)
      if (a || b) best = std::min(best, Rational(4 * a * a + 6 * a * b + 4 * b * b));
  EXPECT_EQ(std::min(r.gram(0, 0), r.gram(1, 1)), best);
  expect_lll_reduced(r.gram, Rational(3, 4));
}

TEST(Lll, RandomizedInvariants) {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 2 + trial % 7;
    IntMatrix b = random_matrix(rng, n, n, 12);
    if (det(b) == 0) continue;
    RatMatrix g = to_rational(b * b.transpose());
    if (trial % 3 == 0) g = g.scaled(Rational(1, 7));
    for (Rational delta : {Rational(3, 4), Rational(99, 100)}) {
      auto r = lll_reduce_gram(g, delta);
      EXPECT_EQ(abs(det(r.transform)), 1);
      RatMatrix t = to_rational(r.transform);
      EXPECT_EQ(t * g * t.transpose(), r.gram);
      EXPECT_EQ(det(r.gram), det(g));
      expect_lll_reduced(r.gram, delta);
    }
  }
}

TEST(Lll, RejectsIndefiniteAndBadDelta) {
  EXPECT_THROW(lll_reduce_gram(RatMatrix{{1, 2}, {2, 1}}), LinalgError);
  EXPECT_THROW(lll_reduce_gram(RatMatrix{{0, 0}, {0, 1}}), LinalgError);
  EXPECT_THROW(lll_reduce_gram(RatMatrix{{1, 0}, {0, 1}}, Rational(1, 4)), LinalgError);
}

TEST(Cholesky, Examples) {
  auto id = rational_cholesky(RatMatrix::identity(3));
  EXPECT_EQ(id.upper, RatMatrix::identity(3));
  EXPECT_EQ(id.diag, std::vector<Rational>(3, 1));
  EXPECT_EQ(rational_cholesky(RatMatrix{{4}}).diag, std::vector<Rational>{4});
  auto r = rational_cholesky(RatMatrix{{6, 3}, {3, 12}});
  EXPECT_EQ(r.diag, (std::vector<Rational>{6, Rational(21, 2)}));
  EXPECT_EQ(r.upper(0, 1), Rational(1, 2));
  EXPECT_THROW(rational_cholesky(RatMatrix{{1, 2}, {2, 1}}), LinalgError);
}

TEST(Cholesky, RoundTripRandom) {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 1 + trial % 6;
    IntMatrix b = random_matrix(rng, n, n, 7);
    if (det(b) == 0) continue;
    RatMatrix g = to_rational(b * b.transpose());
    auto r = rational_cholesky(g);
    RatMatrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) d(i, i) = r.diag[i];
    EXPECT_EQ(r.upper.transpose() * d * r.upper, g);
  }
}

TEST(MatrixIo, RoundTripIsBitExact) {
  IntMatrix m{{1, -2, 3}, {0, 12345678901234567, -9}};
  std::string text = to_text(m);
  std::istringstream in(text);
  IntMatrix back = read_int_matrix(in);
  EXPECT_EQ(back, m);
  EXPECT_EQ(to_text(back), text);

  RatMatrix q{{Rational(1, 3), rat(-4, 6)}, {Rational(5), Rational(0)}};
  std::string qtext = to_text(q);
  EXPECT_EQ(qtext, "2 2\n1/3 -2/3\n5 0\n");
  std::istringstream qin(qtext);
  EXPECT_EQ(read_rat_matrix(qin), q);
}

TEST(MatrixIo, RejectsMalformedInput) {
  std::istringstream short_body("2 2\n1 2 3\n");
  EXPECT_THROW(read_int_matrix(short_body), FormatError);
  std::istringstream bad_token("1 2\n1 x\n");
  EXPECT_THROW(read_int_matrix(bad_token), FormatError);
  std::istringstream bad_header("two 2\n");
  EXPECT_THROW(read_int_matrix(bad_header), FormatError);
  std::istringstream zero_den("1 1\n1/0\n");
  EXPECT_THROW(read_rat_matrix(zero_den), FormatError);
}

TEST(Matrix, SixtyFourBitOverflowThrows) {
  Mat64 a{{INT64_MAX / 2 + 1}};
  EXPECT_THROW(a * a, LinalgError);
}

}  // namespace
}  // namespace lat40
