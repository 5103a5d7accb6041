#include <lat40/construction.hpp>
#include <lat40/enumeration.hpp>
#include <lat40/kernels.hpp>
#include <lat40/packed_set.hpp>
#include <lat40/pipeline.hpp>

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

namespace lat40 {
namespace {

namespace fs = std::filesystem;

FramePtr identity_frame(std::size_t n) { return make_frame(RatMatrix::identity(n), "Z"); }

RatMatrix e8_gram() {
  // Cartan matrix of E8 (Bourbaki numbering).
  const int c[8][8] = {{2, 0, -1, 0, 0, 0, 0, 0},  {0, 2, 0, -1, 0, 0, 0, 0},
                       {-1, 0, 2, -1, 0, 0, 0, 0}, {0, -1, -1, 2, -1, 0, 0, 0},
                       {0, 0, 0, -1, 2, -1, 0, 0}, {0, 0, 0, 0, -1, 2, -1, 0},
                       {0, 0, 0, 0, 0, -1, 2, -1}, {0, 0, 0, 0, 0, 0, -1, 2}};
  RatMatrix g(8, 8);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) g(i, j) = c[i][j];
  return g;
}

TEST(Lattice, ZnInvariants) {
  Lattice z(identity_frame(4), IntMatrix::identity(4));
  EXPECT_TRUE(z.is_integral());
  EXPECT_FALSE(z.is_even());
  EXPECT_TRUE(z.is_unimodular());
  EXPECT_EQ(z.gram_det(), 1);
}

TEST(Lattice, E8IsEvenUnimodular) {
  Lattice e8(make_frame(e8_gram(), "E8"), IntMatrix::identity(8));
  EXPECT_TRUE(e8.is_even());
  EXPECT_TRUE(e8.is_unimodular());
  EXPECT_TRUE(equals(dual(e8), e8));
}

TEST(Lattice, DualAndSublattice) {
  // Frame (1/4)·I, so the dual of diag(4,2,2) still has integer coordinates.
  RatMatrix g = RatMatrix::identity(3);
  for (std::size_t i = 0; i < 3; ++i) g(i, i) = Rational(1, 4);
  const FramePtr f = make_frame(g, "quarter");
  IntMatrix b(3, 3);
  b(0, 0) = 4;
  b(1, 1) = 2;
  b(2, 2) = 2;
  Lattice l(f, b);
  EXPECT_TRUE(l.is_integral());
  EXPECT_EQ(l.gram_det(), 4);
  Lattice d = dual(l);
  EXPECT_EQ(d.gram_det(), Rational(1, 4));
  EXPECT_TRUE(sublattice(l, d));
  EXPECT_FALSE(sublattice(d, l));
  EXPECT_TRUE(equals(dual(d), l));
  EXPECT_TRUE(equals(lattice_sum(l, d), d));
  std::vector<Integer> v{4, 2, 0}, w{1, 0, 0};
  EXPECT_TRUE(l.contains(v));
  EXPECT_FALSE(l.contains(w));
  EXPECT_TRUE(d.contains(std::vector<Integer>{1, 2, 0}));
}

TEST(Lattice, ScaledAn) {
  const IntMatrix a = a_n_gram(4);
  EXPECT_EQ(det(a), 5);
  EXPECT_EQ(extremal_min_bound(40), 4);
  EXPECT_EQ(extremal_min_bound(24), 4);
  EXPECT_EQ(extremal_min_bound(8), 2);
}

TEST(LatticeIo, RoundTrip) {
  Lattice e8(make_frame(e8_gram(), "E8"), IntMatrix::identity(8));
  std::stringstream s;
  write_lattice(s, e8);
  Lattice back = read_lattice(s);
  EXPECT_EQ(back.gram(), e8.gram());
  EXPECT_TRUE(equals(back, e8) || back.hnf_basis() == e8.hnf_basis());

  std::stringstream p;
  write_lattice(p, build_L());
  Lattice l = read_lattice(p);
  EXPECT_EQ(l.frame()->id, "glue40");
  EXPECT_EQ(l.hnf_basis(), build_L().hnf_basis());
}

TEST(LatticeIo, RejectsGarbage) {
  std::stringstream s("frame: nonsense\n1 1\n1\n");
  EXPECT_THROW(read_lattice(s), FormatError);
  std::stringstream t("frame: gram\n2 2\n1 0\n0 1\n2 2\n1 0\n");
  EXPECT_THROW(read_lattice(t), FormatError);
}

TEST(Construction, BuildLHasTheBinaryFormBlocks) {
  const Lattice l = build_L();
  const RatMatrix g = l.gram();
  for (std::size_t i = 0; i < 20; ++i) {
    EXPECT_EQ(g(i, i), 6);
    EXPECT_EQ(g(20 + i, 20 + i), 12);
    EXPECT_EQ(g(i, 20 + i), 3);
  }
  EXPECT_TRUE(l.is_even());
  Integer d = 1;
  for (int i = 0; i < 20; ++i) d *= 63;
  EXPECT_EQ(l.gram_det(), Rational(d));
}

TEST(Construction, O40IsEvenUnimodularAndMatchesFixture) {
  const Fixtures f = load_fixtures();
  const Lattice o = build_O40(f);
  EXPECT_EQ(o.rank(), 40u);
  EXPECT_TRUE(o.is_even());
  EXPECT_TRUE(o.is_unimodular());
  EXPECT_EQ(o.hnf_basis(), Lattice(o.frame(), fixture_glue_matrix(f)).hnf_basis());
  EXPECT_TRUE(sublattice(build_L(), o));
}

TEST(Construction, CorruptFixtureIsRejected) {
  const fs::path dir = fs::temp_directory_path() / "lat40_fixture_test";
  fs::remove_all(dir);
  fs::copy(default_fixture_dir(), dir);
  {
    std::fstream f(dir / "b1.mat", std::ios::in | std::ios::out);
    std::string text((std::istreambuf_iterator<char>(f)), {});
    const auto pos = text.find_last_of("0123456789");
    text[pos] = text[pos] == '1' ? '2' : '1';
    f.seekp(0);
    f << text;
  }
  try {
    load_fixtures(dir.string());
    FAIL() << "expected ConstructionError";
  } catch (const ConstructionError& e) {
    EXPECT_NE(std::string(e.what()).find("b1.mat"), std::string::npos);
  }
  // Without the manifest check the changed glue matrix no longer matches.
  EXPECT_THROW(build_O40(load_fixtures(dir.string(), false)), ConstructionError);
  fs::remove_all(dir);
}

TEST(Construction, VariantWithWrongModuliFails) {
  IntMatrix r(2, 2);
  r(0, 0) = 2; r(0, 1) = 1; r(1, 0) = 1; r(1, 1) = 2;  // A2: divisors (1, 3)
  EXPECT_THROW(build_variant(r, reference_spec3(), reference_spec21()), ConstructionError);
}

TEST(Enumeration, KnownCounts) {
  Lattice z(identity_frame(4), IntMatrix::identity(4));
  EXPECT_EQ(count_norm(z, 1), 8u);
  EXPECT_EQ(count_norm(z, 2), 24u);
  EXPECT_EQ(min_norm(z), 1);
  Lattice e8(make_frame(e8_gram(), "E8"), IntMatrix::identity(8));
  EXPECT_EQ(min_norm(e8), 2);
  EXPECT_EQ(count_norm(e8, 2), 240u);
  EXPECT_EQ(count_norm(e8, 4), 2160u);
  EXPECT_TRUE(has_vector_below(e8, 3));
  EXPECT_FALSE(has_vector_below(e8, 2));
}

TEST(Enumeration, FoldedHalvesTheSet) {
  Lattice e8(make_frame(e8_gram(), "E8"), IntMatrix::identity(8));
  EnumerationOptions o;
  o.modulo_sign = true;
  const VectorSet half = vectors_of_norm_at_most(e8, 2, o);
  const VectorSet full = vectors_of_norm_at_most(e8, 2);
  EXPECT_EQ(half.size(), 120u);
  EXPECT_EQ(full.size(), 240u);
  EXPECT_EQ(half.unfolded(), full);
  o.threads = 3;
  EXPECT_EQ(vectors_of_norm_at_most(e8, 4, o).size(), (240u + 2160u) / 2);
}

TEST(Enumeration, RandomLatticesMatchBruteForce) {
  for (const auto& r : random_lattice_suite(99, 15)) EXPECT_TRUE(r.ok) << r.name << ": " << r.detail;
}

TEST(Kernels, Avx2MatchesScalar) {
  const kernels::KernelTable* fast = kernels::avx2_table();
  if (!fast) GTEST_SKIP() << "no AVX2";
  const kernels::KernelTable& ref = kernels::scalar_table();
  std::mt19937 rng(5);
  for (int round = 0; round < 50; ++round) {
    const std::size_t count = 1 + rng() % 40;
    std::vector<std::int16_t> a(kernels::kStride), rows(count * kernels::kStride);
    for (std::size_t i = 0; i < 40; ++i) a[i] = std::int16_t(int(rng() % 4001) - 2000);
    for (std::size_t r = 0; r < count; ++r)
      for (std::size_t i = 0; i < 40; ++i)
        rows[r * kernels::kStride + i] = std::int16_t(int(rng() % 4001) - 2000);
    std::vector<std::int32_t> x(count), y(count);
    ref.dot_many(a.data(), rows.data(), count, x.data());
    fast->dot_many(a.data(), rows.data(), count, y.data());
    EXPECT_EQ(x, y);

    const std::size_t words = 1 + rng() % 700;
    std::vector<std::uint64_t> p(words), q(words), d1(words), d2(words);
    for (auto& w : p) w = (std::uint64_t(rng()) << 32) | rng();
    for (auto& w : q) w = (std::uint64_t(rng()) << 32) | rng();
    EXPECT_EQ(ref.and_popcount(p.data(), q.data(), words), fast->and_popcount(p.data(), q.data(), words));
    EXPECT_EQ(ref.and_into(d1.data(), p.data(), q.data(), words),
              fast->and_into(d2.data(), p.data(), q.data(), words));
    EXPECT_EQ(d1, d2);
  }
}

TEST(Kernels, PackedSetAgreesWithExactInnerProducts) {
  const Lattice o = build_L();
  VectorSet s(40, "glue40");
  for (std::size_t i = 0; i < 40; ++i) {
    std::vector<Integer> row(40);
    for (std::size_t k = 0; k < 40; ++k) row[k] = o.basis()(i, k);
    s.push_back(row, inner(*o.frame(), row, row));
  }
  PackedSet fast(s, *o.frame());
  PackedSet ref(s, *o.frame(), kernels::scalar_table());
  std::vector<std::int32_t> a(40), b(40);
  for (std::size_t i = 0; i < 40; ++i) {
    fast.inner_row(i, a);
    ref.inner_row(i, b);
    EXPECT_EQ(a, b);
    for (std::size_t j = 0; j < 40; ++j) EXPECT_EQ(Rational(a[j]), inner(*o.frame(), s.big(i), s.big(j)));
  }
}

TEST(VectorSetIo, RoundTripAndRejects) {
  Lattice e8(make_frame(e8_gram(), "E8"), IntMatrix::identity(8));
  const VectorSet full = vectors_of_norm_at_most(e8, 2);
  std::stringstream s;
  write_vector_set(s, full);
  EXPECT_EQ(read_vector_set(s), full);

  std::stringstream bad("2 3 4 -\n1 0 0\n");
  EXPECT_THROW(read_vector_set(bad), FormatError);
  std::stringstream words("1 2 4 -\n1 x\n");
  EXPECT_THROW(read_vector_set(words), FormatError);
}

TEST(Cache, CorruptEntryIsRebuilt) {
  const fs::path dir = fs::temp_directory_path() / "lat40_cache_test";
  fs::remove_all(dir);
  Cache cache(dir.string());
  Lattice e8(make_frame(e8_gram(), "E8"), IntMatrix::identity(8));
  int built = 0;
  auto make = [&] {
    ++built;
    return vectors_of_norm_at_most(e8, 2);
  };
  const std::string key = enumeration_key(e8, "norm<=2");
  bool hit = true;
  const VectorSet first = cache.vectors(key, make, &hit);
  EXPECT_FALSE(hit);
  EXPECT_EQ(cache.vectors(key, make, &hit), first);
  EXPECT_TRUE(hit);
  EXPECT_EQ(built, 1);

  {
    std::fstream f(cache.path(key, "vecs"), std::ios::in | std::ios::out);
    f.seekp(-3, std::ios::end);
    f << "9";
  }
  EXPECT_EQ(cache.vectors(key, make, &hit), first);
  EXPECT_FALSE(hit);
  EXPECT_EQ(built, 2);
  EXPECT_NE(enumeration_key(e8, "norm<=4"), key);
  fs::remove_all(dir);
}

}  // namespace
}  // namespace lat40
