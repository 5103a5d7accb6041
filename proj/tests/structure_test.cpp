#include <lat40/aut.hpp>
#include <lat40/enumeration.hpp>
#include <lat40/glue.hpp>
#include <lat40/pipeline.hpp>

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

namespace lat40 {
namespace {

namespace fs = std::filesystem;

IntMatrix scaled_identity(std::size_t n, long k) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = k;
  return m;
}

// 2·Z^n under the standard form: the minimal vectors are ±2e_i, of norm 4.
struct ScaledZ {
  explicit ScaledZ(std::size_t n)
      : lattice(make_frame(RatMatrix::identity(n), "Z"), scaled_identity(n, 2)) {
    EnumerationOptions o;
    o.modulo_sign = true;
    s = vectors_of_norm_at_most(lattice, 4, o);
  }
  Lattice lattice;
  VectorSet s;
};

TEST(Typing, ScaledZ40IsOneFrameBlock) {
  ScaledZ z(40);
  ASSERT_EQ(z.s.size(), 40u);
  Typer t(z.s, *z.lattice.frame());
  const Partition p = t.partition_by_type();
  ASSERT_EQ(p.blocks.size(), 1u);
  EXPECT_EQ(p.blocks[0].type, (TypeSig{78, 0, 0, 1}));
  EXPECT_EQ(p.blocks[0].size(), 80u);
  Typer::RefineStats st;
  const Partition irr = t.refine_to_irreducible(p, &st);
  EXPECT_EQ(irr.blocks.size(), 1u);
  EXPECT_TRUE(frame_signature_present(irr));
  EXPECT_FALSE(st.final_pass_split);
}

TEST(Typing, DirectTypeMatchesEngine) {
  // D4 with the form doubled: its 24 roots become the norm-4 vectors.
  RatMatrix g(4, 4);
  const int d4[4][4] = {{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) g(i, j) = 2 * d4[i][j];
  Lattice l(make_frame(g, "D4(2)"), IntMatrix::identity(4));
  EnumerationOptions o;
  o.modulo_sign = true;
  const VectorSet s = vectors_of_norm_at_most(l, 4, o);
  ASSERT_EQ(s.size(), 12u);
  Typer t(s, *l.frame());
  const Partition p = t.partition_by_type();
  for (const Block& b : p.blocks)
    for (auto m : b.members) EXPECT_EQ(type_of(s[m], s, *l.frame()), b.type);
  // Counts cover all 24 vectors, and the roots form a 2-design:
  // Σ_u (u·v)² = 2(t1 + 4 t2 + 16 t4) = |S|·(v·v)²/dim.
  for (const Block& b : p.blocks) {
    const TypeSig ty = b.type;
    EXPECT_EQ(ty.t0 + 2 * (ty.t1 + ty.t2 + ty.t4), 2 * s.size());
    EXPECT_EQ(2 * (ty.t1 + 4 * ty.t2 + 16 * ty.t4), 2 * s.size() * 16 / 4);
  }
}

TEST(Frames, ScaledZ2AndZ4) {
  for (std::size_t n : {2u, 4u}) {
    ScaledZ z(n);
    OrthoGraph g(z.s, *z.lattice.frame());
    std::vector<std::uint64_t> key(z.s.size());
    for (std::size_t i = 0; i < key.size(); ++i) key[i] = i;
    EXPECT_EQ(max_orthogonal_set(g, 0, key).size(), n);
    const OrbitPartition orb = orbits(z.s, {});
    const FrameCensus c = frame_census(g, orb);
    EXPECT_EQ(c.n_max, n);
    EXPECT_EQ(c.table.at(n), n);
    const CliqueCertificate cert = certify_no_frame(g, 0, n);
    EXPECT_TRUE(cert.exhausted);
    EXPECT_TRUE(cert.found);
  }
}

TEST(Frames, A2SquaredHasNoFrame) {
  // A2 ⊕ A2 scaled by 2 has norm-4 vectors but no four orthogonal ones.
  RatMatrix g(4, 4);
  const int a[2][2] = {{2, -1}, {-1, 2}};
  for (std::size_t k = 0; k < 2; ++k)
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) g(2 * k + i, 2 * k + j) = 2 * a[i][j];
  Lattice l(make_frame(g, "A2A2(2)"), IntMatrix::identity(4));
  EnumerationOptions o;
  o.modulo_sign = true;
  const VectorSet s = vectors_of_norm_at_most(l, 4, o);
  ASSERT_EQ(s.size(), 6u);
  OrthoGraph og(s, *l.frame());
  const FrameCensus c = frame_census(og, orbits(s, {}));
  EXPECT_EQ(c.n_max, 2u);
  for (std::size_t v = 0; v < s.size(); ++v) {
    const CliqueCertificate cert = certify_no_frame(og, v, 4);
    EXPECT_TRUE(cert.exhausted);
    EXPECT_FALSE(cert.found);
    EXPECT_LE(cert.best, 2u);
  }
}

TEST(Frames, DeviationFromTies) {
  FrameCensus c;
  c.m_of_orbit = {3, 3, 4};
  c.ties_of_orbit = {0, 1, 0};
  EXPECT_TRUE(deviation_from_ties(c, {{3, 1}, {4, 1}}));
  EXPECT_FALSE(deviation_from_ties(c, {{3, 2}}));
}

TEST(Aut, ScaledZ2HasEightIsometries) {
  ScaledZ z(2);
  OrthoGraph g(z.s, *z.lattice.frame());
  IsometryProblem p;
  p.target = scaled_identity(2, 4);
  p.allowed = {{0, 1}, {0, 1}};
  const IsometryResult r = isometry_search(p, z.s, g);
  EXPECT_EQ(r.solutions.size(), 8u);

  p.target(0, 1) = p.target(1, 0) = 1;
  EXPECT_TRUE(isometry_search(p, z.s, g).solutions.empty());
}

TEST(Aut, GroupClosureAndOrders) {
  Mat64 rot(2, 2);
  rot(0, 1) = 1;
  rot(1, 0) = -1;
  Mat64 flip(2, 2);
  flip(0, 0) = 1;
  flip(1, 1) = -1;
  EXPECT_EQ(element_order(rot), 4u);
  const MatrixGroup d4 = close_group({rot, flip});
  EXPECT_EQ(d4.order(), 8u);
  EXPECT_TRUE(d4.contains(rot * flip));
  EXPECT_TRUE(preserves(rot, IntMatrix::identity(2)));
  EXPECT_EQ(inverse_unimodular(rot) * rot, Mat64::identity(2));
  // Dihedral of order 8: rot of order 4, flip·rot·flip⁻¹ = rot³.
  const SemidirectReport sd = verify_semidirect(d4, 2, 4, 3);
  EXPECT_TRUE(sd.ok);
  EXPECT_THROW(verify_semidirect(d4, 8, 4, 3), AutError);
}

TEST(Glue, ScaledAnDeterminant) {
  for (std::size_t n : {1u, 2u, 5u, 19u}) {
    Integer want = Integer(n + 1);
    for (std::size_t k = 0; k < n; ++k) want *= 2;
    EXPECT_EQ(det(scaled_a_n_gram(n)), want) << n;
  }
  const IntMatrix t = m_target_gram();
  ASSERT_EQ(t.rows(), 40u);
  Integer want = 16 * Integer(20) * 20;
  for (int k = 0; k < 38; ++k) want *= 2;
  EXPECT_EQ(det(t), want);
}

TEST(Glue, SublatticeIndex) {
  const FramePtr f = make_frame(RatMatrix::identity(3), "Z");
  Lattice outer(f, IntMatrix::identity(3));
  IntMatrix b = IntMatrix::identity(3);
  b(1, 1) = 6;
  b(2, 2) = 2;
  EXPECT_EQ(sublattice_index(Lattice(f, b), outer), 12);
}

}  // namespace
}  // namespace lat40
