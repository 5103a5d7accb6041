#pragma once

#include <lat40/frames.hpp>

namespace lat40 {

struct AutError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A basis of a lattice made of vectors from its minimal set.
struct BasisSelection {
  IntMatrix vectors;                 // rows in the ambient frame
  std::vector<std::size_t> block;    // block index (into the partition) per row
  IntMatrix gram;                    // integral Gram of the rows
};

/// LLL-reduce the lattice, keep its minimal-norm rows, then complete to a
/// basis from `s` (folded), trying `preferred` indices first. Every step
/// keeps the chosen rows primitive. Throws AutError when no completion exists
/// along the deterministic scan.
BasisSelection four_vector_basis(const Lattice& l, const VectorSet& s, const Partition& blocks,
                                 std::span<const std::size_t> preferred = {});

/// Rows x_1..x_n with x_i taken (with either sign) from the folded block
/// `allowed[i]` and Gram(x) = target. Position `anchor` may only use the
/// vectors listed in `anchor_choices` (signed rows). Positions are filled
/// most-constrained first.
struct IsometryProblem {
  IntMatrix target;
  std::vector<std::vector<std::uint32_t>> allowed;  // folded indices per position
  std::size_t anchor = 0;
  std::vector<std::vector<std::int64_t>> anchor_choices;  // empty: no restriction
};
struct IsometryResult {
  std::vector<IntMatrix> solutions;  // rows in the ambient frame
  std::uint64_t nodes = 0;
};
IsometryResult isometry_search(const IsometryProblem& p, const VectorSet& s, const OrthoGraph& g);

/// Lexicographically first member of each Γ-orbit of a block, as signed rows.
std::vector<std::vector<std::int64_t>> block_transversal(const VectorSet& s,
                                                         std::span<const std::uint32_t> members,
                                                         const MatrixGroup& gamma);

/// Automorphism group in the basis of `o40`, generated by Γ and the
/// automorphisms carrying `basis` onto each solution.
struct AutGroup {
  MatrixGroup group;          // elements act on coordinate rows in the o40 basis
  std::vector<Mat64> adjoined;
  std::size_t gamma_order = 0;
  std::size_t solutions = 0;
};
AutGroup full_aut(const Lattice& o40, const MatrixGroup& gamma, const IntMatrix& basis,
                  std::span<const IntMatrix> solutions);

/// Automorphism in lattice coordinates sending basis row i to solution row i.
Mat64 automorphism_from(const Lattice& o40, const IntMatrix& basis, const IntMatrix& solution);

struct SemidirectReport {
  bool ok = false;
  Mat64 g1, g2;
  std::size_t order_g1 = 0, order_g2 = 0;
  int exponent = 0;             // g1·g2·g1⁻¹ = g2^exponent
  bool normal = false, trivial_intersection = false, full_product = false;
  std::map<std::size_t, std::size_t> order_census;
};
/// Witnesses g1 of order 36 and g2 of order 19 with g1·g2·g1⁻¹ = g2³.
/// Throws AutError("structure mismatch") when none exist.
SemidirectReport verify_semidirect(const MatrixGroup& g, std::size_t order_g1 = 36,
                                   std::size_t order_g2 = 19, int exponent = 3);

/// g·gram·gᵀ = gram.
bool preserves(const Mat64& g, const IntMatrix& gram);
/// Exact inverse of a unimodular matrix.
Mat64 inverse_unimodular(const Mat64& g);

}  // namespace lat40

namespace lat40 {

/// Block labels (i, j) of the 40 basis vectors behind the fixture Gram
/// matrix, in basis order.
std::vector<std::vector<int>> fixture_basis_labels();

/// Realize the fixture Gram inside the lattice: rows drawn from the labelled
/// blocks, the S7.7 row restricted to a Γ-transversal.
struct FixtureMatch {
  std::vector<IntMatrix> solutions;
  IntMatrix change;   // B′: coordinates of the first solution's rows in the lattice basis
  std::uint64_t nodes = 0;
};
FixtureMatch match_fixture_gram(const Lattice& o40, const VectorSet& s, const OrthoGraph& g,
                                const Partition& blocks, const MatrixGroup& gamma,
                                const IntMatrix& fixture_gram);

/// B′⁻¹·g·B′: a fixture matrix (acting on rows in the fixture basis) moved
/// to the lattice basis.
Mat64 fixture_to_lattice(const IntMatrix& change, const IntMatrix& g);

}  // namespace lat40
