#pragma once

#include <lat40/typing.hpp>

#include <stdexcept>

namespace lat40 {

struct GlueError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The sublattice A1(2)² ⊕ A19(2)² found among the minimal vectors.
struct SublatticeM {
  IntMatrix chosen;    // 2 rows from S1.1, then the two groups of 19 from the root block
  IntMatrix chain;     // a, b, then the two root chains w1..w19
  IntMatrix gram;      // Gram of `chain`
  Lattice lattice;
  std::vector<int> root_block;  // label of the block the chains came from
};

/// 2·A_n Gram.
IntMatrix scaled_a_n_gram(std::size_t n);
/// diag(4, 4) ⊕ A19(2) ⊕ A19(2).
IntMatrix m_target_gram();

/// S1.1 = {±a, ±b} gives the A1(2) pair. A block of local type [38,0,18,1]
/// and size 76 splits, under inner product ±2, into two groups of 19; after
/// fixing signs so that every pair inside a group meets at +2, w1 = s1,
/// w_k = s_k − s_{k−1} is an A19(2) chain. S18.1 is tried first, then the
/// other blocks of that shape; the first one orthogonal to a and b is used.
/// Throws GlueError when none works.
SublatticeM find_sublattice_M(const VectorSet& s, const Partition& blocks, const FramePtr& frame);

/// L + M equals O40 (HNF of the stacked bases).
bool verify_theorem3(const Lattice& l, const Lattice& m, const Lattice& o40);

/// [outer : inner] from the elementary divisors of the coordinate matrix.
Integer sublattice_index(const Lattice& inner, const Lattice& outer);

}  // namespace lat40
