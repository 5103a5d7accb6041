#pragma once

#include <lat40/matrix.hpp>

#include <vector>

namespace lat40 {

/// Row-style Hermite normal form: H = T·M with T unimodular. H is in row
/// echelon form with positive pivots, entries above each pivot reduced into
/// [0, pivot), and zero rows at the bottom.
struct HnfResult {
  IntMatrix h;
  IntMatrix transform;
  std::size_t rank = 0;
};

HnfResult hnf(const IntMatrix& m);

/// The nonzero rows of the Hermite normal form, without the transform.
IntMatrix hnf_basis(const IntMatrix& m);

/// Smith invariants d1 | d2 | ... | dn of a square nonsingular matrix.
std::vector<Integer> snf_diagonal(const IntMatrix& m);

/// Fraction-free Bareiss elimination.
Integer det(const IntMatrix& m);
Rational det(const RatMatrix& m);

/// Gauss-Jordan over the rationals. Throws on singular input.
RatMatrix inverse(const RatMatrix& m);

/// Solve x·M = v for x over the rationals (M square nonsingular).
std::vector<Rational> solve_left(const RatMatrix& m, std::span<const Rational> v);

struct LllResult {
  RatMatrix gram;       // transform · G · transformᵀ
  IntMatrix transform;  // unimodular
};

/// LLL reduction of a positive definite Gram matrix in exact arithmetic.
/// The form is scaled to integers and reduced with the integral
/// (fraction-free) algorithm, so no rounding ever happens.
LllResult lll_reduce_gram(const RatMatrix& gram,
                          const Rational& delta = Rational(3, 4));

/// G = Uᵀ·diag(d)·U with U unit upper triangular. This is the q/mu form
/// consumed by the enumerator: Q(x) = sum_i d_i (x_i + sum_{j>i} U_ij x_j)^2.
struct LdlDecomposition {
  RatMatrix upper;
  std::vector<Rational> diag;
};

LdlDecomposition rational_cholesky(const RatMatrix& gram);

/// x·G·yᵀ for a rational form.
Rational bilinear(const RatMatrix& gram, std::span<const Integer> x,
                  std::span<const Integer> y);

bool is_unimodular_matrix(const IntMatrix& m);

}  // namespace lat40
