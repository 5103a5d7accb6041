#pragma once

#include <lat40/vector_set.hpp>

#include <functional>

namespace lat40 {

struct EnumerationOptions {
  bool modulo_sign = false;
  unsigned threads = 1;
};

/// All v != 0 in L with v·v <= bound, in e-coordinates. The basis is LLL
/// reduced first; pruning uses outward-rounded floating intervals on the
/// exact LDL^T data, and every leaf is accepted only after an exact integer
/// norm computation, so the result is complete and exact.
VectorSet vectors_of_norm_at_most(const Lattice& l, const Rational& bound,
                                  const EnumerationOptions& options = {});

/// Smallest nonzero norm.
Rational min_norm(const Lattice& l);
/// Number of vectors of norm exactly m (both signs counted).
std::uint64_t count_norm(const Lattice& l, const Rational& m);
/// True iff some nonzero v has v·v < bound. Stops at the first hit.
bool has_vector_below(const Lattice& l, const Rational& bound);

/// Lower-level entry point: visits coordinate rows x (w.r.t. the basis of
/// `gram`) with 0 < x·G·xᵀ <= bound, one per ± pair (first nonzero entry
/// from the end is positive). The visitor returns false to stop early.
using ShortVisitor = std::function<bool(std::span<const std::int64_t> x, const Rational& norm)>;
void enumerate_short(const RatMatrix& gram, const Rational& bound, const ShortVisitor& visit);

}  // namespace lat40
