#include <lat40/construction.hpp>

#include <numeric>

namespace lat40 {

CodeSpec reference_spec3() { return CodeSpec(3, {1, 0, 0, 0, 1, 1}); }
CodeSpec reference_spec21() { return CodeSpec(21, {0, 7, 1, 0, 4, 17}); }

Lattice build_L() {
  IntMatrix b(40, 40);
  for (std::size_t i = 0; i < 20; ++i) {
    b(i, i) = 6;
    b(i, 20 + i) = -21;
    b(20 + i, i) = 3;
  }
  return Lattice(glue_frame(), std::move(b));
}

Lattice glue_reference_codes() {
  return Lattice(glue_frame(),
                 glue_basis(gqr_generators(reference_spec3()), gqr_generators(reference_spec21())));
}

Lattice build_O40(const Fixtures& f) {
  Lattice glued = glue_reference_codes();
  Lattice transcribed(glue_frame(), fixture_glue_matrix(f));
  if (!equals(glued, transcribed))
    throw ConstructionError("construction does not reproduce the transcribed glue matrix");
  return glued;
}

namespace {

bool is_diagonal2(const IntMatrix& a) { return a(0, 1) == 0 && a(1, 0) == 0; }

// Unimodular left/right transforms with left·r·right diagonal and the
// first entry dividing the second.
void smith2(const IntMatrix& r, IntMatrix& left, IntMatrix& right, IntMatrix& d) {
  left = IntMatrix::identity(2);
  right = IntMatrix::identity(2);
  d = r;
  for (int guard = 0; guard < 200; ++guard) {
    HnfResult h = hnf(d);
    left = h.transform * left;
    d = h.h;
    if (is_diagonal2(d)) {
      if (d(1, 1) % d(0, 0) == 0) break;
      IntMatrix add{{1, 1}, {0, 1}};
      left = add * left;
      d = add * d;
      continue;
    }
    HnfResult c = hnf(d.transpose());
    right = right * c.transform.transpose();
    d = c.h.transpose();
    if (is_diagonal2(d) && d(1, 1) % d(0, 0) == 0) break;
  }
  if (!is_diagonal2(d) || d(1, 1) % d(0, 0) != 0) throw LinalgError("2x2 Smith form did not converge");
}

}  // namespace

VariantFrame variant_frame(const IntMatrix& r_gram) {
  if (r_gram.rows() != 2 || r_gram.cols() != 2 || !r_gram.is_symmetric())
    throw ConstructionError("R must be a symmetric 2x2 matrix");
  if (r_gram(0, 0) <= 0 || det(r_gram) <= 0) throw ConstructionError("R is not positive definite");
  if (r_gram(0, 0) % 2 != 0 || r_gram(1, 1) % 2 != 0) throw ConstructionError("R is not even");
  const RatMatrix r = to_rational(r_gram);
  // R^∨ coordinates of the basis of R are the rows of R itself. If the row
  // HNF H = U·R has pivots equal to the elementary divisors, D^{-1}·H is a
  // basis change to a frame in which R is diag(d1, d2); otherwise fall back
  // to a full Smith decomposition.
  RatMatrix q_inv;  // rows: e-basis in terms of the dual basis of R
  Integer d1, d2;
  HnfResult h = hnf(r_gram);
  const Integer g = gcd(gcd(r_gram(0, 0), r_gram(0, 1)), r_gram(1, 1));
  if (h.h(0, 0) == g) {
    d1 = h.h(0, 0);
    d2 = h.h(1, 1);
    q_inv = RatMatrix{{rat(h.h(0, 0), d1), rat(h.h(0, 1), d1)}, {rat(h.h(1, 0), d2), rat(h.h(1, 1), d2)}};
  } else {
    IntMatrix left, right, d;
    smith2(r_gram, left, right, d);
    d1 = d(0, 0);
    d2 = d(1, 1);
    q_inv = inverse(to_rational(right));
  }
  RatMatrix block = q_inv * inverse(r) * q_inv.transpose();
  RatMatrix g40(40, 40);
  for (std::size_t i = 0; i < 20; ++i) {
    g40(i, i) = block(0, 0);
    g40(i, 20 + i) = block(0, 1);
    g40(20 + i, i) = block(1, 0);
    g40(20 + i, 20 + i) = block(1, 1);
  }
  VariantFrame out;
  out.d1 = int(d1.get_si());
  out.d2 = int(d2.get_si());
  out.frame = g40 == glue_frame()->gram ? glue_frame() : make_frame(std::move(g40), "variant");
  return out;
}

Lattice build_variant(const IntMatrix& r_gram, const CodeSpec& spec1, const CodeSpec& spec2) {
  VariantFrame vf = variant_frame(r_gram);
  if (spec1.modulus != vf.d1 || spec2.modulus != vf.d2)
    throw ConstructionError("code moduli must be the elementary divisors " + std::to_string(vf.d1) +
                            " and " + std::to_string(vf.d2) + " of R");
  IntMatrix u = gqr_generators(spec1), w = gqr_generators(spec2);
  IntMatrix rows(20, 40);
  for (std::size_t i = 0; i < 20; ++i)
    for (std::size_t j = 0; j < 20; ++j) {
      rows(i, j) = u(i, j);
      rows(i, 20 + j) = w(i, j);
    }
  if (!glue_rows_isotropic(*vf.frame, rows))
    throw ConstructionError("stage isotropy: the glue code is not totally isotropic");
  Lattice glued(vf.frame, glue_basis(u, w, vf.d1, vf.d2));
  if (abs(glued.gram_det()) != 1)
    throw ConstructionError("stage index: the glued lattice is not unimodular (det " +
                            glued.gram_det().get_str() + ")");
  return glued;
}

}  // namespace lat40
