#include <lat40/enumeration.hpp>
#include <lat40/pipeline.hpp>

#include <cmath>
#include <random>
#include <set>
#include <sstream>

namespace lat40 {

namespace {

// Portable draws: the raw engine output is fully specified by the standard.
long draw(std::mt19937_64& rng, long lo, long hi) {
  return lo + long(rng() % std::uint64_t(hi - lo + 1));
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long bound) {
  IntMatrix m(r, c);
  for (auto& x : m.data()) x = draw(rng, -bound, bound);
  return m;
}

IntMatrix random_nonsingular(std::mt19937_64& rng, std::size_t n, long bound) {
  for (;;) {
    IntMatrix m = random_matrix(rng, n, n, bound);
    if (det(m) != 0) return m;
  }
}

bool is_reduced_echelon(const IntMatrix& h, std::size_t rank) {
  std::size_t last = 0;
  for (std::size_t r = 0; r < h.rows(); ++r) {
    std::size_t c = 0;
    while (c < h.cols() && h(r, c) == 0) ++c;
    if (r >= rank) {
      if (c != h.cols()) return false;
      continue;
    }
    if (c == h.cols() || h(r, c) <= 0 || (r > 0 && c <= last)) return false;
    for (std::size_t above = 0; above < r; ++above)
      if (h(above, c) < 0 || h(above, c) >= h(r, c)) return false;
    last = c;
  }
  return true;
}

}  // namespace

std::vector<PropertyOutcome> random_lattice_suite(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  const FramePtr frame = make_frame(RatMatrix::identity(4), "Z4");
  PropertyOutcome out{"enumeration equals brute force on random 4-dimensional lattices", true, ""};
  std::size_t vectors = 0;
  for (int k = 0; k < count; ++k) {
    IntMatrix b;
    RatMatrix g, ginv;
    Rational bound;
    std::vector<long> box(4);
    // Redraw until the brute-force box stays small.
    for (;;) {
      b = random_nonsingular(rng, 4, 3);
      g = to_rational(b * b.transpose());
      ginv = inverse(g);
      Rational top = g(0, 0);
      for (std::size_t i = 1; i < 4; ++i) top = std::max(top, g(i, i));
      bound = top + draw(rng, 0, 6);
      double cells = 1;
      for (std::size_t i = 0; i < 4; ++i) {
        box[i] = long(std::sqrt(Rational(bound * ginv(i, i)).get_d())) + 1;
        cells *= double(2 * box[i] + 1);
      }
      if (cells <= 2e5) break;
    }
    std::set<std::vector<std::int64_t>> brute;
    std::vector<long> x(4);
    for (x[0] = -box[0]; x[0] <= box[0]; ++x[0])
      for (x[1] = -box[1]; x[1] <= box[1]; ++x[1])
        for (x[2] = -box[2]; x[2] <= box[2]; ++x[2])
          for (x[3] = -box[3]; x[3] <= box[3]; ++x[3]) {
            std::vector<std::int64_t> v(4, 0);
            for (std::size_t i = 0; i < 4; ++i)
              for (std::size_t j = 0; j < 4; ++j) v[j] += x[i] * b(i, j).get_si();
            std::int64_t n = 0;
            for (auto c : v) n += c * c;
            if (n > 0 && Rational(n) <= bound) brute.insert(v);
          }
    Lattice l(frame, b);
    VectorSet s = vectors_of_norm_at_most(l, bound);
    std::set<std::vector<std::int64_t>> found;
    for (std::size_t i = 0; i < s.size(); ++i) found.insert({s[i].begin(), s[i].end()});
    vectors += brute.size();
    if (found != brute || found.size() != s.size()) {
      out.ok = false;
      std::ostringstream d;
      d << "lattice " << k << ": enumeration " << s.size() << ", brute force " << brute.size();
      out.detail = d.str();
      return {out};
    }
  }
  out.detail = std::to_string(count) + " lattices, " + std::to_string(vectors) + " vectors";
  return {out};
}

std::vector<PropertyOutcome> linalg_invariant_suite(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  PropertyOutcome h{"HNF: unimodular transform, reduced echelon form", true, ""};
  PropertyOutcome s{"SNF: divisor chain with product |det|", true, ""};
  PropertyOutcome l{"LLL: unimodular transform, size reduced, Lovasz condition", true, ""};
  const Rational delta(3, 4);
  for (int k = 0; k < count; ++k) {
    const std::size_t rows = std::size_t(draw(rng, 2, 6)), cols = std::size_t(draw(rng, 2, 6));
    IntMatrix m = random_matrix(rng, rows, cols, 9);
    HnfResult r = hnf(m);
    if (!is_unimodular_matrix(r.transform) || !(r.transform * m == r.h) ||
        !is_reduced_echelon(r.h, r.rank))
      h.ok = false;

    const std::size_t n = std::size_t(draw(rng, 2, 6));
    IntMatrix q = random_nonsingular(rng, n, 9);
    std::vector<Integer> d = snf_diagonal(q);
    Integer prod = 1;
    for (std::size_t i = 0; i < n; ++i) {
      prod *= d[i];
      if (i + 1 < n && d[i + 1] % d[i] != 0) s.ok = false;
    }
    if (prod != abs(det(q))) s.ok = false;

    RatMatrix g = to_rational(q * q.transpose());
    LllResult red = lll_reduce_gram(g, delta);
    RatMatrix t = to_rational(red.transform);
    if (!is_unimodular_matrix(red.transform) || !(t * g * t.transpose() == red.gram)) l.ok = false;
    LdlDecomposition ldl = rational_cholesky(red.gram);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (abs(ldl.upper(i, j)) > Rational(1, 2)) l.ok = false;
    for (std::size_t i = 1; i < n; ++i) {
      const Rational mu = ldl.upper(i - 1, i);
      if (ldl.diag[i] < (delta - mu * mu) * ldl.diag[i - 1]) l.ok = false;
    }
  }
  const std::string detail = std::to_string(count) + " random matrices";
  h.detail = s.detail = l.detail = detail;
  return {h, s, l};
}

}  // namespace lat40
