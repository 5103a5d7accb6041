#include <lat40/linalg.hpp>

#include <algorithm>

namespace lat40 {

namespace {

// row_a <- s*row_a + t*row_b ; row_b <- u*row_a + v*row_b (simultaneously)
void combine_rows(IntMatrix& m, std::size_t a, std::size_t b, const Integer& s,
                  const Integer& t, const Integer& u, const Integer& v) {
  Integer x, y;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    x = s * m(a, c) + t * m(b, c);
    y = u * m(a, c) + v * m(b, c);
    m(a, c) = x;
    m(b, c) = y;
  }
}

void subtract_multiple(IntMatrix& m, std::size_t target, std::size_t source,
                       const Integer& q) {
  for (std::size_t c = 0; c < m.cols(); ++c) m(target, c) -= q * m(source, c);
}

void negate_row(IntMatrix& m, std::size_t r) {
  for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = -m(r, c);
}

HnfResult hnf_impl(const IntMatrix& input, bool with_transform) {
  HnfResult res;
  res.h = input;
  IntMatrix& h = res.h;
  const std::size_t rows = h.rows();
  if (with_transform) res.transform = IntMatrix::identity(rows);
  IntMatrix& t = res.transform;

  std::size_t r = 0;
  Integer g, s, tt, u, v, q;
  for (std::size_t c = 0; c < h.cols() && r < rows; ++c) {
    std::size_t first = rows;
    for (std::size_t i = r; i < rows; ++i) {
      if (h(i, c) != 0) {
        first = i;
        break;
      }
    }
    if (first == rows) continue;
    h.swap_rows(r, first);
    if (with_transform) t.swap_rows(r, first);

    for (std::size_t i = r + 1; i < rows; ++i) {
      if (h(i, c) == 0) continue;
      const Integer a = h(r, c);
      const Integer b = h(i, c);
      // b divisible by a: plain elimination keeps the pivot row untouched.
      if (mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) {
        q = b / a;
        subtract_multiple(h, i, r, q);
        if (with_transform) subtract_multiple(t, i, r, q);
        continue;
      }
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), tt.get_mpz_t(), a.get_mpz_t(),
                 b.get_mpz_t());
      u = -b / g;
      v = a / g;
      combine_rows(h, r, i, s, tt, u, v);
      if (with_transform) combine_rows(t, r, i, s, tt, u, v);
    }
    if (h(r, c) < 0) {
      negate_row(h, r);
      if (with_transform) negate_row(t, r);
    }
    const Integer pivot = h(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      mpz_fdiv_q(q.get_mpz_t(), h(i, c).get_mpz_t(), pivot.get_mpz_t());
      if (q == 0) continue;
      subtract_multiple(h, i, r, q);
      if (with_transform) subtract_multiple(t, i, r, q);
    }
    ++r;
  }
  res.rank = r;
  return res;
}

bool is_diagonal(const IntMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (i != j && m(i, j) != 0) return false;
  return true;
}

}  // namespace

HnfResult hnf(const IntMatrix& m) { return hnf_impl(m, true); }

// Incremental insertion: rows are merged one at a time into an echelon set
// kept fully reduced (entries above each pivot in [0, pivot)). Once a
// full-rank block such as n·I has been inserted every stored entry stays
// below the pivots, so inputs that start with such rows never blow up.
IntMatrix hnf_basis(const IntMatrix& m) {
  const std::size_t n = m.cols();
  std::vector<std::vector<Integer>> pivot_row(n);
  Integer g, s, t, q;
  auto normalize = [&]() {
    for (std::size_t i = 0; i < n; ++i) {
      if (pivot_row[i].empty()) continue;
      auto& row = pivot_row[i];
      for (std::size_t j = i + 1; j < n; ++j) {
        if (pivot_row[j].empty() || row[j] == 0) continue;
        const auto& p = pivot_row[j];
        mpz_fdiv_q(q.get_mpz_t(), row[j].get_mpz_t(), p[j].get_mpz_t());
        if (q == 0) continue;
        for (std::size_t c = j; c < n; ++c) row[c] -= q * p[c];
      }
    }
  };
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::vector<Integer> v(m.row(r).begin(), m.row(r).end());
    for (std::size_t c = 0; c < n; ++c) {
      if (v[c] == 0) continue;
      auto& p = pivot_row[c];
      if (p.empty()) {
        if (v[c] < 0)
          for (auto& x : v) x = -x;
        p = std::move(v);
        break;
      }
      const Integer a = p[c], b = v[c];
      if (mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) {
        q = b / a;
        for (std::size_t k = c; k < n; ++k) v[k] -= q * p[k];
        continue;
      }
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      const Integer u = -b / g, w = a / g;
      for (std::size_t k = c; k < n; ++k) {
        Integer np = s * p[k] + t * v[k];
        v[k] = u * p[k] + w * v[k];
        p[k] = std::move(np);
      }
    }
    normalize();
  }
  std::vector<Integer> data;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (pivot_row[c].empty()) continue;
    data.insert(data.end(), pivot_row[c].begin(), pivot_row[c].end());
    ++rank;
  }
  return IntMatrix(rank, n, std::move(data));
}

std::vector<Integer> snf_diagonal(const IntMatrix& m) {
  if (!m.is_square()) throw LinalgError("snf_diagonal needs a square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return {};
  IntMatrix a = m;
  // Alternating row and column Hermite reduction converges to a diagonal
  // matrix; each pass strictly decreases the first pivot or terminates.
  for (;;) {
    a = hnf_basis(a);
    if (a.rows() != n) throw LinalgError("snf_diagonal: singular matrix");
    if (is_diagonal(a)) break;
    a = hnf_basis(a.transpose());
    if (is_diagonal(a)) break;
  }
  std::vector<Integer> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = abs(a(i, i));
  Integer g, l;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      g = gcd(d[i], d[j]);
      l = lcm(d[i], d[j]);
      d[i] = g;
      d[j] = l;
    }
  }
  return d;
}

bool is_unimodular_matrix(const IntMatrix& m) {
  if (!m.is_square()) return false;
  return abs(det(m)) == 1;
}

}  // namespace lat40
