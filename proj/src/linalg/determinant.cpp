#include <lat40/linalg.hpp>

namespace lat40 {

Integer det(const IntMatrix& m) {
  if (!m.is_square()) throw LinalgError("det needs a square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      a.swap_rows(k, swap);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a(k, k);
  }
  Integer d = a(n - 1, n - 1);
  return sign < 0 ? Integer(-d) : d;
}

Rational det(const RatMatrix& m) {
  Integer den = common_denominator(m);
  IntMatrix scaled = to_integer(m.scaled(Rational(den)));
  Rational d(det(scaled));
  Integer den_power;
  mpz_pow_ui(den_power.get_mpz_t(), den.get_mpz_t(), m.rows());
  d /= Rational(den_power);
  d.canonicalize();
  return d;
}

RatMatrix inverse(const RatMatrix& m) {
  if (!m.is_square()) throw LinalgError("inverse needs a square matrix");
  const std::size_t n = m.rows();
  RatMatrix a = m;
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) throw LinalgError("inverse of a singular matrix");
    a.swap_rows(c, p);
    inv.swap_rows(c, p);
    const Rational pivot = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= pivot;
      inv(c, j) /= pivot;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      const Rational f = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

std::vector<Rational> solve_left(const RatMatrix& m, std::span<const Rational> v) {
  if (!m.is_square() || v.size() != m.rows())
    throw LinalgError("solve_left shape mismatch");
  // x·M = v  <=>  Mᵀ·xᵀ = vᵀ
  const std::size_t n = m.rows();
  RatMatrix a(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = m(j, i);
    a(i, n) = v[i];
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) throw LinalgError("solve_left: singular matrix");
    a.swap_rows(c, p);
    const Rational pivot = a(c, c);
    for (std::size_t j = c; j <= n; ++j) a(c, j) /= pivot;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      const Rational f = a(i, c);
      for (std::size_t j = c; j <= n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a(i, n);
  return x;
}

Rational bilinear(const RatMatrix& gram, std::span<const Integer> x,
                  std::span<const Integer> y) {
  Rational acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    Rational row = 0;
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (y[j] != 0) row += gram(i, j) * y[j];
    }
    acc += row * x[i];
  }
  return acc;
}

}  // namespace lat40
