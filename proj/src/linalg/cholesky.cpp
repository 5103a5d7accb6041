#include <lat40/linalg.hpp>

namespace lat40 {

LdlDecomposition rational_cholesky(const RatMatrix& gram) {
  if (!gram.is_symmetric()) throw LinalgError("rational_cholesky: Gram matrix not symmetric");
  const std::size_t n = gram.rows();
  LdlDecomposition out{RatMatrix::identity(n), std::vector<Rational>(n)};
  RatMatrix& u = out.upper;
  for (std::size_t i = 0; i < n; ++i) {
    Rational d = gram(i, i);
    for (std::size_t k = 0; k < i; ++k) d -= out.diag[k] * u(k, i) * u(k, i);
    if (d <= 0) throw LinalgError("rational_cholesky: form is not positive definite");
    out.diag[i] = d;
    for (std::size_t j = i + 1; j < n; ++j) {
      Rational s = gram(i, j);
      for (std::size_t k = 0; k < i; ++k) s -= out.diag[k] * u(k, i) * u(k, j);
      u(i, j) = s / d;
    }
  }
  return out;
}

}  // namespace lat40
