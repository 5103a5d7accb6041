#include <lat40/lattice.hpp>

namespace lat40 {

FramePtr make_frame(RatMatrix gram, std::string id) {
  if (!gram.is_symmetric()) throw LinalgError("frame Gram matrix is not symmetric");
  rational_cholesky(gram);  // throws when not positive definite
  auto f = std::make_shared<AmbientFrame>();
  f->id = std::move(id);
  f->denominator = common_denominator(gram);
  f->integer_gram = to_integer(gram.scaled(Rational(f->denominator)));
  f->gram = std::move(gram);
  return f;
}

FramePtr glue_frame() {
  static const FramePtr frame = [] {
    RatMatrix g(40, 40);
    for (std::size_t i = 0; i < 20; ++i) {
      g(i, i) = rat(28, 21);
      g(i, 20 + i) = rat(7, 21);
      g(20 + i, i) = rat(7, 21);
      g(20 + i, 20 + i) = rat(2, 21);
    }
    return make_frame(std::move(g), "glue40");
  }();
  return frame;
}

namespace {

Integer scaled_inner(const AmbientFrame& f, std::span<const Integer> x,
                     std::span<const Integer> y) {
  const std::size_t n = f.dim();
  if (x.size() != n || y.size() != n) throw LinalgError("vector length does not match frame");
  Integer acc = 0, row;
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    row = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (y[j] != 0 && f.integer_gram(i, j) != 0) row += f.integer_gram(i, j) * y[j];
    }
    acc += x[i] * row;
  }
  return acc;
}

}  // namespace

Rational inner(const AmbientFrame& f, std::span<const Integer> x, std::span<const Integer> y) {
  Rational r(scaled_inner(f, x, y), f.denominator);
  r.canonicalize();
  return r;
}

Integer inner_integral(const AmbientFrame& f, std::span<const Integer> x,
                       std::span<const Integer> y) {
  Integer s = scaled_inner(f, x, y);
  if (!mpz_divisible_p(s.get_mpz_t(), f.denominator.get_mpz_t()))
    throw LinalgError("inner product " + s.get_str() + "/" + f.denominator.get_str() +
                      " is not an integer (frame mix-up?)");
  return s / f.denominator;
}

}  // namespace lat40
