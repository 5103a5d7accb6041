#include <lat40/linalg.hpp>

#include <algorithm>

namespace lat40 {

namespace {

// Integral LLL on a Gram matrix (de Weger / Cohen). Indices are 1-based to
// keep d_0 = 1 in place; all divisions below are exact.
class IntegralLll {
 public:
  IntegralLll(IntMatrix gram, const Rational& delta)
      : n_(gram.rows()),
        g_(std::move(gram)),
        h_(IntMatrix::identity(n_)),
        d_(n_ + 1),
        lambda_(n_ + 1, std::vector<Integer>(n_ + 1)),
        p_(delta.get_num()),
        q_(delta.get_den()) {}

  void run() {
    if (n_ == 0) return;
    d_[0] = 1;
    d_[1] = gram(1, 1);
    if (d_[1] <= 0) throw LinalgError("lll_reduce_gram: form is not positive definite");
    std::size_t k = 2, kmax = 1;
    while (k <= n_) {
      if (k > kmax) {
        kmax = k;
        for (std::size_t j = 1; j <= k; ++j) {
          Integer u = gram(k, j);
          for (std::size_t i = 1; i < j; ++i) {
            u = d_[i] * u - lambda_[k][i] * lambda_[j][i];
            mpz_divexact(u.get_mpz_t(), u.get_mpz_t(), d_[i - 1].get_mpz_t());
          }
          if (j < k) {
            lambda_[k][j] = u;
          } else {
            if (u <= 0) throw LinalgError("lll_reduce_gram: form is not positive definite");
            d_[k] = u;
          }
        }
        kmax_ = kmax;
      }
      reduce(k, k - 1);
      const Integer lhs = q_ * d_[k] * d_[k - 2];
      const Integer rhs = p_ * d_[k - 1] * d_[k - 1] - q_ * lambda_[k][k - 1] * lambda_[k][k - 1];
      if (lhs < rhs) {
        swap(k);
        k = std::max<std::size_t>(2, k - 1);
      } else {
        for (std::size_t l = k - 1; l-- > 1;) reduce(k, l);
        ++k;
      }
    }
  }

  const IntMatrix& transform() const { return h_; }

 private:
  Integer& gram(std::size_t i, std::size_t j) { return g_(i - 1, j - 1); }

  void reduce(std::size_t k, std::size_t l) {
    Integer twice = 2 * lambda_[k][l];
    if (abs(twice) <= d_[l]) return;
    // nearest integer to lambda / d_l
    Integer q = 2 * lambda_[k][l] + d_[l];
    Integer den = 2 * d_[l];
    mpz_fdiv_q(q.get_mpz_t(), q.get_mpz_t(), den.get_mpz_t());
    for (std::size_t c = 0; c < n_; ++c) h_(k - 1, c) -= q * h_(l - 1, c);
    const Integer new_kk = gram(k, k) - 2 * q * gram(k, l) + q * q * gram(l, l);
    for (std::size_t j = 1; j <= n_; ++j) {
      if (j == k) continue;
      gram(k, j) -= q * gram(l, j);
      gram(j, k) = gram(k, j);
    }
    gram(k, k) = new_kk;
    lambda_[k][l] -= q * d_[l];
    for (std::size_t i = 1; i < l; ++i) lambda_[k][i] -= q * lambda_[l][i];
  }

  void swap(std::size_t k) {
    h_.swap_rows(k - 1, k - 2);
    g_.swap_rows(k - 1, k - 2);
    for (std::size_t r = 0; r < n_; ++r) std::swap(g_(r, k - 1), g_(r, k - 2));
    for (std::size_t j = 1; j + 2 <= k; ++j) std::swap(lambda_[k][j], lambda_[k - 1][j]);
    const Integer lam = lambda_[k][k - 1];
    Integer b = d_[k - 2] * d_[k] + lam * lam;
    mpz_divexact(b.get_mpz_t(), b.get_mpz_t(), d_[k - 1].get_mpz_t());
    for (std::size_t i = k + 1; i <= kmax_; ++i) {
      const Integer t = lambda_[i][k];
      Integer v = d_[k] * lambda_[i][k - 1] - lam * t;
      mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), d_[k - 1].get_mpz_t());
      lambda_[i][k] = v;
      Integer w = b * t + lam * lambda_[i][k];
      mpz_divexact(w.get_mpz_t(), w.get_mpz_t(), d_[k].get_mpz_t());
      lambda_[i][k - 1] = w;
    }
    d_[k - 1] = b;
  }

  std::size_t n_;
  std::size_t kmax_ = 1;
  IntMatrix g_;
  IntMatrix h_;
  std::vector<Integer> d_;
  std::vector<std::vector<Integer>> lambda_;
  Integer p_, q_;
};

}  // namespace

LllResult lll_reduce_gram(const RatMatrix& gram, const Rational& delta) {
  if (!gram.is_symmetric()) throw LinalgError("lll_reduce_gram: Gram matrix not symmetric");
  if (delta <= Rational(1, 4) || delta > 1)
    throw LinalgError("lll_reduce_gram: delta must lie in (1/4, 1]");
  const Integer den = common_denominator(gram);
  IntegralLll lll(to_integer(gram.scaled(Rational(den))), delta);
  lll.run();
  LllResult out;
  out.transform = lll.transform();
  RatMatrix t = to_rational(out.transform);
  out.gram = t * gram * t.transpose();
  return out;
}

}  // namespace lat40
