#include <lat40/enumeration.hpp>

#include "interval.hpp"

#include <cmath>
#include <thread>

namespace lat40 {

namespace {

using interval::Interval;

// Exact integer form used to accept leaves.
struct ExactForm {
  Mat64 g;            // den · gram
  Integer den;
  __int128 bound_num = 0;  // accept iff x·g·xᵀ · bound_den <= bound_num · den
  __int128 bound_den = 1;
};

class Enumerator {
 public:
  Enumerator(const RatMatrix& gram, const Rational& bound, const ShortVisitor& visit,
             unsigned worker, unsigned workers)
      : n_(gram.rows()), visit_(visit), worker_(worker), workers_(workers) {
    LdlDecomposition ldl = rational_cholesky(gram);
    q_.resize(n_);
    u_.assign(n_ * n_, Interval{});
    for (std::size_t i = 0; i < n_; ++i) {
      q_[i] = interval::from_rational(ldl.diag[i]);
      for (std::size_t j = i + 1; j < n_; ++j) u_[i * n_ + j] = interval::from_rational(ldl.upper(i, j));
    }
    bound_hi_ = interval::from_rational(bound).hi;
    exact_.den = common_denominator(gram);
    exact_.g = to_mat64(to_integer(gram.scaled(Rational(exact_.den))));
    if (!exact_.den.fits_slong_p() || !bound.get_num().fits_slong_p() ||
        !bound.get_den().fits_slong_p())
      throw LinalgError("enumeration bound or form denominator too large");
    exact_.bound_num = bound.get_num().get_si();
    exact_.bound_den = bound.get_den().get_si();
    x_.assign(n_, 0);
  }

  void run() {
    if (n_ == 0) return;
    recurse(n_ - 1, Interval{0, 0}, true);
  }

 private:
  bool recurse(std::size_t i, Interval above, bool zero_above) {
    Interval c{0, 0};
    for (std::size_t j = i + 1; j < n_; ++j) {
      if (x_[j] != 0) c = interval::add(c, interval::scale(u_[i * n_ + j], -double(x_[j])));
    }
    const double remaining = interval::up(bound_hi_ - above.lo);
    if (remaining < 0) return true;
    const double rad = interval::sqrt_ratio_up(remaining, q_[i].lo);
    std::int64_t lo = std::int64_t(std::ceil(interval::down(c.lo - rad)));
    std::int64_t hi = std::int64_t(std::floor(interval::up(c.hi + rad)));
    if (zero_above) lo = std::max<std::int64_t>(lo, 0);
    for (std::int64_t v = lo; v <= hi; ++v) {
      if (i == n_ - 1 && workers_ > 1 && std::uint64_t(v - lo) % workers_ != worker_) continue;
      Interval y = interval::sub_from(double(v), c);
      Interval s = interval::add(above, interval::mul_nonneg(q_[i], interval::square(y)));
      if (s.lo > bound_hi_) continue;
      x_[i] = v;
      const bool zero = zero_above && v == 0;
      if (i == 0) {
        if (zero) continue;
        if (!leaf()) return false;
      } else if (!recurse(i - 1, s, zero)) {
        return false;
      }
    }
    x_[i] = 0;
    return true;
  }

  bool leaf() {
    __int128 acc = 0;
    for (std::size_t a = 0; a < n_; ++a) {
      if (x_[a] == 0) continue;
      __int128 row = 0;
      for (std::size_t b = 0; b < n_; ++b) row += __int128(exact_.g(a, b)) * x_[b];
      acc += row * x_[a];
    }
    if (acc * exact_.bound_den > exact_.bound_num * __int128(exact_.den.get_si())) return true;
    Rational norm(Integer(static_cast<long>(acc)), exact_.den);
    norm.canonicalize();
    return visit_(x_, norm);
  }

  std::size_t n_;
  std::vector<Interval> q_;
  std::vector<Interval> u_;
  double bound_hi_ = 0;
  ExactForm exact_;
  std::vector<std::int64_t> x_;
  const ShortVisitor& visit_;
  unsigned worker_, workers_;
};

struct ReducedLattice {
  RatMatrix gram;
  Mat64 basis;  // reduced basis rows in e-coordinates
};

ReducedLattice reduce(const Lattice& l) {
  // A strong delta pays for itself many times over in the search tree.
  LllResult r = lll_reduce_gram(l.gram(), Rational(99, 100));
  return {r.gram, to_mat64(r.transform * l.basis())};
}

std::vector<std::int64_t> to_ambient(std::span<const std::int64_t> x, const Mat64& basis) {
  std::vector<std::int64_t> v(basis.cols());
  for (std::size_t c = 0; c < basis.cols(); ++c) {
    __int128 acc = 0;
    for (std::size_t r = 0; r < basis.rows(); ++r) acc += __int128(x[r]) * basis(r, c);
    if (acc > INT64_MAX || acc < INT64_MIN) throw LinalgError("vector coordinate exceeds 64 bits");
    v[c] = std::int64_t(acc);
  }
  return v;
}

}  // namespace

void enumerate_short(const RatMatrix& gram, const Rational& bound, const ShortVisitor& visit) {
  if (bound <= 0) throw LinalgError("enumeration bound must be positive");
  Enumerator e(gram, bound, visit, 0, 1);
  e.run();
}

VectorSet vectors_of_norm_at_most(const Lattice& l, const Rational& bound,
                                  const EnumerationOptions& options) {
  if (bound <= 0) throw LinalgError("enumeration bound must be positive");
  ReducedLattice red = reduce(l);
  const unsigned workers = std::max(1u, options.threads);
  std::vector<VectorSet> parts(workers, VectorSet(l.dim(), l.frame()->id, options.modulo_sign));
  auto work = [&](unsigned w) {
    VectorSet& out = parts[w];
    ShortVisitor visit = [&](std::span<const std::int64_t> x, const Rational& norm) {
      std::vector<std::int64_t> v = to_ambient(x, red.basis);
      out.push_back(std::span<const std::int64_t>(v), norm);
      if (!options.modulo_sign) {
        for (auto& c : v) c = -c;
        out.push_back(std::span<const std::int64_t>(v), norm);
      }
      return true;
    };
    Enumerator e(red.gram, bound, visit, w, workers);
    e.run();
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  VectorSet result(l.dim(), l.frame()->id, options.modulo_sign);
  for (const auto& p : parts)
    for (std::size_t i = 0; i < p.size(); ++i) result.push_back(p[i], p.norm(i));
  result.canonicalize();
  return result;
}

Rational min_norm(const Lattice& l) {
  ReducedLattice red = reduce(l);
  Rational bound = red.gram(0, 0);
  for (std::size_t i = 1; i < red.gram.rows(); ++i) bound = std::min(bound, red.gram(i, i));
  Rational best = bound;
  enumerate_short(red.gram, bound, [&](std::span<const std::int64_t>, const Rational& n) {
    if (n < best) best = n;
    return true;
  });
  return best;
}

std::uint64_t count_norm(const Lattice& l, const Rational& m) {
  ReducedLattice red = reduce(l);
  std::uint64_t count = 0;
  enumerate_short(red.gram, m, [&](std::span<const std::int64_t>, const Rational& n) {
    if (n == m) count += 2;
    return true;
  });
  return count;
}

bool has_vector_below(const Lattice& l, const Rational& bound) {
  ReducedLattice red = reduce(l);
  bool found = false;
  enumerate_short(red.gram, bound, [&](std::span<const std::int64_t>, const Rational& n) {
    if (n < bound) {
      found = true;
      return false;
    }
    return true;
  });
  return found;
}

}  // namespace lat40
