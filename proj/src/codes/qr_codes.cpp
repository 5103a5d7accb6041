#include <lat40/qr_codes.hpp>

#include <sstream>

namespace lat40 {

namespace {
int mod(long x, long n) {
  long r = x % n;
  return int(r < 0 ? r + n : r);
}
}  // namespace

CodeSpec::CodeSpec(int n, std::array<int, 6> p) : modulus(n), params(p) {
  if (n <= 0) throw std::invalid_argument("code modulus must be positive");
  for (auto& x : params) x = mod(x, n);
}

CodeSpec CodeSpec::parse(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw FormatError("code spec must look like n:a,b,d,s,t,e");
  std::array<int, 6> p{};
  int n = 0;
  try {
    n = std::stoi(text.substr(0, colon));
    std::istringstream rest(text.substr(colon + 1));
    std::string item;
    std::size_t k = 0;
    while (std::getline(rest, item, ',')) {
      if (k == 6) throw FormatError("code spec has more than six parameters");
      std::size_t used = 0;
      p[k++] = std::stoi(item, &used);
      if (used != item.size()) throw FormatError("bad parameter '" + item + "'");
    }
    if (k != 6) throw FormatError("code spec needs six parameters");
  } catch (const std::logic_error&) {
    throw FormatError("cannot parse code spec '" + text + "'");
  }
  if (n <= 0) throw FormatError("code modulus must be positive");
  return CodeSpec(n, p);
}

std::string CodeSpec::to_string() const {
  std::ostringstream s;
  s << modulus << ':';
  for (std::size_t i = 0; i < 6; ++i) s << (i ? "," : "") << params[i];
  return s.str();
}

int legendre(long x, long p) {
  int r = mod(x, p);
  if (r == 0) return 0;
  // Euler's criterion by repeated squaring.
  long result = 1, base = r, e = (p - 1) / 2;
  while (e > 0) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result == 1 ? 1 : -1;
}

IntMatrix gqr_generators(const CodeSpec& spec) {
  const auto [a, b, d, s, t, e] = spec.params;
  IntMatrix g(20, 20);
  for (int i = 0; i < 19; ++i) {
    const std::size_t r = code_position(i);
    for (int j = 0; j < 19; ++j) {
      int v = 0;
      if (i == j) {
        v = d;
      } else {
        v = legendre19(i - j) == 1 ? s : t;
      }
      g(r, code_position(j)) = v;
    }
    g(r, kInfinityPosition) = e;
  }
  for (std::size_t j = 0; j < 19; ++j) g(kInfinityPosition, j) = a;
  g(kInfinityPosition, kInfinityPosition) = b;
  return g;
}

bool isotropy_check(const IntMatrix& u, const IntMatrix& w) {
  if (u.cols() != 20 || w.cols() != 20 || u.rows() != w.rows())
    throw LinalgError("isotropy_check expects two generator matrices with 20 columns");
  const std::size_t n = u.rows();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      Integer q = 0;
      for (std::size_t k = 0; k < 20; ++k) {
        q += 28 * u(i, k) * u(j, k) + 7 * (u(i, k) * w(j, k) + w(i, k) * u(j, k)) +
             2 * w(i, k) * w(j, k);
      }
      const int m = i == j ? 42 : 21;
      if (q % m != 0) return false;
    }
  }
  return true;
}

bool glue_rows_isotropic(const AmbientFrame& frame, const IntMatrix& rows) {
  for (std::size_t i = 0; i < rows.rows(); ++i) {
    for (std::size_t j = i; j < rows.rows(); ++j) {
      Rational q = inner(frame, rows.row(i), rows.row(j));
      if (q.get_den() != 1) return false;
      if (i == j && q.get_num() % 2 != 0) return false;
    }
  }
  return true;
}

bool index_check(const IntMatrix& b) {
  if (!b.is_square()) return false;
  Integer target;
  mpz_ui_pow_ui(target.get_mpz_t(), 63, 10);
  return abs(det(b)) == target;
}

IntMatrix glue_basis(const IntMatrix& u, const IntMatrix& w, int n1, int n2) {
  if (u.rows() != w.rows()) throw LinalgError("glue_basis: generator row counts differ");
  const std::size_t k = u.cols(), m = w.cols();
  // The diagonal rows go first so the incremental HNF stays reduced.
  IntMatrix stack(k + m + u.rows(), k + m);
  for (std::size_t j = 0; j < k; ++j) stack(j, j) = n1;
  for (std::size_t j = 0; j < m; ++j) stack(k + j, k + j) = n2;
  for (std::size_t i = 0; i < u.rows(); ++i) {
    for (std::size_t j = 0; j < k; ++j) stack(k + m + i, j) = mod(u(i, j).get_si(), n1);
    for (std::size_t j = 0; j < m; ++j) stack(k + m + i, k + j) = mod(w(i, j).get_si(), n2);
  }
  IntMatrix h = hnf_basis(stack);
  if (h.rows() != k + m) throw LinalgError("glue_basis: stacked generators are rank deficient");
  return h;
}

std::size_t rank_mod_p(const IntMatrix& m, int p) {
  std::vector<std::vector<int>> a(m.rows(), std::vector<int>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = mod(m(i, j).get_si(), p);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t piv = rank;
    while (piv < m.rows() && a[piv][c] == 0) ++piv;
    if (piv == m.rows()) continue;
    std::swap(a[piv], a[rank]);
    int inv = 1;
    while (a[rank][c] * inv % p != 1) ++inv;
    for (auto& x : a[rank]) x = x * inv % p;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == rank || a[i][c] == 0) continue;
      const int f = a[i][c];
      for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = mod(a[i][j] - f * a[rank][j], p);
    }
    ++rank;
  }
  return rank;
}

}  // namespace lat40
