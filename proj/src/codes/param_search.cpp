#include <lat40/enumeration.hpp>
#include <lat40/qr_codes.hpp>

#include <algorithm>
#include <sstream>

namespace lat40 {

namespace {

using Tuple = std::array<int, 6>;
using Rows = std::array<std::array<int, 20>, 20>;

int mod(int x, int n) { return ((x % n) + n) % n; }

// Same rows as gqr_generators, without going through big integers.
Rows rows_of(const Tuple& p, int n) {
  static const auto chi = [] {
    std::array<int, 19> c{};
    for (int x = 0; x < 19; ++x) c[std::size_t(x)] = legendre19(x);
    return c;
  }();
  const auto [a, b, d, s, t, e] = p;
  Rows r{};
  for (int i = 0; i < 19; ++i) {
    auto& row = r[code_position(i)];
    for (int j = 0; j < 19; ++j)
      row[code_position(j)] = i == j ? d : chi[std::size_t(mod(i - j, 19))] == 1 ? s : t;
    row[kInfinityPosition] = e;
  }
  for (std::size_t j = 0; j < 19; ++j) r[kInfinityPosition][j] = a;
  r[kInfinityPosition][kInfinityPosition] = b;
  for (auto& row : r)
    for (auto& x : row) x = mod(x, n);
  return r;
}

// u_i · u_j depends only on i − j for i, j ∈ F19, so pairing the rows u_0
// and u_inf with every row covers all pairs.
template <typename Pair>
bool all_pairs_vanish(Pair pair) {
  const std::size_t anchors[] = {code_position(0), kInfinityPosition};
  for (std::size_t a : anchors)
    for (std::size_t j = 0; j < 20; ++j)
      if (pair(a, j) != 0) return false;
  return true;
}

Tuple decode(std::uint64_t code, int n) {
  Tuple t{};
  for (int i = 5; i >= 0; --i) {
    t[std::size_t(i)] = int(code % std::uint64_t(n));
    code /= std::uint64_t(n);
  }
  return t;
}

std::uint64_t power(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// CRT: x ≡ a (mod 3), x ≡ b (mod 7).
int crt21(int a, int b) {
  for (int x = 0; x < 21; ++x)
    if (x % 3 == a && x % 7 == b) return x;
  return 0;
}

Tuple scale(const Tuple& t, int lambda, int n) {
  Tuple out{};
  for (std::size_t i = 0; i < 6; ++i) out[i] = mod(t[i] * lambda, n);
  return out;
}

// Scaling (p3, p21) by μ ∈ (Z/3)ˣ and λ ∈ (Z/21)ˣ with λ ≡ μ mod 3 multiplies
// each code by a unit and leaves the glued lattice unchanged.
bool is_unit_minimal(const Tuple& p3, const Tuple& p21) {
  for (int lambda = 1; lambda < 21; ++lambda) {
    if (lambda % 3 == 0 || lambda % 7 == 0) continue;
    const auto image = std::make_pair(scale(p3, lambda % 3, 3), scale(p21, lambda, 21));
    if (image < std::make_pair(p3, p21)) return false;
  }
  return true;
}

struct Screen {
  bool isotropic = false;
  bool index_ok = false;
};

// 7-part: 2·w_i·w_j ≡ 0 mod 7 and the code w mod 7 has dimension 10.
Screen screen7(const Tuple& q7) {
  const Rows w = rows_of(q7, 7);
  Screen s;
  s.isotropic = all_pairs_vanish([&](std::size_t i, std::size_t j) {
    int q = 0;
    for (std::size_t k = 0; k < 20; ++k) q += w[i][k] * w[j][k];
    return (2 * q) % 7;
  });
  if (s.isotropic) {
    IntMatrix m(20, 20);
    for (std::size_t i = 0; i < 20; ++i)
      for (std::size_t j = 0; j < 20; ++j) m(i, j) = w[i][j];
    s.index_ok = rank_mod_p(m, 7) == 10;
  }
  return s;
}

// 3-part: 28uu + 7(uw + wu) + 2ww ≡ uu + uw + wu + 2ww mod 3, and the code
// generated by (u | w mod 3) in F3^40 has dimension 20. The even part of
// the diagonal condition (mod 42) always holds.
Screen screen3(const Tuple& p3, const Tuple& q3) {
  const Rows u = rows_of(p3, 3), w = rows_of(q3, 3);
  Screen s;
  s.isotropic = all_pairs_vanish([&](std::size_t i, std::size_t j) {
    int q = 0;
    for (std::size_t k = 0; k < 20; ++k)
      q += u[i][k] * u[j][k] + u[i][k] * w[j][k] + w[i][k] * u[j][k] + 2 * w[i][k] * w[j][k];
    return q % 3;
  });
  if (s.isotropic) {
    IntMatrix stacked(20, 40);
    for (std::size_t i = 0; i < 20; ++i)
      for (std::size_t j = 0; j < 20; ++j) {
        stacked(i, j) = u[i][j];
        stacked(i, 20 + j) = w[i][j];
      }
    s.index_ok = rank_mod_p(stacked, 3) == 20;
  }
  return s;
}

}  // namespace

SearchReport search_params(const SearchOptions& options) {
  SearchReport report;
  report.space = power(3, 6) * power(21, 6);

  std::vector<Tuple> p3s, q3s, q7s;
  if (options.fixed_p3) {
    p3s.push_back(CodeSpec(3, *options.fixed_p3).params);
  } else {
    for (std::uint64_t c = 0; c < power(3, 6); ++c) p3s.push_back(decode(c, 3));
  }
  if (options.fixed_p21) {
    const Tuple p = CodeSpec(21, *options.fixed_p21).params;
    q3s.push_back(scale(p, 1, 3));
    q7s.push_back(scale(p, 1, 7));
  } else {
    for (std::uint64_t c = 0; c < power(3, 6); ++c) q3s.push_back(decode(c, 3));
    for (std::uint64_t c = 0; c < power(7, 6); ++c) q7s.push_back(decode(c, 7));
  }

  std::vector<Screen> s7(q7s.size());
  std::uint64_t iso7 = 0, idx7 = 0;
  for (std::size_t i = 0; i < q7s.size(); ++i) {
    s7[i] = screen7(q7s[i]);
    iso7 += s7[i].isotropic;
    idx7 += s7[i].isotropic && s7[i].index_ok;
  }
  report.admissible_mod7 = iso7;

  std::vector<Screen> s3(p3s.size() * q3s.size());
  std::uint64_t iso3 = 0, idx3 = 0;
  for (std::size_t a = 0; a < p3s.size(); ++a)
    for (std::size_t b = 0; b < q3s.size(); ++b) {
      Screen& s = s3[a * q3s.size() + b];
      s = screen3(p3s[a], q3s[b]);
      iso3 += s.isotropic;
      idx3 += s.isotropic && s.index_ok;
    }
  report.admissible_mod3 = iso3;
  report.isotropic = iso3 * iso7;
  report.index_ok = idx3 * idx7;

  // Recombine in lexicographic order of (p3, p21).
  std::vector<std::pair<Tuple, std::pair<std::size_t, std::size_t>>> p21s;
  for (std::size_t b = 0; b < q3s.size(); ++b)
    for (std::size_t c = 0; c < q7s.size(); ++c) {
      if (!s7[c].isotropic || (options.check_index && !s7[c].index_ok)) continue;
      Tuple p{};
      for (std::size_t k = 0; k < 6; ++k) p[k] = crt21(q3s[b][k], q7s[c][k]);
      p21s.push_back({p, {b, c}});
    }
  std::sort(p21s.begin(), p21s.end());

  for (std::size_t a = 0; a < p3s.size() && report.hits.size() < options.cap; ++a) {
    for (const auto& [p21, where] : p21s) {
      if (report.hits.size() >= options.cap) break;
      const Screen& s = s3[a * q3s.size() + where.first];
      if (!s.isotropic || (options.check_index && !s.index_ok)) continue;
      if (options.unit_reduce && !is_unit_minimal(p3s[a], p21)) continue;
      SearchHit hit{CodeSpec(3, p3s[a]), CodeSpec(21, p21), true, s.index_ok, false};
      if (options.min_norm > 0) {
        ++report.enumerated;
        if (!hit.index_ok) continue;  // not unimodular: the min-norm stage does not apply
        const IntMatrix u = gqr_generators(hit.p3), w = gqr_generators(hit.p21);
        if (!isotropy_check(u, w)) throw LinalgError("search_params: screening disagrees with isotropy_check");
        Lattice l(glue_frame(), glue_basis(u, w));
        hit.min_ok = !has_vector_below(l, Rational(options.min_norm));
        if (!hit.min_ok) continue;
        ++report.min_ok;
      }
      report.hits.push_back(hit);
    }
  }
  return report;
}

std::string to_json_line(const SearchHit& hit) {
  std::ostringstream s;
  s << "{\"p3\":\"" << hit.p3.to_string() << "\",\"p21\":\"" << hit.p21.to_string()
    << "\",\"isotropic\":" << (hit.isotropic ? "true" : "false")
    << ",\"index\":" << (hit.index_ok ? "true" : "false")
    << ",\"min\":" << (hit.min_ok ? "true" : "false") << "}";
  return s.str();
}

}  // namespace lat40
