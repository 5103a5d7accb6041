#pragma once

#include <lat40/lattice.hpp>

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

namespace lat40 {

/// Six-parameter template (a,b,d,s,t,e) over Z/nZ; text form "n:a,b,d,s,t,e".
struct CodeSpec {
  int modulus = 1;
  std::array<int, 6> params{};

  CodeSpec() = default;
  CodeSpec(int n, std::array<int, 6> p);  // reduces p mod n

  static CodeSpec parse(const std::string& text);
  std::string to_string() const;
  friend bool operator==(const CodeSpec&, const CodeSpec&) = default;
};

/// Legendre symbol mod an odd prime p.
int legendre(long x, long p);
inline int legendre19(long x) { return legendre(x, 19); }

/// Generator rows u_1..u_18, u_0, u_inf over coordinates (1..18, 0, inf),
/// entries lifted into [0, n).
IntMatrix gqr_generators(const CodeSpec& spec);

/// Position of field element x (0..18) in the (1..18, 0, inf) numbering; the
/// point at infinity is position 19.
inline std::size_t code_position(int x) { return x == 0 ? 18 : std::size_t(x - 1); }
inline constexpr std::size_t kInfinityPosition = 19;

/// Totally isotropic test in the glue frame: rows (u_i | w_i) paired through
/// [[28I,7I],[7I,2I]] vanish mod 21 off the diagonal and mod 42 on it.
bool isotropy_check(const IntMatrix& u, const IntMatrix& w);

/// Same condition for arbitrary glue rows in any frame: every pairwise
/// inner product integral, every norm even.
bool glue_rows_isotropic(const AmbientFrame& frame, const IntMatrix& rows);

/// |det B| == 63^10.
bool index_check(const IntMatrix& b);

/// HNF basis of the preimage of the code generated by rows (u_i | w_i) over
/// diag(n1·I, n2·I). Throws LinalgError if the stack has rank < 2·20.
IntMatrix glue_basis(const IntMatrix& u, const IntMatrix& w, int n1 = 3, int n2 = 21);

/// Rank of a matrix over F_p (entries reduced mod p first).
std::size_t rank_mod_p(const IntMatrix& m, int p);

struct SearchOptions {
  bool check_index = true;
  // Require min >= min_norm (0 disables the enumeration stage).
  int min_norm = 0;
  std::size_t cap = 100;
  // Keep only the smallest member of each orbit under scaling by units of Z/21.
  bool unit_reduce = false;
  std::optional<std::array<int, 6>> fixed_p3;
  std::optional<std::array<int, 6>> fixed_p21;
};

struct SearchHit {
  CodeSpec p3, p21;
  bool isotropic = false;
  bool index_ok = false;
  // Only meaningful when the enumeration stage ran.
  bool min_ok = false;
};

struct SearchReport {
  // Counts at each stage, as exact integers (the space is ~6.3e10).
  std::uint64_t space = 0;
  std::uint64_t admissible_mod7 = 0;   // p21 mod 7 tuples passing the 7-part
  std::uint64_t admissible_mod3 = 0;   // (p3, p21 mod 3) passing the 3-part
  std::uint64_t isotropic = 0;
  std::uint64_t index_ok = 0;
  std::uint64_t enumerated = 0;        // candidates sent to the min-norm stage
  std::uint64_t min_ok = 0;
  std::vector<SearchHit> hits;
};

/// Staged sweep over (p3, p21). The isotropy and index conditions split by
/// CRT into a mod-3 part and a mod-7 part, which are screened separately and
/// recombined in lexicographic order.
SearchReport search_params(const SearchOptions& options);

std::string to_json_line(const SearchHit& hit);

}  // namespace lat40
