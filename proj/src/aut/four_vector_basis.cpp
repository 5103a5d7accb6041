#include <lat40/aut.hpp>

namespace lat40 {

namespace {

// Rows of `coords` (lattice coordinates) are part of a basis iff their
// columns generate Z^k.
bool primitive(const std::vector<std::vector<Integer>>& coords) {
  const std::size_t k = coords.size();
  const std::size_t n = coords.front().size();
  IntMatrix t(n, k);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < n; ++c) t(c, r) = coords[r][c];
  return hnf_basis(t) == IntMatrix::identity(k);
}

}  // namespace

BasisSelection four_vector_basis(const Lattice& l, const VectorSet& s, const Partition& blocks,
                                 std::span<const std::size_t> preferred) {
  const auto norm = s.common_norm();
  if (s.empty() || !norm) throw AutError("four_vector_basis: no minimal vectors to build from");
  const AmbientFrame& frame = *l.frame();
  const std::size_t n = l.rank();

  std::vector<std::vector<Integer>> candidates;
  LllResult red = lll_reduce_gram(l.gram(), Rational(99, 100));
  IntMatrix reduced = red.transform * l.basis();
  for (std::size_t r = 0; r < n; ++r)
    if (red.gram(r, r) == *norm)
      candidates.emplace_back(reduced.row(r).begin(), reduced.row(r).end());
  for (std::size_t i : preferred) candidates.push_back(s.big(i));
  for (std::size_t i = 0; i < s.size(); ++i) candidates.push_back(s.big(i));

  std::vector<std::vector<Integer>> chosen, coords;
  for (const auto& v : candidates) {
    if (chosen.size() == n) break;
    std::vector<Integer> c = l.coordinates(v);
    if (c.empty()) throw AutError("four_vector_basis: minimal vector outside the lattice");
    coords.push_back(std::move(c));
    if (primitive(coords)) {
      chosen.push_back(v);
    } else {
      coords.pop_back();
    }
  }
  if (chosen.size() != n) throw AutError("four_vector_basis: no basis of minimal vectors found");

  BasisSelection out;
  out.vectors = IntMatrix(n, l.dim());
  const std::vector<std::uint32_t> block_of = blocks.block_of();
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < l.dim(); ++c) out.vectors(r, c) = chosen[r][c];
    std::vector<std::int64_t> v64(chosen[r].size());
    for (std::size_t c = 0; c < v64.size(); ++c) v64[c] = chosen[r][c].get_si();
    const std::size_t idx = s.find(v64);
    if (idx == VectorSet::npos) throw AutError("four_vector_basis: basis vector not in the set");
    out.block.push_back(block_of.empty() ? 0 : block_of[idx]);
  }
  out.gram = IntMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.gram(i, j) = inner_integral(frame, chosen[i], chosen[j]);
  return out;
}

}  // namespace lat40
