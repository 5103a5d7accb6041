#include <lat40/glue.hpp>

#include <algorithm>
#include <optional>

namespace lat40 {

IntMatrix scaled_a_n_gram(std::size_t n) {
  IntMatrix g = a_n_gram(n);
  for (auto& x : g.data()) x *= 2;
  return g;
}

IntMatrix m_target_gram() {
  const IntMatrix a1 = scaled_a_n_gram(1);
  const IntMatrix a19 = scaled_a_n_gram(19);
  const IntMatrix parts[] = {a1, a1, a19, a19};
  return block_diagonal(std::span<const IntMatrix>(parts));
}

namespace {

using Row = std::vector<Integer>;

// Two ±2-groups of 19 in `block`, each orthogonal to the other and to a, b.
// Returns the 38 sign-fixed rows (group by group), or nothing.
std::optional<std::vector<Row>> root_groups(const VectorSet& s, const Block& block,
                                            const AmbientFrame& f, const Row& a, const Row& b) {
  auto ip = [&](const Row& x, const Row& y) { return inner_integral(f, x, y); };
  std::vector<Row> rows;
  for (auto m : block.members) rows.push_back(s.big(m));
  for (const auto& r : rows)
    if (ip(r, a) != 0 || ip(r, b) != 0) return std::nullopt;
  const std::size_t n = rows.size();
  std::vector<int> comp(n, -1);
  int ncomp = 0;
  for (std::size_t start = 0; start < n; ++start) {
    if (comp[start] >= 0) continue;
    std::vector<std::size_t> stack{start};
    comp[start] = ncomp;
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < n; ++j) {
        if (comp[j] >= 0) continue;
        const Integer v = ip(rows[i], rows[j]);
        if (v == 2 || v == -2) {
          comp[j] = ncomp;
          stack.push_back(j);
        }
      }
    }
    ++ncomp;
  }
  if (ncomp != 2) return std::nullopt;
  std::vector<Row> out;
  for (int c = 0; c < 2; ++c) {
    std::vector<Row> g;
    for (std::size_t i = 0; i < n; ++i) {
      if (comp[i] != c) continue;
      Row r = rows[i];
      if (!g.empty() && ip(g.front(), r) < 0)
        for (auto& x : r) x = -x;
      g.push_back(std::move(r));
    }
    if (g.size() != 19) return std::nullopt;
    for (std::size_t x = 0; x < g.size(); ++x)
      for (std::size_t y = x + 1; y < g.size(); ++y)
        if (ip(g[x], g[y]) != 2) return std::nullopt;
    for (auto& r : g) out.push_back(std::move(r));
  }
  for (std::size_t x = 0; x < 19; ++x)
    for (std::size_t y = 19; y < 38; ++y)
      if (ip(out[x], out[y]) != 0) return std::nullopt;
  return out;
}

}  // namespace

SublatticeM find_sublattice_M(const VectorSet& s, const Partition& blocks, const FramePtr& frame) {
  if (!s.modulo_sign()) throw GlueError("find_sublattice_M expects a folded set");
  const AmbientFrame& f = *frame;
  const Block* small = blocks.find({1, 1});
  if (!small || small->members.size() != 2) throw GlueError("S1.1 must hold exactly ±a, ±b");
  const Row a = s.big(small->members[0]);
  const Row b = s.big(small->members[1]);
  if (inner_integral(f, a, b) != 0) throw GlueError("the two vectors of S1.1 are not orthogonal");

  // S18.1 first, then every other block of the same shape.
  const TypeSig shape{38, 0, 18, 1};
  std::vector<const Block*> order;
  if (const Block* r = blocks.find({18, 1})) order.push_back(r);
  for (const auto& blk : blocks.blocks)
    if (blk.size() == 76 && blk.type == shape && blk.path != std::vector<int>{18, 1})
      order.push_back(&blk);

  for (const Block* blk : order) {
    auto groups = root_groups(s, *blk, f, a, b);
    if (!groups) continue;
    std::vector<Row> chosen{a, b}, chain{a, b};
    for (int c = 0; c < 2; ++c) {
      const Row* g = &(*groups)[std::size_t(19 * c)];
      chain.push_back(g[0]);
      for (std::size_t k = 1; k < 19; ++k) {
        Row w(g[k].size());
        for (std::size_t j = 0; j < w.size(); ++j) w[j] = g[k][j] - g[k - 1][j];
        chain.push_back(std::move(w));
      }
    }
    for (auto& r : *groups) chosen.push_back(std::move(r));
    IntMatrix chosen_m(40, s.dim()), chain_m(40, s.dim()), gram(40, 40);
    for (std::size_t r = 0; r < 40; ++r)
      for (std::size_t c = 0; c < s.dim(); ++c) {
        chosen_m(r, c) = chosen[r][c];
        chain_m(r, c) = chain[r][c];
      }
    for (std::size_t i = 0; i < 40; ++i)
      for (std::size_t j = 0; j < 40; ++j) gram(i, j) = inner_integral(f, chain[i], chain[j]);
    if (!(gram == m_target_gram())) continue;
    Lattice lattice(frame, chain_m);
    return SublatticeM{std::move(chosen_m), std::move(chain_m), std::move(gram), std::move(lattice),
                       blk->path};
  }
  throw GlueError("no block of shape [38,0,18,1] completes S1.1 to A1(2)^2 + A19(2)^2");
}

bool verify_theorem3(const Lattice& l, const Lattice& m, const Lattice& o40) {
  return equals(lattice_sum(l, m), o40);
}

Integer sublattice_index(const Lattice& inner, const Lattice& outer) {
  if (inner.rank() != outer.rank()) throw GlueError("sublattice_index needs equal ranks");
  const std::size_t n = inner.rank();
  IntMatrix coords(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<Integer> c = outer.coordinates(inner.basis().row(r));
    if (c.empty()) throw GlueError("sublattice_index: not a sublattice");
    for (std::size_t k = 0; k < n; ++k) coords(r, k) = c[k];
  }
  Integer index = 1;
  for (const auto& d : snf_diagonal(coords)) index *= d;
  return index;
}

}  // namespace lat40
