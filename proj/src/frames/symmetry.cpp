#include <lat40/frames.hpp>
#include <lat40/qr_codes.hpp>

#include <algorithm>
#include <deque>
#include <set>

namespace lat40 {

bool MatrixGroup::contains(const Mat64& g) const {
  return std::find(elements.begin(), elements.end(), g) != elements.end();
}

MatrixGroup close_group(std::vector<Mat64> generators, std::size_t cap) {
  if (generators.empty()) throw FrameSearchError("close_group needs a generator");
  const std::size_t n = generators.front().rows();
  MatrixGroup g;
  g.generators = std::move(generators);
  std::set<std::vector<std::int64_t>> seen;
  const Mat64 id = Mat64::identity(n);
  g.elements.push_back(id);
  seen.insert(id.data());
  for (std::size_t i = 0; i < g.elements.size(); ++i) {
    for (const auto& gen : g.generators) {
      Mat64 p = g.elements[i] * gen;
      if (seen.insert(p.data()).second) {
        g.elements.push_back(std::move(p));
        if (g.elements.size() > cap)
          throw FrameSearchError("group closure exceeds " + std::to_string(cap) + " elements");
      }
    }
  }
  return g;
}

std::size_t element_order(const Mat64& g, std::size_t cap) {
  const Mat64 id = Mat64::identity(g.rows());
  Mat64 p = g;
  for (std::size_t k = 1; k <= cap; ++k) {
    if (p == id) return k;
    p = p * g;
  }
  return 0;
}

std::vector<std::int64_t> act(std::span<const std::int64_t> x, const Mat64& g) {
  std::vector<std::int64_t> y(g.cols(), 0);
  for (std::size_t r = 0; r < x.size(); ++r) {
    if (x[r] == 0) continue;
    for (std::size_t c = 0; c < g.cols(); ++c) {
      std::int64_t t;
      if (__builtin_mul_overflow(x[r], g(r, c), &t) || __builtin_add_overflow(y[c], t, &y[c]))
        throw LinalgError("act: 64-bit overflow");
    }
  }
  return y;
}

Mat64 in_lattice_basis(const Lattice& l, const Mat64& g_e) {
  RatMatrix b = to_rational(l.basis());
  RatMatrix conj = b * to_rational(to_integer(g_e)) * inverse(b);
  return to_mat64(to_integer(conj));
}

bool is_isometry_of(const Lattice& l, const Mat64& g_e) {
  const AmbientFrame& f = *l.frame();
  RatMatrix g = to_rational(to_integer(g_e));
  if (!(g * f.gram * g.transpose() == f.gram)) return false;
  IntMatrix img = to_integer(g_e);
  img = l.basis() * img;
  for (std::size_t r = 0; r < img.rows(); ++r)
    if (!l.contains(img.row(r))) return false;
  return true;
}

namespace {

// Permutation t ↦ perm(t) of F19 ∪ {∞} applied to both 20-blocks:
// (x·P)[pos(t)] = x[pos(perm(t))].
Mat64 block_permutation(int (*perm)(int)) {
  Mat64 p(40, 40);
  for (int t = 0; t < 19; ++t) {
    const std::size_t dst = code_position(t), src = code_position(perm(t));
    p(src, dst) = 1;
    p(20 + src, 20 + dst) = 1;
  }
  p(kInfinityPosition, kInfinityPosition) = 1;
  p(20 + kInfinityPosition, 20 + kInfinityPosition) = 1;
  return p;
}

}  // namespace

MatrixGroup gamma_group(const Lattice& o40) {
  if (o40.dim() != 40 || !o40.full_rank()) throw FrameSearchError("gamma_group needs a rank-40 lattice");
  Mat64 pc = block_permutation([](int t) { return (t + 1) % 19; });
  Mat64 ps = block_permutation([](int t) { return (4 * t) % 19; });
  Mat64 neg = Mat64::identity(40);
  for (std::size_t i = 0; i < 40; ++i) neg(i, i) = -1;
  for (const Mat64* g : {&pc, &ps, &neg})
    if (!is_isometry_of(o40, *g)) throw FrameSearchError("Γ generator does not stabilize the lattice");
  return close_group({pc, ps, neg}, 100000);
}

OrbitPartition orbits(const VectorSet& s, std::span<const Mat64> gens) {
  constexpr std::uint32_t kNone = UINT32_MAX;
  OrbitPartition out;
  out.orbit_of.assign(s.size(), kNone);
  // For a folded set the walk follows signed vectors; sign[i] records which
  // of ±s[i] was reached first, so meeting the other one means the orbit is
  // closed under negation.
  std::vector<std::int8_t> sign(s.size(), 0);
  std::vector<std::vector<std::int64_t>> queue;
  for (std::size_t start = 0; start < s.size(); ++start) {
    if (out.orbit_of[start] != kNone) continue;
    const std::uint32_t id = std::uint32_t(out.orbits.size());
    bool self_negated = false;
    queue.assign(1, std::vector<std::int64_t>(s[start].begin(), s[start].end()));
    out.orbit_of[start] = id;
    sign[start] = 1;
    for (std::size_t q = 0; q < queue.size(); ++q) {
      for (const auto& g : gens) {
        std::vector<std::int64_t> img = act(queue[q], g);
        const std::size_t j = s.find(img);
        if (j == VectorSet::npos) throw FrameSearchError("orbit leaves the vector set");
        const std::int8_t sg = std::equal(img.begin(), img.end(), s[j].begin()) ? 1 : -1;
        if (out.orbit_of[j] == kNone) {
          out.orbit_of[j] = id;
          sign[j] = sg;
          queue.push_back(std::move(img));
        } else if (sign[j] != sg) {
          self_negated = true;
        }
      }
    }
    Orbit orbit{start, queue.size(), queue.size()};
    if (s.modulo_sign() && self_negated) orbit.vectors *= 2;
    out.orbits.push_back(orbit);
  }
  return out;
}

VectorSet subset(const VectorSet& s, std::span<const std::uint32_t> members) {
  VectorSet out(s.dim(), s.frame_id(), s.modulo_sign());
  for (auto m : members) out.push_back(s[m], s.norm(m));
  out.canonicalize();
  return out;
}

}  // namespace lat40
