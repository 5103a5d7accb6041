#pragma once

#include <lat40/typing.hpp>

#include <map>
#include <stdexcept>

namespace lat40 {

struct FrameSearchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Finite matrix group acting on the right of row vectors.
struct MatrixGroup {
  std::vector<Mat64> generators;
  std::vector<Mat64> elements;  // elements[0] is the identity
  std::size_t order() const { return elements.size(); }
  bool contains(const Mat64& g) const;
};

/// Breadth-first closure; throws FrameSearchError past `cap` elements.
MatrixGroup close_group(std::vector<Mat64> generators, std::size_t cap = 1000000);
/// Smallest k ≥ 1 with g^k = I, or 0 if none up to cap.
std::size_t element_order(const Mat64& g, std::size_t cap = 100000);

/// x·g for an e-coordinate row.
std::vector<std::int64_t> act(std::span<const std::int64_t> x, const Mat64& g);

/// B·g·B⁻¹ for a basis B of l; throws when the result is not integral.
Mat64 in_lattice_basis(const Lattice& l, const Mat64& g_e);
/// g maps every basis row of l into l and preserves the ambient Gram.
bool is_isometry_of(const Lattice& l, const Mat64& g_e);

/// Γ: the coordinate permutations t→t+1 and t→4t of the projective line
/// over F19 (acting on both 20-blocks, ∞ fixed), and −I. Generators are
/// checked against `o40`.
MatrixGroup gamma_group(const Lattice& o40);

struct Orbit {
  std::size_t rep = 0;       // index of the lexicographically first member
  std::size_t members = 0;   // members counted in the given set
  std::size_t vectors = 0;   // size of the orbit as a set of vectors (±v counted apart)
};
struct OrbitPartition {
  std::vector<Orbit> orbits;             // ordered by rep
  std::vector<std::uint32_t> orbit_of;   // per set index
};
/// Orbits of a set (folded or not) under the group generated by `gens`.
/// Throws FrameSearchError when an image leaves the set.
OrbitPartition orbits(const VectorSet& s, std::span<const Mat64> gens);

/// Vectors of `s` at the given indices, in the same folding.
VectorSet subset(const VectorSet& s, std::span<const std::uint32_t> members);

/// Inner products and orthogonality bitsets of a folded norm-4 set.
class OrthoGraph {
 public:
  OrthoGraph(const VectorSet& folded, const AmbientFrame& frame, unsigned threads = 1);

  std::size_t size() const { return n_; }
  std::size_t words() const { return words_; }
  const std::uint64_t* row(std::size_t i) const { return &bits_[i * words_]; }
  std::int8_t inner(std::size_t i, std::size_t j) const { return ip_[i * n_ + j]; }
  const std::int8_t* inner_row(std::size_t i) const { return &ip_[i * n_]; }
  std::int8_t norm() const { return norm_; }

 private:
  std::size_t n_ = 0, words_ = 0;
  std::int8_t norm_ = 0;
  std::vector<std::uint64_t> bits_;
  std::vector<std::int8_t> ip_;
};

/// The greedy chain S₁(v) ⊇ S₂(v) ⊇ … : keep v and everything orthogonal to
/// it, then repeatedly add the u that keeps the most of the current set,
/// until only the chosen vectors remain. Ties go to the smallest `key`.
/// Returns the chosen indices in order; `ties` receives the number of steps
/// where more than one u reached the best score.
std::vector<std::size_t> max_orthogonal_set(const OrthoGraph& g, std::size_t v,
                                            std::span<const std::uint64_t> key,
                                            std::size_t* ties = nullptr);

struct FrameCensus {
  std::map<std::size_t, std::size_t> table;   // m → number of orbit representatives
  std::vector<std::size_t> m_of_orbit;        // per orbit
  std::size_t n_max = 0;
  std::vector<std::size_t> best_set;          // a set reaching n_max
  std::vector<std::size_t> ties_of_orbit;     // tied greedy steps per orbit
};
/// Greedy chain from every orbit representative; ties broken by
/// (orbit index, set index).
FrameCensus frame_census(const OrthoGraph& g, const OrbitPartition& orbits, unsigned threads = 1);

struct CliqueCertificate {
  bool exhausted = false;        // the whole search tree was visited
  bool found = false;            // an orthogonal set of the target size exists
  std::size_t best = 0;          // largest orthogonal set through v met on the way
  std::uint64_t nodes = 0;
  std::vector<std::size_t> witness;
  // branching profile: expanded nodes and their option counts per depth
  std::vector<std::uint64_t> nodes_at_depth, options_at_depth;
};
/// Exact search for `target` pairwise orthogonal vectors containing v. Uses
/// that a completed set F of orthogonal norm-4 vectors in a rank-`target`
/// lattice gives Σ_{f∈F} (w·f)² = (w·w)(f·f) for every lattice vector w, so
/// every vector of the set must be hit exactly. Stops after `node_limit`
/// nodes (exhausted = false).
CliqueCertificate certify_no_frame(const OrthoGraph& g, std::size_t v, std::size_t target,
                                   std::uint64_t node_limit = UINT64_MAX);

/// True when the m values of the orbits whose chain never met a tie fit
/// inside `expected` (m → count), so any mismatch comes from tied steps.
bool deviation_from_ties(const FrameCensus& c, const std::map<std::size_t, std::size_t>& expected);

/// Census CSV: m,count.
std::string census_csv(const FrameCensus& c);

}  // namespace lat40
