#include <lat40/frames.hpp>

#include <algorithm>

namespace lat40 {

namespace {

// Depth-first search for `target` pairwise orthogonal vectors through v.
// State: the chosen set C, the pool P of vectors orthogonal to all of C that
// are still allowed, and s[w] = Σ_{c∈C} (w·c)² for every w. A completion F
// must give s[w] = N² exactly, so a saturated w forces P ⊆ w^⊥ and an
// unsaturated w needs some f ∈ P with 0 < (w·f)² ≤ N² − s[w]. Branching is
// on the unsaturated w with the fewest such f; after a branch on f returns,
// f leaves P, so each completion is visited at most once.
class CliqueSearch {
 public:
  CliqueSearch(const OrthoGraph& g, std::size_t target, std::uint64_t limit)
      : g_(g), k_(kernels::active()), target_(target), limit_(limit),
        full_(std::uint16_t(g.norm()) * g.norm()) {}

  CliqueCertificate run(std::size_t v) {
    const std::size_t words = g_.words();
    std::vector<std::uint64_t> pool(g_.row(v), g_.row(v) + words);
    std::vector<std::uint16_t> s(g_.size(), 0);
    chosen_.clear();
    aborted_ = false;
    if (add(v, pool, s)) {
      search(pool, s);
    } else {
      best_ = std::max<std::size_t>(best_, 1);
    }
    cert_.exhausted = !aborted_;
    cert_.best = best_;
    cert_.nodes = nodes_;
    return cert_;
  }

 private:
  // Adds f to C; returns false when some vector becomes over-covered.
  bool add(std::size_t f, std::vector<std::uint64_t>& pool, std::vector<std::uint16_t>& s) {
    chosen_.push_back(f);
    best_ = std::max(best_, chosen_.size());
    const std::int8_t* ip = g_.inner_row(f);
    const std::size_t words = g_.words();
    for (std::size_t w = 0; w < g_.size(); ++w) {
      if (ip[w] == 0) continue;
      const std::uint16_t t = std::uint16_t(ip[w] * ip[w]) + s[w];
      if (t > full_) return false;
      s[w] = t;
      if (t == full_) k_.and_into(pool.data(), pool.data(), g_.row(w), words);
    }
    return true;
  }

  void search(std::vector<std::uint64_t>& pool, std::vector<std::uint16_t>& s) {
    if (aborted_ || cert_.found) return;
    if (++nodes_ > limit_) {
      aborted_ = true;
      return;
    }
    if (chosen_.size() == target_) {
      cert_.found = true;
      cert_.witness = chosen_;
      return;
    }
    const std::size_t words = g_.words();
    const std::size_t need = target_ - chosen_.size();
    const std::size_t in_pool = k_.and_popcount(pool.data(), pool.data(), words);
    if (in_pool < need) return;

    // Most constrained unsaturated vector; a zero count is a dead end.
    std::size_t pick = SIZE_MAX;
    std::uint64_t pick_count = UINT64_MAX;
    for (std::size_t w = 0; w < g_.size() && pick_count > 0; ++w) {
      if (s[w] == full_) continue;
      const std::uint64_t count = in_pool - k_.and_popcount(pool.data(), g_.row(w), words);
      if (count < pick_count) {
        pick = w;
        pick_count = count;
      }
    }
    if (pick == SIZE_MAX) return;  // everything saturated but C too small
    const std::uint16_t room = full_ - s[pick];
    const std::int8_t* ip = g_.inner_row(pick);
    std::vector<std::size_t> options;
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t word = pool[w] & ~g_.row(pick)[w];
      while (word) {
        const std::size_t f = w * 64 + std::size_t(__builtin_ctzll(word));
        word &= word - 1;
        if (std::uint16_t(ip[f] * ip[f]) <= room) options.push_back(f);
      }
    }
    if (cert_.options_at_depth.size() <= chosen_.size()) {
      cert_.options_at_depth.resize(chosen_.size() + 1);
      cert_.nodes_at_depth.resize(chosen_.size() + 1);
    }
    cert_.options_at_depth[chosen_.size()] += options.size();
    ++cert_.nodes_at_depth[chosen_.size()];
    std::vector<std::uint64_t> child_pool(words);
    std::vector<std::uint16_t> child_s;
    for (std::size_t f : options) {
      for (std::size_t w = 0; w < words; ++w) child_pool[w] = pool[w] & g_.row(f)[w];
      child_s = s;
      if (add(f, child_pool, child_s)) search(child_pool, child_s);
      chosen_.pop_back();
      if (aborted_ || cert_.found) return;
      pool[f >> 6] &= ~(std::uint64_t(1) << (f & 63));
    }
  }

  const OrthoGraph& g_;
  const kernels::KernelTable& k_;
  std::size_t target_;
  std::uint64_t limit_;
  std::uint16_t full_;
  std::vector<std::size_t> chosen_;
  std::size_t best_ = 0;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  CliqueCertificate cert_;
};

}  // namespace

CliqueCertificate certify_no_frame(const OrthoGraph& g, std::size_t v, std::size_t target,
                                   std::uint64_t node_limit) {
  if (v >= g.size()) throw FrameSearchError("certify_no_frame: start vector out of range");
  return CliqueSearch(g, target, node_limit).run(v);
}

}  // namespace lat40
