#include <lat40/aut.hpp>

#include <algorithm>

namespace lat40 {

namespace {

// A candidate row is a folded index with a sign, packed as ±(index + 1).
using Cand = std::int32_t;
inline std::size_t index_of(Cand c) { return std::size_t(c < 0 ? -c : c) - 1; }

class Backtrack {
 public:
  Backtrack(const IsometryProblem& p, const VectorSet& s, const OrthoGraph& g)
      : p_(p), s_(s), g_(g), n_(p.target.rows()), target_(to_mat64(p.target)) {}

  IsometryResult run() {
    std::vector<std::vector<Cand>> lists(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      if (target_(i, i) != g_.norm()) return result_;
      if (i == p_.anchor && !p_.anchor_choices.empty()) {
        for (const auto& row : p_.anchor_choices) {
          const std::size_t idx = s_.find(row);
          if (idx == VectorSet::npos) throw AutError("anchor vector is not in the set");
          const bool same = std::equal(row.begin(), row.end(), s_[idx].begin());
          lists[i].push_back(same ? Cand(idx + 1) : -Cand(idx + 1));
        }
      } else {
        for (std::uint32_t idx : p_.allowed[i]) {
          lists[i].push_back(Cand(idx + 1));
          lists[i].push_back(-Cand(idx + 1));
        }
      }
    }
    assigned_.assign(n_, 0);
    search(lists, 0);
    return result_;
  }

 private:
  std::int64_t ip(Cand a, Cand b) const {
    const std::int64_t v = g_.inner(index_of(a), index_of(b));
    return (a < 0) != (b < 0) ? -v : v;
  }

  void search(const std::vector<std::vector<Cand>>& lists, std::size_t depth) {
    ++result_.nodes;
    if (depth == n_) {
      IntMatrix x(n_, s_.dim());
      for (std::size_t i = 0; i < n_; ++i) {
        const auto row = s_[index_of(assigned_[i])];
        for (std::size_t c = 0; c < s_.dim(); ++c) x(i, c) = assigned_[i] < 0 ? -row[c] : row[c];
      }
      result_.solutions.push_back(std::move(x));
      return;
    }
    std::size_t pos = n_;
    for (std::size_t i = 0; i < n_; ++i)
      if (assigned_[i] == 0 && (pos == n_ || lists[i].size() < lists[pos].size())) pos = i;
    std::vector<std::vector<Cand>> next(n_);
    for (Cand c : lists[pos]) {
      bool dead = false;
      for (std::size_t j = 0; j < n_ && !dead; ++j) {
        if (j == pos || assigned_[j] != 0) continue;
        next[j].clear();
        for (Cand d : lists[j])
          if (ip(c, d) == target_(pos, j)) next[j].push_back(d);
        dead = next[j].empty();
      }
      if (dead) continue;
      assigned_[pos] = c;
      search(next, depth + 1);
      assigned_[pos] = 0;
    }
  }

  const IsometryProblem& p_;
  const VectorSet& s_;
  const OrthoGraph& g_;
  std::size_t n_;
  Mat64 target_;
  std::vector<Cand> assigned_;
  IsometryResult result_;
};

}  // namespace

IsometryResult isometry_search(const IsometryProblem& p, const VectorSet& s, const OrthoGraph& g) {
  if (!s.modulo_sign()) throw AutError("isometry_search expects a folded vector set");
  if (!p.target.is_square() || p.allowed.size() != p.target.rows())
    throw AutError("isometry_search: target and block list disagree");
  if (p.anchor >= p.target.rows()) throw AutError("isometry_search: anchor out of range");
  return Backtrack(p, s, g).run();
}

std::vector<std::vector<std::int64_t>> block_transversal(const VectorSet& s,
                                                         std::span<const std::uint32_t> members,
                                                         const MatrixGroup& gamma) {
  VectorSet sub = subset(s, members);
  OrbitPartition orb = orbits(sub, gamma.generators);
  std::vector<std::vector<std::int64_t>> out;
  for (const auto& o : orb.orbits) out.emplace_back(sub[o.rep].begin(), sub[o.rep].end());
  return out;
}

}  // namespace lat40
