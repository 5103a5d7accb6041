#include <lat40/frames.hpp>

#include <algorithm>
#include <sstream>
#include <mutex>
#include <thread>

namespace lat40 {

OrthoGraph::OrthoGraph(const VectorSet& folded, const AmbientFrame& frame, unsigned threads) {
  VectorSet s = folded.modulo_sign() ? folded : folded.folded();
  n_ = s.size();
  words_ = (n_ + 63) / 64;
  if (n_ == 0) return;
  auto common = s.common_norm();
  if (!common || common->get_den() != 1 || *common > 127)
    throw FrameSearchError("OrthoGraph needs vectors of one small integral norm");
  norm_ = std::int8_t(common->get_num().get_si());
  PackedSet packed(s, frame);
  bits_.assign(n_ * words_, 0);
  ip_.assign(n_ * n_, 0);
  auto work = [&](std::size_t begin, std::size_t end) {
    std::vector<std::int32_t> row(n_);
    for (std::size_t i = begin; i < end; ++i) {
      packed.inner_row(i, row);
      std::uint64_t* bits = &bits_[i * words_];
      std::int8_t* ip = &ip_[i * n_];
      for (std::size_t j = 0; j < n_; ++j) {
        if (row[j] > norm_ || row[j] < -norm_) throw FrameSearchError("inner product exceeds the norm");
        ip[j] = std::int8_t(row[j]);
        if (row[j] == 0) bits[j >> 6] |= std::uint64_t(1) << (j & 63);
      }
    }
  };
  threads = std::max(1u, threads);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w)
    pool.emplace_back(work, n_ * w / threads, n_ * (w + 1) / threads);
  for (auto& t : pool) t.join();
}

namespace {

inline bool test_bit(const std::uint64_t* b, std::size_t i) { return (b[i >> 6] >> (i & 63)) & 1; }
inline void set_bit(std::uint64_t* b, std::size_t i) { b[i >> 6] |= std::uint64_t(1) << (i & 63); }

}  // namespace

std::vector<std::size_t> max_orthogonal_set(const OrthoGraph& g, std::size_t v,
                                            std::span<const std::uint64_t> key,
                                            std::size_t* ties) {
  const auto& k = kernels::active();
  const std::size_t words = g.words();
  // cur = S_n(v): the chosen vectors and everything orthogonal to all of them
  std::vector<std::uint64_t> cur(g.row(v), g.row(v) + words);
  set_bit(cur.data(), v);
  std::vector<std::size_t> chosen{v};
  std::vector<std::uint64_t> chosen_bits(words, 0);
  set_bit(chosen_bits.data(), v);
  std::size_t size = 1 + k.and_popcount(g.row(v), g.row(v), words);
  if (ties) *ties = 0;
  while (size > chosen.size()) {
    std::size_t best = SIZE_MAX;
    std::uint64_t best_score = 0;
    std::size_t tied = 0;
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t word = cur[w] & ~chosen_bits[w];
      while (word) {
        const std::size_t u = w * 64 + std::size_t(__builtin_ctzll(word));
        word &= word - 1;
        const std::uint64_t score = k.and_popcount(cur.data(), g.row(u), words);
        if (best != SIZE_MAX && score == best_score) ++tied;
        if (best == SIZE_MAX || score > best_score) tied = 0;
        if (best == SIZE_MAX || score > best_score ||
            (score == best_score && key[u] < key[best])) {
          best = u;
          best_score = score;
        }
      }
    }
    if (ties && tied > 0) ++*ties;
    // S_{n+1} = S_n ∩ ({u} ∪ u^⊥); chosen vectors are orthogonal to u.
    const bool had = test_bit(cur.data(), best);
    k.and_into(cur.data(), cur.data(), g.row(best), words);
    for (std::size_t c : chosen) set_bit(cur.data(), c);
    if (had) set_bit(cur.data(), best);
    chosen.push_back(best);
    set_bit(chosen_bits.data(), best);
    size = k.and_popcount(cur.data(), cur.data(), words);
  }
  return chosen;
}

FrameCensus frame_census(const OrthoGraph& g, const OrbitPartition& orbits, unsigned threads) {
  FrameCensus c;
  const std::size_t n = g.size();
  std::vector<std::uint64_t> key(n);
  for (std::size_t i = 0; i < n; ++i) key[i] = (std::uint64_t(orbits.orbit_of[i]) << 32) | i;
  const std::size_t count = orbits.orbits.size();
  std::vector<std::vector<std::size_t>> sets(count);
  c.ties_of_orbit.assign(count, 0);
  std::size_t next = 0;
  std::mutex mu;
  auto work = [&]() {
    for (;;) {
      std::size_t o;
      {
        std::lock_guard lock(mu);
        if (next == count) return;
        o = next++;
      }
      sets[o] = max_orthogonal_set(g, orbits.orbits[o].rep, key, &c.ties_of_orbit[o]);
    }
  };
  threads = std::max(1u, threads);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  for (std::size_t o = 0; o < count; ++o) {
    const std::size_t m = sets[o].size();
    c.m_of_orbit.push_back(m);
    ++c.table[m];
    if (m > c.n_max) {
      c.n_max = m;
      c.best_set = sets[o];
    }
  }
  return c;
}

bool deviation_from_ties(const FrameCensus& c, const std::map<std::size_t, std::size_t>& expected) {
  std::map<std::size_t, std::size_t> untied;
  for (std::size_t o = 0; o < c.m_of_orbit.size(); ++o)
    if (c.ties_of_orbit[o] == 0) ++untied[c.m_of_orbit[o]];
  for (auto [m, n] : untied) {
    auto it = expected.find(m);
    if (it == expected.end() || it->second < n) return false;
  }
  return true;
}

std::string census_csv(const FrameCensus& c) {
  std::ostringstream s;
  s << "m,count\n";
  for (auto [m, n] : c.table) s << m << ',' << n << '\n';
  return s.str();
}

}  // namespace lat40
