#include <lat40/typing.hpp>

#include <algorithm>
#include <map>
#include <sstream>
#include <thread>

namespace lat40 {

std::string TypeSig::str() const {
  std::ostringstream s;
  s << '[' << t0 << ',' << t1 << ',' << t2 << ',' << t4 << ']';
  return s.str();
}

std::string Block::label() const {
  std::ostringstream s;
  s << 'S';
  for (std::size_t k = 0; k < path.size(); ++k) s << (k ? "." : "") << path[k];
  return s.str();
}

std::vector<std::uint32_t> Partition::block_of() const {
  std::vector<std::uint32_t> out(total() / 2);
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (auto m : blocks[b].members) out[m] = std::uint32_t(b);
  return out;
}

const Block* Partition::find(const std::vector<int>& path) const {
  for (const auto& b : blocks)
    if (b.path == path) return &b;
  return nullptr;
}

std::size_t Partition::total() const {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.size();
  return n;
}

namespace {

void tally(TypeSig& t, std::int64_t ip, bool folded) {
  const std::int64_t a = folded && ip < 0 ? -ip : ip;
  switch (a) {
    case 0: t.t0 += folded ? 2 : 1; break;
    case 1: ++t.t1; break;
    case 2: ++t.t2; break;
    case 4: ++t.t4; break;
    case -1: case -2: case -4: break;
    default:
      throw LinalgError("inner product " + std::to_string(ip) +
                        " between norm-4 vectors is impossible when the minimum is 4");
  }
}

}  // namespace

TypeSig type_of(std::span<const std::int64_t> v, const VectorSet& ref, const AmbientFrame& frame) {
  std::vector<Integer> x(v.begin(), v.end());
  TypeSig t;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    Integer ip = inner_integral(frame, x, ref.big(i));
    if (!ip.fits_slong_p()) throw LinalgError("inner product out of range");
    tally(t, ip.get_si(), ref.modulo_sign());
  }
  return t;
}

Typer::Typer(const VectorSet& folded, const AmbientFrame& frame, unsigned threads)
    : set_(folded.modulo_sign() ? folded : folded.folded()),
      packed_(set_, frame),
      threads_(std::max(1u, threads)) {}

std::vector<TypeSig> Typer::types_within(const std::vector<std::uint32_t>& group) const {
  const std::size_t n = set_.size();
  std::vector<TypeSig> out(n);
  auto work = [&](std::size_t begin, std::size_t end) {
    std::vector<std::int32_t> row(n);
    for (std::size_t i = begin; i < end; ++i) {
      packed_.inner_row(i, row);
      TypeSig t;
      const std::uint32_t g = group[i];
      for (std::size_t j = 0; j < n; ++j)
        if (group[j] == g) tally(t, row[j], true);
      out[i] = t;
    }
  };
  if (threads_ == 1) {
    work(0, n);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads_; ++w)
      pool.emplace_back(work, n * w / threads_, n * (w + 1) / threads_);
    for (auto& t : pool) t.join();
  }
  return out;
}

Partition Typer::partition_by_type() const {
  std::vector<TypeSig> types = types_within(std::vector<std::uint32_t>(set_.size(), 0));
  std::map<TypeSig, std::vector<std::uint32_t>> groups;
  for (std::uint32_t i = 0; i < types.size(); ++i) groups[types[i]].push_back(i);
  std::vector<std::pair<TypeSig, std::vector<std::uint32_t>>> ordered(groups.begin(), groups.end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    if (a.first.t2 != b.first.t2) return a.first.t2 < b.first.t2;
    return a.first < b.first;
  });
  Partition p;
  p.level = 1;
  for (std::size_t k = 0; k < ordered.size(); ++k)
    p.blocks.push_back(Block{{int(k + 1)}, ordered[k].first, std::move(ordered[k].second)});
  return p;
}

Partition Typer::refine_to_irreducible(const Partition& initial, RefineStats* stats) const {
  Partition current = initial;
  RefineStats local;
  for (;;) {
    std::vector<std::uint32_t> group = current.block_of();
    std::vector<TypeSig> types = types_within(group);
    ++local.passes;
    Partition next;
    next.level = current.level + 1;
    bool split = false;
    for (const auto& block : current.blocks) {
      std::map<TypeSig, std::vector<std::uint32_t>> sub;
      for (auto m : block.members) sub[types[m]].push_back(m);
      if (sub.size() > 1) split = true;
      int j = 0;
      for (auto& [t, members] : sub) {
        std::vector<int> path = block.path;
        if (sub.size() > 1 || current.level == initial.level) path.push_back(++j);
        next.blocks.push_back(Block{std::move(path), t, std::move(members)});
      }
    }
    local.block_counts.push_back(next.blocks.size());
    if (!split) {
      // Nothing moved: keep the labels of the last split level and record
      // the type of each block against itself.
      for (std::size_t b = 0; b < current.blocks.size(); ++b) {
        TypeSig t = types[current.blocks[b].members.front()];
        current.blocks[b].type = t;
      }
      local.final_pass_split = false;
      if (stats) *stats = local;
      return current;
    }
    current = std::move(next);
  }
}

bool frame_signature_present(const Partition& p) {
  const TypeSig frame{78, 0, 0, 1};
  for (const auto& b : p.blocks)
    if (b.type == frame) return true;
  return false;
}

std::string partition_csv(const Partition& p) {
  std::ostringstream s;
  s << "label,t0,t1,t2,t4,size\n";
  for (const auto& b : p.blocks)
    s << b.label() << ',' << b.type.t0 << ',' << b.type.t1 << ',' << b.type.t2 << ','
      << b.type.t4 << ',' << b.size() << '\n';
  return s.str();
}

}  // namespace lat40
