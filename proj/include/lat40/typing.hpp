#pragma once

#include <lat40/packed_set.hpp>

#include <array>
#include <compare>
#include <string>

namespace lat40 {

/// [t0, t1, t2, t4]: how many u in a reference set have u·v = 0, 1, 2, 4.
struct TypeSig {
  std::uint32_t t0 = 0, t1 = 0, t2 = 0, t4 = 0;
  auto operator<=>(const TypeSig&) const = default;
  std::string str() const;
};

/// Direct evaluation through the frame Gram. Works for folded and unfolded
/// reference sets (a folded set is treated as the negation-closed set it
/// represents). Throws LinalgError on an inner product outside {0,±1,±2,±4}.
TypeSig type_of(std::span<const std::int64_t> v, const VectorSet& ref, const AmbientFrame& frame);

struct Block {
  std::vector<int> path;                 // 1-based labels: (i), (i, j), ...
  TypeSig type;                          // type against the reference of its level
  std::vector<std::uint32_t> members;    // indices into the folded set
  std::size_t size() const { return 2 * members.size(); }
  std::string label() const;             // "S7.7"
};

struct Partition {
  std::vector<Block> blocks;
  int level = 0;
  /// block index for each folded vector
  std::vector<std::uint32_t> block_of() const;
  const Block* find(const std::vector<int>& path) const;
  std::size_t total() const;
};

/// Sign-folded typing engine for a negation-closed set S (given folded).
class Typer {
 public:
  Typer(const VectorSet& folded, const AmbientFrame& frame, unsigned threads = 1);

  const VectorSet& set() const { return set_; }
  const PackedSet& packed() const { return packed_; }

  /// Type of every vector against the union of its own block
  /// (group[j] == group[i]).
  std::vector<TypeSig> types_within(const std::vector<std::uint32_t>& group) const;

  /// Level 1: blocks of equal type against all of S, ordered by t2, then
  /// by the whole signature.
  Partition partition_by_type() const;

  struct RefineStats {
    int passes = 0;               // typing passes after level 1
    std::vector<std::size_t> block_counts;  // block count after each pass
    bool final_pass_split = false;
  };
  /// Re-type against the own block and split until nothing splits. The
  /// returned blocks carry their type against themselves.
  Partition refine_to_irreducible(const Partition& initial, RefineStats* stats = nullptr) const;

 private:
  VectorSet set_;
  PackedSet packed_;
  unsigned threads_;
};

/// Some block has local type [78,0,0,1].
bool frame_signature_present(const Partition& p);

/// CSV with columns label,t0,t1,t2,t4,size.
std::string partition_csv(const Partition& p);

}  // namespace lat40
