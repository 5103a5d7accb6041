#pragma once

#include <lat40/kernels.hpp>
#include <lat40/vector_set.hpp>

namespace lat40 {

/// Inner-product engine for a set of lattice vectors. Each vector x is kept
/// twice as int16 rows: its coordinates and its image x·G' under the integer
/// form G' = denominator·G. Then <x, y> = (x · y·G') / denominator, and one
/// row of inner products is a single dot_many call. When the values do not
/// fit the int16/int32 budget the engine silently uses 64-bit scalar loops.
class PackedSet {
 public:
  PackedSet(const VectorSet& s, const AmbientFrame& frame,
            const kernels::KernelTable& table = kernels::active());

  std::size_t size() const { return n_; }
  bool wide() const { return wide_; }
  const char* kernel_name() const { return wide_ ? "int64" : table_->name; }

  /// out[j] = <v_i, v_j> for all j. Throws LinalgError if some product is
  /// not an integer (the frame or the set is inconsistent).
  void inner_row(std::size_t i, std::span<std::int32_t> out) const;
  /// <v_i, v_j>.
  std::int64_t inner(std::size_t i, std::size_t j) const;
  /// out[j] = <x, v_j> for an arbitrary coordinate row x.
  void inner_with(std::span<const std::int64_t> x, std::span<std::int64_t> out) const;

 private:
  std::size_t n_ = 0, dim_ = 0;
  std::int64_t den_ = 1;
  const kernels::KernelTable* table_;
  bool wide_ = false;
  std::vector<std::int16_t> coords16_, image16_;
  std::vector<std::int64_t> coords64_, image64_;
  Mat64 gram_;  // integer form G'
};

}  // namespace lat40
