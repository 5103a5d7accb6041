#pragma once

#include <lat40/lattice.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lat40 {

/// Lattice vectors as e-frame coordinate rows. Coordinates are stored as
/// 64-bit integers; anything larger is rejected on insertion (minimal vectors
/// of the lattices handled here have coordinates far below that).
class VectorSet {
 public:
  VectorSet() = default;
  VectorSet(std::size_t dim, std::string frame_id, bool modulo_sign = false);

  std::size_t size() const { return norms_.size(); }
  bool empty() const { return norms_.empty(); }
  std::size_t dim() const { return dim_; }
  const std::string& frame_id() const { return frame_id_; }
  bool modulo_sign() const { return modulo_sign_; }

  std::span<const std::int64_t> operator[](std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  std::vector<Integer> big(std::size_t i) const;
  const std::vector<std::int64_t>& data() const { return coords_; }
  const Rational& norm(std::size_t i) const { return norms_[i]; }
  std::optional<Rational> common_norm() const;
  std::int64_t max_abs() const;

  void push_back(std::span<const std::int64_t> v, const Rational& norm);
  void push_back(std::span<const Integer> v, const Rational& norm);

  /// Fold signs when modulo_sign (keep the lexicographically larger of ±v),
  /// sort lexicographically and drop duplicates.
  void canonicalize();

  /// Index of v (after sign folding when modulo_sign), or npos.
  std::size_t find(std::span<const std::int64_t> v) const;
  static constexpr std::size_t npos = std::size_t(-1);

  VectorSet folded() const;
  VectorSet unfolded() const;

  friend bool operator==(const VectorSet&, const VectorSet&) = default;

 private:
  std::size_t dim_ = 0;
  std::string frame_id_;
  bool modulo_sign_ = false;
  std::vector<std::int64_t> coords_;
  std::vector<Rational> norms_;
};

/// Lexicographic comparison of coordinate rows.
bool lex_less(std::span<const std::int64_t> a, std::span<const std::int64_t> b);
/// The lexicographically larger of v and -v.
std::vector<std::int64_t> sign_canonical(std::span<const std::int64_t> v);

/// Recompute every norm through the frame Gram and compare with metadata.
bool verify_norms(const VectorSet& s, const AmbientFrame& frame);

/// Cache format: header "count dim norm frame-id", then one sorted vector per
/// line. Sign-folded sets are written unfolded. All vectors must share a norm.
void write_vector_set(std::ostream& out, const VectorSet& s);
VectorSet read_vector_set(std::istream& in);
void save_vector_set(const std::string& path, const VectorSet& s);
VectorSet load_vector_set(const std::string& path);

}  // namespace lat40
