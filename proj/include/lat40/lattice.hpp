#pragma once

#include <lat40/linalg.hpp>

#include <iosfwd>
#include <memory>
#include <string>

namespace lat40 {

/// Gram matrix of the reference basis e_1..e_n that all coordinates refer to.
/// The form is stored twice: exactly, and as integer_gram / denominator so
/// inner products of integer rows stay in the integers until the last step.
struct AmbientFrame {
  std::string id;
  RatMatrix gram;
  IntMatrix integer_gram;
  Integer denominator;

  std::size_t dim() const { return gram.rows(); }
};

using FramePtr = std::shared_ptr<const AmbientFrame>;

/// Throws LinalgError unless gram is symmetric positive definite.
FramePtr make_frame(RatMatrix gram, std::string id = "gram");

/// (1/21)·[[28I,7I],[7I,2I]] on 40 coordinates: the dual-basis frame of
/// twenty copies of the binary form [[6,3],[3,12]].
FramePtr glue_frame();

/// Exact x·G·yᵀ in the frame.
Rational inner(const AmbientFrame& f, std::span<const Integer> x, std::span<const Integer> y);

/// Same, asserting the value is an integer (throws LinalgError otherwise).
Integer inner_integral(const AmbientFrame& f, std::span<const Integer> x,
                       std::span<const Integer> y);

class Lattice {
 public:
  /// Rows of `basis` are e-coordinates. Throws if rows are dependent or
  /// the column count differs from the frame dimension.
  Lattice(FramePtr frame, IntMatrix basis);

  const FramePtr& frame() const { return frame_; }
  const IntMatrix& basis() const { return basis_; }
  std::size_t rank() const { return basis_.rows(); }
  std::size_t dim() const { return basis_.cols(); }
  bool full_rank() const { return rank() == dim(); }

  RatMatrix gram() const;
  /// HNF of the basis; equal for equal lattices.
  const IntMatrix& hnf_basis() const { return hnf_; }

  bool is_integral() const;
  bool is_even() const;
  bool is_unimodular() const;
  Rational gram_det() const;

  bool contains(std::span<const Integer> v) const;
  /// Coordinates of v in the basis rows, or nullopt-equivalent empty vector
  /// when v is not in the lattice.
  std::vector<Integer> coordinates(std::span<const Integer> v) const;

 private:
  FramePtr frame_;
  IntMatrix basis_;
  IntMatrix hnf_;
};

Lattice dual(const Lattice& l);
Lattice lattice_sum(const Lattice& a, const Lattice& b);
bool equals(const Lattice& a, const Lattice& b);
bool sublattice(const Lattice& a, const Lattice& b);
/// The same coordinates under the form multiplied by c.
Lattice scale(const Lattice& l, const Rational& c);

RatMatrix orthogonal_sum(std::span<const RatMatrix> grams);
/// Gram of A_n in its simple-root basis (2 on the diagonal, -1 adjacent).
IntMatrix a_n_gram(std::size_t n);
/// 2(1 + floor(n/24)); n must be a positive multiple of 8.
long extremal_min_bound(long n);

/// Lattice file: "frame: glue40" or "frame: gram" followed by the rational
/// Gram matrix, then the basis matrix.
void write_lattice(std::ostream& out, const Lattice& l);
Lattice read_lattice(std::istream& in);
Lattice load_lattice(const std::string& path);
void save_lattice(const std::string& path, const Lattice& l);

}  // namespace lat40
