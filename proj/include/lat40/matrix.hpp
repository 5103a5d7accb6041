#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lat40 {

using Integer = mpz_class;
using Rational = mpq_class;

/// n/d in lowest terms (the two-argument mpq_class constructor does not
/// canonicalize, and non-canonical values compare wrongly).
inline Rational rat(const Integer& n, const Integer& d) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

class LinalgError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

template <typename T>
inline void multiply_accumulate(T& acc, const T& a, const T& b) {
  acc += a * b;
}

// 64-bit matrices are only used where entries are known to be small; an
// overflow is a bug, not a precision issue, so it throws.
inline void multiply_accumulate(std::int64_t& acc, const std::int64_t& a,
                                const std::int64_t& b) {
  std::int64_t product = 0;
  if (__builtin_mul_overflow(a, b, &product) ||
      __builtin_add_overflow(acc, product, &acc)) {
    throw LinalgError("64-bit matrix arithmetic overflowed");
  }
}

}  // namespace detail

/// Dense row-major matrix over an exact ring.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
      throw LinalgError("matrix entry count does not match its shape");
    }
  }
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw LinalgError("ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  const std::vector<T>& data() const { return data_; }
  std::vector<T>& data() { return data_; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) {
      std::swap(data_[a * cols_ + c], data_[b * cols_ + c]);
    }
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  bool is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = r + 1; c < cols_; ++c)
        if ((*this)(r, c) != (*this)(c, r)) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw LinalgError("matrix product shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          detail::multiply_accumulate(out(i, j), aik, b(k, j));
        }
      }
    }
    return out;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw LinalgError("matrix sum shape mismatch");
    Matrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
    return out;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw LinalgError("matrix difference shape mismatch");
    Matrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
    return out;
  }

  Matrix scaled(const T& c) const {
    Matrix out = *this;
    for (auto& x : out.data_) x *= c;
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;
using Mat64 = Matrix<std::int64_t>;

RatMatrix to_rational(const IntMatrix& m);
IntMatrix to_integer(const Mat64& m);
/// Throws LinalgError when an entry is not an integer.
IntMatrix to_integer(const RatMatrix& m);
/// Throws LinalgError when an entry does not fit in 64 bits.
Mat64 to_mat64(const IntMatrix& m);

/// Least common denominator of all entries.
Integer common_denominator(const RatMatrix& m);

/// Stack a on top of b.
template <typename T>
Matrix<T> vstack(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() > 0 && b.rows() > 0 && a.cols() != b.cols())
    throw LinalgError("vstack column mismatch");
  std::size_t cols = a.rows() > 0 ? a.cols() : b.cols();
  std::vector<T> data = a.data();
  data.insert(data.end(), b.data().begin(), b.data().end());
  return Matrix<T>(a.rows() + b.rows(), cols, std::move(data));
}

/// Block-diagonal sum of square or rectangular blocks.
template <typename T>
Matrix<T> block_diagonal(std::span<const Matrix<T>> blocks) {
  std::size_t rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  Matrix<T> out(rows, cols);
  std::size_t r0 = 0, c0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c = 0; c < b.cols(); ++c) out(r0 + r, c0 + c) = b(r, c);
    r0 += b.rows();
    c0 += b.cols();
  }
  return out;
}

// Text format: first line "R C", then R lines of C whitespace-separated
// tokens. Integers print in decimal; rationals as "p/q" (or "p" when q = 1).
void write_matrix(std::ostream& out, const IntMatrix& m);
void write_matrix(std::ostream& out, const RatMatrix& m);
IntMatrix read_int_matrix(std::istream& in);
RatMatrix read_rat_matrix(std::istream& in);
std::string to_text(const IntMatrix& m);
std::string to_text(const RatMatrix& m);
std::ostream& operator<<(std::ostream& out, const IntMatrix& m);
std::ostream& operator<<(std::ostream& out, const RatMatrix& m);

}  // namespace lat40
