#include <lat40/packed_set.hpp>

#include <limits>

namespace lat40 {

PackedSet::PackedSet(const VectorSet& s, const AmbientFrame& frame,
                     const kernels::KernelTable& table)
    : n_(s.size()), dim_(s.dim()), table_(&table) {
  if (dim_ != frame.dim()) throw LinalgError("vector set and frame dimensions differ");
  if (!frame.denominator.fits_slong_p()) throw LinalgError("frame denominator too large");
  den_ = frame.denominator.get_si();
  gram_ = to_mat64(frame.integer_gram);
  coords64_ = s.data();
  image64_.assign(n_ * dim_, 0);
  std::int64_t max_c = 0, max_i = 0;
  for (std::size_t v = 0; v < n_; ++v) {
    const std::int64_t* x = &coords64_[v * dim_];
    for (std::size_t c = 0; c < dim_; ++c) {
      __int128 acc = 0;
      for (std::size_t r = 0; r < dim_; ++r)
        if (x[r] != 0) acc += __int128(x[r]) * gram_(r, c);
      if (acc > INT64_MAX || acc < INT64_MIN) throw LinalgError("packed image exceeds 64 bits");
      image64_[v * dim_ + c] = std::int64_t(acc);
      max_i = std::max<std::int64_t>(max_i, acc < 0 ? -std::int64_t(acc) : std::int64_t(acc));
      max_c = std::max<std::int64_t>(max_c, x[c] < 0 ? -x[c] : x[c]);
    }
  }
  // int16 lanes, and madd partial sums bounded by dim·|x|·|y| < 2^31.
  const std::int64_t lim = std::numeric_limits<std::int16_t>::max();
  wide_ = dim_ > kernels::kStride || max_c > lim || max_i > lim ||
          __int128(dim_) * max_c * max_i >= (__int128(1) << 31);
  if (wide_) return;
  coords16_.assign(n_ * kernels::kStride, 0);
  image16_.assign(n_ * kernels::kStride, 0);
  for (std::size_t v = 0; v < n_; ++v)
    for (std::size_t c = 0; c < dim_; ++c) {
      coords16_[v * kernels::kStride + c] = std::int16_t(coords64_[v * dim_ + c]);
      image16_[v * kernels::kStride + c] = std::int16_t(image64_[v * dim_ + c]);
    }
  coords64_.clear();
  coords64_.shrink_to_fit();
}

namespace {
[[noreturn]] void not_integral(std::int64_t raw, std::int64_t den) {
  throw LinalgError("inner product " + std::to_string(raw) + "/" + std::to_string(den) +
                    " is not an integer");
}
}  // namespace

void PackedSet::inner_row(std::size_t i, std::span<std::int32_t> out) const {
  if (out.size() < n_) throw LinalgError("inner_row output too short");
  if (!wide_) {
    table_->dot_many(&coords16_[i * kernels::kStride], image16_.data(), n_, out.data());
    if (den_ != 1) {
      for (std::size_t j = 0; j < n_; ++j) {
        const std::int32_t q = out[j] / std::int32_t(den_);
        if (q * std::int32_t(den_) != out[j]) not_integral(out[j], den_);
        out[j] = q;
      }
    }
    return;
  }
  for (std::size_t j = 0; j < n_; ++j) {
    std::int64_t v = inner(i, j);
    if (v > INT32_MAX || v < INT32_MIN) throw LinalgError("inner product exceeds 32 bits");
    out[j] = std::int32_t(v);
  }
}

std::int64_t PackedSet::inner(std::size_t i, std::size_t j) const {
  __int128 acc = 0;
  if (!wide_) {
    const std::int16_t* a = &coords16_[i * kernels::kStride];
    const std::int16_t* b = &image16_[j * kernels::kStride];
    for (std::size_t k = 0; k < dim_; ++k) acc += std::int32_t(a[k]) * b[k];
  } else {
    const std::int64_t* a = &coords64_[i * dim_];
    const std::int64_t* b = &image64_[j * dim_];
    for (std::size_t k = 0; k < dim_; ++k) acc += __int128(a[k]) * b[k];
  }
  if (acc % den_ != 0) not_integral(std::int64_t(acc), den_);
  return std::int64_t(acc / den_);
}

void PackedSet::inner_with(std::span<const std::int64_t> x, std::span<std::int64_t> out) const {
  if (x.size() != dim_ || out.size() < n_) throw LinalgError("inner_with shape mismatch");
  for (std::size_t j = 0; j < n_; ++j) {
    __int128 acc = 0;
    for (std::size_t k = 0; k < dim_; ++k) {
      const std::int64_t b = wide_ ? image64_[j * dim_ + k] : image16_[j * kernels::kStride + k];
      acc += __int128(x[k]) * b;
    }
    if (acc % den_ != 0) not_integral(std::int64_t(acc), den_);
    out[j] = std::int64_t(acc / den_);
  }
}

}  // namespace lat40
