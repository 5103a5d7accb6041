#include <lat40/kernels.hpp>

#include <bit>

namespace lat40::kernels {

namespace {

void dot_many(const std::int16_t* a, const std::int16_t* rows, std::size_t count,
              std::int32_t* out) {
  for (std::size_t i = 0; i < count; ++i) {
    const std::int16_t* r = rows + i * kStride;
    std::int32_t acc = 0;
    for (std::size_t k = 0; k < kStride; ++k) acc += std::int32_t(a[k]) * r[k];
    out[i] = acc;
  }
}

std::uint64_t and_popcount(const std::uint64_t* a, const std::uint64_t* b,
                           std::size_t words) {
  std::uint64_t n = 0;
  for (std::size_t i = 0; i < words; ++i) n += std::popcount(a[i] & b[i]);
  return n;
}

std::uint64_t and_into(std::uint64_t* dst, const std::uint64_t* a,
                       const std::uint64_t* b, std::size_t words) {
  std::uint64_t n = 0;
  for (std::size_t i = 0; i < words; ++i) {
    dst[i] = a[i] & b[i];
    n += std::popcount(dst[i]);
  }
  return n;
}

constexpr KernelTable kTable{"scalar", dot_many, and_popcount, and_into};

}  // namespace

const KernelTable& scalar_table() { return kTable; }

}  // namespace lat40::kernels
