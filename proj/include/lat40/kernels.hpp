#pragma once

#include <cstddef>
#include <cstdint>

namespace lat40::kernels {

// Packed vectors are int16 rows of this many lanes; unused lanes are zero.
inline constexpr std::size_t kStride = 48;

struct KernelTable {
  const char* name;
  // out[i] = <a, rows + i*kStride> over kStride lanes.
  void (*dot_many)(const std::int16_t* a, const std::int16_t* rows, std::size_t count,
                   std::int32_t* out);
  // popcount(a & b) over `words` 64-bit words.
  std::uint64_t (*and_popcount)(const std::uint64_t* a, const std::uint64_t* b,
                                std::size_t words);
  // dst = a & b, returns popcount(dst). dst may alias a.
  std::uint64_t (*and_into)(std::uint64_t* dst, const std::uint64_t* a,
                            const std::uint64_t* b, std::size_t words);
};

const KernelTable& scalar_table();
// nullptr when the CPU lacks AVX2.
const KernelTable* avx2_table();

// Best table for this CPU. LAT40_KERNELS=scalar forces the reference path.
const KernelTable& active();

}  // namespace lat40::kernels
