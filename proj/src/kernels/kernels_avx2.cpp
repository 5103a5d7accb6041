#include <lat40/kernels.hpp>

#include <immintrin.h>

namespace lat40::kernels {

namespace avx2 {

static_assert(kStride == 48, "the dot kernel is unrolled for three 16-lane loads");

inline std::int32_t hsum(__m256i v) {
  __m128i s = _mm_add_epi32(_mm256_castsi256_si128(v), _mm256_extracti128_si256(v, 1));
  s = _mm_add_epi32(s, _mm_shuffle_epi32(s, 0x4e));
  s = _mm_add_epi32(s, _mm_shuffle_epi32(s, 0xb1));
  return _mm_cvtsi128_si32(s);
}

void dot_many(const std::int16_t* a, const std::int16_t* rows, std::size_t count,
              std::int32_t* out) {
  const __m256i a0 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a));
  const __m256i a1 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + 16));
  const __m256i a2 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + 32));
  for (std::size_t i = 0; i < count; ++i) {
    const auto* r = reinterpret_cast<const __m256i*>(rows + i * kStride);
    __m256i acc = _mm256_madd_epi16(a0, _mm256_loadu_si256(r));
    acc = _mm256_add_epi32(acc, _mm256_madd_epi16(a1, _mm256_loadu_si256(r + 1)));
    acc = _mm256_add_epi32(acc, _mm256_madd_epi16(a2, _mm256_loadu_si256(r + 2)));
    out[i] = hsum(acc);
  }
}

// Nibble-table popcount (Mula et al.), byte counts folded with SAD.
inline __m256i popcount_bytes(__m256i v) {
  const __m256i table = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                         0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low = _mm256_set1_epi8(0x0f);
  __m256i lo = _mm256_shuffle_epi8(table, _mm256_and_si256(v, low));
  __m256i hi = _mm256_shuffle_epi8(table, _mm256_and_si256(_mm256_srli_epi16(v, 4), low));
  return _mm256_sad_epu8(_mm256_add_epi8(lo, hi), _mm256_setzero_si256());
}

inline std::uint64_t sum64(__m256i v) {
  return std::uint64_t(_mm256_extract_epi64(v, 0)) + std::uint64_t(_mm256_extract_epi64(v, 1)) +
         std::uint64_t(_mm256_extract_epi64(v, 2)) + std::uint64_t(_mm256_extract_epi64(v, 3));
}

std::uint64_t and_popcount(const std::uint64_t* a, const std::uint64_t* b,
                           std::size_t words) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= words; i += 4) {
    __m256i x = _mm256_and_si256(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i)),
                                 _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i)));
    acc = _mm256_add_epi64(acc, popcount_bytes(x));
  }
  std::uint64_t n = sum64(acc);
  for (; i < words; ++i) n += _mm_popcnt_u64(a[i] & b[i]);
  return n;
}

std::uint64_t and_into(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b,
                       std::size_t words) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= words; i += 4) {
    __m256i x = _mm256_and_si256(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i)),
                                 _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i)));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), x);
    acc = _mm256_add_epi64(acc, popcount_bytes(x));
  }
  std::uint64_t n = sum64(acc);
  for (; i < words; ++i) {
    dst[i] = a[i] & b[i];
    n += _mm_popcnt_u64(dst[i]);
  }
  return n;
}

}  // namespace avx2

const KernelTable* avx2_table_unchecked() {
  static constexpr KernelTable table{"avx2", avx2::dot_many, avx2::and_popcount,
                                     avx2::and_into};
  return &table;
}

}  // namespace lat40::kernels
