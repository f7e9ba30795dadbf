// Compiled with -mavx2. Nothing in here may run before the dispatcher has
// confirmed CPU support.
#include "qlab/ff/kernels.hpp"

#include <immintrin.h>

namespace qlab::ff::kernels {
namespace {

// Shoup multiplication: with cs = floor(c * 2^32 / p), the quotient estimate
// hi32(b * cs) leaves c*b - q*p in [0, 2p).
inline __m256i mulmod_shoup(__m256i b, __m256i c, __m256i cs, __m256i pv) {
  const __m256i prod_even = _mm256_mul_epu32(b, cs);
  const __m256i prod_odd = _mm256_mul_epu32(_mm256_srli_epi64(b, 32), cs);
  const __m256i q = _mm256_blend_epi32(_mm256_srli_epi64(prod_even, 32), prod_odd, 0b10101010);
  __m256i r = _mm256_sub_epi32(_mm256_mullo_epi32(b, c), _mm256_mullo_epi32(q, pv));
  return _mm256_min_epu32(r, _mm256_sub_epi32(r, pv));
}

inline __m256i addmod(__m256i a, __m256i b, __m256i pv) {
  const __m256i s = _mm256_add_epi32(a, b);
  return _mm256_min_epu32(s, _mm256_sub_epi32(s, pv));
}

inline std::uint32_t shoup_constant(std::uint32_t c, std::uint32_t p) {
  return static_cast<std::uint32_t>((static_cast<std::uint64_t>(c) << 32) / p);
}

void axpy_avx2(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t c, std::size_t n,
               std::uint32_t p) {
  if (c == 0) return;
  const __m256i cv = _mm256_set1_epi32(static_cast<int>(c));
  const __m256i csv = _mm256_set1_epi32(static_cast<int>(shoup_constant(c, p)));
  const __m256i pv = _mm256_set1_epi32(static_cast<int>(p));
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    const __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + k));
    const __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + k));
    const __m256i r = addmod(a, mulmod_shoup(b, cv, csv, pv), pv);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + k), r);
  }
  const std::uint64_t cc = c;
  for (; k < n; ++k) dst[k] = static_cast<std::uint32_t>((dst[k] + cc * src[k]) % p);
}

void scale_avx2(std::uint32_t* dst, std::uint32_t c, std::size_t n, std::uint32_t p) {
  const __m256i cv = _mm256_set1_epi32(static_cast<int>(c));
  const __m256i csv = _mm256_set1_epi32(static_cast<int>(shoup_constant(c, p)));
  const __m256i pv = _mm256_set1_epi32(static_cast<int>(p));
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    const __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + k));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + k), mulmod_shoup(b, cv, csv, pv));
  }
  const std::uint64_t cc = c;
  for (; k < n; ++k) dst[k] = static_cast<std::uint32_t>((cc * dst[k]) % p);
}

}  // namespace

const KernelTable& avx2_table_unchecked() {
  static const KernelTable table{axpy_avx2, scale_avx2, Isa::Avx2, "avx2"};
  return table;
}

}  // namespace qlab::ff::kernels
