#include <immintrin.h>

#include "dnmod/hunt_kernel.hpp"

namespace dnmod::kernel {

// 16 evaluation points per 256-bit vector, unsigned 16-bit lanes.  With
// p < 256 every Horner step stays below 2^16 (acc*x + c <= 250*250 + 255),
// and the step result is reduced exactly with a multiply-high quotient
// estimate: q = mulhi(v, floor(2^16/p)) is floor(v/p) or one less, so one
// conditional subtract finishes the reduction.
void sweep_zeros_avx2(const std::uint16_t* coeffs, int deg, std::uint16_t p,
                      std::uint8_t* out) {
  const __m256i vp = _mm256_set1_epi16(static_cast<short>(p));
  const __m256i vpm1 = _mm256_set1_epi16(static_cast<short>(p - 1));
  const __m256i vmagic =
      _mm256_set1_epi16(static_cast<short>(static_cast<std::uint16_t>(65536u / p)));
  const __m256i lane_id =
      _mm256_setr_epi16(0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15);
  for (std::uint32_t base = 0; base < p; base += 16) {
    const __m256i x =
        _mm256_add_epi16(_mm256_set1_epi16(static_cast<short>(base)), lane_id);
    __m256i acc = _mm256_set1_epi16(static_cast<short>(coeffs[deg]));
    for (int e = deg - 1; e >= 0; --e) {
      __m256i v = _mm256_add_epi16(_mm256_mullo_epi16(acc, x),
                                   _mm256_set1_epi16(static_cast<short>(coeffs[e])));
      __m256i q = _mm256_mulhi_epu16(v, vmagic);
      __m256i r = _mm256_sub_epi16(v, _mm256_mullo_epi16(q, vp));
      // r < 2p <= 502, so signed compare against p-1 is safe.
      __m256i over = _mm256_cmpgt_epi16(r, vpm1);
      acc = _mm256_sub_epi16(r, _mm256_and_si256(over, vp));
    }
    const __m256i zero = _mm256_cmpeq_epi16(acc, _mm256_setzero_si256());
    alignas(32) std::uint16_t lanes[16];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), zero);
    for (std::uint32_t i = 0; i < 16 && base + i < p; ++i)
      out[base + i] = lanes[i] ? 1 : 0;
  }
}

}  // namespace dnmod::kernel
