#include "dnmod/hunt_kernel.hpp"

namespace dnmod::kernel {

void sweep_zeros_scalar(const std::uint16_t* coeffs, int deg, std::uint16_t p,
                        std::uint8_t* out) {
  for (std::uint32_t x = 0; x < p; ++x) {
    std::uint32_t acc = coeffs[deg];
    // acc < p <= 251 and x < p keep acc * x + c below 2^16; one reduction per step.
    for (int e = deg - 1; e >= 0; --e) acc = (acc * x + coeffs[e]) % p;
    out[x] = acc == 0 ? 1 : 0;
  }
}

#if defined(DNMOD_HAVE_AVX2)
void sweep_zeros_avx2(const std::uint16_t* coeffs, int deg, std::uint16_t p,
                      std::uint8_t* out);
#endif

std::vector<std::pair<std::string, SweepFn>> available_sweeps() {
  std::vector<std::pair<std::string, SweepFn>> v;
  v.emplace_back("scalar", &sweep_zeros_scalar);
#if defined(DNMOD_HAVE_AVX2)
  if (__builtin_cpu_supports("avx2")) v.emplace_back("avx2", &sweep_zeros_avx2);
#endif
  return v;
}

SweepFn active_sweep() { return available_sweeps().back().second; }

std::string active_sweep_name() { return available_sweeps().back().first; }

}  // namespace dnmod::kernel
