#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace dnmod::kernel {

// Dense sweep of a one-variable polynomial over a whole prime field:
// out[x] = 1 iff sum_e coeffs[e] x^e == 0 (mod p), for every x in [0, p).
// Requires 3 <= p < 256 and coeffs[e] already reduced into [0, p).
using SweepFn = void (*)(const std::uint16_t* coeffs, int deg, std::uint16_t p,
                         std::uint8_t* out);

void sweep_zeros_scalar(const std::uint16_t* coeffs, int deg, std::uint16_t p,
                        std::uint8_t* out);

// Kernels usable on the running machine, scalar reference first.  The vector
// variant appears only when it was compiled in and the CPU supports it.
std::vector<std::pair<std::string, SweepFn>> available_sweeps();

// The kernel fp_enumerate actually uses (the last entry of available_sweeps).
SweepFn active_sweep();
std::string active_sweep_name();

}  // namespace dnmod::kernel
