#pragma once

#include <cstddef>
#include <cstdint>

// Vectorized inner loops. These live in their own translation unit, compiled with
// relaxed floating point so that log/exp map to vector math routines.
namespace hyperplane::kernels {

// Philox4x32-10 blocks for counters (counter0 + b, id), b < nblocks, word-major output.
void philox_blocks(uint64_t key, uint64_t id, uint64_t counter0, std::size_t nblocks,
                   uint32_t* out);

// Sum over jumps x_k = eps * v_k^(-2/3) of log(1+2x_k) - 3x_k, where v_k is the
// 32-bit word u_k mapped to the midpoint grid of (vmin, 1).
double stable_band_log_weight(const uint32_t* u, std::size_t n, double eps, double vmin);

// Same sum computed one jump at a time in strict IEEE arithmetic (reference).
double stable_band_log_weight_reference(const uint32_t* u, std::size_t n, double eps,
                                        double vmin);

}  // namespace hyperplane::kernels
