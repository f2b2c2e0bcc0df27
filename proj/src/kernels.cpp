#include "hyperplane/kernels.hpp"

#include <cmath>

namespace hyperplane::kernels {

void philox_blocks(uint64_t key, uint64_t id, uint64_t counter0, std::size_t nblocks,
                   uint32_t* out) {
  uint32_t* o0 = out;
  uint32_t* o1 = out + nblocks;
  uint32_t* o2 = out + 2 * nblocks;
  uint32_t* o3 = out + 3 * nblocks;
  const uint32_t id_lo = static_cast<uint32_t>(id);
  const uint32_t id_hi = static_cast<uint32_t>(id >> 32);
  const uint32_t key_lo = static_cast<uint32_t>(key);
  const uint32_t key_hi = static_cast<uint32_t>(key >> 32);
#pragma omp simd
  for (std::size_t b = 0; b < nblocks; ++b) {
    const uint64_t ctr = counter0 + b;
    uint32_t c0 = static_cast<uint32_t>(ctr);
    uint32_t c1 = static_cast<uint32_t>(ctr >> 32);
    uint32_t c2 = id_lo;
    uint32_t c3 = id_hi;
    uint32_t k0 = key_lo;
    uint32_t k1 = key_hi;
    for (int round = 0; round < 10; ++round) {
      const uint64_t p0 = static_cast<uint64_t>(0xD2511F53u) * c0;
      const uint64_t p1 = static_cast<uint64_t>(0xCD9E8D57u) * c2;
      const uint32_t n0 = static_cast<uint32_t>(p1 >> 32) ^ c1 ^ k0;
      const uint32_t n2 = static_cast<uint32_t>(p0 >> 32) ^ c3 ^ k1;
      c0 = n0;
      c1 = static_cast<uint32_t>(p1);
      c2 = n2;
      c3 = static_cast<uint32_t>(p0);
      k0 += 0x9E3779B9u;
      k1 += 0xBB67AE85u;
    }
    o0[b] = c0;
    o1[b] = c1;
    o2[b] = c2;
    o3[b] = c3;
  }
}

double stable_band_log_weight(const uint32_t* u, std::size_t n, double eps, double vmin) {
  const double scale = (1.0 - vmin) * 0x1.0p-32;
  double acc = 0.0;
#pragma omp simd reduction(+ : acc)
  for (std::size_t i = 0; i < n; ++i) {
    const double v = vmin + (static_cast<double>(u[i]) + 0.5) * scale;
    const double x = eps * std::exp((-2.0 / 3.0) * std::log(v));
    acc += std::log1p(2.0 * x) - 3.0 * x;
  }
  return acc;
}

}  // namespace hyperplane::kernels
