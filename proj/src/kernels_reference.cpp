#include <cmath>

#include "hyperplane/kernels.hpp"

namespace hyperplane::kernels {

double stable_band_log_weight_reference(const uint32_t* u, std::size_t n, double eps,
                                        double vmin) {
  const double scale = (1.0 - vmin) * 0x1.0p-32;
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = vmin + (static_cast<double>(u[i]) + 0.5) * scale;
    const double x = eps * std::pow(v, -2.0 / 3.0);
    acc += std::log1p(2.0 * x) - 3.0 * x;
  }
  return acc;
}

}  // namespace hyperplane::kernels
