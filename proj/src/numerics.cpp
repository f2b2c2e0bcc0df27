#include "hyperplane/numerics.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace hyperplane {

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double tol, unsigned max_depth) {
  QuadratureResult r;
  r.value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, max_depth, tol,
                                                                          &r.error);
  return r;
}

QuadratureResult integrate_2d(const std::function<double(double, double)>& f, double a, double b,
                              const std::function<double(double)>& c,
                              const std::function<double(double)>& d, double tol) {
  double inner_err = 0.0;
  auto inner = [&](double x) {
    QuadratureResult q = integrate([&](double y) { return f(x, y); }, c(x), d(x), tol);
    inner_err = std::max(inner_err, q.error);
    return q.value;
  };
  QuadratureResult r = integrate(inner, a, b, tol);
  r.error += inner_err * std::fabs(b - a);
  return r;
}

std::vector<double> rk4(const std::function<double(double)>& f, double y0, double h, int steps) {
  std::vector<double> ys;
  ys.reserve(static_cast<std::size_t>(steps) + 1);
  double y = y0;
  ys.push_back(y);
  for (int k = 0; k < steps; ++k) {
    const double k1 = f(y);
    const double k2 = f(y + 0.5 * h * k1);
    const double k3 = f(y + 0.5 * h * k2);
    const double k4 = f(y + h * k3);
    y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    ys.push_back(y);
  }
  return ys;
}

double bisect(const std::function<double(double)>& f, double lo, double hi, int iterations) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0)) throw std::domain_error("bisect: root not bracketed");
  for (int i = 0; i < iterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double fm = f(mid);
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace hyperplane
