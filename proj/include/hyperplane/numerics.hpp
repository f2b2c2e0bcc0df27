#pragma once

#include <functional>
#include <vector>

namespace hyperplane {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
};

// Adaptive Gauss-Kronrod (61 points). Either bound may be infinite.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double tol = 1e-13, unsigned max_depth = 15);

// Nested adaptive rule over [a,b] x [c(x), d(x)].
QuadratureResult integrate_2d(const std::function<double(double, double)>& f, double a, double b,
                              const std::function<double(double)>& c,
                              const std::function<double(double)>& d, double tol = 1e-11);

// Classical fourth-order Runge-Kutta for a scalar autonomous ODE y' = f(y).
// Returns y at t0 + k*h for k = 0..steps.
std::vector<double> rk4(const std::function<double(double)>& f, double y0, double h, int steps);

// Root of a monotone function on [lo, hi] by bisection.
double bisect(const std::function<double(double)>& f, double lo, double hi, int iterations = 200);

}  // namespace hyperplane
