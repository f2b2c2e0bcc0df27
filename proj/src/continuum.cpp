#include "hyperplane/continuum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "hyperplane/numerics.hpp"

namespace hyperplane {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrt2 = 1.41421356237309504880;
const double kSqrt83 = std::sqrt(8.0 / 3.0);
// Normalization sqrt(3 / (2 pi)) of the stable Lévy density.
const double kLevyScale = std::sqrt(3.0 / (2.0 * kPi));

double sinh2(double z) {
  const double s = std::sinh(z);
  return s * s;
}

// Upper incomplete gamma functions for the half-integer orders that appear in the
// moments of mu^h, with negative orders from Gamma(a, z) = (Gamma(a+1, z) - z^a e^-z) / a.
double upper_gamma_half(double z) { return std::sqrt(kPi) * std::erfc(std::sqrt(z)); }
double upper_gamma_minus_half(double z) {
  return 2.0 * (std::exp(-z) / std::sqrt(z) - upper_gamma_half(z));
}
double upper_gamma_minus_three_halves(double z) {
  return (2.0 / 3.0) * (std::exp(-z) / (z * std::sqrt(z)) - upper_gamma_minus_half(z));
}

}  // namespace

double phi(double p, double v) {
  if (p < 0.0 || v < 0.0) throw std::domain_error("phi needs p, v >= 0");
  const double integral = integrate([p](double x) { return std::exp(-3.0 * p * x * x); }, 0.0, 1.0, 1e-14).value;
  return std::exp(p - 2.0 * v) * integral;
}

double phi_closed_form(double p, double v) {
  if (p < 0.0 || v < 0.0) throw std::domain_error("phi needs p, v >= 0");
  if (p == 0.0) return std::exp(-2.0 * v);
  const double s = std::sqrt(3.0 * p);
  return std::exp(p - 2.0 * v) * std::sqrt(kPi) * std::erf(s) / (2.0 * s);
}

BranchingMechanisms branching_mechanisms(double u) {
  if (u < 0.0) throw std::domain_error("branching mechanisms need u >= 0");
  BranchingMechanisms b;
  b.stable = kSqrt83 * u * std::sqrt(u);
  b.tilted = kSqrt83 * u * std::sqrt(u + 3.0);
  b.martingale = kSqrt83 * (u * u + u - 2.0) / std::sqrt(u + 2.0);
  return b;
}

double csbp_marginal(double lambda, double t) {
  if (!(lambda > 0.0) || t < 0.0) throw std::domain_error("csbp_marginal needs lambda > 0, t >= 0");
  if (t == 0.0) return lambda;
  return 3.0 / sinh2(std::asinh(std::sqrt(3.0 / lambda)) + kSqrt2 * t);
}

double csbp_marginal_infinite(double t) {
  if (!(t > 0.0)) throw std::domain_error("csbp_marginal_infinite needs t > 0");
  return 3.0 / sinh2(kSqrt2 * t);
}

ExtinctionDensities extinction_densities(double x, double t) {
  if (!(x > 0.0) || !(t > 0.0)) throw std::domain_error("extinction densities need x, t > 0");
  ExtinctionDensities d;
  const double z = kSqrt2 * t;
  const double s = std::sinh(z);
  // Log form: cosh/sinh^3 overflows for large t and the product underflows to 0 * inf for small t.
  const double log_s = z > 20.0 ? z - std::log(2.0) : std::log(s);
  d.hyperbolic = std::exp(std::log(6.0 * kSqrt2 * x / std::tanh(z)) - 2.0 * log_s - 3.0 * x / (s * s));
  d.critical = std::exp(std::log(3.0 * x) - 3.0 * std::log(t) - 3.0 * x / (2.0 * t * t));
  return d;
}

double extinction_cdf(double x, double t) {
  if (!(x > 0.0) || t < 0.0) throw std::domain_error("extinction_cdf needs x > 0, t >= 0");
  if (t == 0.0) return 0.0;
  return std::exp(-3.0 * x / sinh2(kSqrt2 * t));
}

double marginal_transform_X(double lambda, double t) {
  if (lambda < 0.0 || t < 0.0) throw std::domain_error("marginal_transform_X needs lambda, t >= 0");
  if (lambda == 0.0 || t == 0.0) return 1.0;
  const double z = kSqrt2 * t;
  const double th = std::tanh(z);
  return 1.0 / ((1.0 + lambda / 3.0 * sinh2(z)) * std::sqrt(1.0 + lambda / 3.0 * th * th));
}

double joint_transform(double lambda, double mu, double r) {
  if (mu < 0.0 || r < 0.0) throw std::domain_error("joint_transform needs mu, r >= 0");
  const double q = std::sqrt(2.0 * mu + 4.0);
  const double z = std::sqrt(q) * r;
  const double a = (2.0 * lambda - 2.0 + q) / (3.0 * q);
  const double b = (2.0 * lambda + 4.0 - 2.0 * q) / (3.0 * q);
  const double th = std::tanh(z);
  const double first = a == 0.0 ? 1.0 : 1.0 + a * sinh2(z);
  const double second = 1.0 + b * th * th;
  if (!(first > 0.0) || !(second > 0.0)) {
    throw std::domain_error("joint_transform diverges at lambda = " + std::to_string(lambda) +
                            ", mu = " + std::to_string(mu) + ", r = " + std::to_string(r));
  }
  return 1.0 / (first * std::sqrt(second));
}

double brownian_plane_transform_mu2(double lambda, double r) {
  if (!(r > 0.0)) throw std::domain_error("brownian_plane_transform_mu2 needs r > 0");
  const double z = kSqrt2 * r;
  const double th = std::tanh(z);
  const double s = std::sinh(z);
  // 1 + (2r^2/3)(lambda + 3/tanh^2 z - 2 - 3/(2r^2)) without the cancellation near lambda = -1.
  const double base = (2.0 * r * r / 3.0) * (lambda + 1.0) + 2.0 * r * r / (s * s);
  if (!(base > 0.0)) throw std::domain_error("Brownian plane transform diverges");
  // 2 sqrt2 r^3 cosh(z) / sinh(z)^3, written to stay finite for large r.
  const double prefactor = 2.0 * kSqrt2 * r * r * r / (th * s * s);
  return prefactor * std::pow(base, -1.5);
}

double rescaled_limit_transform(double lambda, double mu) {
  return 1.0 / (1.0 + lambda / 12.0 + mu / 48.0);
}

namespace {

MassCheck integrate_weight(double (*transform)(double, double), double r) {
  MassCheck m;
  try {
    // At large r the integrand peaks at x = 0 with width ~ 1/sinh(sqrt2 r); split there.
    auto f = [&](double x) { return transform(3.0 * x * x - 1.0, r); };
    const double knee = std::min(0.5, 20.0 / std::sinh(kSqrt2 * r));
    const QuadratureResult a = integrate(f, 0.0, knee, 1e-12);
    const QuadratureResult b = integrate(f, knee, 1.0, 1e-12);
    m.value = a.value + b.value;
    m.error = a.error + b.error;
    m.finite = std::isfinite(m.value);
  } catch (const std::domain_error&) {
    m.value = std::numeric_limits<double>::quiet_NaN();
    m.error = std::numeric_limits<double>::infinity();
    m.finite = false;
  }
  return m;
}

double joint_at_mu2(double lambda, double r) { return joint_transform(lambda, 2.0, r); }

}  // namespace

MassCheck check_mass(double r) { return integrate_weight(&brownian_plane_transform_mu2, r); }

MassCheck check_mass_hyperbolic_variant(double r) { return integrate_weight(&joint_at_mu2, r); }

double stable_levy_density(double x) { return x > 0.0 ? kLevyScale * std::pow(x, -2.5) : 0.0; }

double tilted_levy_density(double x) {
  return x > 0.0 ? kLevyScale * (1.0 + 2.0 * x) * std::pow(x, -2.5) * std::exp(-3.0 * x) : 0.0;
}

double tilted_tail_mass(double eps) {
  if (!(eps > 0.0)) throw std::domain_error("tilted_tail_mass needs eps > 0");
  const double z = 3.0 * eps;
  return std::max(0.0, kLevyScale * (std::pow(3.0, 1.5) * upper_gamma_minus_three_halves(z) +
                                     2.0 * std::sqrt(3.0) * upper_gamma_minus_half(z)));
}

double tilted_tail_first_moment(double eps) {
  if (!(eps > 0.0)) throw std::domain_error("tilted_tail_first_moment needs eps > 0");
  const double z = 3.0 * eps;
  return std::max(0.0, kLevyScale * (std::sqrt(3.0) * upper_gamma_minus_half(z) +
                                     2.0 / std::sqrt(3.0) * upper_gamma_half(z)));
}

double tilted_head_moment(int k, double eps) {
  if (eps < 0.0) throw std::domain_error("tilted_head_moment needs eps >= 0");
  if (eps == 0.0) return 0.0;
  using boost::math::tgamma_lower;
  const double z = 3.0 * eps;
  // \int_0^eps x^{k-5/2} (1+2x) e^{-3x} dx = 3^{3/2-k} gamma(k-3/2, 3 eps) + 2 * 3^{1/2-k} gamma(k-1/2, 3 eps)
  const double a = k - 1.5;
  return kLevyScale * (std::pow(3.0, -a) * tgamma_lower(a, z) + 2.0 * std::pow(3.0, -a - 1.0) * tgamma_lower(a + 1.0, z));
}

double tilted_head_volume_drift(double eps) {
  if (eps < 0.0) throw std::domain_error("tilted_head_volume_drift needs eps >= 0");
  return std::erf(std::sqrt(3.0 * eps)) / kSqrt2;
}

namespace {

// Draw from x^{-alpha} e^{-3x} on [eps, inf), alpha > 1.
double sample_gamma_tail(double alpha, double eps, Stream& rng) {
  if (3.0 * eps < 1.0) {
    const double inv = -1.0 / (alpha - 1.0);
    for (;;) {
      const double y = eps * std::pow(rng.uniform(), inv);
      if (rng.uniform() < std::exp(-3.0 * (y - eps))) return y;
    }
  }
  for (;;) {
    const double y = eps + rng.exponential() / 3.0;
    if (rng.uniform() < std::pow(y / eps, -alpha)) return y;
  }
}

}  // namespace

double sample_tilted_jump(double eps, Stream& rng) {
  const double z = 3.0 * eps;
  const double steep = std::pow(3.0, 1.5) * upper_gamma_minus_three_halves(z);
  const double shallow = 2.0 * std::sqrt(3.0) * upper_gamma_minus_half(z);
  if (rng.uniform() * (steep + shallow) < steep) return sample_gamma_tail(2.5, eps, rng);
  return sample_gamma_tail(1.5, eps, rng);
}

double stable_tail_mass(double eps) { return (2.0 / 3.0) * kLevyScale * std::pow(eps, -1.5); }

double stable_tail_first_moment(double eps) { return 2.0 * kLevyScale / std::sqrt(eps); }

double stable_head_variance(double eps) { return 2.0 * kLevyScale * std::sqrt(eps); }

double stable_head_log_weight(double eps) {
  if (!(eps > 0.0) || eps > 0.1) throw std::domain_error("stable_head_log_weight needs 0 < eps <= 0.1");
  // log(1+2x) - 2x = sum_{k>=2} (-1)^{k+1} (2x)^k / k, integrated term by term against x^{-5/2}.
  double sum = 0.0, power = 4.0 * eps * eps;
  for (int k = 2; k < 60; ++k) {
    const double term = (k % 2 == 0 ? -1.0 : 1.0) * power / k / (k - 1.5);
    sum += term;
    if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
    power *= 2.0 * eps;
  }
  return kLevyScale * sum / (eps * std::sqrt(eps));
}

double nu_density(double y) {
  if (!(y > 0.0)) return 0.0;
  return std::exp(-1.0 / (2.0 * y)) / std::sqrt(2.0 * kPi * std::pow(y, 5));
}

double nu_delta_density(double delta, double x) {
  if (!(delta > 0.0)) throw std::domain_error("nu_delta needs delta > 0");
  if (!(x > 0.0)) return 0.0;
  const double log_density = 3.0 * std::log(delta) + 2.0 * delta - std::log1p(2.0 * delta) -
                             delta * delta / (2.0 * x) - 2.0 * x - 0.5 * std::log(2.0 * kPi) - 2.5 * std::log(x);
  return std::exp(log_density);
}

double nu_delta_mean(double delta) { return delta * delta / (1.0 + 2.0 * delta); }

double nu_delta_laplace(double delta, double beta) {
  if (!(delta > 0.0) || beta < 0.0) throw std::domain_error("nu_delta_laplace needs delta > 0, beta >= 0");
  const double s = delta * std::sqrt(4.0 + 2.0 * beta);
  return (1.0 + s) / (1.0 + 2.0 * delta) * std::exp(2.0 * delta - s);
}

double sample_nu_plain(double delta, Stream& rng) {
  if (!(delta > 0.0)) throw std::domain_error("sample_nu needs delta > 0");
  const double d2 = delta * delta;
  for (;;) {
    const double xi = 1.0 / rng.chi_square3();
    if (rng.uniform() < std::exp(-2.0 * d2 * xi)) return d2 * xi;
  }
}

double sample_nu(double delta, Stream& rng) {
  if (!(delta > 0.0)) throw std::domain_error("sample_nu needs delta > 0");
  // Y = 1/xi has density proportional to y^{1/2} exp(-y/2 - b/y), b = 2 delta^2. The proposal
  // Gamma(3/2, rate) with rate solving 4 b rate^2 + 9 rate - 9/2 = 0 maximizes acceptance.
  const double b = 2.0 * delta * delta;
  const double rate = 9.0 / (9.0 + std::sqrt(81.0 + 72.0 * b));
  const double slack = 0.5 - rate;
  const double peak = 2.0 * std::sqrt(b * slack);
  for (;;) {
    const double y = rng.chi_square3() / (2.0 * rate);
    if (rng.uniform() < std::exp(peak - slack * y - b / y)) return delta * delta / y;
  }
}

double sigma_tail(double eps) {
  if (!(eps > 0.0)) throw std::domain_error("sigma_tail needs eps > 0");
  // Inner integral: nu([eps / x^2, inf)); outer against mu(dx). Split the outer range at the
  // scale where the inner mass switches from ~0 to ~1.
  auto inner = [eps](double x) {
    const double a = eps / (x * x);
    return integrate(nu_density, a, std::numeric_limits<double>::infinity(), 1e-12).value;
  };
  auto outer = [&](double x) { return stable_levy_density(x) * inner(x); };
  const double knee = std::sqrt(eps);
  double total = 0.0;
  total += integrate(outer, 0.0, knee, 1e-11).value;
  total += integrate(outer, knee, 10.0 * knee, 1e-11).value;
  total += integrate(outer, 10.0 * knee, std::numeric_limits<double>::infinity(), 1e-11).value;
  return total;
}

double sigma_constant_stated() {
  return std::pow(2.0, 0.25) * std::tgamma(0.75) / (kPi * std::sqrt(3.0));
}

double sigma_constant_exact() {
  return std::pow(2.0, 0.75) * std::tgamma(0.75) / (kPi * std::sqrt(3.0));
}

double survival_probability(double x) { return x > 0.0 ? std::erf(std::sqrt(3.0 * x)) : 0.0; }

}  // namespace hyperplane
