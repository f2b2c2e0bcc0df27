#pragma once

#include <cstdint>

#include "hyperplane/rng.hpp"

// Closed-form transforms, Lévy measures and mark laws of the continuum
// perimeter/volume processes.
namespace hyperplane {

// Biasing weight e^{-2v} e^p \int_0^1 e^{-3 p x^2} dx of a hull with perimeter p and volume v.
double phi(double p, double v);             // quadrature
double phi_closed_form(double p, double v);  // error-function form

struct BranchingMechanisms {
  double stable = 0.0;      // sqrt(8/3) u^{3/2}
  double tilted = 0.0;      // sqrt(8/3) u sqrt(u+3)
  double martingale = 0.0;  // sqrt(8/3) (u^2+u-2) / sqrt(u+2)
};
BranchingMechanisms branching_mechanisms(double u);

// u_t(lambda) for the subcritical CSBP: solves du/dt = -psi(u), u_0 = lambda.
double csbp_marginal(double lambda, double t);
double csbp_marginal_infinite(double t);  // lambda -> infinity

struct ExtinctionDensities {
  double hyperbolic = 0.0;
  double critical = 0.0;
};
// Densities in t of the extinction time started from x.
ExtinctionDensities extinction_densities(double x, double t);
double extinction_cdf(double x, double t);  // hyperbolic case

// E[exp(-lambda P_t)] for the hyperbolic perimeter process.
double marginal_transform_X(double lambda, double t);

// E[exp(-lambda P_r - mu V_r)]. Throws std::domain_error where the formula diverges.
double joint_transform(double lambda, double mu, double r);

// E[exp(-lambda P_r - 2 V_r)] for the Brownian plane hull. Throws std::domain_error
// where it diverges (lambda too negative).
double brownian_plane_transform_mu2(double lambda, double r);

// Laplace transform of (X, X/4), X ~ Exp(12).
double rescaled_limit_transform(double lambda, double mu);

struct MassCheck {
  double value = 0.0;
  double error = 0.0;
  bool finite = true;
};
// \int_0^1 E[exp(-(3x^2-1) P_r - 2 V_r)] dx under the Brownian plane: the expectation of
// the biasing weight, which must be 1.
MassCheck check_mass(double r);
// Same integral with the hyperbolic joint transform substituted for the Brownian one.
MassCheck check_mass_hyperbolic_variant(double r);

// Lévy densities of the stable process (mu) and of its exponential tilt (mu^h).
double stable_levy_density(double x);
double tilted_levy_density(double x);

// Integrals of the tilted measure mu^h, closed forms via incomplete gamma functions.
double tilted_tail_mass(double eps);          // mu^h([eps, inf))
double tilted_tail_first_moment(double eps);  // \int_eps^inf x mu^h(dx)
double tilted_head_moment(int k, double eps); // \int_0^eps x^k mu^h(dx), k = 2 or 3
double tilted_head_volume_drift(double eps);  // \int_0^eps x^2/(1+2x) mu^h(dx)
// Draw from mu^h restricted to [eps, inf), normalized.
double sample_tilted_jump(double eps, Stream& rng);

double stable_tail_mass(double eps);
double stable_tail_first_moment(double eps);
double stable_head_variance(double eps);
// \int_0^eps (log(1+2x) - 2x) mu(dx); needs eps <= 0.1.
double stable_head_log_weight(double eps);

// Volume mark law nu_delta.
double nu_density(double y);  // unit-scale law of 1/chi^2_3
double nu_delta_density(double delta, double x);
double nu_delta_mean(double delta);
double nu_delta_laplace(double delta, double beta);
// Exact draw. Rejection from a gamma proposal whose rate is tuned to delta; at small
// delta this is the plain tilt of the inverse chi-square base.
double sample_nu(double delta, Stream& rng);
// Inverse chi-square base accepted with probability exp(-2 delta^2 xi).
double sample_nu_plain(double delta, Stream& rng);

// sigma([eps, inf)) for the image of mu (x) nu under (x, y) -> x^2 y.
double sigma_tail(double eps);  // double quadrature
double sigma_constant_stated();  // 2^{1/4} Gamma(3/4) / (pi sqrt 3)
double sigma_constant_exact();   // 2^{3/4} Gamma(3/4) / (pi sqrt 3)

// Survival probability of the mirrored tilted process started at x (never hits 0).
double survival_probability(double x);

}  // namespace hyperplane
