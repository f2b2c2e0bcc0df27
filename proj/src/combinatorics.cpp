#include "hyperplane/combinatorics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/constants/constants.hpp>

#include "hyperplane/numerics.hpp"

namespace hyperplane {

namespace mp = boost::multiprecision;

double lambda_critical() { return 1.0 / (12.0 * std::sqrt(3.0)); }

HpReal hp_lambda_critical() { return HpReal(1) / (HpReal(12) * hp_sqrt(HpReal(3))); }

namespace {

// log(lambda(h)/lambda_c) written in s = (8/3)(1/4 - h):
// log1p(-3s/2) - (3/2) log1p(-s), which vanishes to second order at s = 0.
double log_ratio_of_s(double s) {
  if (s < 0.05) {
    double term = s;
    double acc = 0.0;
    double pow15 = 1.5;
    for (int k = 2; k < 80; ++k) {
      term *= s;
      pow15 *= 1.5;
      acc += term * (1.5 - pow15) / k;
    }
    return acc;
  }
  return std::log1p(-1.5 * s) - 1.5 * std::log1p(-s);
}

double log_ratio_of_s_derivative(double s) { return -0.75 * s / ((1.0 - 1.5 * s) * (1.0 - s)); }

void check_deficit(double deficit) {
  if (!(deficit >= -1e-15) || !(deficit < 1.0)) {
    throw std::domain_error("lambda must lie in (0, 1/(12*sqrt(3))]; relative deficit " +
                            std::to_string(deficit) + " is outside [0, 1)");
  }
}

}  // namespace

double h_from_deficit(double deficit) {
  check_deficit(deficit);
  if (deficit <= 0.0) return 0.25;
  if (deficit < 0.5) {
    const double target = std::log1p(-deficit);
    const double smax = 2.0 / 3.0;
    double s = bisect([&](double t) { return log_ratio_of_s(t) - target; }, 0.0,
                      std::nextafter(smax, 0.0));
    for (int it = 0; it < 3; ++it) {
      const double d = log_ratio_of_s_derivative(s);
      if (d == 0.0) break;
      const double step = (log_ratio_of_s(s) - target) / d;
      if (!std::isfinite(step)) break;
      const double next = s - step;
      if (next <= 0.0 || next >= smax) break;
      s = next;
    }
    return 0.25 - 0.375 * s;
  }
  // Far from critical: solve log h - (3/2) log1p(8h) = log lambda on the log-h scale.
  const double log_lambda = std::log(lambda_critical()) + std::log1p(-deficit);
  auto f = [&](double log_h) { return log_h - 1.5 * std::log1p(8.0 * std::exp(log_h)) - log_lambda; };
  double log_h = bisect(f, log_lambda - 1.0, std::log(0.25));
  for (int it = 0; it < 3; ++it) {
    const double h = std::exp(log_h);
    const double d = 1.0 - 12.0 * h / (1.0 + 8.0 * h);
    if (d <= 0.0) break;
    log_h -= f(log_h) / d;
  }
  return std::exp(log_h);
}

double h_from_lambda(double lambda) {
  const double lc = lambda_critical();
  if (!(lambda > 0.0) || lambda > lc * (1.0 + 1e-15)) {
    throw std::domain_error("lambda must lie in (0, 1/(12*sqrt(3))] = (0, 0.0481125224...]; got " +
                            std::to_string(lambda));
  }
  return h_from_deficit(std::max(0.0, 1.0 - lambda / lc));
}

HpReal hp_h_from_deficit(const HpReal& deficit) {
  if (deficit < 0 || deficit >= 1) throw std::domain_error("relative deficit outside [0, 1)");
  if (deficit == 0) return HpReal(1) / 4;
  const HpReal one(1);
  const HpReal target = mp::log1p(-deficit);
  const HpReal smax = HpReal(2) / 3;
  auto g = [&](const HpReal& s) { return mp::log1p(-HpReal(1.5) * s) - HpReal(1.5) * mp::log1p(-s) - target; };
  HpReal lo(0), hi = smax;
  for (int it = 0; it < 200; ++it) {
    HpReal mid = (lo + hi) / 2;
    if (g(mid) > 0) lo = mid; else hi = mid;
  }
  HpReal s = (lo + hi) / 2;
  for (int it = 0; it < 6; ++it) {
    const HpReal d = HpReal(-0.75) * s / ((one - HpReal(1.5) * s) * (one - s));
    if (d == 0) break;
    const HpReal next = s - g(s) / d;
    if (next <= 0 || next >= smax) break;
    s = next;
  }
  return HpReal(1) / 4 - HpReal(3) / 8 * s;
}

HpReal hp_lambda(const LambdaParams& params) {
  return hp_lambda_critical() * (HpReal(1) - HpReal(params.deficit));
}

LambdaParams LambdaParams::critical() { return from_deficit(0.0); }

LambdaParams LambdaParams::from_deficit(double deficit) {
  check_deficit(deficit);
  LambdaParams p;
  p.deficit = std::max(0.0, deficit);
  p.lambda = lambda_critical() * (1.0 - p.deficit);
  p.h = h_from_deficit(p.deficit);
  p.is_critical = std::fabs(p.h - 0.25) <= 1e-12;
  return p;
}

LambdaParams LambdaParams::from_ratio(double ratio) {
  if (!(ratio > 0.0) || ratio > 1.0 + 1e-15) {
    throw std::domain_error("lambda ratio must lie in (0, 1]; got " + std::to_string(ratio));
  }
  return from_deficit(std::max(0.0, 1.0 - ratio));
}

LambdaParams LambdaParams::from_lambda(double lambda) {
  const double lc = lambda_critical();
  if (!(lambda > 0.0) || lambda > lc * (1.0 + 1e-15)) {
    throw std::domain_error("lambda must lie in (0, 1/(12*sqrt(3))]; got " + std::to_string(lambda));
  }
  return from_deficit(std::max(0.0, 1.0 - lambda / lc));
}

LambdaParams LambdaParams::near_critical(int n) {
  if (n < 1) throw std::domain_error("near-critical scale n must be >= 1");
  const double n4 = std::pow(static_cast<double>(n), 4);
  return from_deficit(2.0 / (3.0 * n4));
}

namespace {

BigInt double_factorial(long k) {
  if (k < -1) throw ConventionHoleError("double factorial of " + std::to_string(k) + " is undefined");
  BigInt r;
  if (k <= 0) return BigInt(1);
  mpz_2fac_ui(r.backend().data(), static_cast<unsigned long>(k));
  return r;
}

BigInt factorial(unsigned long k) {
  BigInt r;
  mpz_fac_ui(r.backend().data(), k);
  return r;
}

BigInt binomial(unsigned long n, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.backend().data(), n, k);
  return r;
}

HpReal to_hp(const BigInt& x) {
  HpReal r;
  mpfr_set_z(r.backend().data(), x.backend().data(), MPFR_RNDN);
  return r;
}

}  // namespace

BigInt count_triangulations(int n, int p) {
  if (n < 0 || p < 1) throw std::domain_error("count_triangulations needs n >= 0 and p >= 1");
  const long top = 2L * p + 3L * n - 5;
  if (top < -1) {
    throw ConventionHoleError("counting formula needs (" + std::to_string(top) +
                              ")!! at (n=" + std::to_string(n) + ", p=" + std::to_string(p) +
                              "); value available from the series oracle only");
  }
  const BigInt k = BigInt(p) * binomial(2UL * p, static_cast<unsigned long>(p));
  BigInt num = k * double_factorial(top);
  num <<= 2 * n;
  const BigInt den = BigInt(4) * factorial(static_cast<unsigned long>(n)) * double_factorial(2L * p + n - 1);
  BigInt q, r;
  mp::divide_qr(num, den, q, r);
  if (r != 0) throw std::logic_error("counting formula produced a non-integer");
  return q;
}

namespace {

using RSeries = std::vector<Rational>;

// f^alpha for a series with f[0] = 1.
RSeries rs_pow(const RSeries& f, const Rational& alpha, std::size_t len) {
  RSeries g(len, Rational(0));
  g[0] = 1;
  for (std::size_t n = 1; n < len; ++n) {
    Rational acc(0);
    for (std::size_t k = 1; k <= n && k < f.size(); ++k) {
      acc += ((alpha + 1) * Rational(static_cast<long>(k)) - Rational(static_cast<long>(n))) * f[k] * g[n - k];
    }
    g[n] = acc / Rational(static_cast<long>(n));
  }
  return g;
}

// binom(1/2, k) (-4)^k
Rational sqrt_coefficient(int k) {
  Rational c(1);
  for (int j = 0; j < k; ++j) c *= (Rational(1, 2) - j) / Rational(j + 1) * Rational(-4);
  return c;
}

}  // namespace

std::vector<std::vector<Rational>> series_counts(int n_max, int p_max) {
  const std::size_t len = static_cast<std::size_t>(n_max) + 2;
  // h(lambda) from the fixed point h = lambda (1 + 8h)^{3/2}.
  RSeries h(len, Rational(0));
  for (std::size_t it = 0; it < len; ++it) {
    RSeries w(len, Rational(0));
    w[0] = 1;
    for (std::size_t i = 1; i < len; ++i) w[i] = 8 * h[i];
    RSeries pw = rs_pow(w, Rational(3, 2), len);
    RSeries next(len, Rational(0));
    for (std::size_t i = 1; i < len; ++i) next[i] = pw[i - 1];
    h = next;
  }
  RSeries w(len, Rational(0));
  w[0] = 1;
  for (std::size_t i = 1; i < len; ++i) w[i] = 8 * h[i];

  std::vector<std::vector<Rational>> out(static_cast<std::size_t>(n_max) + 1,
                                         std::vector<Rational>(static_cast<std::size_t>(p_max) + 1, Rational(0)));
  for (int p = 1; p <= p_max; ++p) {
    const RSeries wp = rs_pow(w, Rational(p), len);
    const RSeries wq = rs_pow(w, Rational(2 * p - 3, 2), len);
    const Rational cp = sqrt_coefficient(p);
    const Rational cpm = sqrt_coefficient(p - 1);
    for (int n = 0; n <= n_max; ++n) {
      Rational z = -cpm / 2 * wq[static_cast<std::size_t>(n)];
      if (n >= 1) z += cp / 2 * wp[static_cast<std::size_t>(n - 1)];
      if (p == 1 && n == 0) z += Rational(1, 2);
      out[static_cast<std::size_t>(n)][static_cast<std::size_t>(p)] = z;
    }
  }
  return out;
}

HpReal hp_partition_function(const HpReal& lambda, const HpReal& h, int p) {
  (void)lambda;
  if (p < 1) throw std::domain_error("partition_function needs p >= 1");
  const HpReal one(1);
  const HpReal s = hp_sqrt(one + 8 * h);
  if (p == 1) return HpReal(0.5) - (one + 2 * h) / (2 * s);
  // (2p-5)!!/p!, with (-1)!! = 1.
  HpReal ratio = one / 2;
  for (int k = 3; k <= p; ++k) ratio *= HpReal(2 * k - 5) / k;
  return mp::pow(2 + 16 * h, p) * ratio * ((one - 4 * h) * p + 6 * h) / (4 * s * s * s);
}

double partition_function(const LambdaParams& params, int p) {
  PrecisionScope scope(30);
  const HpReal h = hp_h_from_deficit(HpReal(params.deficit));
  return static_cast<double>(hp_partition_function(hp_lambda(params), h, p));
}

HpReal hp_markov_constant(const HpReal& lambda, const HpReal& h, int p) {
  if (p < 1) throw std::domain_error("markov_constant needs p >= 1");
  HpReal term(1), sum(0);
  for (int q = 0; q < p; ++q) {
    sum += term;
    term *= HpReal(2 * (2 * q + 1)) / (q + 1) * h;
  }
  return mp::pow(8 + 1 / h, p - 1) * sum / lambda;
}

double markov_constant(const LambdaParams& params, int p) {
  PrecisionScope scope(30);
  const HpReal h = hp_h_from_deficit(HpReal(params.deficit));
  return static_cast<double>(hp_markov_constant(hp_lambda(params), h, p));
}

HpReal hp_markov_constant_critical(int p) {
  return 2 * hp_sqrt(HpReal(3)) * mp::pow(HpReal(3), p) * HpReal(p) *
         to_hp(binomial(2UL * static_cast<unsigned long>(p), static_cast<unsigned long>(p)));
}

GeneratingValues generating_functions(const LambdaParams& params, double x) {
  const double h = params.h;
  const double lam = params.lambda;
  const double branch = 1.0 / (4.0 * (1.0 + 8.0 * h));
  const double pole = h / (1.0 + 8.0 * h);
  if (!(std::fabs(x) < branch)) {
    throw std::domain_error("generating functions: |x| must be below the branch point 1/(4(1+8h)) = " +
                            std::to_string(branch));
  }
  if (!(std::fabs(x) < pole)) {
    throw std::domain_error("generating functions: |x| must be below the pole h/(1+8h) = " +
                            std::to_string(pole));
  }
  const double a = (1.0 + 8.0 * h) / h;
  const double root = std::sqrt(1.0 - 4.0 * (1.0 + 8.0 * h) * x);
  GeneratingValues v;
  v.G = lam / 2.0 * ((1.0 - a * x) * root - 1.0 + x / lam);
  v.F = (1.0 / lam) * x / ((1.0 - a * x) * root);
  return v;
}

namespace {

// Coefficients of (1 - w x)^alpha.
std::vector<HpReal> hp_binomial_series(const HpReal& w, const HpReal& alpha, int order) {
  std::vector<HpReal> c(static_cast<std::size_t>(order) + 1);
  c[0] = 1;
  for (int k = 1; k <= order; ++k) c[static_cast<std::size_t>(k)] = c[static_cast<std::size_t>(k - 1)] * (alpha - (k - 1)) / k * (-w);
  return c;
}

}  // namespace

std::vector<HpReal> hp_partition_series(const HpReal& lambda, const HpReal& h, int order) {
  const HpReal a = (1 + 8 * h) / h;
  const auto root = hp_binomial_series(4 * (1 + 8 * h), HpReal(0.5), order);
  std::vector<HpReal> g(static_cast<std::size_t>(order) + 1);
  for (int k = 0; k <= order; ++k) {
    HpReal v = root[static_cast<std::size_t>(k)];
    if (k >= 1) v -= a * root[static_cast<std::size_t>(k - 1)];
    if (k == 0) v -= 1;
    if (k == 1) v += 1 / lambda;
    g[static_cast<std::size_t>(k)] = lambda / 2 * v;
  }
  return g;
}

std::vector<HpReal> hp_markov_series(const HpReal& lambda, const HpReal& h, int order) {
  const HpReal a = (1 + 8 * h) / h;
  const auto inv_root = hp_binomial_series(4 * (1 + 8 * h), HpReal(-0.5), order);
  std::vector<HpReal> geometric(static_cast<std::size_t>(order) + 1);
  geometric[0] = 1;
  for (int k = 1; k <= order; ++k) geometric[static_cast<std::size_t>(k)] = geometric[static_cast<std::size_t>(k - 1)] * a;
  std::vector<HpReal> f(static_cast<std::size_t>(order) + 1, HpReal(0));
  for (int k = 1; k <= order; ++k) {
    HpReal acc(0);
    for (int j = 0; j <= k - 1; ++j) acc += geometric[static_cast<std::size_t>(k - 1 - j)] * inv_root[static_cast<std::size_t>(j)];
    f[static_cast<std::size_t>(k)] = acc / lambda;
  }
  return f;
}

CentralBinomialSum central_binomial_limit(double p, int64_t p_n, double h_n) {
  if (p_n < 1 || !(h_n > 0.0) || h_n > 0.25) throw std::domain_error("central_binomial_limit: need p_n >= 1, h_n in (0, 1/4]");
  CentralBinomialSum out;
  {
    PrecisionScope scope(40);
    const HpReal hh(h_n);
    HpReal term(1), sum(0);
    for (int64_t q = 0; q < p_n; ++q) {
      sum += term;
      term *= HpReal(2 * (2 * q + 1)) / HpReal(q + 1) * hh;
    }
    out.finite_sum = static_cast<double>(sum / hp_sqrt(HpReal(p_n)));
  }
  const double integral = integrate([p](double x) { return std::exp(-3.0 * p * x * x); }, 0.0, 1.0, 1e-14).value;
  out.limit = 2.0 / std::sqrt(std::numbers::pi) * integral;
  return out;
}

double fixed_perimeter_constant(int p) {
  PrecisionScope scope(30);
  const HpReal v = mp::pow(HpReal(3), p - 2) * p *
                   to_hp(binomial(2UL * static_cast<unsigned long>(p), static_cast<unsigned long>(p))) /
                   (4 * hp_sqrt(2 * hp_pi()));
  return static_cast<double>(v);
}

HpReal log_joint_regime_asymptotic(int64_t n, int64_t p) {
  const HpReal nn(n), pp(p);
  return -mp::log(36 * hp_pi() * hp_sqrt(HpReal(2))) - nn * mp::log(hp_lambda_critical()) -
         HpReal(2.5) * mp::log(nn) + pp * mp::log(HpReal(12)) + mp::log(pp) / 2 - 2 * pp * pp / (3 * nn);
}

HpReal log_count(int n, int p) { return mp::log(to_hp(count_triangulations(n, p))); }

SizeDistribution SizeDistribution::build(const LambdaParams& params, int p, double tail_target) {
  if (p < 1 || p > 200) throw std::domain_error("SizeDistribution supports perimeters 1..200");
  SizeDistribution d;
  d.perimeter = p;
  d.params = params;

  long double seeds[3] = {0, 0, 0};
  double lam = params.lambda;
  double zp = 0.0;
  {
    PrecisionScope scope(40);
    const HpReal hl = hp_lambda(params);
    const HpReal hh = hp_h_from_deficit(HpReal(params.deficit));
    const HpReal z = hp_partition_function(hl, hh, p);
    zp = static_cast<double>(z);
    for (int n = 0; n < 3; ++n) {
      if (n == 0 && p == 1) continue;
      seeds[n] = static_cast<long double>(to_hp(count_triangulations(n, p)) * mp::pow(hl, n) / z);
    }
    lam = static_cast<double>(hl);
  }

  // Tail bound from #T_{n,p} ~ C(p) lambda_c^{-n} n^{-5/2}.
  const double cp = fixed_perimeter_constant(p);
  const double rho = params.ratio();
  auto tail_bound = [&](double n) {
    return cp * std::exp((n + 1.0) * std::log(rho)) * (2.0 / 3.0) * std::pow(n, -1.5) / zp;
  };
  int64_t n_cut = 16;
  while (tail_bound(static_cast<double>(n_cut)) > 0.5 * tail_target) n_cut *= 2;

  for (;;) {
    d.weights.assign(static_cast<std::size_t>(n_cut) + 1, 0.0);
    std::vector<long double> a(static_cast<std::size_t>(n_cut) + 1, 0.0L);
    for (int n = 0; n < 3 && n <= n_cut; ++n) a[static_cast<std::size_t>(n)] = seeds[n];
    const long double lam2 = 64.0L * static_cast<long double>(lam) * lam;
    for (int64_t n = 3; n <= n_cut; ++n) {
      const long double m = static_cast<long double>(n - 2);
      const long double x = p + 1.5L * m - 1.5L;
      const long double y = p + 0.5L * m + 0.5L;
      a[static_cast<std::size_t>(n)] = a[static_cast<std::size_t>(n - 2)] * lam2 * x * (x + 1) * (x + 2) /
                                       (y * (m + 1) * (m + 2));
    }
    long double total = 0.0L;
    d.cumulative.assign(static_cast<std::size_t>(n_cut) + 1, 0.0);
    for (int64_t n = 0; n <= n_cut; ++n) {
      total += a[static_cast<std::size_t>(n)];
      d.weights[static_cast<std::size_t>(n)] = static_cast<double>(a[static_cast<std::size_t>(n)]);
      d.cumulative[static_cast<std::size_t>(n)] = static_cast<double>(total);
    }
    d.tail_mass = std::max(0.0, static_cast<double>(1.0L - total));
    if (d.tail_mass <= tail_target || n_cut > (int64_t{1} << 28)) break;
    n_cut *= 2;
  }
  if (d.tail_mass > tail_target) throw std::runtime_error("SizeDistribution: tail mass above target");
  return d;
}

double SizeDistribution::mean() const {
  long double acc = 0.0L;
  for (std::size_t n = 0; n < weights.size(); ++n) acc += static_cast<long double>(n) * weights[n];
  return static_cast<double>(acc / (1.0L - tail_mass));
}

}  // namespace hyperplane
