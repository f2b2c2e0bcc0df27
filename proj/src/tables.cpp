#include "hyperplane/tables.hpp"

#include <cmath>
#include <cstring>
#include <map>
#include <mutex>

#include <json.hpp>

namespace hyperplane {

namespace {

void fill_scaled(std::vector<double>& z, std::vector<double>& c, std::vector<HpReal>& z_hp,
                 std::vector<HpReal>& c_hp, const HpReal& lambda, const HpReal& h, int p_max) {
  const std::size_t n = static_cast<std::size_t>(p_max) + 2;
  const std::size_t n_hp = static_cast<std::size_t>(std::min(p_max + 1, kHpStoreLimit)) + 1;
  z.assign(n, 0.0);
  c.assign(n, 0.0);
  z_hp.assign(n_hp, HpReal(0));
  c_hp.assign(n_hp, HpReal(0));

  const HpReal one(1);
  const HpReal rho = 4 + 32 * h;
  const HpReal beta = 8 + one / h;
  const HpReal slope = one - 4 * h;

  HpReal zs = hp_partition_function(lambda, h, 1) / rho;
  HpReal sum(0), binom_term(1);
  HpReal rho_pow = rho, beta_pow = beta;
  const HpReal lambda_beta = lambda * beta;
  std::size_t p = 1;
  for (; p < n && p < n_hp; ++p) {
    if (p == 2) zs = hp_partition_function(lambda, h, 2) / (rho * rho);
    if (p > 2) {
      const long q = static_cast<long>(p) - 1;
      zs *= HpReal(2 * q - 3) / (2 * (q + 1)) * (slope * (q + 1) + 6 * h) / (slope * q + 6 * h);
    }
    sum += binom_term;
    binom_term *= HpReal(2 * (2 * static_cast<long>(p) - 1)) / static_cast<long>(p) * h;
    const HpReal cs = sum / lambda_beta;
    z[p] = static_cast<double>(zs);
    c[p] = static_cast<double>(cs);
    z_hp[p] = zs * rho_pow;
    c_hp[p] = cs * beta_pow;
    rho_pow *= rho;
    beta_pow *= beta;
  }
  // Beyond the stored range the same recurrences run in extended precision; the
  // relative error grows like p * 1e-19.
  long double zl = static_cast<long double>(zs);
  long double suml = static_cast<long double>(sum);
  long double terml = static_cast<long double>(binom_term);
  const long double hl = static_cast<long double>(h);
  const long double slope_l = static_cast<long double>(slope);
  const long double lb = static_cast<long double>(lambda_beta);
  for (; p < n; ++p) {
    const long double q = static_cast<long double>(p) - 1;
    zl *= (2 * q - 3) / (2 * (q + 1)) * (slope_l * (q + 1) + 6 * hl) / (slope_l * q + 6 * hl);
    suml += terml;
    terml *= 2 * (2 * static_cast<long double>(p) - 1) / static_cast<long double>(p) * hl;
    z[p] = static_cast<double>(zl);
    c[p] = static_cast<double>(suml / lb);
  }
}

}  // namespace

std::shared_ptr<const BoltzmannTables> BoltzmannTables::build(const LambdaParams& params, int p_max,
                                                              int precision_digits) {
  if (p_max < 1) throw std::domain_error("BoltzmannTables: p_max must be >= 1");
  if (precision_digits < 20) throw std::domain_error("BoltzmannTables: need at least 20 digits");
  auto t = std::shared_ptr<BoltzmannTables>(new BoltzmannTables());
  t->params_ = params;
  t->p_max_ = p_max;
  t->digits_ = precision_digits;
  t->rho_ = 4.0 + 32.0 * params.h;
  t->beta_ = 8.0 + 1.0 / params.h;
  PrecisionScope scope(precision_digits + 10);
  const HpReal h = hp_h_from_deficit(HpReal(params.deficit));
  const HpReal lambda = hp_lambda(params);
  fill_scaled(t->z_, t->c_, t->z_hp_, t->c_hp_, lambda, h, p_max);
  return t;
}

double BoltzmannTables::Z(int p) const {
  return std::exp(std::log(z_scaled(p)) + p * std::log(rho_));
}

double BoltzmannTables::C(int p) const {
  return std::exp(std::log(c_scaled(p)) + p * std::log(beta_));
}

double BoltzmannTables::recurrence_residual(int p) const {
  if (p < 1 || p + 1 > hp_limit()) throw CapacityError("recurrence_residual: p outside stored range");
  PrecisionScope scope(digits_ + 10);
  const HpReal lambda = hp_lambda(params_);
  HpReal acc = C_hp(p) - lambda * C_hp(p + 1);
  for (int i = 0; i < p; ++i) acc -= 2 * C_hp(p - i) * Z_hp(i + 1);
  return static_cast<double>(boost::multiprecision::abs(acc) / C_hp(p));
}

std::string BoltzmannTables::to_json() const {
  PrecisionScope scope(digits_ + 10);
  nlohmann::json j;
  j["lambda"] = to_decimal(hp_lambda(params_), digits_);
  j["h"] = to_decimal(hp_h_from_deficit(HpReal(params_.deficit)), digits_);
  j["deficit"] = to_decimal(HpReal(params_.deficit), 17);
  j["precision_digits"] = digits_;
  j["p_max"] = p_max_;
  if (p_max_ + 1 > hp_limit()) throw CapacityError("to_json: table larger than the stored precision range");
  nlohmann::json z = nlohmann::json::array(), c = nlohmann::json::array();
  for (int p = 1; p <= p_max_; ++p) z.push_back(to_decimal(Z_hp(p), digits_));
  for (int p = 1; p <= p_max_ + 1; ++p) c.push_back(to_decimal(C_hp(p), digits_));
  j["Z"] = z;
  j["C"] = c;
  return j.dump(1);
}

std::shared_ptr<const BoltzmannTables> BoltzmannTables::from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  const int digits = j.at("precision_digits").get<int>();
  const int p_max = j.at("p_max").get<int>();
  const auto& zj = j.at("Z");
  const auto& cj = j.at("C");
  if (static_cast<int>(zj.size()) != p_max || static_cast<int>(cj.size()) != p_max + 1) {
    throw std::runtime_error("table JSON: Z must have p_max entries and C p_max + 1");
  }
  PrecisionScope scope(digits + 10);
  LambdaParams params;
  if (j.contains("deficit")) {
    params = LambdaParams::from_deficit(std::stod(j.at("deficit").get<std::string>()));
  } else {
    const HpReal lambda = from_decimal(j.at("lambda").get<std::string>());
    params = LambdaParams::from_deficit(static_cast<double>(1 - lambda / hp_lambda_critical()));
  }
  auto t = std::shared_ptr<BoltzmannTables>(new BoltzmannTables());
  t->params_ = params;
  t->p_max_ = p_max;
  t->digits_ = digits;
  t->rho_ = 4.0 + 32.0 * params.h;
  t->beta_ = 8.0 + 1.0 / params.h;
  const HpReal h = from_decimal(j.at("h").get<std::string>());
  const HpReal rho = 4 + 32 * h;
  const HpReal beta = 8 + 1 / h;
  const std::size_t n = static_cast<std::size_t>(p_max) + 2;
  t->z_.assign(n, 0.0);
  t->c_.assign(n, 0.0);
  t->z_hp_.assign(n, HpReal(0));
  t->c_hp_.assign(n, HpReal(0));
  HpReal rho_pow = rho, beta_pow = beta;
  for (std::size_t p = 1; p < n; ++p) {
    if (p <= static_cast<std::size_t>(p_max)) {
      t->z_hp_[p] = from_decimal(zj[p - 1].get<std::string>());
      t->z_[p] = static_cast<double>(t->z_hp_[p] / rho_pow);
    }
    t->c_hp_[p] = from_decimal(cj[p - 1].get<std::string>());
    t->c_[p] = static_cast<double>(t->c_hp_[p] / beta_pow);
    rho_pow *= rho;
    beta_pow *= beta;
  }
  // Z_{p_max+1} is not part of the file format; complete it from the closed form.
  const HpReal lambda = from_decimal(j.at("lambda").get<std::string>());
  t->z_hp_[n - 1] = hp_partition_function(lambda, h, p_max + 1);
  t->z_[n - 1] = static_cast<double>(t->z_hp_[n - 1] / boost::multiprecision::pow(rho, p_max + 1));
  return t;
}

TablesPtr tables_for(const LambdaParams& params, int p_min_capacity, int precision_digits) {
  static std::mutex m;
  static std::map<std::pair<uint64_t, int>, TablesPtr> cache;
  uint64_t bits = 0;
  std::memcpy(&bits, &params.deficit, sizeof bits);
  const auto key = std::make_pair(bits, precision_digits);
  std::lock_guard<std::mutex> lock(m);
  auto it = cache.find(key);
  if (it != cache.end() && it->second->p_max() >= p_min_capacity) return it->second;
  int p_max = 64;
  if (it != cache.end()) p_max = 2 * it->second->p_max();
  while (p_max < p_min_capacity) p_max *= 2;
  TablesPtr t = BoltzmannTables::build(params, p_max, precision_digits);
  cache[key] = t;
  return t;
}

}  // namespace hyperplane
