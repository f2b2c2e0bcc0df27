#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hyperplane/combinatorics.hpp"

namespace hyperplane {

class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Z_p and C_p for one weight regime. Z_p grows like (4+32h)^p and C_p like
// (8+1/h)^p, so samplers work with the rescaled values
//   z_p = Z_p / rho^p,  c_p = C_p / beta^p,  rho = 4 + 32h, beta = 8 + 1/h,
// which stay of order one (rho / beta = 4h).
class BoltzmannTables {
 public:
  static std::shared_ptr<const BoltzmannTables> build(const LambdaParams& params, int p_max,
                                                      int precision_digits = kDefaultDigits);

  const LambdaParams& params() const { return params_; }
  int p_max() const { return p_max_; }
  int precision_digits() const { return digits_; }
  double rho() const { return rho_; }
  double beta() const { return beta_; }

  // Valid for 1 <= p <= p_max + 1.
  double z_scaled(int p) const { return z_[static_cast<std::size_t>(p)]; }
  double c_scaled(int p) const { return c_[static_cast<std::size_t>(p)]; }
  // Unscaled values; may overflow to inf for large p.
  double Z(int p) const;
  double C(int p) const;

  // Exact-precision values, available for p <= hp_limit().
  int hp_limit() const { return static_cast<int>(z_hp_.size()) - 1; }
  const HpReal& Z_hp(int p) const { return z_hp_.at(static_cast<std::size_t>(p)); }
  const HpReal& C_hp(int p) const { return c_hp_.at(static_cast<std::size_t>(p)); }

  // |C_p - lambda C_{p+1} - 2 sum_{i<p} C_{p-i} Z_{i+1}| / C_p in working precision.
  double recurrence_residual(int p) const;

  // {lambda, h, precision_digits, p_max, Z:[...], C:[...]} with decimal strings.
  // Z has p_max entries and C has p_max + 1 (both start at p = 1).
  std::string to_json() const;
  static std::shared_ptr<const BoltzmannTables> from_json(const std::string& text);

 private:
  BoltzmannTables() = default;

  LambdaParams params_;
  int p_max_ = 0;
  int digits_ = kDefaultDigits;
  double rho_ = 0.0;
  double beta_ = 0.0;
  std::vector<double> z_;
  std::vector<double> c_;
  std::vector<HpReal> z_hp_;
  std::vector<HpReal> c_hp_;
};

using TablesPtr = std::shared_ptr<const BoltzmannTables>;

// Process-wide cache of tables keyed by (deficit, digits). Requests for a larger
// p_max rebuild with at least twice the previous capacity.
TablesPtr tables_for(const LambdaParams& params, int p_min_capacity,
                     int precision_digits = kDefaultDigits);

// Largest p for which the high-precision arrays are kept.
inline constexpr int kHpStoreLimit = 4096;

}  // namespace hyperplane
