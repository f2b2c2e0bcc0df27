#pragma once

#include <mutex>
#include <string>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace hyperplane {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using HpReal = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                             boost::multiprecision::et_off>;

inline constexpr int kDefaultDigits = 60;

// MPFR default precision is process-global. Every high-precision computation runs
// inside a PrecisionScope, which serializes them and restores the previous setting.
class PrecisionScope {
 public:
  explicit PrecisionScope(int digits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  std::unique_lock<std::recursive_mutex> lock_;
  unsigned previous_;
};

// Decimal string with the given number of significant digits (scientific notation).
std::string to_decimal(const HpReal& x, int digits);
HpReal from_decimal(const std::string& s);

HpReal hp_pi();
HpReal hp_sqrt(const HpReal& x);

}  // namespace hyperplane
