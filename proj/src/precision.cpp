#include "hyperplane/precision.hpp"

#include <sstream>

namespace hyperplane {

namespace {
std::recursive_mutex& precision_mutex() {
  static std::recursive_mutex m;
  return m;
}
}  // namespace

PrecisionScope::PrecisionScope(int digits) : lock_(precision_mutex()) {
  previous_ = HpReal::default_precision();
  HpReal::default_precision(static_cast<unsigned>(digits));
}

PrecisionScope::~PrecisionScope() { HpReal::default_precision(previous_); }

std::string to_decimal(const HpReal& x, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << std::scientific << x;
  return os.str();
}

HpReal from_decimal(const std::string& s) { return HpReal(s); }

HpReal hp_pi() { return boost::math::constants::pi<HpReal>(); }

HpReal hp_sqrt(const HpReal& x) { return boost::multiprecision::sqrt(x); }

}  // namespace hyperplane
