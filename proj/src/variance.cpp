#include "confball/variance.hpp"

#include <cmath>
#include <sstream>

#include "confball/errors.hpp"

namespace confball {

VarianceSpec VarianceSpec::known(double sigma2) {
  if (!(sigma2 > 0.0) || std::isinf(sigma2)) throw DomainError("sigma^2 must be finite and > 0");
  return VarianceSpec(true, sigma2, 0.0);
}

VarianceSpec VarianceSpec::interval(double tau2, double eta) {
  if (!(tau2 > 0.0) || std::isinf(tau2)) throw DomainError("tau^2 must be finite and > 0");
  if (!(eta >= 0.0 && eta < 1.0)) throw DomainError("eta must lie in [0, 1)");
  return VarianceSpec(false, tau2, eta);
}

std::string VarianceSpec::describe() const {
  std::ostringstream os;
  if (known_) {
    os << "known(sigma2=" << tau2_ << ")";
  } else {
    os << "interval(tau2=" << tau2_ << ", eta=" << eta_ << ")";
  }
  return os.str();
}

}  // namespace confball
