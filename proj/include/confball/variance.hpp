#pragma once

#include <string>

namespace confball {

/// What is known about the noise variance: either sigma^2 exactly, or that it
/// lies in [(1 - eta) tau^2, tau^2]. Known(s) and Interval(s, 0) are
/// interchangeable everywhere.
class VarianceSpec {
 public:
  static VarianceSpec known(double sigma2);
  static VarianceSpec interval(double tau2, double eta);

  bool is_known() const { return known_; }
  /// Upper end of the variance interval (sigma^2 when known).
  double tau2() const { return tau2_; }
  double eta() const { return eta_; }
  double lower() const { return (1.0 - eta_) * tau2_; }

  std::string describe() const;

 private:
  VarianceSpec(bool known, double tau2, double eta) : known_(known), tau2_(tau2), eta_(eta) {}
  bool known_;
  double tau2_;
  double eta_;
};

}  // namespace confball
