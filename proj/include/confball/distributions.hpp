#pragma once

#include <compare>
#include <optional>

#include "confball/rng.hpp"

namespace confball {

/// Parameters of a (non)central chi-square law: noncentrality z = |mu|^2 and
/// d degrees of freedom.
struct NoncentralChi2 {
  double z = 0.0;
  int d = 1;
};

/// A real number or an explicit negative infinity. Used for the quantile
/// convention q_{0,D}(1) = -inf, so sup/max logic never meets a NaN.
class ExtendedReal {
 public:
  constexpr explicit ExtendedReal(double v) : value_(v) {}
  static constexpr ExtendedReal negative_infinity() { return ExtendedReal(); }

  constexpr bool is_negative_infinity() const { return !value_.has_value(); }
  /// Throws DomainError on the sentinel.
  double value() const;

  friend constexpr ExtendedReal operator+(double lhs, ExtendedReal rhs) {
    return rhs.value_ ? ExtendedReal(lhs + *rhs.value_) : rhs;
  }
  friend constexpr std::partial_ordering operator<=>(ExtendedReal a, ExtendedReal b) {
    if (!a.value_ && !b.value_) return std::partial_ordering::equivalent;
    if (!a.value_) return std::partial_ordering::less;
    if (!b.value_) return std::partial_ordering::greater;
    return *a.value_ <=> *b.value_;
  }
  friend constexpr bool operator==(ExtendedReal a, ExtendedReal b) {
    return (a <=> b) == std::partial_ordering::equivalent;
  }

 private:
  constexpr ExtendedReal() = default;
  std::optional<double> value_;
};

// Central chi-square with d >= 1 degrees of freedom.
double central_chi2_cdf(double x, int d);
double central_chi2_sf(double x, int d);

/// P[X <= x] for X ~ chi2(z, d): Poisson mixture of central laws, summed
/// outward from the modal Poisson index. Both tails keep relative accuracy.
double noncentral_chi2_cdf(double x, NoncentralChi2 p);
/// P[X > x], computed directly (not as 1 - cdf).
double noncentral_chi2_sf(double x, NoncentralChi2 p);

/// q_{z,d}(u): the (1 - u)-quantile, i.e. P[X >= q] = u, for u in (0, 1).
/// Returns 0 when d = 0.
double chi2_quantile(double u, NoncentralChi2 p);

/// Same, additionally accepting u = 1, which maps to negative infinity.
ExtendedReal chi2_quantile_extended(double u, NoncentralChi2 p);

/// Upper envelope q_{z,d}(u) <= z + d + 2 sqrt((2z + d) log(1/u)) + 2 log(1/u).
double birge_upper(double z, int d, double u);
/// Lower envelope q_{z,d}(1 - u) >= z + d - 2 sqrt((2z + d) log(1/u)). May be
/// negative.
double birge_lower(double z, int d, double u);

/// Draws |mu + eps|^2 with |mu|^2 = z and eps standard normal in R^d. Uses the
/// rotation-invariant form (sqrt(z) + e1)^2 + chi2(d - 1).
double sample_noncentral(NoncentralChi2 p, Rng& rng);

}  // namespace confball
