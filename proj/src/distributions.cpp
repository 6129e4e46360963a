#include "confball/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "confball/errors.hpp"
#include "confball/special.hpp"

namespace confball {
namespace {

// Poisson mass dropped at either end of the mixture. Terms beyond it are
// additionally scaled by a regularized gamma value bounded by the kept ones.
constexpr double kTailMass = 1e-17;
constexpr double kRelativeTail = 1e-16;
constexpr long kTermBudget = 1'000'000;

constexpr double kUnderflowGuard = 1e-280;

void check_dof(int d) {
  if (d < 1) throw DomainError("chi-square distribution requires d >= 1, got " + std::to_string(d));
}

void check_params(double x, NoncentralChi2 p) {
  check_dof(p.d);
  if (!(p.z >= 0.0) || std::isinf(p.z)) throw DomainError("noncentrality must be finite and >= 0");
  if (std::isnan(x) || x < 0.0) throw DomainError("chi-square argument must be >= 0");
}

double log_poisson(double lambda, long k) {
  return -lambda + static_cast<double>(k) * std::log(lambda) -
         special::log_gamma(static_cast<double>(k) + 1.0);
}

// g(a) = x^a e^{-x} / Gamma(a + 1), so that P(a + 1, x) = P(a, x) - g(a).
double gamma_step(double a, double x) {
  return std::exp(a * std::log(x) - x - special::log_gamma(a + 1.0));
}

void charge(long& terms) {
  if (++terms > kTermBudget) {
    throw ConvergenceError("noncentral chi-square series exceeded its term budget");
  }
}

}  // namespace

double ExtendedReal::value() const {
  if (!value_) throw DomainError("value() called on negative infinity");
  return *value_;
}

double central_chi2_cdf(double x, int d) {
  check_dof(d);
  if (std::isnan(x) || x < 0.0) throw DomainError("chi-square argument must be >= 0");
  return special::gamma_p(0.5 * d, 0.5 * x);
}

double central_chi2_sf(double x, int d) {
  check_dof(d);
  if (std::isnan(x) || x < 0.0) throw DomainError("chi-square argument must be >= 0");
  return special::gamma_q(0.5 * d, 0.5 * x);
}

double noncentral_chi2_cdf(double x, NoncentralChi2 p) {
  check_params(x, p);
  if (p.z == 0.0) return central_chi2_cdf(x, p.d);
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;

  const double lambda = 0.5 * p.z;
  const double hx = 0.5 * x;
  const double a0 = 0.5 * p.d;
  const long mode = static_cast<long>(std::floor(lambda));
  long terms = 0;

  // Walk up from the mode until the remaining Poisson mass is negligible.
  long hi = mode;
  double w = std::exp(log_poisson(lambda, mode));
  for (;;) {
    charge(terms);
    const double r = lambda / static_cast<double>(hi + 1);
    if (r < 1.0 && w * r / (1.0 - r) < kTailMass) break;
    w *= r;
    ++hi;
  }

  // Sum downward: P(a, x) = P(a + 1, x) + g(a) only adds positive terms.
  double a = a0 + static_cast<double>(hi);
  double pk = special::gamma_p(a, hx);
  double wk = std::exp(log_poisson(lambda, hi));
  double g = gamma_step(a - 1.0, hx);
  double sum = wk * pk;
  for (long k = hi - 1; k >= 0; --k) {
    charge(terms);
    a -= 1.0;  // a = a0 + k
    if (g < kUnderflowGuard) g = gamma_step(a, hx);
    pk += g;
    g *= a / hx;
    wk *= static_cast<double>(k + 1) / lambda;
    sum += wk * pk;
    if (wk == 0.0) break;
    const double ratio = static_cast<double>(k) / lambda;
    if (ratio < 1.0 && wk * ratio / (1.0 - ratio) < kRelativeTail * sum) break;
  }
  return std::clamp(sum, 0.0, 1.0);
}

double noncentral_chi2_sf(double x, NoncentralChi2 p) {
  check_params(x, p);
  if (p.z == 0.0) return central_chi2_sf(x, p.d);
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;

  const double lambda = 0.5 * p.z;
  const double hx = 0.5 * x;
  const double a0 = 0.5 * p.d;
  const long mode = static_cast<long>(std::floor(lambda));
  long terms = 0;

  // Walk down from the mode until the lower Poisson mass is negligible.
  long lo = mode;
  double w = std::exp(log_poisson(lambda, mode));
  while (lo > 0) {
    charge(terms);
    const double r = static_cast<double>(lo) / lambda;
    if (r < 1.0 && w * r / (1.0 - r) < kTailMass) break;
    w *= r;
    --lo;
  }

  // Sum upward: Q(a + 1, x) = Q(a, x) + g(a) only adds positive terms.
  double a = a0 + static_cast<double>(lo);
  double qk = special::gamma_q(a, hx);
  double wk = std::exp(log_poisson(lambda, lo));
  double g = gamma_step(a, hx);
  double sum = wk * qk;
  for (long k = lo + 1;; ++k) {
    charge(terms);
    if (g < kUnderflowGuard) g = gamma_step(a, hx);
    qk += g;
    a += 1.0;  // a = a0 + k
    g *= hx / a;
    wk *= lambda / static_cast<double>(k);
    sum += wk * qk;
    const double r = lambda / static_cast<double>(k + 1);
    if (r < 1.0 && wk * r / (1.0 - r) < kRelativeTail * sum) break;
    if (k > mode && wk == 0.0) break;
  }
  return std::clamp(sum, 0.0, 1.0);
}

namespace {

double solve_quantile(double u, NoncentralChi2 p) {
  const double target_sf = u;
  const double target_cdf = 1.0 - u;
  // Bisect on whichever tail is small; it carries relative precision there.
  const bool use_sf = u < 0.5;
  // True when q lies at or above the root.
  auto above = [&](double q) {
    return use_sf ? noncentral_chi2_sf(q, p) <= target_sf
                  : noncentral_chi2_cdf(q, p) >= target_cdf;
  };

  // 1 - u rounds to 1 once u < 2^-53; the envelope is undefined there.
  double lo = 1.0 - u < 1.0 ? std::max(0.0, birge_lower(p.z, p.d, 1.0 - u)) : 0.0;
  double hi = birge_upper(p.z, p.d, u);
  // The envelopes are proven bounds; these loops only absorb rounding.
  if (lo > 0.0 && above(lo)) lo = 0.0;
  for (int i = 0; !above(hi); ++i) {
    if (i == 64) throw BracketError("could not bracket chi-square quantile");
    lo = hi;
    hi = 2.0 * hi + 1.0;
  }
  for (int i = 0; i < 400 && hi - lo > 1e-13 * (1.0 + lo); ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (above(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double chi2_quantile(double u, NoncentralChi2 p) {
  if (!(u > 0.0 && u < 1.0)) {
    throw DomainError("quantile level must lie in (0, 1), got " + std::to_string(u));
  }
  if (p.d < 0) throw DomainError("degrees of freedom must be >= 0");
  if (!(p.z >= 0.0) || std::isinf(p.z)) throw DomainError("noncentrality must be finite and >= 0");
  if (p.d == 0) return 0.0;
  return solve_quantile(u, p);
}

ExtendedReal chi2_quantile_extended(double u, NoncentralChi2 p) {
  if (u == 1.0) {
    if (p.d < 0) throw DomainError("degrees of freedom must be >= 0");
    return p.d == 0 ? ExtendedReal(0.0) : ExtendedReal::negative_infinity();
  }
  return ExtendedReal(chi2_quantile(u, p));
}

namespace {
void check_envelope(double z, int d, double u) {
  if (!(z >= 0.0)) throw DomainError("envelope requires z >= 0");
  check_dof(d);
  if (!(u > 0.0 && u < 1.0)) throw DomainError("envelope requires u in (0, 1)");
}
}  // namespace

double birge_upper(double z, int d, double u) {
  check_envelope(z, d, u);
  const double l = std::log(1.0 / u);
  return z + d + 2.0 * std::sqrt((2.0 * z + d) * l) + 2.0 * l;
}

double birge_lower(double z, int d, double u) {
  check_envelope(z, d, u);
  const double l = std::log(1.0 / u);
  return z + d - 2.0 * std::sqrt((2.0 * z + d) * l);
}

double sample_noncentral(NoncentralChi2 p, Rng& rng) {
  check_dof(p.d);
  std::normal_distribution<double> normal;
  const double shifted = std::sqrt(p.z) + normal(rng);
  double x = shifted * shifted;
  if (p.d > 1) x += std::chi_squared_distribution<double>(p.d - 1)(rng);
  return x;
}

}  // namespace confball
