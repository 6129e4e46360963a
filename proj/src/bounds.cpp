#include "confball/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "confball/errors.hpp"

namespace confball {
namespace {

const double kClaim1Limit = 1.0 - std::exp(-1.0 / 36.0);
const double kClaim2Limit = 1.0 - std::exp(-0.25);

void check_unit(double v, const char* name) {
  if (!(v > 0.0 && v < 1.0)) throw DomainError(std::string(name) + " must lie in (0, 1)");
}

void check_common(int dim, int resid, double eta, double tau2) {
  if (dim < 0 || resid < 0 || dim + resid < 1) throw DomainError("need D, N >= 0 and D + N >= 1");
  if (!(eta >= 0.0 && eta < 1.0)) throw DomainError("eta must lie in [0, 1)");
  if (!(tau2 > 0.0)) throw DomainError("tau^2 must be > 0");
}

}  // namespace

BoundConstants BoundConstants::make(double alpha, double beta_level) {
  check_unit(alpha, "alpha");
  check_unit(beta_level, "beta");
  BoundConstants c;
  c.L_m = std::log(1.0 / beta_level);
  c.L_alpha = std::log(1.0 / alpha);
  if (alpha + beta_level < kClaim1Limit) c.L1 = -4.0 * std::log(1.0 - alpha - beta_level) / 81.0;
  if (alpha + 2.0 * beta_level <= kClaim2Limit) {
    const double gap = 1.0 - alpha - 2.0 * beta_level;
    c.L2 = 2.0 * std::log(1.0 + 4.0 * gap * gap);
    c.L3 = -std::log(gap);
  }
  return c;
}

double upper_bound_rho_log(int dim, int resid, double eta, double alpha, double lm, double tau2) {
  check_common(dim, resid, eta, tau2);
  check_unit(alpha, "alpha");
  if (!(lm > 0.0)) throw DomainError("log(1/beta_m) must be > 0");
  const double la = std::log(1.0 / alpha);
  if (resid == 0) {
    const double n = dim;
    return (n + 2.0 * std::sqrt(n * lm) + 2.0 * lm) * tau2;
  }
  const double big_n = resid;
  if (dim == 0) {
    return (2.0 * big_n * eta + 4.0 * std::sqrt(big_n) * (std::sqrt(lm) + std::sqrt(la)) +
            8.0 * lm + 4.0 * la) *
           tau2;
  }
  return (2.0 * big_n * eta + dim + 2.0 * std::sqrt(big_n) * (3.0 * std::sqrt(lm) + 2.0 * std::sqrt(la)) +
          2.0 * (5.0 * lm + 2.0 * la)) *
         tau2;
}

double upper_bound_rho(int dim, int resid, double eta, double alpha, double beta_m, double tau2) {
  check_unit(beta_m, "beta_m");
  return upper_bound_rho_log(dim, resid, eta, alpha, std::log(1.0 / beta_m), tau2);
}

LowerBoundBranches lower_bound_branches(int dim, int resid, double eta, double alpha, double beta,
                                        double tau2) {
  check_common(dim, resid, eta, tau2);
  const BoundConstants c = BoundConstants::make(alpha, beta);
  LowerBoundBranches out;
  if (c.L1) {
    // Vacuous for D = 0.
    const double d = dim;
    out.dimension = dim == 0 ? 0.0 : (d / 27.0 - std::sqrt(*c.L1 * d)) * tau2;
  }
  if (c.L2) {
    const double n = resid;
    out.separation = std::sqrt(*c.L2 * n) * tau2 / 9.0;
    out.variance = (n - 2.0 * std::sqrt(*c.L3 * n)) * eta * tau2 / 9.0;
  }
  return out;
}

double lower_bound_radius(int dim, int resid, double eta, double alpha, double beta, double tau2) {
  const LowerBoundBranches b = lower_bound_branches(dim, resid, eta, alpha, beta, tau2);
  if (!b.dimension && !b.separation) {
    throw PreconditionError(
        "no lower bound applies: need alpha + beta < 1 - exp(-1/36) (" +
        std::to_string(alpha + beta) + " vs " + std::to_string(kClaim1Limit) +
        ") or alpha + 2 beta <= 1 - exp(-1/4) (" + std::to_string(alpha + 2.0 * beta) + " vs " +
        std::to_string(kClaim2Limit) + ")");
  }
  double v = 0.0;
  for (const auto& branch : {b.dimension, b.separation, b.variance}) {
    if (branch) v = std::max(v, *branch);
  }
  return v;
}

double global_lower_bound(int n, double eta, double tau2, double alpha, double beta) {
  return lower_bound_radius(0, n, eta, alpha, beta, tau2);
}

double log_subset_count_bound(int n, int dim) {
  if (dim < 1 || dim > n) throw DomainError("subset bound needs 1 <= D <= n");
  const double d = dim;
  return d * (1.0 + std::log(static_cast<double>(n) / d));
}

double subset_count_bound(int n, int dim) { return std::exp(log_subset_count_bound(n, dim)); }

}  // namespace confball
