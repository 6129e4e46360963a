#pragma once

#include <optional>

namespace confball {

/// Log-levels and the lower-bound constants derived from (alpha, beta).
/// L1 exists only when alpha + beta < 1 - exp(-1/36); L2 and L3 only when
/// alpha + 2 beta <= 1 - exp(-1/4).
struct BoundConstants {
  double L_m = 0;
  double L_alpha = 0;
  std::optional<double> L1;
  std::optional<double> L2;
  std::optional<double> L3;

  /// `beta_level` is beta_m for the upper bounds and the global beta for the
  /// lower bounds.
  static BoundConstants make(double alpha, double beta_level);
};

/// Explicit upper bound on rho_m^2 (tau^2 units folded in). Branches:
///   N = 0 (full model):  (n + 2 sqrt(n L) + 2 L) tau^2
///   D = 0:               (2 n eta + 4 sqrt(n)(sqrt(L_m) + sqrt(L_a)) + 8 L_m + 4 L_a) tau^2
///   otherwise:           (2 N eta + D + 2 sqrt(N)(3 sqrt(L_m) + 2 sqrt(L_a)) + 2(5 L_m + 2 L_a)) tau^2
double upper_bound_rho(int dim, int resid, double eta, double alpha, double beta_m, double tau2);

/// Same, parameterized by L_m = log(1/beta_m) directly; used when beta_m
/// underflows.
double upper_bound_rho_log(int dim, int resid, double eta, double alpha, double log_inv_beta_m,
                           double tau2);

/// The three lower-bound branches, each present only when its hypothesis holds.
struct LowerBoundBranches {
  std::optional<double> dimension;  // (D/27 - sqrt(L1 D)) tau^2
  std::optional<double> separation; // sqrt(L2 N) tau^2 / 9
  std::optional<double> variance;   // (N - 2 sqrt(L3 N)) eta tau^2 / 9
};

LowerBoundBranches lower_bound_branches(int dim, int resid, double eta, double alpha, double beta,
                                        double tau2);

/// Largest applicable branch, clamped at 0. Throws PreconditionError naming
/// the failing inequalities when no branch applies.
double lower_bound_radius(int dim, int resid, double eta, double alpha, double beta, double tau2);

/// lower_bound_radius with D = 0, N = n.
double global_lower_bound(int n, double eta, double tau2, double alpha, double beta);

/// exp(D log(e n / D)) >= C(n, D), for 1 <= D <= n.
double subset_count_bound(int n, int dim);
double log_subset_count_bound(int n, int dim);

}  // namespace confball
