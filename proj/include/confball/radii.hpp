#pragma once

#include <span>
#include <vector>

#include "confball/distributions.hpp"
#include "confball/exec.hpp"
#include "confball/variance.hpp"

namespace confball {

/// Everything a single radius depends on. The radius is data independent.
struct RadiusInputs {
  int dim = 0;       // D_m
  int resid = 0;     // N_m = n - D_m
  double alpha = 0;  // level of the fit test
  double beta_m = 0; // risk allocated to this model
  VarianceSpec variance = VarianceSpec::known(1.0);
};

/// Acceptance probability of the fit test when the model misses f by z (in
/// variance units): chi2_{z,N}(q_{0,N}(alpha) * ratio), ratio = tau^2 / sigma^2.
double psi(double z, int resid, double alpha, double sigma_ratio2 = 1.0);

/// Root of psi(z) = beta_m, found by bisection on [0, cap].
double z_bar(int resid, double alpha, double beta_m, double sigma_ratio2 = 1.0);

/// Closed-form upper bound on z_bar (variance units of sigma):
/// ratio * (2 N eta + 4 sqrt(N) (sqrt(L_m) + sqrt(L_alpha)) + 8 L_m + 4 L_alpha)
/// with eta = 1 - 1/ratio.
double z_bar_cap(int resid, double alpha, double beta_m, double sigma_ratio2 = 1.0);

/// z + q_{0,D}(beta_m / psi(z) ^ 1), which is -inf once psi(z) <= beta_m.
ExtendedReal radius_objective(double z, int dim, int resid, double alpha, double beta_m,
                              double sigma_ratio2 = 1.0);

struct Supremum {
  double value = 0;     // sup of the objective, variance units of sigma
  double argmax = 0;    // where it was found
  double grid_max = 0;  // best value on the coarse grid alone
  double zbar = 0;      // right end of the domain
};

inline constexpr int kSupremumGrid = 512;
inline constexpr int kVarianceGrid = 64;

/// sup over z in [0, zbar) of radius_objective: dense grid, golden-section
/// refinement around the best grid point, and the boundary limit zbar.
Supremum objective_supremum(int dim, int resid, double alpha, double beta_m,
                            double sigma_ratio2 = 1.0, Exec exec = Exec::serial);

/// Squared radius under a known variance. Full model: q_{0,n}(beta_n) sigma^2;
/// D = 0: zbar sigma^2; otherwise sigma^2 times the objective supremum.
double rho_sq_known(const RadiusInputs& in, bool is_full_model, Exec exec = Exec::serial);

/// Squared radius when sigma^2 is only known to lie in [(1 - eta) tau^2, tau^2]:
/// an outer supremum over the variance on a grid plus golden refinement.
double rho_sq_interval(const RadiusInputs& in, bool is_full_model, Exec exec = Exec::serial);

/// Dispatches on the variance spec.
double rho_sq(const RadiusInputs& in, bool is_full_model, Exec exec = Exec::serial);

struct RadiusRequest {
  int dim = 0;
  int resid = 0;
  double beta_m = 0;
  bool full = false;
};

/// Element-wise rho_sq over a list of models; identical requests are computed
/// once. Order is preserved.
std::vector<double> radius_table(std::span<const RadiusRequest> requests, double alpha,
                                 const VarianceSpec& variance, Exec exec = Exec::serial);

}  // namespace confball
