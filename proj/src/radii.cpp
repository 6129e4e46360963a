#include "confball/radii.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <string>
#include <tuple>

#include "confball/errors.hpp"
#include "confball/parallel.hpp"

namespace confball {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kInvPhi = 0.6180339887498949;  // (sqrt(5) - 1) / 2

// psi with the test threshold evaluated once.
class AcceptanceCurve {
 public:
  AcceptanceCurve(int resid, double alpha, double sigma_ratio2)
      : resid_(resid), threshold_(chi2_quantile(alpha, {0.0, resid}) * sigma_ratio2) {}
  double operator()(double z) const { return noncentral_chi2_cdf(threshold_, {z, resid_}); }

 private:
  int resid_;
  double threshold_;
};

void check_level(double v, const char* name) {
  if (!(v > 0.0 && v < 1.0)) throw DomainError(std::string(name) + " must lie in (0, 1)");
}

void check_ratio(double sigma_ratio2) {
  if (!(sigma_ratio2 >= 1.0) || std::isinf(sigma_ratio2)) {
    throw DomainError("tau^2 / sigma^2 must be finite and >= 1");
  }
}

double cap_formula(int resid, double alpha, double beta_m, double sigma_ratio2) {
  const double n = resid;
  const double eta = 1.0 - 1.0 / sigma_ratio2;
  const double lm = std::log(1.0 / beta_m);
  const double la = std::log(1.0 / alpha);
  return sigma_ratio2 *
         (2.0 * n * eta + 4.0 * std::sqrt(n) * (std::sqrt(lm) + std::sqrt(la)) + 8.0 * lm + 4.0 * la);
}

double solve_zbar(const AcceptanceCurve& curve, int resid, double alpha, double beta_m,
                  double sigma_ratio2) {
  const double at_zero = curve(0.0);
  if (!(at_zero > beta_m)) {
    throw DomainError("beta_m must be below the test acceptance probability at z = 0 (" +
                      std::to_string(at_zero) + ")");
  }
  double hi = std::max(4.0 * cap_formula(resid, alpha, beta_m, sigma_ratio2), 1.0);
  for (int retry = 0; curve(hi) > beta_m; ++retry) {
    if (retry == 8) throw BracketError("psi(z) stays above beta_m on [0, " + std::to_string(hi) + "]");
    hi *= 4.0;
  }
  double lo = 0.0;
  for (int i = 0; i < 300 && hi - lo > 1e-12 * (1.0 + lo); ++i) {
    const double mid = 0.5 * (lo + hi);
    (curve(mid) > beta_m ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double objective(double z, int dim, const AcceptanceCurve& curve, double beta_m) {
  const double p = curve(z);
  if (beta_m >= p) return kNegInf;
  return z + chi2_quantile(beta_m / p, {0.0, dim});
}

struct Best {
  double x;
  double value;
};

// Golden-section maximization on [a, b], returning the best point visited.
template <class F>
Best golden_max(F&& f, double a, double b, double rel_tol) {
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  Best best = fc >= fd ? Best{c, fc} : Best{d, fd};
  for (int it = 0; it < 200 && (b - a) > rel_tol * (1.0 + std::abs(a)); ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
      if (fc > best.value) best = {c, fc};
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
      if (fd > best.value) best = {d, fd};
    }
  }
  return best;
}

// Index of the first maximum; ties resolve to the smallest index so the
// answer never depends on evaluation order.
std::size_t argmax(const std::vector<double>& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[best]) best = i;
  }
  return best;
}

void check_inputs(const RadiusInputs& in, bool is_full_model) {
  check_level(in.alpha, "alpha");
  check_level(in.beta_m, "beta_m");
  if (in.dim < 0 || in.resid < 0) throw DomainError("model dimensions must be >= 0");
  if (is_full_model) {
    if (in.dim < 1) throw DomainError("the full model needs n >= 1");
  } else if (in.resid < 1) {
    throw DomainError("a proper subspace needs N_m >= 1");
  }
}

// Supremum in sigma units for one variance ratio; D = 0 reduces to zbar.
double inner_supremum(const RadiusInputs& in, double sigma_ratio2, Exec exec) {
  if (in.dim == 0) return z_bar(in.resid, in.alpha, in.beta_m, sigma_ratio2);
  return objective_supremum(in.dim, in.resid, in.alpha, in.beta_m, sigma_ratio2, exec).value;
}

}  // namespace

double psi(double z, int resid, double alpha, double sigma_ratio2) {
  check_level(alpha, "alpha");
  check_ratio(sigma_ratio2);
  if (resid < 1) throw DomainError("psi requires N >= 1");
  return AcceptanceCurve(resid, alpha, sigma_ratio2)(z);
}

double z_bar(int resid, double alpha, double beta_m, double sigma_ratio2) {
  check_level(alpha, "alpha");
  check_level(beta_m, "beta_m");
  check_ratio(sigma_ratio2);
  if (resid < 1) throw DomainError("z_bar requires N >= 1");
  const AcceptanceCurve curve(resid, alpha, sigma_ratio2);
  return solve_zbar(curve, resid, alpha, beta_m, sigma_ratio2);
}

double z_bar_cap(int resid, double alpha, double beta_m, double sigma_ratio2) {
  check_level(alpha, "alpha");
  check_level(beta_m, "beta_m");
  check_ratio(sigma_ratio2);
  return cap_formula(resid, alpha, beta_m, sigma_ratio2);
}

ExtendedReal radius_objective(double z, int dim, int resid, double alpha, double beta_m,
                              double sigma_ratio2) {
  check_level(alpha, "alpha");
  check_level(beta_m, "beta_m");
  check_ratio(sigma_ratio2);
  if (dim < 1 || resid < 1) throw DomainError("radius objective requires D >= 1 and N >= 1");
  const double v = objective(z, dim, AcceptanceCurve(resid, alpha, sigma_ratio2), beta_m);
  return v == kNegInf ? ExtendedReal::negative_infinity() : ExtendedReal(v);
}

Supremum objective_supremum(int dim, int resid, double alpha, double beta_m, double sigma_ratio2,
                            Exec exec) {
  check_level(alpha, "alpha");
  check_level(beta_m, "beta_m");
  check_ratio(sigma_ratio2);
  if (dim < 1 || resid < 1) throw DomainError("radius objective requires D >= 1 and N >= 1");

  const AcceptanceCurve curve(resid, alpha, sigma_ratio2);
  const double zbar = solve_zbar(curve, resid, alpha, beta_m, sigma_ratio2);
  const double step = zbar / (kSupremumGrid - 1);

  std::vector<double> values(kSupremumGrid);
  for_each_index(kSupremumGrid, exec,
                 [&](int i) { values[i] = objective(step * i, dim, curve, beta_m); });

  const std::size_t best = argmax(values);
  Supremum out;
  out.zbar = zbar;
  out.grid_max = values[best];
  out.argmax = step * static_cast<double>(best);
  out.value = out.grid_max;

  const double a = best == 0 ? 0.0 : step * static_cast<double>(best - 1);
  const double b = std::min(zbar, step * static_cast<double>(best + 1));
  const Best refined = golden_max([&](double z) { return objective(z, dim, curve, beta_m); }, a, b, 1e-10);
  if (refined.value > out.value) {
    out.value = refined.value;
    out.argmax = refined.x;
  }
  // As z -> zbar from below the quantile term vanishes, so the objective
  // approaches zbar itself.
  if (zbar > out.value) {
    out.value = zbar;
    out.argmax = zbar;
  }
  return out;
}

double rho_sq_known(const RadiusInputs& in, bool is_full_model, Exec exec) {
  check_inputs(in, is_full_model);
  if (in.variance.eta() != 0.0) {
    throw DomainError("rho_sq_known needs a known variance, got " + in.variance.describe());
  }
  const double sigma2 = in.variance.tau2();
  if (is_full_model) return chi2_quantile(in.beta_m, {0.0, in.dim}) * sigma2;
  return inner_supremum(in, 1.0, exec) * sigma2;
}

double rho_sq_interval(const RadiusInputs& in, bool is_full_model, Exec exec) {
  check_inputs(in, is_full_model);
  const double tau2 = in.variance.tau2();
  const double eta = in.variance.eta();
  if (is_full_model) return chi2_quantile(in.beta_m, {0.0, in.dim}) * tau2;
  if (eta == 0.0) return inner_supremum(in, 1.0, exec) * tau2;

  // sigma^2 = s tau^2 with s in [1 - eta, 1]; the objective in tau^2 units is
  // s * inner(1 / s).
  const double s_lo = 1.0 - eta;
  const double step = eta / (kVarianceGrid - 1);
  auto at = [&](int i) { return i == kVarianceGrid - 1 ? 1.0 : s_lo + step * i; };
  auto h = [&](double s, Exec inner) { return s * inner_supremum(in, 1.0 / s, inner); };

  std::vector<double> values(kVarianceGrid);
  for_each_index(kVarianceGrid, exec, [&](int i) { values[i] = h(at(i), Exec::serial); });

  const std::size_t best = argmax(values);
  double sup = values[best];
  const int bi = static_cast<int>(best);
  const double a = bi == 0 ? s_lo : at(bi - 1);
  const double b = bi == kVarianceGrid - 1 ? 1.0 : at(bi + 1);
  const Best refined = golden_max([&](double s) { return h(s, exec); }, a, b, 1e-7);
  sup = std::max(sup, refined.value);
  return sup * tau2;
}

double rho_sq(const RadiusInputs& in, bool is_full_model, Exec exec) {
  return in.variance.is_known() ? rho_sq_known(in, is_full_model, exec)
                                : rho_sq_interval(in, is_full_model, exec);
}

std::vector<double> radius_table(std::span<const RadiusRequest> requests, double alpha,
                                 const VarianceSpec& variance, Exec exec) {
  using Key = std::tuple<int, int, double, bool>;
  std::map<Key, std::size_t> slot;
  std::vector<RadiusRequest> unique;
  std::vector<std::size_t> index(requests.size());
  for (std::size_t i = 0; i < requests.size(); ++i) {
    const auto& r = requests[i];
    const auto [it, inserted] = slot.try_emplace(Key{r.dim, r.resid, r.beta_m, r.full}, unique.size());
    if (inserted) unique.push_back(r);
    index[i] = it->second;
  }

  std::vector<double> radii(unique.size());
  const int count = static_cast<int>(unique.size());
  // Inner kernels run serially here; one level of parallelism is enough.
  for_each_index(count, exec, [&](int i) {
    const auto& r = unique[i];
    RadiusInputs in{r.dim, r.resid, alpha, r.beta_m, variance};
    radii[i] = rho_sq(in, r.full, Exec::serial);
  });

  std::vector<double> out(requests.size());
  for (std::size_t i = 0; i < requests.size(); ++i) out[i] = radii[index[i]];
  return out;
}

}  // namespace confball
