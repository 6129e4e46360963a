#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "confball/exec.hpp"
#include "confball/models.hpp"
#include "confball/variance.hpp"

namespace confball {

/// Outcome of the chi-square fit test of "f in S_m".
struct TestOutcome {
  std::string model_id;
  double statistic = 0;  // |y - P_m y|^2
  double threshold = 0;  // q_{0,N_m}(alpha) tau^2
  bool accepted = false; // statistic <= threshold
};

struct ModelSummary {
  std::string model_id;
  int dim = 0;
  double beta_m = 0;
  double rho_sq = 0;
  bool accepted = false;
};

struct ConfidenceBall {
  std::size_t selected_index = 0;
  std::string selected;
  Eigen::VectorXd center;
  double radius_sq = 0;
  double nominal_coverage = 0;
  std::vector<ModelSummary> per_model;
};

/// The test-then-select construction for one (family, alpha, variance). All
/// radii and thresholds are data independent and computed once here; the
/// object is immutable afterwards and safe to share between threads.
class ConfidenceProcedure {
 public:
  ConfidenceProcedure(std::shared_ptr<const ModelFamily> family, double alpha,
                      VarianceSpec variance, Exec exec = Exec::serial);

  const ModelFamily& family() const { return *family_; }
  double alpha() const { return alpha_; }
  const VarianceSpec& variance() const { return variance_; }
  std::span<const double> radii_sq() const { return radii_sq_; }
  std::span<const double> thresholds() const { return thresholds_; }

  std::vector<TestOutcome> run_tests(const Eigen::VectorXd& y) const;

  /// Index of the accepted model with the smallest radius. Ties go to the
  /// smaller dimension, then to family order.
  std::size_t select(std::span<const TestOutcome> outcomes) const;
  std::size_t select(const Eigen::VectorXd& y) const { return select(run_tests(y)); }

  ConfidenceBall build_ball(const Eigen::VectorXd& y) const;

  /// True iff |f - P_m y|^2 <= rho_m^2 for every accepted m.
  bool in_intersection(const Eigen::VectorXd& f_query, const Eigen::VectorXd& y) const;

 private:
  void check_length(const Eigen::VectorXd& v) const;

  std::shared_ptr<const ModelFamily> family_;
  double alpha_;
  VarianceSpec variance_;
  std::vector<double> radii_sq_;
  std::vector<double> thresholds_;
  std::vector<std::size_t> preference_;  // model indices by (rho^2, D, order)
};

// One-shot conveniences; each recomputes the radius table.
std::vector<TestOutcome> run_tests(const Eigen::VectorXd& y, const ModelFamily& family,
                                   double alpha, const VarianceSpec& variance);
ConfidenceBall build_ball(const Eigen::VectorXd& y, const ModelFamily& family, double alpha,
                          const VarianceSpec& variance);
bool in_intersection(const Eigen::VectorXd& f_query, const Eigen::VectorXd& y,
                     const ModelFamily& family, double alpha, const VarianceSpec& variance);

/// Fraction of `replicates` simulated data sets (y = f + sigma eps, sigma^2 =
/// true_sigma2) for which the selected radius does not exceed rho_m + 1e-9.
/// Replicate r draws from substream(seed, r).
double radius_guarantee_check(const ConfidenceProcedure& procedure, std::size_t model_index,
                              const Eigen::VectorXd& f, int replicates, std::uint64_t seed,
                              double true_sigma2, Exec exec = Exec::serial);

}  // namespace confball
