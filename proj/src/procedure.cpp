#include "confball/procedure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "confball/distributions.hpp"
#include "confball/errors.hpp"
#include "confball/parallel.hpp"
#include "confball/radii.hpp"
#include "confball/sampling.hpp"

namespace confball {

ConfidenceProcedure::ConfidenceProcedure(std::shared_ptr<const ModelFamily> family, double alpha,
                                         VarianceSpec variance, Exec exec)
    : family_(std::move(family)), alpha_(alpha), variance_(variance) {
  if (!family_) throw std::invalid_argument("null model family");
  if (!(alpha > 0.0 && alpha < 1.0 - family_->beta())) {
    throw DomainError("alpha must lie in (0, 1 - beta) with beta = " + std::to_string(family_->beta()));
  }
  const auto& models = family_->models();

  std::vector<RadiusRequest> requests;
  requests.reserve(models.size());
  for (const auto& m : models) requests.push_back({m.dim(), m.resid(), m.beta_m(), m.is_full()});
  radii_sq_ = radius_table(requests, alpha_, variance_, exec);

  thresholds_.reserve(models.size());
  for (const auto& m : models) {
    thresholds_.push_back(m.is_full() ? 0.0
                                      : chi2_quantile(alpha_, {0.0, m.resid()}) * variance_.tau2());
  }

  preference_.resize(models.size());
  std::iota(preference_.begin(), preference_.end(), std::size_t{0});
  std::stable_sort(preference_.begin(), preference_.end(), [&](std::size_t a, std::size_t b) {
    if (radii_sq_[a] != radii_sq_[b]) return radii_sq_[a] < radii_sq_[b];
    return models[a].dim() < models[b].dim();
  });
}

void ConfidenceProcedure::check_length(const Eigen::VectorXd& v) const {
  if (v.size() != family_->n()) {
    throw DimensionError("expected a vector of length " + std::to_string(family_->n()) + ", got " +
                         std::to_string(v.size()));
  }
}

std::vector<TestOutcome> ConfidenceProcedure::run_tests(const Eigen::VectorXd& y) const {
  check_length(y);
  const auto& models = family_->models();
  std::vector<TestOutcome> out(models.size());
  for (std::size_t i = 0; i < models.size(); ++i) {
    const auto& m = models[i];
    auto& o = out[i];
    o.model_id = m.id();
    o.threshold = thresholds_[i];
    // R^n always passes its own test.
    o.statistic = m.is_full() ? 0.0 : m.residual_sq(y);
    o.accepted = m.is_full() || o.statistic <= o.threshold;
  }
  return out;
}

std::size_t ConfidenceProcedure::select(std::span<const TestOutcome> outcomes) const {
  if (outcomes.size() != preference_.size()) throw DimensionError("one outcome per model expected");
  for (std::size_t i : preference_) {
    if (outcomes[i].accepted) return i;
  }
  return family_->full_index();
}

ConfidenceBall ConfidenceProcedure::build_ball(const Eigen::VectorXd& y) const {
  const auto outcomes = run_tests(y);
  const std::size_t chosen = select(outcomes);
  const auto& models = family_->models();

  ConfidenceBall ball;
  ball.selected_index = chosen;
  ball.selected = models[chosen].id();
  ball.center = models[chosen].project(y);
  ball.radius_sq = radii_sq_[chosen];
  ball.nominal_coverage = 1.0 - family_->beta();
  ball.per_model.reserve(models.size());
  for (std::size_t i = 0; i < models.size(); ++i) {
    ball.per_model.push_back(
        {models[i].id(), models[i].dim(), models[i].beta_m(), radii_sq_[i], outcomes[i].accepted});
  }
  return ball;
}

bool ConfidenceProcedure::in_intersection(const Eigen::VectorXd& f_query,
                                          const Eigen::VectorXd& y) const {
  check_length(f_query);
  const auto outcomes = run_tests(y);
  const auto& models = family_->models();
  for (std::size_t i = 0; i < models.size(); ++i) {
    if (!outcomes[i].accepted) continue;
    if ((f_query - models[i].project(y)).squaredNorm() > radii_sq_[i]) return false;
  }
  return true;
}

namespace {
ConfidenceProcedure one_shot(const ModelFamily& family, double alpha, const VarianceSpec& variance) {
  return ConfidenceProcedure(std::make_shared<const ModelFamily>(family), alpha, variance);
}
}  // namespace

std::vector<TestOutcome> run_tests(const Eigen::VectorXd& y, const ModelFamily& family,
                                   double alpha, const VarianceSpec& variance) {
  return one_shot(family, alpha, variance).run_tests(y);
}

ConfidenceBall build_ball(const Eigen::VectorXd& y, const ModelFamily& family, double alpha,
                          const VarianceSpec& variance) {
  return one_shot(family, alpha, variance).build_ball(y);
}

bool in_intersection(const Eigen::VectorXd& f_query, const Eigen::VectorXd& y,
                     const ModelFamily& family, double alpha, const VarianceSpec& variance) {
  return one_shot(family, alpha, variance).in_intersection(f_query, y);
}

double radius_guarantee_check(const ConfidenceProcedure& procedure, std::size_t model_index,
                              const Eigen::VectorXd& f, int replicates, std::uint64_t seed,
                              double true_sigma2, Exec exec) {
  if (replicates < 1) throw DomainError("replicates must be >= 1");
  if (model_index >= procedure.family().size()) throw std::out_of_range("model index");
  if (f.size() != procedure.family().n()) throw DimensionError("f has the wrong length");
  const double sigma = std::sqrt(true_sigma2);
  const double limit = procedure.radii_sq()[model_index];
  const double rho_m = std::sqrt(limit) + 1e-9;

  std::vector<char> ok(static_cast<std::size_t>(replicates));
  for_each_index(replicates, exec, [&](int r) {
    Rng rng = substream(seed, static_cast<std::uint64_t>(r));
    const Eigen::VectorXd y = gen_data(f, sigma, rng);
    const std::size_t chosen = procedure.select(y);
    ok[static_cast<std::size_t>(r)] = std::sqrt(procedure.radii_sq()[chosen]) <= rho_m;
  });
  const auto hits = std::count(ok.begin(), ok.end(), char{1});
  return static_cast<double>(hits) / replicates;
}

}  // namespace confball
