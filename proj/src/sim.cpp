#include "confball/sim.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include "confball/errors.hpp"
#include "confball/models.hpp"
#include "confball/parallel.hpp"
#include "confball/sampling.hpp"

namespace confball {

std::string_view to_string(TestFunction f) {
  switch (f) {
    case TestFunction::F1: return "F1";
    case TestFunction::F2: return "F2";
    case TestFunction::F3: return "F3";
  }
  return "?";
}

std::optional<TestFunction> parse_test_function(std::string_view name) {
  if (name == "F1") return TestFunction::F1;
  if (name == "F2") return TestFunction::F2;
  if (name == "F3") return TestFunction::F3;
  return std::nullopt;
}

double evaluate(TestFunction f, double x) {
  using std::numbers::pi;
  switch (f) {
    case TestFunction::F1: return std::cos(2.0 * pi * x);
    case TestFunction::F2: return std::cos(2.0 * pi * x) + 0.3 * std::sin(20.0 * pi * x);
    case TestFunction::F3:
      if (0.0 < x && x < 0.3) return 1.5;
      if (0.3 < x && x < 0.6) return 0.5;
      if (0.6 < x && x < 0.8) return 2.0;
      return 0.0;
  }
  return 0.0;
}

Eigen::VectorXd test_function(TestFunction f, int n) {
  if (n < 1) throw DomainError("n must be >= 1");
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = evaluate(f, static_cast<double>(i + 1) / n);
  return v;
}

std::size_t smallest_accepted(const ConfidenceProcedure& procedure, const Eigen::VectorXd& y) {
  const auto outcomes = procedure.run_tests(y);
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (outcomes[i].accepted) return i;
  }
  return procedure.family().full_index();
}

std::string smallest_accepted(const Eigen::VectorXd& y, const ModelFamily& family, double alpha,
                              const VarianceSpec& variance) {
  const ConfidenceProcedure procedure(std::make_shared<const ModelFamily>(family), alpha, variance);
  return family[smallest_accepted(procedure, y)].id();
}

namespace {

struct Trial {
  std::size_t first_accepted;
  std::size_t selected;
  bool covered;
  bool intersection_covered;
};

// One data set: tests, selection, and both coverage indicators.
Trial run_trial(const ConfidenceProcedure& procedure, const Eigen::VectorXd& f,
                const Eigen::VectorXd& y) {
  const auto outcomes = procedure.run_tests(y);
  const auto& models = procedure.family().models();
  const auto radii = procedure.radii_sq();
  Trial t{procedure.family().full_index(), procedure.select(outcomes), false, true};
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (!outcomes[i].accepted) continue;
    t.first_accepted = std::min(t.first_accepted, i);
    const double dist = (f - models[i].project(y)).squaredNorm();
    if (dist > radii[i]) t.intersection_covered = false;
    if (i == t.selected) t.covered = dist <= radii[i];
  }
  return t;
}

}  // namespace

Table1Report run_table1(const SimulationConfig& config, Exec exec) {
  if (config.replicates < 1) throw DomainError("replicates must be >= 1");
  auto family = std::make_shared<const ModelFamily>(fourier_family(config.n, config.K, config.beta));
  const ConfidenceProcedure procedure(family, config.alpha,
                                      VarianceSpec::known(config.sigma * config.sigma), exec);
  return run_table1(config, procedure, exec);
}

Table1Report run_table1(const SimulationConfig& config, const ConfidenceProcedure& procedure,
                        Exec exec) {
  if (config.replicates < 1) throw DomainError("replicates must be >= 1");
  if (procedure.family().n() != config.n) throw DimensionError("family does not match config.n");
  const auto& models = procedure.family().models();
  const int nf = static_cast<int>(config.functions.size());

  std::vector<Eigen::VectorXd> signals;
  for (auto fn : config.functions) signals.push_back(test_function(fn, config.n));

  Table1Report report;
  report.n = config.n;
  report.replicates = config.replicates;
  report.seed = config.seed;
  report.functions = config.functions;
  report.log.resize(static_cast<std::size_t>(config.replicates) * nf);

  std::vector<Trial> trials(report.log.size());
  for_each_index(config.replicates, exec, [&](int r) {
    for (int j = 0; j < nf; ++j) {
      Rng rng = substream(config.seed, static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(j));
      const Eigen::VectorXd y = gen_data(signals[j], config.sigma, rng);
      trials[static_cast<std::size_t>(r) * nf + j] = run_trial(procedure, signals[j], y);
    }
  });

  for (const auto& m : models) {
    report.rows.push_back({m.id(), m.dim(), 0.0, std::vector<int>(nf, 0)});
  }
  for (std::size_t i = 0; i < models.size(); ++i) {
    report.rows[i].rho_sq_over_n = procedure.radii_sq()[i] / config.n;
  }
  report.coverage.assign(nf, 0.0);
  for (int r = 0; r < config.replicates; ++r) {
    for (int j = 0; j < nf; ++j) {
      const std::size_t k = static_cast<std::size_t>(r) * nf + j;
      const Trial& t = trials[k];
      report.rows[t.first_accepted].counts[j] += 1;
      report.coverage[j] += t.covered ? 1.0 : 0.0;
      report.log[k] = {r,
                       config.functions[j],
                       models[t.first_accepted].id(),
                       models[t.selected].id(),
                       procedure.radii_sq()[t.selected],
                       t.covered,
                       t.intersection_covered};
    }
  }
  for (double& c : report.coverage) c /= config.replicates;
  return report;
}

CoverageResult coverage_mc(const Eigen::VectorXd& f, const ConfidenceProcedure& procedure,
                           int replicates, std::uint64_t seed, double true_sigma2, Exec exec) {
  if (replicates < 1) throw DomainError("replicates must be >= 1");
  if (!(true_sigma2 > 0.0)) throw DomainError("true sigma^2 must be > 0");
  if (f.size() != procedure.family().n()) throw DimensionError("f has the wrong length");
  const double sigma = std::sqrt(true_sigma2);

  std::vector<Trial> trials(static_cast<std::size_t>(replicates));
  for_each_index(replicates, exec, [&](int r) {
    Rng rng = substream(seed, static_cast<std::uint64_t>(r));
    const Eigen::VectorXd y = gen_data(f, sigma, rng);
    trials[static_cast<std::size_t>(r)] = run_trial(procedure, f, y);
  });

  CoverageResult out;
  out.replicates = replicates;
  double covered = 0.0;
  double inter = 0.0;
  double radius = 0.0;
  for (const Trial& t : trials) {
    covered += t.covered ? 1.0 : 0.0;
    inter += t.intersection_covered ? 1.0 : 0.0;
    radius += procedure.radii_sq()[t.selected];
  }
  out.coverage = covered / replicates;
  out.intersection_coverage = inter / replicates;
  out.mean_radius_sq = radius / replicates;
  out.ci_low = std::max(0.0, out.coverage - 2.58 * std::sqrt(out.coverage * (1.0 - out.coverage) / replicates));
  return out;
}

Eigen::MatrixXd figure_data(TestFunction f, int n, double sigma, std::uint64_t seed, int replicate) {
  const Eigen::VectorXd signal = test_function(f, n);
  Rng rng = substream(seed, static_cast<std::uint64_t>(replicate), static_cast<std::uint64_t>(f));
  const Eigen::VectorXd y = gen_data(signal, sigma, rng);
  Eigen::MatrixXd out(n, 3);
  for (int i = 0; i < n; ++i) out(i, 0) = static_cast<double>(i + 1) / n;
  out.col(1) = signal;
  out.col(2) = y;
  return out;
}

}  // namespace confball
