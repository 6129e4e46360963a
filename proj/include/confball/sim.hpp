#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "confball/exec.hpp"
#include "confball/procedure.hpp"

namespace confball {

enum class TestFunction { F1, F2, F3 };

std::string_view to_string(TestFunction f);
std::optional<TestFunction> parse_test_function(std::string_view name);

/// F1(x) = cos(2 pi x); F2 = F1 + 0.3 sin(20 pi x); F3 piecewise constant
/// 1.5 / 0.5 / 2 / 0 on (0,.3), (.3,.6), (.6,.8) and elsewhere.
double evaluate(TestFunction f, double x);

/// (F(x_1), ..., F(x_n)) with x_i = i/n.
Eigen::VectorXd test_function(TestFunction f, int n);

struct SimulationConfig {
  int n = 1000;
  double alpha = 0.2;
  double beta = 0.1;
  int K = 8;
  double sigma = 1.0;
  int replicates = 100;
  std::uint64_t seed = 1;
  std::vector<TestFunction> functions{TestFunction::F1, TestFunction::F2, TestFunction::F3};
};

/// Index of the first model, in family order, whose fit test accepts.
std::size_t smallest_accepted(const ConfidenceProcedure& procedure, const Eigen::VectorXd& y);
std::string smallest_accepted(const Eigen::VectorXd& y, const ModelFamily& family, double alpha,
                              const VarianceSpec& variance);

struct ReplicateRecord {
  int replicate = 0;
  TestFunction function = TestFunction::F1;
  std::string smallest_accepted;
  std::string selected;
  double radius_sq = 0;
  bool covered = false;               // |f - fhat|^2 <= rho_hat^2
  bool intersection_covered = false;  // f in every accepted ball
};

struct Table1Row {
  std::string model_id;
  int dim = 0;
  double rho_sq_over_n = 0;
  std::vector<int> counts;  // per function: replicates with m(F) = this model
};

struct Table1Report {
  int n = 0;
  int replicates = 0;
  std::uint64_t seed = 0;
  std::vector<TestFunction> functions;
  std::vector<Table1Row> rows;
  std::vector<ReplicateRecord> log;  // replicate-major, then function
  std::vector<double> coverage;      // per function
};

/// Replicate r, function j draws its noise from substream(seed, r, j), so
/// the report does not depend on the thread count.
Table1Report run_table1(const SimulationConfig& config, Exec exec = Exec::serial);
Table1Report run_table1(const SimulationConfig& config, const ConfidenceProcedure& procedure,
                        Exec exec = Exec::serial);

struct CoverageResult {
  int replicates = 0;
  double coverage = 0;               // fraction with f in B(fhat, rho_hat)
  double ci_low = 0;                 // coverage - 2.58 binomial SE, floored at 0
  double intersection_coverage = 0;  // fraction with f in every accepted ball
  double mean_radius_sq = 0;
};

CoverageResult coverage_mc(const Eigen::VectorXd& f, const ConfidenceProcedure& procedure,
                           int replicates, std::uint64_t seed, double true_sigma2,
                           Exec exec = Exec::serial);

/// Columns x_i, F(x_i), y_i for one simulated data set (plotting input).
Eigen::MatrixXd figure_data(TestFunction f, int n, double sigma, std::uint64_t seed,
                            int replicate = 0);

}  // namespace confball
