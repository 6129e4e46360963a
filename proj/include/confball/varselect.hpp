#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "confball/exec.hpp"
#include "confball/models.hpp"
#include "confball/procedure.hpp"
#include "confball/variance.hpp"

namespace confball {

/// n x p design with full column rank p <= n. Columns are labelled 1..p.
class DesignMatrix {
 public:
  explicit DesignMatrix(Eigen::MatrixXd x);
  const Eigen::MatrixXd& matrix() const { return x_; }
  int rows() const { return static_cast<int>(x_.rows()); }
  int cols() const { return static_cast<int>(x_.cols()); }

 private:
  Eigen::MatrixXd x_;
};

class EnumerationCapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Column-subset family: one model per nonempty subset of size <= max_size
/// (beta_m = beta / (n C(n, |m|))) plus R^n with beta / 2.
struct SubsetFamily {
  std::shared_ptr<const ModelFamily> family;
  /// 1-based column labels, parallel to family->models(); empty for R^n.
  std::vector<std::vector<int>> subsets;
};

inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;

SubsetFamily enumerate_models(const DesignMatrix& x, int max_size, double beta,
                              std::size_t cap = kDefaultEnumerationCap);

/// "{1,3}" style label.
std::string subset_label(const std::vector<int>& columns);

struct VariableSelection {
  std::vector<int> columns;  // empty when R^n was selected
  bool full_model = false;
  ConfidenceBall ball;
};

VariableSelection select_variables(const Eigen::VectorXd& y, const DesignMatrix& x, double alpha,
                                   double beta, const VarianceSpec& variance, int max_size,
                                   Exec exec = Exec::serial);

/// Explicit bound on rho_{m*}^2 for a support of size s: the generic upper
/// bound with log(1/beta_{m*}) replaced by log(n/beta) + s log(en/s), which
/// dominates it because C(n, s) <= exp(s log(en/s)).
double selection_radius_bound(int n, int s, double alpha, double beta,
                              const VarianceSpec& variance);

}  // namespace confball
