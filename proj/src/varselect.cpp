#include "confball/varselect.hpp"

#include <cmath>
#include <sstream>

#include "confball/bounds.hpp"
#include "confball/errors.hpp"
#include "confball/special.hpp"

namespace confball {

DesignMatrix::DesignMatrix(Eigen::MatrixXd x) : x_(std::move(x)) {
  if (x_.cols() < 1 || x_.rows() < x_.cols()) {
    throw DimensionError("design must be n x p with 1 <= p <= n");
  }
  if (orthonormalize(x_).cols() != x_.cols()) {
    throw DomainError("design matrix does not have full column rank");
  }
}

std::string subset_label(const std::vector<int>& columns) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
  os << '}';
  return os.str();
}

namespace {

// Calls visit(subset) for every k-subset of {1..p} in lexicographic order.
template <class Visit>
void for_each_subset(int p, int k, Visit&& visit) {
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[i] = i + 1;
  for (;;) {
    visit(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == p - k + i + 1) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

SubsetFamily enumerate_models(const DesignMatrix& x, int max_size, double beta, std::size_t cap) {
  const int n = x.rows();
  const int p = x.cols();
  if (max_size < 1 || max_size > p || 2 * max_size > n) {
    throw DomainError("max_size must lie in [1, min(p, n/2)]");
  }
  double count = 0.0;
  for (int k = 1; k <= max_size; ++k) count += std::exp(special::log_binomial(p, k));
  if (std::llround(count) > static_cast<long long>(cap)) {
    throw EnumerationCapExceeded("enumerating " + std::to_string(std::llround(count)) +
                                 " subsets exceeds the cap of " + std::to_string(cap) +
                                 "; lower max_size or use fewer columns");
  }

  SubsetFamily out;
  std::vector<LinearModel> models;
  for (int k = 1; k <= max_size; ++k) {
    const double level = dimensional_level(beta, n, k);
    for_each_subset(p, k, [&](const std::vector<int>& subset) {
      Eigen::MatrixXd cols(n, k);
      for (int j = 0; j < k; ++j) cols.col(j) = x.matrix().col(subset[j] - 1);
      models.push_back(LinearModel::from_columns(subset_label(subset), cols, level));
      out.subsets.push_back(subset);
    });
  }
  models.push_back(LinearModel::full("full", n, beta / 2.0));
  out.subsets.emplace_back();
  out.family = std::make_shared<const ModelFamily>(n, beta, std::move(models));
  return out;
}

VariableSelection select_variables(const Eigen::VectorXd& y, const DesignMatrix& x, double alpha,
                                   double beta, const VarianceSpec& variance, int max_size,
                                   Exec exec) {
  const SubsetFamily subsets = enumerate_models(x, max_size, beta);
  const ConfidenceProcedure procedure(subsets.family, alpha, variance, exec);
  VariableSelection out;
  out.ball = procedure.build_ball(y);
  out.columns = subsets.subsets[out.ball.selected_index];
  out.full_model = subsets.family->models()[out.ball.selected_index].is_full();
  return out;
}

double selection_radius_bound(int n, int s, double alpha, double beta,
                              const VarianceSpec& variance) {
  if (s < 1 || 2 * s > n) throw DomainError("support size must lie in [1, n/2]");
  if (!(beta > 0.0 && beta < 1.0)) throw DomainError("beta must lie in (0, 1)");
  const double log_inv_level = std::log(static_cast<double>(n) / beta) + log_subset_count_bound(n, s);
  return upper_bound_rho_log(s, n - s, variance.eta(), alpha, log_inv_level, variance.tau2());
}

}  // namespace confball
