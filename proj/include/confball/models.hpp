#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

namespace confball {

/// Orthonormal basis of the column span of `raw` (Householder QR with column
/// pivoting). Columns whose pivot falls below 1e-10 times the largest column
/// norm are dropped, so the result has n rows and rank-many columns.
Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& raw);

/// One linear subspace S_m of R^n with its allocated level beta_m.
///
/// The full model S_n = R^n is stored without a basis: its projector is the
/// identity.
class LinearModel {
 public:
  /// `basis` must already have orthonormal columns (checked to 1e-10).
  static LinearModel from_basis(std::string id, Eigen::MatrixXd basis, double beta_m);
  /// Orthonormalizes `raw` first; rank-deficient columns are dropped.
  static LinearModel from_columns(std::string id, const Eigen::MatrixXd& raw, double beta_m);
  static LinearModel full(std::string id, int n, double beta_m);

  const std::string& id() const { return id_; }
  int n() const { return n_; }
  int dim() const { return dim_; }
  int resid() const { return n_ - dim_; }
  bool is_full() const { return full_; }
  double beta_m() const { return beta_m_; }
  const Eigen::MatrixXd& basis() const { return basis_; }

  LinearModel with_level(double beta_m) const;

  Eigen::VectorXd project(const Eigen::VectorXd& y) const;
  /// |y - P y|^2 computed as |y|^2 - |B'y|^2, clamped at 0.
  double residual_sq(const Eigen::VectorXd& y) const;

 private:
  LinearModel(std::string id, Eigen::MatrixXd basis, int n, int dim, double beta_m, bool full);
  std::string id_;
  Eigen::MatrixXd basis_;
  int n_;
  int dim_;
  double beta_m_;
  bool full_;
};

/// Orthogonal projection of y onto the model's subspace.
Eigen::VectorXd project(const LinearModel& model, const Eigen::VectorXd& y);

/// An ordered family of subspaces containing exactly one full model, with
/// sum of beta_m <= beta (1e-12 slack).
class ModelFamily {
 public:
  ModelFamily(int n, double beta, std::vector<LinearModel> models);

  int n() const { return n_; }
  double beta() const { return beta_; }
  std::size_t size() const { return models_.size(); }
  const std::vector<LinearModel>& models() const { return models_; }
  const LinearModel& operator[](std::size_t i) const { return models_[i]; }
  std::size_t full_index() const { return full_index_; }
  const LinearModel& full_model() const { return models_[full_index_]; }
  /// Index of the model with this id; throws std::out_of_range.
  std::size_t index_of(const std::string& id) const;

 private:
  int n_;
  double beta_;
  std::vector<LinearModel> models_;
  std::size_t full_index_ = 0;
};

/// beta / count for each model, nudged down by ulps until the running sum
/// does not exceed beta.
std::vector<double> allocate_uniform(double beta, int count);

/// beta / (n C(n, D)), evaluated in log space. Requires 1 <= D <= n/2.
double dimensional_level(double beta, int n, int dim);
std::vector<double> allocate_dimensional(double beta, int n, std::span<const int> dims);

/// Raw (non-orthonormal) trigonometric design at x_i = i/n: the constant
/// followed by cos(2 pi j x), sin(2 pi j x) for j = 1..m.
Eigen::MatrixXd fourier_design(int n, int m);

/// The dyadic Fourier family {S_{2^k}, k = 1..K} plus R^n, with
/// beta_{2^k} = beta 2^-k and beta_n = beta 2^-K. Requires 2^{K+1} + 1 < n.
/// Model ids are the frequency cutoffs ("2", "4", ...) and n for R^n.
ModelFamily fourier_family(int n, int K, double beta);

}  // namespace confball
