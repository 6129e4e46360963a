#include "confball/models.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "confball/errors.hpp"
#include "confball/special.hpp"

namespace confball {
namespace {

constexpr double kRankTolerance = 1e-10;
constexpr double kOrthoTolerance = 1e-10;
constexpr double kLevelSlack = 1e-12;

void check_level(double beta_m) {
  if (!(beta_m > 0.0 && beta_m < 1.0)) throw DomainError("beta_m must lie in (0, 1)");
}

}  // namespace

Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& raw) {
  const auto n = raw.rows();
  if (raw.cols() == 0 || n == 0) return Eigen::MatrixXd(n, 0);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(raw);
  qr.setThreshold(kRankTolerance);
  const auto rank = qr.rank();
  if (rank == 0) return Eigen::MatrixXd(n, 0);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, rank);
  return q;
}

LinearModel::LinearModel(std::string id, Eigen::MatrixXd basis, int n, int dim, double beta_m,
                         bool full)
    : id_(std::move(id)), basis_(std::move(basis)), n_(n), dim_(dim), beta_m_(beta_m), full_(full) {}

LinearModel LinearModel::from_basis(std::string id, Eigen::MatrixXd basis, double beta_m) {
  check_level(beta_m);
  const int n = static_cast<int>(basis.rows());
  const int dim = static_cast<int>(basis.cols());
  if (n < 1) throw DimensionError("model " + id + ": basis has no rows");
  if (dim > n) throw DimensionError("model " + id + ": more basis vectors than rows");
  const Eigen::MatrixXd gram = basis.transpose() * basis;
  const double err = (gram - Eigen::MatrixXd::Identity(dim, dim)).cwiseAbs().maxCoeff();
  if (dim > 0 && err > kOrthoTolerance) {
    throw DomainError("model " + id + ": basis is not orthonormal (max Gram error " +
                      std::to_string(err) + ")");
  }
  if (dim == n) return full(std::move(id), n, beta_m);
  return LinearModel(std::move(id), std::move(basis), n, dim, beta_m, false);
}

LinearModel LinearModel::from_columns(std::string id, const Eigen::MatrixXd& raw, double beta_m) {
  return from_basis(std::move(id), orthonormalize(raw), beta_m);
}

LinearModel LinearModel::full(std::string id, int n, double beta_m) {
  check_level(beta_m);
  if (n < 1) throw DimensionError("full model needs n >= 1");
  return LinearModel(std::move(id), Eigen::MatrixXd(n, 0), n, n, beta_m, true);
}

LinearModel LinearModel::with_level(double beta_m) const {
  check_level(beta_m);
  LinearModel copy = *this;
  copy.beta_m_ = beta_m;
  return copy;
}

Eigen::VectorXd LinearModel::project(const Eigen::VectorXd& y) const {
  if (y.size() != n_) {
    throw DimensionError("model " + id_ + ": expected a vector of length " + std::to_string(n_) +
                         ", got " + std::to_string(y.size()));
  }
  if (full_) return y;
  if (dim_ == 0) return Eigen::VectorXd::Zero(n_);
  return basis_ * (basis_.transpose() * y);
}

double LinearModel::residual_sq(const Eigen::VectorXd& y) const {
  if (y.size() != n_) {
    throw DimensionError("model " + id_ + ": expected a vector of length " + std::to_string(n_) +
                         ", got " + std::to_string(y.size()));
  }
  if (full_) return 0.0;
  const double total = y.squaredNorm();
  if (dim_ == 0) return total;
  const double explained = (basis_.transpose() * y).squaredNorm();
  return std::max(0.0, total - explained);
}

Eigen::VectorXd project(const LinearModel& model, const Eigen::VectorXd& y) {
  return model.project(y);
}

ModelFamily::ModelFamily(int n, double beta, std::vector<LinearModel> models)
    : n_(n), beta_(beta), models_(std::move(models)) {
  if (n < 1) throw DimensionError("family needs n >= 1");
  if (!(beta > 0.0 && beta < 1.0)) throw DomainError("beta must lie in (0, 1)");
  int full_count = 0;
  double total = 0.0;
  for (std::size_t i = 0; i < models_.size(); ++i) {
    const auto& m = models_[i];
    if (m.n() != n) {
      throw DimensionError("model " + m.id() + " lives in R^" + std::to_string(m.n()) +
                           ", family is in R^" + std::to_string(n));
    }
    if (m.is_full()) {
      ++full_count;
      full_index_ = i;
    }
    total += m.beta_m();
  }
  if (full_count != 1) {
    throw DomainError("family must contain exactly one full model R^n, found " +
                      std::to_string(full_count));
  }
  if (total > beta + kLevelSlack) {
    throw DomainError("allocated levels sum to " + std::to_string(total) + ", above beta = " +
                      std::to_string(beta));
  }
}

std::size_t ModelFamily::index_of(const std::string& id) const {
  for (std::size_t i = 0; i < models_.size(); ++i) {
    if (models_[i].id() == id) return i;
  }
  throw std::out_of_range("no model with id " + id);
}

std::vector<double> allocate_uniform(double beta, int count) {
  if (count < 1) throw DomainError("allocation needs at least one model");
  double level = beta / count;
  auto sum = [&] {
    double s = 0.0;
    for (int i = 0; i < count; ++i) s += level;
    return s;
  };
  while (sum() > beta) level = std::nextafter(level, 0.0);
  return std::vector<double>(static_cast<std::size_t>(count), level);
}

double dimensional_level(double beta, int n, int dim) {
  if (dim < 1 || 2 * dim > n) {
    throw DomainError("dimensional allocation needs 1 <= D <= n/2, got D=" + std::to_string(dim) +
                      ", n=" + std::to_string(n));
  }
  return std::exp(std::log(beta) - std::log(static_cast<double>(n)) -
                  special::log_binomial(n, dim));
}

std::vector<double> allocate_dimensional(double beta, int n, std::span<const int> dims) {
  std::vector<double> out;
  out.reserve(dims.size());
  for (int d : dims) out.push_back(dimensional_level(beta, n, d));
  return out;
}

Eigen::MatrixXd fourier_design(int n, int m) {
  Eigen::MatrixXd x(n, 2 * m + 1);
  for (int i = 0; i < n; ++i) {
    const double t = static_cast<double>(i + 1) / n;
    x(i, 0) = 1.0;
    for (int j = 1; j <= m; ++j) {
      const double w = 2.0 * std::numbers::pi * j * t;
      x(i, 2 * j - 1) = std::cos(w);
      x(i, 2 * j) = std::sin(w);
    }
  }
  return x;
}

ModelFamily fourier_family(int n, int K, double beta) {
  if (K < 1) throw DomainError("fourier_family needs K >= 1");
  if (K > 30 || (2L << K) + 1 >= n) {
    throw DomainError("fourier_family needs dim(S_{2^K}) = 2^{K+1} + 1 < n");
  }
  std::vector<LinearModel> models;
  models.reserve(static_cast<std::size_t>(K) + 1);
  for (int k = 1; k <= K; ++k) {
    const int m = 1 << k;
    models.push_back(LinearModel::from_columns(std::to_string(m), fourier_design(n, m),
                                               std::ldexp(beta, -k)));
  }
  models.push_back(LinearModel::full(std::to_string(n), n, std::ldexp(beta, -K)));
  return ModelFamily(n, beta, std::move(models));
}

}  // namespace confball
