#include "confball/sampling.hpp"

#include <random>

#include "confball/errors.hpp"

namespace confball {

Eigen::VectorXd gen_data(const Eigen::VectorXd& f, double sigma, Rng& rng) {
  if (!(sigma > 0.0)) throw DomainError("sigma must be > 0");
  std::normal_distribution<double> normal;
  Eigen::VectorXd y(f.size());
  for (Eigen::Index i = 0; i < f.size(); ++i) y[i] = f[i] + sigma * normal(rng);
  return y;
}

}  // namespace confball
