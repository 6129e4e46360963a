#pragma once

#include <Eigen/Dense>

#include "confball/rng.hpp"

namespace confball {

/// y_i = f_i + sigma * eps_i with eps_i standard normal drawn from `rng`.
Eigen::VectorXd gen_data(const Eigen::VectorXd& f, double sigma, Rng& rng);

}  // namespace confball
