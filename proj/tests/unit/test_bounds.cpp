#include <gtest/gtest.h>

#include <cmath>

#include "confball/bounds.hpp"
#include "confball/errors.hpp"
#include "confball/radii.hpp"
#include "confball/special.hpp"

namespace cb = confball;

TEST(Bounds, FullModelUpperArithmetic) {
  const double lm = std::log(2560.0);
  const double expect = 1000.0 + 2.0 * std::sqrt(1000.0 * lm) + 2.0 * lm;
  EXPECT_NEAR(cb::upper_bound_rho(1000, 0, 0.0, 0.2, 0.1 / 256, 1.0), expect, 1e-9);
}

TEST(Bounds, UpperDominatesRadiusOnFourierTable) {
  double beta_m = 0.05;
  for (int k = 1; k <= 8; ++k, beta_m /= 2) {
    const int dim = 2 * (1 << k) + 1;
    const cb::RadiusInputs in{dim, 1000 - dim, 0.2, beta_m, cb::VarianceSpec::known(1.0)};
    EXPECT_LE(cb::rho_sq_known(in, false), cb::upper_bound_rho(dim, 1000 - dim, 0.0, 0.2, beta_m, 1.0)) << dim;
  }
}

TEST(Bounds, LogFormMatchesDirect) {
  EXPECT_DOUBLE_EQ(cb::upper_bound_rho(9, 991, 0.05, 0.1, 1e-4, 2.0),
                   cb::upper_bound_rho_log(9, 991, 0.05, 0.1, std::log(1e4), 2.0));
}

TEST(Bounds, ConstantsFollowPreconditions) {
  const auto ok = cb::BoundConstants::make(0.01, 0.005);
  EXPECT_TRUE(ok.L1.has_value());
  EXPECT_TRUE(ok.L2.has_value());
  EXPECT_NEAR(*ok.L1, -4.0 * std::log(1.0 - 0.015) / 81.0, 1e-15);
  const auto only2 = cb::BoundConstants::make(0.1, 0.05);
  EXPECT_FALSE(only2.L1.has_value());
  EXPECT_TRUE(only2.L2.has_value());
  const auto none = cb::BoundConstants::make(0.2, 0.1);
  EXPECT_FALSE(none.L1.has_value());
  EXPECT_FALSE(none.L2.has_value());
}

TEST(Bounds, LowerThrowsWhenNoClaimApplies) {
  EXPECT_THROW(cb::lower_bound_radius(5, 995, 0.0, 0.2, 0.1, 1.0), cb::PreconditionError);
  EXPECT_NO_THROW(cb::lower_bound_radius(5, 995, 0.0, 0.1, 0.05, 1.0));
}

TEST(Bounds, LowerBelowRadius) {
  for (int dim : {0, 5, 50}) {
    for (double eta : {0.0, 0.05}) {
      const cb::RadiusInputs in{dim, 1000 - dim, 0.01, 0.005, cb::VarianceSpec::interval(1.0, eta)};
      EXPECT_LE(cb::lower_bound_radius(dim, 1000 - dim, eta, 0.01, 0.005, 1.0), cb::rho_sq(in, false));
    }
  }
}

TEST(Bounds, LowerGrowsWithEta) {
  const double a = cb::lower_bound_radius(5, 995, 0.0, 0.01, 0.005, 1.0);
  const double b = cb::lower_bound_radius(5, 995, 0.5, 0.01, 0.005, 1.0);
  EXPECT_GT(b, a);
  EXPECT_EQ(cb::global_lower_bound(1000, 0.1, 1.0, 0.01, 0.005), cb::lower_bound_radius(0, 1000, 0.1, 0.01, 0.005, 1.0));
}

TEST(Bounds, SubsetCountDominatesBinomial) {
  for (int n : {10, 100, 1000}) {
    for (int d : {1, 2, 5, 10}) {
      EXPECT_GE(cb::log_subset_count_bound(n, d), cb::special::log_binomial(n, d) - 1e-12);
    }
  }
  EXPECT_NEAR(cb::subset_count_bound(10, 1), 10.0 * std::exp(1.0), 1e-12);
  EXPECT_THROW(cb::subset_count_bound(10, 0), cb::DomainError);
}
