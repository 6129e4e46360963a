#include <gtest/gtest.h>

#include <boost/math/distributions/non_central_chi_squared.hpp>
#include <cmath>
#include <numbers>

#include "confball/distributions.hpp"
#include "confball/errors.hpp"
#include "confball/rng.hpp"

namespace cb = confball;

TEST(CentralChi2, TwoDegreesIsExponential) {
  for (double x : {0.0, 0.3, 2.0, 10.0, 80.0}) {
    EXPECT_NEAR(cb::central_chi2_cdf(x, 2), 1.0 - std::exp(-x / 2), 1e-15);
    EXPECT_NEAR(cb::central_chi2_sf(x, 2), std::exp(-x / 2), 1e-15 * std::max(1.0, std::exp(-x / 2)) + 1e-300);
  }
}

TEST(CentralChi2, OneDegreeIsErf) {
  for (double x : {0.01, 0.5, 1.0, 4.0, 25.0}) {
    EXPECT_NEAR(cb::central_chi2_cdf(x, 1), std::erf(std::sqrt(x / 2)), 1e-14);
  }
}

TEST(NoncentralChi2, FrozenHighPrecisionValues) {
  // Poisson-mixture sums at 40 digits
  struct Row { double x, z; int d; double sf; };
  const Row rows[] = {
      {3.0, 2.0, 5, 0.84015651075395286},
      {50.0, 10.0, 20, 0.023900816156946228},
      {10.0, 0.0, 3, 0.018566135463043233},
      {200.0, 10.0, 100, 9.4410026216061572e-7},
      {0.5, 1.0, 1, 0.65909921733222548},
  };
  for (const auto& r : rows) {
    EXPECT_NEAR(cb::noncentral_chi2_sf(r.x, {r.z, r.d}), r.sf, 1e-12 * r.sf);
    EXPECT_NEAR(cb::noncentral_chi2_cdf(r.x, {r.z, r.d}), 1.0 - r.sf, 1e-12);
  }
  // lower tail kept with relative accuracy
  EXPECT_NEAR(cb::noncentral_chi2_cdf(1500.0, {1000.0, 995}), 2.0664492008071832e-12, 1e-9 * 2.0664492008071832e-12);
}

TEST(NoncentralChi2, AgreesWithBoost) {
  for (int d : {1, 2, 5, 100, 995}) {
    for (double z : {0.5, 10.0, 100.0, 1000.0}) {
      boost::math::non_central_chi_squared dist(d, z);
      for (double t : {0.6, 1.0, 1.3}) {
        const double x = t * (z + d);
        const double c = boost::math::cdf(dist, x);
        EXPECT_NEAR(cb::noncentral_chi2_cdf(x, {z, d}), c, 1e-10 + 1e-8 * c) << d << " " << z << " " << x;
      }
    }
  }
}

TEST(NoncentralChi2, CdfAndSfAreComplementary) {
  for (int d : {1, 7, 300}) {
    for (double z : {0.0, 3.0, 250.0}) {
      for (double x : {0.5 * (z + d), z + d, 2.0 * (z + d)}) {
        EXPECT_NEAR(cb::noncentral_chi2_cdf(x, {z, d}) + cb::noncentral_chi2_sf(x, {z, d}), 1.0, 1e-12);
      }
    }
  }
}

TEST(NoncentralChi2, RejectsBadParameters) {
  EXPECT_THROW(cb::noncentral_chi2_cdf(1.0, {-1.0, 3}), cb::DomainError);
  EXPECT_THROW(cb::noncentral_chi2_cdf(1.0, {1.0, -1}), cb::DomainError);
  EXPECT_THROW(cb::noncentral_chi2_cdf(std::nan(""), {1.0, 3}), cb::DomainError);
}

TEST(Quantile, FrozenValues) {
  EXPECT_NEAR(cb::chi2_quantile(0.2, {0.0, 995}), 1032.3366399647794, 1e-9);
  EXPECT_NEAR(cb::chi2_quantile(0.05, {0.0, 5}), 11.070497693516355, 1e-10);
  EXPECT_NEAR(cb::chi2_quantile(0.1 / 256, {0.0, 1000}), 1157.1253270424984, 1e-8);
  EXPECT_NEAR(cb::chi2_quantile(1e-12, {0.0, 5}), 65.23863621336784, 1e-9);
  EXPECT_NEAR(cb::chi2_quantile(0.5, {0.0, 2}), 2.0 * std::numbers::ln2, 1e-12);
  EXPECT_NEAR(cb::chi2_quantile(1e-8, {100.0, 5}), 248.69361562485201, 1e-7);
  EXPECT_NEAR(cb::chi2_quantile(0.3, {10.0, 20}), 34.02742952259284, 1e-9);
}

TEST(Quantile, InvertsSurvivalFunction) {
  for (int d : {1, 3, 40, 995}) {
    for (double z : {0.0, 2.0, 500.0}) {
      for (double u : {1e-15, 1e-6, 0.01, 0.5, 0.9, 0.999}) {
        const double q = cb::chi2_quantile(u, {z, d});
        EXPECT_NEAR(cb::noncentral_chi2_sf(q, {z, d}), u, 1e-9 * u) << d << " " << z << " " << u;
      }
    }
  }
}

TEST(Quantile, Conventions) {
  EXPECT_EQ(cb::chi2_quantile(0.3, {5.0, 0}), 0.0);
  EXPECT_TRUE(cb::chi2_quantile_extended(1.0, {0.0, 4}).is_negative_infinity());
  EXPECT_FALSE(cb::chi2_quantile_extended(0.5, {0.0, 4}).is_negative_infinity());
  EXPECT_THROW(cb::chi2_quantile(0.0, {0.0, 4}), cb::DomainError);
  EXPECT_THROW(cb::chi2_quantile(1.0, {0.0, 4}), cb::DomainError);
  EXPECT_THROW(cb::chi2_quantile(-0.1, {0.0, 4}), cb::DomainError);
}

TEST(Quantile, DecreasingInLevel) {
  double prev = INFINITY;
  for (double u : {1e-10, 1e-5, 1e-3, 0.05, 0.2, 0.5, 0.8, 0.99}) {
    const double q = cb::chi2_quantile(u, {30.0, 12});
    EXPECT_LT(q, prev);
    prev = q;
  }
}

TEST(ExtendedReal, OrderingAndArithmetic) {
  const auto ninf = cb::ExtendedReal::negative_infinity();
  const cb::ExtendedReal a(-1e300);
  EXPECT_LT(ninf, a);
  EXPECT_TRUE((3.0 + ninf).is_negative_infinity());
  EXPECT_EQ((2.0 + cb::ExtendedReal(1.5)).value(), 3.5);
  EXPECT_THROW(ninf.value(), cb::DomainError);
  EXPECT_EQ(ninf, cb::ExtendedReal::negative_infinity());
}

TEST(Envelopes, SandwichQuantiles) {
  for (int d : {1, 10, 200}) {
    for (double z : {0.0, 5.0, 400.0}) {
      for (double u : {1e-6, 0.01, 0.3}) {
        EXPECT_LE(cb::chi2_quantile(u, {z, d}), cb::birge_upper(z, d, u));
        EXPECT_GE(cb::chi2_quantile(1.0 - u, {z, d}), cb::birge_lower(z, d, u));
      }
    }
  }
}

TEST(Sampling, MomentsMatch) {
  cb::Rng rng = cb::substream(11, 0);
  const cb::NoncentralChi2 p{20.0, 7};
  const int n = 200000;
  double s = 0, s2 = 0;
  for (int i = 0; i < n; ++i) {
    const double v = cb::sample_noncentral(p, rng);
    s += v;
    s2 += v * v;
  }
  const double mean = s / n;
  const double var = s2 / n - mean * mean;
  // E = z + d, Var = 2(d + 2z)
  EXPECT_NEAR(mean, 27.0, 4.0 * std::sqrt(94.0 / n));
  EXPECT_NEAR(var, 94.0, 2.0);
}

TEST(Quantile, LevelsBelowMachineEpsilon) {
  for (double u : {1e-17, 1e-30, 1e-200}) {
    const double q = cb::chi2_quantile(u, {0.0, 8});
    EXPECT_NEAR(cb::central_chi2_sf(q, 8), u, 1e-9 * u) << u;
    EXPECT_LE(q, cb::birge_upper(0.0, 8, u));
  }
}
