#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "confball/errors.hpp"
#include "confball/radii.hpp"

namespace cb = confball;

namespace {

// (D, beta_m) of the dyadic Fourier family at n = 1000, beta = 0.1
struct Cfg {
  int dim;
  double beta_m;
};
const Cfg kTable[] = {{5, 0.05},        {9, 0.025},        {17, 0.0125},      {33, 0.00625},
                      {65, 0.003125},   {129, 0.0015625},  {257, 0.00078125}, {513, 0.000390625}};

// independent evaluation (scipy ncx2, root finding plus bounded maximisation)
const double kRhoOverN[] = {0.117973, 0.135665, 0.155384, 0.181437,
                            0.221898, 0.292599, 0.424929, 0.681163};

}  // namespace

TEST(Radii, KnownVarianceFourierTable) {
  for (std::size_t i = 0; i < std::size(kTable); ++i) {
    const cb::RadiusInputs in{kTable[i].dim, 1000 - kTable[i].dim, 0.2, kTable[i].beta_m, cb::VarianceSpec::known(1.0)};
    EXPECT_NEAR(cb::rho_sq_known(in, false) / 1000.0, kRhoOverN[i], 2e-6) << kTable[i].dim;
  }
  const cb::RadiusInputs full{1000, 0, 0.2, 0.1 / 256, cb::VarianceSpec::known(1.0)};
  EXPECT_NEAR(cb::rho_sq_known(full, true), 1157.1253270424984, 1e-7);
}

TEST(Radii, ScalesWithVariance) {
  const cb::RadiusInputs a{9, 991, 0.2, 0.025, cb::VarianceSpec::known(1.0)};
  const cb::RadiusInputs b{9, 991, 0.2, 0.025, cb::VarianceSpec::known(3.5)};
  EXPECT_NEAR(cb::rho_sq_known(b, false), 3.5 * cb::rho_sq_known(a, false), 1e-9 * cb::rho_sq_known(b, false));
}

TEST(Radii, PsiIsAcceptanceProbability) {
  EXPECT_NEAR(cb::psi(0.0, 995, 0.2), 0.8, 1e-12);
  double prev = 1.0;
  for (double z : {0.0, 10.0, 50.0, 100.0, 200.0}) {
    const double p = cb::psi(z, 995, 0.2);
    EXPECT_LT(p, prev + 1e-15);
    prev = p;
  }
}

TEST(Radii, ZBarSolvesPsiEquation) {
  for (double beta_m : {0.05, 1e-3, 1e-10}) {
    const double zb = cb::z_bar(995, 0.2, beta_m);
    EXPECT_NEAR(cb::psi(zb, 995, 0.2), beta_m, 1e-8 * beta_m);
    EXPECT_LE(zb, cb::z_bar_cap(995, 0.2, beta_m));
  }
}

TEST(Radii, ZBarRequiresBetaBelowAcceptance) {
  EXPECT_THROW(cb::z_bar(100, 0.2, 0.85), cb::DomainError);
}

TEST(Radii, ObjectiveIsMinusInfinityPastZBar) {
  const double zb = cb::z_bar(995, 0.2, 0.05);
  EXPECT_TRUE(cb::radius_objective(zb * 1.01, 5, 995, 0.2, 0.05).is_negative_infinity());
  EXPECT_FALSE(cb::radius_objective(zb * 0.5, 5, 995, 0.2, 0.05).is_negative_infinity());
}

TEST(Radii, SupremumDominatesGrid) {
  const auto s = cb::objective_supremum(5, 995, 0.2, 0.05);
  EXPECT_GE(s.value, s.grid_max);
  EXPECT_LE(s.argmax, s.zbar);
  // nothing on a finer scan beats it
  for (int i = 0; i <= 4000; ++i) {
    const auto v = cb::radius_objective(s.zbar * i / 4000.0, 5, 995, 0.2, 0.05);
    if (!v.is_negative_infinity()) {
      EXPECT_LE(v.value(), s.value + 1e-7 * s.value);
    }
  }
}

TEST(Radii, DimensionZeroIsZBar) {
  const cb::RadiusInputs in{0, 1000, 0.2, 0.05, cb::VarianceSpec::known(2.0)};
  EXPECT_NEAR(cb::rho_sq_known(in, false), 2.0 * cb::z_bar(1000, 0.2, 0.05), 1e-9);
}

TEST(Radii, SerialAndParallelAgreeBitwise) {
  for (const auto& c : kTable) {
    const cb::RadiusInputs in{c.dim, 1000 - c.dim, 0.2, c.beta_m, cb::VarianceSpec::known(1.0)};
    EXPECT_EQ(cb::rho_sq_known(in, false, cb::Exec::serial), cb::rho_sq_known(in, false, cb::Exec::parallel));
  }
  const cb::RadiusInputs iv{17, 983, 0.2, 0.0125, cb::VarianceSpec::interval(1.0, 0.05)};
  EXPECT_EQ(cb::rho_sq_interval(iv, false, cb::Exec::serial), cb::rho_sq_interval(iv, false, cb::Exec::parallel));
}

TEST(Radii, IntervalAtZeroWidthIsKnown) {
  const cb::RadiusInputs known{33, 967, 0.2, 0.00625, cb::VarianceSpec::known(1.7)};
  const cb::RadiusInputs iv{33, 967, 0.2, 0.00625, cb::VarianceSpec::interval(1.7, 0.0)};
  const double a = cb::rho_sq_known(known, false);
  EXPECT_NEAR(cb::rho_sq_interval(iv, false), a, 1e-12 * a);
}

TEST(Radii, IntervalGrowsWithWidth) {
  double prev = 0.0;
  for (double eta : {0.0, 0.02, 0.05, 0.1}) {
    const cb::RadiusInputs iv{5, 995, 0.2, 0.05, cb::VarianceSpec::interval(1.0, eta)};
    const double r = cb::rho_sq_interval(iv, false);
    EXPECT_GE(r, prev);
    prev = r;
  }
}

TEST(Radii, IntervalFullModelUsesUpperVariance) {
  const cb::RadiusInputs iv{1000, 0, 0.2, 0.1 / 256, cb::VarianceSpec::interval(2.0, 0.3)};
  EXPECT_NEAR(cb::rho_sq(iv, true), 2.0 * 1157.1253270424984, 1e-6);
}

TEST(Radii, KnownRejectsInterval) {
  const cb::RadiusInputs iv{5, 995, 0.2, 0.05, cb::VarianceSpec::interval(1.0, 0.1)};
  EXPECT_THROW(cb::rho_sq_known(iv, false), cb::DomainError);
}

TEST(Radii, TableDeduplicatesAndKeepsOrder) {
  std::vector<cb::RadiusRequest> req{{5, 995, 0.05, false}, {9, 991, 0.025, false}, {5, 995, 0.05, false}};
  const auto out = cb::radius_table(req, 0.2, cb::VarianceSpec::known(1.0));
  ASSERT_EQ(out.size(), 3u);
  EXPECT_EQ(out[0], out[2]);
  EXPECT_NEAR(out[1] / 1000.0, 0.135665, 2e-6);
}
