// Randomised property checks. Every case is drawn from a fixed seed so a
// failure reproduces exactly; the case is printed on failure.
#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "confball/distributions.hpp"
#include "confball/io.hpp"
#include "confball/models.hpp"
#include "confball/radii.hpp"
#include "confball/rng.hpp"

namespace cb = confball;

namespace {

struct Gen {
  cb::Rng rng;
  explicit Gen(std::uint64_t seed) : rng(cb::substream(seed, 0)) {}
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
  double log_uniform(double a, double b) { return std::exp(uniform(std::log(a), std::log(b))); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); }
  cb::NoncentralChi2 law() {
    const double z = integer(0, 4) == 0 ? 0.0 : log_uniform(1e-3, 2000.0);
    return {z, integer(1, 1200)};
  }
};

std::string show(cb::NoncentralChi2 p) {
  std::ostringstream s;
  s << "z=" << p.z << " d=" << p.d;
  return s.str();
}

}  // namespace

TEST(Property, CdfMonotoneInX) {
  Gen g(101);
  for (int t = 0; t < 200; ++t) {
    const auto p = g.law();
    const double m = p.z + p.d;
    const double x1 = g.uniform(0.0, 2.0 * m);
    const double x2 = x1 + g.uniform(0.0, m);
    EXPECT_LE(cb::noncentral_chi2_cdf(x1, p), cb::noncentral_chi2_cdf(x2, p) + 1e-15) << show(p);
  }
}

TEST(Property, SfIncreasingInNoncentrality) {
  Gen g(102);
  for (int t = 0; t < 200; ++t) {
    auto p = g.law();
    const double x = g.uniform(0.1, 2.0 * (p.z + p.d));
    const double a = cb::noncentral_chi2_sf(x, p);
    auto q = p;
    q.z += g.uniform(0.0, 50.0);
    EXPECT_LE(a, cb::noncentral_chi2_sf(x, q) + 1e-12) << show(p) << " x=" << x;
  }
}

TEST(Property, QuantileRoundTrip) {
  Gen g(103);
  for (int t = 0; t < 150; ++t) {
    const auto p = g.law();
    const double u = g.log_uniform(1e-14, 0.999);
    const double q = cb::chi2_quantile(u, p);
    EXPECT_NEAR(cb::noncentral_chi2_sf(q, p), u, 1e-8 * u) << show(p) << " u=" << u;
  }
}

TEST(Property, EnvelopeSandwich) {
  Gen g(104);
  for (int t = 0; t < 150; ++t) {
    const auto p = g.law();
    const double u = g.log_uniform(1e-12, 0.5);
    EXPECT_LE(cb::chi2_quantile(u, p), cb::birge_upper(p.z, p.d, u)) << show(p) << " u=" << u;
    EXPECT_GE(cb::chi2_quantile(1.0 - u, p), cb::birge_lower(p.z, p.d, u)) << show(p) << " u=" << u;
  }
}

TEST(Property, ProjectionGeometry) {
  Gen g(105);
  std::normal_distribution<double> norm;
  for (int t = 0; t < 40; ++t) {
    const int n = g.integer(5, 60);
    const int k = g.integer(1, n - 1);
    Eigen::MatrixXd raw(n, k);
    for (auto& v : raw.reshaped()) v = norm(g.rng);
    const auto m = cb::LinearModel::from_columns("m", raw, 0.01);
    Eigen::VectorXd y(n);
    for (auto& v : y) v = norm(g.rng);
    const Eigen::VectorXd p = m.project(y);
    EXPECT_LE(p.norm(), y.norm() + 1e-12);
    EXPECT_NEAR(p.squaredNorm() + (y - p).squaredNorm(), y.squaredNorm(), 1e-10 * y.squaredNorm());
    EXPECT_LT((m.project(p) - p).norm(), 1e-10);
    EXPECT_LT((raw.transpose() * (y - p)).norm(), 1e-9 * raw.norm() * y.norm());
  }
}

TEST(Property, RadiusDecreasesWithLevel) {
  Gen g(106);
  for (int t = 0; t < 6; ++t) {
    const int n = g.integer(60, 400);
    const int dim = g.integer(1, n / 3);
    const double b1 = g.log_uniform(1e-8, 0.1);
    const double b2 = b1 * g.uniform(0.05, 0.9);
    const cb::RadiusInputs a{dim, n - dim, 0.2, b1, cb::VarianceSpec::known(1.0)};
    const cb::RadiusInputs b{dim, n - dim, 0.2, b2, cb::VarianceSpec::known(1.0)};
    EXPECT_LE(cb::rho_sq_known(a, false), cb::rho_sq_known(b, false)) << n << " " << dim << " " << b1 << " " << b2;
  }
}

TEST(Property, CsvRoundTripIsExact) {
  Gen g(107);
  std::ostringstream text;
  std::vector<double> values;
  for (int i = 0; i < 500; ++i) {
    const double v = (g.integer(0, 1) ? 1 : -1) * g.log_uniform(1e-300, 1e300);
    values.push_back(v);
    text << cb::format_exact(v) << "\n";
  }
  const auto back = cb::parse_vector_csv(text.str());
  for (std::size_t i = 0; i < values.size(); ++i) EXPECT_EQ(back[static_cast<Eigen::Index>(i)], values[i]);
}
