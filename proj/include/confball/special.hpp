#pragma once

// Special functions backing the chi-square distribution routines.

namespace confball::special {

/// log Gamma(x) for x > 0 (Lanczos, g = 7, n = 9). Thread-safe, unlike
/// std::lgamma which may write the global signgam.
double log_gamma(double x);

/// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), computed without
/// cancellation when Q is small.
double gamma_q(double a, double x);

/// log of the binomial coefficient C(n, k), 0 <= k <= n.
double log_binomial(double n, double k);

}  // namespace confball::special
