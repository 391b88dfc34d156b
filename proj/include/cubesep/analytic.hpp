#pragma once

#include <span>
#include <vector>

#include "cubesep/domain.hpp"

namespace cubesep::analytic {

// Raw closed-form branches of the dimensionless density a*P(l) as functions
// of lambda = l/a. Exposed so continuity can be checked on the formulas
// themselves at the regime boundaries. far_branch is the closed form as
// printed; within ~0.05 of sqrt(3) it loses all significance to cancellation
// and pdf() switches to the endpoint series instead.
double near_branch(double lambda);  // valid on [0, 1]
double mid_branch(double lambda);   // valid on [1, sqrt2]
double far_branch(double lambda);   // valid on [sqrt2, sqrt3]

// Leading behaviour of the density at the diagonal endpoint:
// a*P ~ coefficient * (sqrt3 - lambda)^exponent. The values are extracted
// from the series expansion of the far branch, not hard-coded.
struct TailExpansion {
    double coefficient;
    int exponent;
};
TailExpansion tail_expansion();

// Dimensionless density a*P at lambda. Finite, nonnegative; continuous with
// continuous first derivative across the regime boundaries.
double pdf(ScaledLength lambda);

// P(separation <= lambda), by adaptive quadrature of pdf with panels split at
// the regime boundaries; absolute tolerance 1e-10.
double cdf(ScaledLength lambda);

// Inverse CDF by bracketed bisection/secant; lambda resolved to < 1e-9.
ScaledLength quantile(double p);

// n-th raw moment of the scaled separation, 0 <= n <= 8.
double moment(int n);

struct RegimeMasses {
    double near;  // P(lambda <= 1)
    double mid;   // P(1 < lambda <= sqrt2)
    double far;   // P(lambda > sqrt2)
};
RegimeMasses regime_masses();

// Ratio fit of the endpoint law: evaluates pdf at sqrt3 - epsilon and
// compares pdf/epsilon^5 with the expected leading coefficient.
struct TailFit {
    double fitted_coefficient;
    double relative_error;
};
TailFit tail_check(double epsilon);

// One-sided finite-difference estimates of the first or second derivative of
// pdf, from the left and from the right. Second-order stencils; used to probe
// smoothness at the regime boundaries.
struct DerivativeProbe {
    double left;
    double right;
};
DerivativeProbe derivative_probe(ScaledLength lambda, int order, double h);

// Side-aware surface: density of the separation l of two uniform points in a
// cube of side a, in units of 1/a. P_a(l) = P_1(l/a) / a.
double pdf_scaled(double l, double a);
double cdf_scaled(double l, double a);

// CDF evaluated along an ascending sequence in a single integration sweep.
// Much cheaper than independent cdf() calls when the sequence is long; the
// accumulated quadrature error stays below 1e-8 across the whole sweep.
std::vector<double> cdf_prefix(std::span<const double> sorted_lambdas);

}  // namespace cubesep::analytic
