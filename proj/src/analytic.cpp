#include "cubesep/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "cubesep/jet.hpp"
#include "cubesep/quadrature.hpp"

namespace cubesep::analytic {

namespace {

// Distance from sqrt3 below which the far branch is evaluated through the
// endpoint series. Direct evaluation there cancels O(10) terms down to
// O(eps^5) and keeps no significant digits.
constexpr double kTailSwitch = 0.05;
constexpr int kTailOrder = 16;

// Guard for radicands at the regime edges: rounding may drive them a hair
// negative; anything beyond dust is a formula misuse.
double sqrt_guarded(double x) {
    if (x < 0.0) {
        if (x < -1e-14)
            throw std::logic_error("negative radicand " + detail::short_double(x) +
                                   " outside rounding dust");
        x = 0.0;
    }
    return std::sqrt(x);
}

double arcsec(double x) { return std::acos(1.0 / x); }

struct TailSeries {
    std::array<double, kTailOrder + 1> coeff;  // coefficient of eps^k, eps = sqrt3 - lambda

    double eval(double eps) const {
        double acc = 0.0;
        for (int k = kTailOrder; k >= 5; --k) acc = acc * eps + coeff[k];
        return acc * eps * eps * eps * eps * eps;
    }
};

// Expand the far branch around lambda = sqrt3 with jet arithmetic mirroring
// the closed form. The density vanishes there to fourth order; the series
// evaluates the fifth-order tail without cancellation.
TailSeries build_tail_series() {
    using J = Jet<kTailOrder>;
    const J lam = J::variable(kSqrt3, -1.0);  // lambda = sqrt3 - eps
    const J one = J::constant(1.0);
    const J l2 = lam * lam;
    const J l2p1 = l2 + one;
    const J root = sqrt(l2 - J::constant(2.0));
    const J asec_a = acos(one / (l2 - one));
    const J asec_b = acos(one / sqrt(l2 - one));
    const J bracket = 8.0 * (l2p1 * root) - l2p1 * (l2 + J::constant(5.0)) +
                      2.0 * kPi * (3.0 * l2 - 4.0 * lam + J::constant(3.0)) +
                      24.0 * (lam * asec_a) - 24.0 * (l2p1 * asec_b);
    const J p = lam * bracket;

    TailSeries s;
    s.coeff = p.c;
    // The expansion must start at eps^5; anything below is cancellation
    // residue and must be negligible.
    for (int k = 0; k < 5; ++k)
        if (std::fabs(s.coeff[k]) > 1e-10)
            throw std::logic_error("tail series: unexpected eps^" + std::to_string(k) +
                                   " coefficient " + std::to_string(s.coeff[k]));
    return s;
}

const TailSeries& tail_series() {
    static const TailSeries s = build_tail_series();
    return s;
}

// Branch dispatch on an already validated lambda.
double pdf_value(double x) {
    double v;
    if (x <= 1.0) {
        v = near_branch(x);
    } else if (x <= kSqrt2) {
        v = mid_branch(x);
    } else if (kSqrt3 - x < kTailSwitch) {
        v = tail_series().eval(kSqrt3 - x);
    } else {
        v = far_branch(x);
    }
    if (v < 0.0)
        throw std::logic_error("pdf: branch returned negative value " + std::to_string(v) +
                               " at lambda = " + std::to_string(x));
    return v;
}

// Integration breakpoints of the piecewise density.
constexpr int kMaxSegments = 3;

// Integrate f over [0, x] split at the regime boundaries, absolute
// tolerance tol in total.
template <class F>
double integrate_split(F&& f, double x, double tol) {
    const double cuts[kMaxSegments + 1] = {0.0, 1.0, kSqrt2, kSqrt3};
    double total = 0.0;
    const double seg_tol = tol / kMaxSegments;
    for (int s = 0; s < kMaxSegments; ++s) {
        const double lo = cuts[s];
        const double hi = std::min(x, cuts[s + 1]);
        if (hi <= lo) break;
        total += integrate_adaptive(f, lo, hi, seg_tol).value;
    }
    return total;
}

double cdf_value(double x) {
    return integrate_split([](double t) { return pdf_value(t); }, x, 1e-10);
}

}  // namespace

double near_branch(double x) {
    return x * x * (4.0 * kPi - 6.0 * kPi * x + 8.0 * x * x - x * x * x);
}

double mid_branch(double x) {
    const double root = sqrt_guarded(x * x - 1.0);
    return x * (2.0 * x * x * x * x + 6.0 * x * x - 1.0 - 2.0 * kPi * (4.0 * x - 3.0) -
                8.0 * (2.0 * x * x + 1.0) * root + 24.0 * x * x * std::acos(1.0 / x));
}

double far_branch(double x) {
    const double x2 = x * x;
    const double root = sqrt_guarded(x2 - 2.0);
    return x * (8.0 * (x2 + 1.0) * root - (x2 + 1.0) * (x2 + 5.0) +
                2.0 * kPi * (3.0 * x2 - 4.0 * x + 3.0) + 24.0 * x * arcsec(x2 - 1.0) -
                24.0 * (x2 + 1.0) * arcsec(std::sqrt(x2 - 1.0)));
}

TailExpansion tail_expansion() {
    const TailSeries& s = tail_series();
    return {s.coeff[5], 5};
}

double pdf(ScaledLength lambda) { return pdf_value(lambda.value()); }

double cdf(ScaledLength lambda) { return cdf_value(lambda.value()); }

ScaledLength quantile(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::domain_error("quantile: p = " + std::to_string(p) + " outside [0, 1]");
    if (p == 0.0) return ScaledLength(0.0);
    if (p == 1.0) return ScaledLength(kSqrt3);

    // Bracketed bisection with a secant (Illinois-style) accelerator on the
    // monotone CDF. Terminates once the bracket is below 1e-10.
    double lo = 0.0, hi = kSqrt3;
    double flo = -p, fhi = 1.0 - p;
    for (int it = 0; it < 200 && hi - lo > 1e-10; ++it) {
        double mid;
        if (it % 2 == 0 && fhi > flo) {
            mid = lo - flo * (hi - lo) / (fhi - flo);  // secant step
            const double margin = 0.01 * (hi - lo);
            mid = std::clamp(mid, lo + margin, hi - margin);
        } else {
            mid = 0.5 * (lo + hi);
        }
        const double fmid = cdf_value(mid) - p;
        if (fmid < 0.0) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
            fhi = fmid;
        }
    }
    return ScaledLength(0.5 * (lo + hi));
}

double moment(int n) {
    if (n < 0 || n > 8)
        throw std::domain_error("moment: order " + std::to_string(n) + " outside [0, 8]");
    return integrate_split([n](double t) { return std::pow(t, n) * pdf_value(t); }, kSqrt3,
                           1e-10);
}

RegimeMasses regime_masses() {
    const double at_one = cdf_value(1.0);
    const double at_sqrt2 = cdf_value(kSqrt2);
    return {at_one, at_sqrt2 - at_one, 1.0 - at_sqrt2};
}

TailFit tail_check(double epsilon) {
    if (!(epsilon > 0.0 && epsilon <= 0.05))
        throw std::domain_error("tail_check: epsilon = " + detail::short_double(epsilon) +
                                " outside (0, 0.05]");
    const double p = pdf_value(kSqrt3 - epsilon);
    const double fitted = p / (epsilon * epsilon * epsilon * epsilon * epsilon);
    const double expected = 1.8;
    return {fitted, std::fabs(fitted - expected) / expected};
}

DerivativeProbe derivative_probe(ScaledLength lambda, int order, double h) {
    if (order != 1 && order != 2)
        throw std::domain_error("derivative_probe: order must be 1 or 2");
    if (!(h >= 1e-6 && h <= 1e-2))
        throw std::domain_error("derivative_probe: h = " + detail::short_double(h) +
                                " outside [1e-6, 1e-2]");
    const double x = lambda.value();
    if (!(x > 0.0 && x < kSqrt3))
        throw std::domain_error("derivative_probe: lambda must be interior to (0, sqrt3)");
    const int reach = (order == 1) ? 2 : 3;
    if (x - reach * h < 0.0 || x + reach * h > kSqrt3)
        throw std::domain_error("derivative_probe: stencil crosses the domain boundary");

    const auto f = [](double t) { return pdf_value(t); };
    DerivativeProbe probe{};
    if (order == 1) {
        // Second-order one-sided first derivative.
        probe.left = (3.0 * f(x) - 4.0 * f(x - h) + f(x - 2.0 * h)) / (2.0 * h);
        probe.right = (-3.0 * f(x) + 4.0 * f(x + h) - f(x + 2.0 * h)) / (2.0 * h);
    } else {
        // Second-order one-sided second derivative.
        probe.left = (2.0 * f(x) - 5.0 * f(x - h) + 4.0 * f(x - 2.0 * h) - f(x - 3.0 * h)) /
                     (h * h);
        probe.right = (2.0 * f(x) - 5.0 * f(x + h) + 4.0 * f(x + 2.0 * h) - f(x + 3.0 * h)) /
                      (h * h);
    }
    return probe;
}

double pdf_scaled(double l, double a) {
    if (!(a > 0.0)) throw std::domain_error("pdf_scaled: side length must be positive");
    return pdf(ScaledLength(l / a)) / a;
}

double cdf_scaled(double l, double a) {
    if (!(a > 0.0)) throw std::domain_error("cdf_scaled: side length must be positive");
    return cdf(ScaledLength(l / a));
}

std::vector<double> cdf_prefix(std::span<const double> sorted_lambdas) {
    std::vector<double> out;
    out.reserve(sorted_lambdas.size());
    double acc = 0.0;
    double pos = 0.0;
    const auto f = [](double t) { return pdf_value(t); };
    for (const double x : sorted_lambdas) {
        if (!(x >= pos))
            throw std::invalid_argument("cdf_prefix: sequence not ascending or out of range");
        if (!(x <= kSqrt3)) throw std::invalid_argument("cdf_prefix: value beyond sqrt3");
        // March the running integral forward, never across a regime boundary.
        for (const double cut : {1.0, kSqrt2}) {
            if (pos < cut && x > cut) {
                acc += integrate_adaptive(f, pos, cut, 1e-13, 64).value;
                pos = cut;
            }
        }
        acc += integrate_adaptive(f, pos, x, 1e-13, 64).value;
        pos = x;
        out.push_back(acc);
    }
    return out;
}

}  // namespace cubesep::analytic
