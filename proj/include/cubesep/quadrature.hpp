#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubesep/errors.hpp"

namespace cubesep {

namespace detail {
inline std::string short_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}
}  // namespace detail

struct QuadResult {
    double value;
    double error;  // accumulated error bound
    int panels;
};

namespace detail {

// 15-point Kronrod rule with embedded 7-point Gauss rule (QUADPACK dqk15
// abscissae and weights). Positive abscissae only; the rule is symmetric.
inline constexpr double kKronrodNodes[7] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898};
inline constexpr double kKronrodWeights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
// Gauss weights for nodes 1, 3, 5 of the table above plus the centre.
inline constexpr double kGaussWeights[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Panel {
    double value;
    double error;
    double lo;
    double hi;
};

template <class F>
Panel g7k15(F& f, double lo, double hi) {
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);

    const double fc = f(mid);
    double resk = kKronrodWeights[7] * fc;
    double resg = kGaussWeights[3] * fc;
    double resabs = kKronrodWeights[7] * std::fabs(fc);
    double fv[14];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kKronrodNodes[j];
        fv[2 * j] = f(mid - dx);
        fv[2 * j + 1] = f(mid + dx);
        const double sum = fv[2 * j] + fv[2 * j + 1];
        resk += kKronrodWeights[j] * sum;
        resabs += kKronrodWeights[j] * (std::fabs(fv[2 * j]) + std::fabs(fv[2 * j + 1]));
        if (j % 2 == 1) resg += kGaussWeights[j / 2] * sum;
    }

    // QUADPACK error model: scale |K15 - G7| by the oscillation resasc.
    const double reskh = resk * 0.5;
    double resasc = kKronrodWeights[7] * std::fabs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += kKronrodWeights[j] *
                  (std::fabs(fv[2 * j] - reskh) + std::fabs(fv[2 * j + 1] - reskh));
    resabs *= std::fabs(half);
    resasc *= std::fabs(half);

    double err = std::fabs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr double tiny = std::numeric_limits<double>::min();
    if (resabs > tiny / (50.0 * eps)) err = std::max(err, 50.0 * eps * resabs);

    return {resk * half, err, lo, hi};
}

}  // namespace detail

// Adaptive Gauss-Kronrod integration to an absolute error target. Splits the
// worst panel first. Throws quadrature_error (carrying the best estimate and
// the achieved error bound) if the panel budget runs out. An empty or
// inverted interval integrates to zero.
template <class F>
QuadResult integrate_adaptive(F&& f, double lo, double hi, double abs_tol,
                              int max_panels = 4000) {
    if (!(abs_tol > 0.0)) throw std::domain_error("integrate_adaptive: abs_tol must be > 0");
    if (!(hi > lo)) return {0.0, 0.0, 0};

    std::vector<detail::Panel> heap;
    auto by_error = [](const detail::Panel& a, const detail::Panel& b) {
        return a.error < b.error;
    };
    heap.push_back(detail::g7k15(f, lo, hi));
    double total_error = heap.front().error;
    int panels = 1;

    auto total_value = [&heap] {
        double v = 0.0;
        for (const auto& p : heap) v += p.value;
        return v;
    };

    while (total_error > abs_tol) {
        if (panels + 1 > max_panels)
            throw quadrature_error("integrate_adaptive: tolerance " +
                                       detail::short_double(abs_tol) + " not reached within " +
                                       std::to_string(max_panels) + " panels",
                                   total_value(), total_error);
        std::pop_heap(heap.begin(), heap.end(), by_error);
        const detail::Panel worst = heap.back();
        heap.pop_back();

        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(worst.lo < mid && mid < worst.hi))
            throw quadrature_error("integrate_adaptive: interval too small to split further",
                                   total_value() + worst.value, total_error);
        detail::Panel left = detail::g7k15(f, worst.lo, mid);
        detail::Panel right = detail::g7k15(f, mid, worst.hi);
        total_error += left.error + right.error - worst.error;
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end(), by_error);
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end(), by_error);
        ++panels;
    }

    return {total_value(), total_error, panels};
}

}  // namespace cubesep
