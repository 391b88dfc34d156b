#include "cubesep/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "cubesep/quadrature.hpp"

namespace cubesep::oracle {

namespace {

constexpr double kHalfPi = kPi / 2.0;

// acos/asin with the argument clamped against rounding dust at region
// corners, where expressions like 1/(lambda*cos(theta)) graze 1.
double acos_clamped(double x) {
    if (std::fabs(x) > 1.0 + 1e-12)
        throw std::logic_error("acos_clamped: argument " + std::to_string(x) +
                               " beyond clamping dust");
    return std::acos(std::clamp(x, -1.0, 1.0));
}

double asin_clamped(double x) {
    if (std::fabs(x) > 1.0 + 1e-12)
        throw std::logic_error("asin_clamped: argument " + std::to_string(x) +
                               " beyond clamping dust");
    return std::asin(std::clamp(x, -1.0, 1.0));
}

double integrand_value(double lambda, double theta, double phi) {
    const BoxSides s = box_sides(lambda, theta, phi);
    if (s.lx <= 0.0 || s.ly <= 0.0 || s.lz <= 0.0) return 0.0;
    return 8.0 * s.lx * s.ly * s.lz * lambda * lambda * std::cos(theta);
}

}  // namespace

AngularPoint::AngularPoint(double theta, double phi) : theta_(theta), phi_(phi) {
    if (!(theta >= 0.0 && theta <= kHalfPi && phi >= 0.0 && phi <= kHalfPi))
        throw std::domain_error("AngularPoint: angles outside the first octant");
}

BoxSides box_sides(double lambda, double theta, double phi) {
    const double ct = std::cos(theta);
    return {1.0 - lambda * ct * std::cos(phi), 1.0 - lambda * ct * std::sin(phi),
            1.0 - lambda * std::sin(theta)};
}

bool RegionSpec::contains(double theta, double phi, double tol) const {
    if (theta < theta_lo - tol || theta > theta_hi + tol) return false;
    const double t = std::clamp(theta, theta_lo, theta_hi);
    return phi >= phi_lo(t) - tol && phi <= phi_hi(t) + tol;
}

double integrand(ScaledLength lambda, const AngularPoint& point) {
    return integrand_value(lambda.value(), point.theta(), point.phi());
}

std::vector<RegionSpec> regions_for(ScaledLength lambda) {
    const double x = lambda.value();
    if (!(x > 0.0 && x < kSqrt3))
        throw std::domain_error("regions_for: degenerate region at lambda = " +
                                std::to_string(x));

    const auto constant = [](double v) {
        return [v](double) { return v; };
    };
    // Azimuth bounds cut by the circles on the faces x = a and y = a.
    const auto phi1 = [x](double theta) { return acos_clamped(1.0 / (x * std::cos(theta))); };
    const auto phi2 = [x](double theta) { return asin_clamped(1.0 / (x * std::cos(theta))); };

    std::vector<RegionSpec> regions;
    if (x <= 1.0) {
        // The sphere cap lies inside the cube for every direction.
        regions.push_back({0.0, kHalfPi, constant(0.0), constant(kHalfPi)});
    } else if (x <= kSqrt2) {
        const double theta_cut = acos_clamped(1.0 / x);
        // Region I: the full azimuth range survives.
        regions.push_back({theta_cut, asin_clamped(1.0 / x), constant(0.0), constant(kHalfPi)});
        // Region II: azimuth pinched between the face circles.
        regions.push_back({0.0, theta_cut, phi1, phi2});
    } else {
        regions.push_back(
            {acos_clamped(kSqrt2 / x), asin_clamped(1.0 / x), phi1, phi2});
    }
    return regions;
}

double pdf_by_quadrature(ScaledLength lambda, double tol) {
    if (!(tol >= 1e-12 && tol <= 1e-4))
        throw std::domain_error("pdf_by_quadrature: tol = " + detail::short_double(tol) +
                                " outside [1e-12, 1e-4]");
    const double x = lambda.value();
    const std::vector<RegionSpec> regions = regions_for(lambda);

    double total = 0.0;
    const double region_tol = tol / static_cast<double>(regions.size());
    for (const RegionSpec& r : regions) {
        const double span = std::max(r.theta_hi - r.theta_lo, 1e-6);
        // Half the region budget goes to the outer rule; the inner integrals
        // are resolved finely enough that their accumulated error stays
        // within the other half.
        const double outer_tol = region_tol / 2.0;
        const double inner_tol = std::max(region_tol / (4.0 * span), 1e-14);
        const auto theta_slice = [&](double theta) {
            const auto f = [&](double phi) { return integrand_value(x, theta, phi); };
            return integrate_adaptive(f, r.phi_lo(theta), r.phi_hi(theta), inner_tol).value;
        };
        total += integrate_adaptive(theta_slice, r.theta_lo, r.theta_hi, outer_tol).value;
    }
    return total;
}

}  // namespace cubesep::oracle
