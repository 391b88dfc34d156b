#pragma once

#include <functional>
#include <vector>

#include "cubesep/domain.hpp"

namespace cubesep::oracle {

// Direction angles in the first octant: phi is the azimuth, theta the polar
// angle measured from the z = 0 plane. Both restricted to [0, pi/2] by the
// octant symmetry of the cube.
class AngularPoint {
  public:
    AngularPoint(double theta, double phi);

    double theta() const { return theta_; }
    double phi() const { return phi_; }

  private:
    double theta_;
    double phi_;
};

// Side lengths of the box of admissible segment endpoints, in units of the
// cube side. A negative side means the direction/length combination leaves
// the cube and the integrand vanishes there.
struct BoxSides {
    double lx;
    double ly;
    double lz;
};

BoxSides box_sides(double lambda, double theta, double phi);

// One theta-slab of the angular integration domain; the azimuthal bounds may
// depend on theta.
struct RegionSpec {
    double theta_lo;
    double theta_hi;
    std::function<double(double)> phi_lo;
    std::function<double(double)> phi_hi;

    bool contains(double theta, double phi, double tol = 1e-12) const;
};

// Joint angular density k * lx * ly * lz * lambda^2 * cos(theta) with k = 8
// at side 1; zero whenever any box side is nonpositive.
double integrand(ScaledLength lambda, const AngularPoint& point);

// Angular integration regions for the given scaled separation. Exact 0 and
// sqrt3 are degenerate (the sphere cap has measure zero) and are rejected.
std::vector<RegionSpec> regions_for(ScaledLength lambda);

// The density evaluated directly from the angular construction by nested
// adaptive quadrature (inner phi, outer theta), to absolute accuracy tol.
// This is the independent check of the closed-form branches.
double pdf_by_quadrature(ScaledLength lambda, double tol);

}  // namespace cubesep::oracle
