#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace cubesep {

inline constexpr double kPi = 3.14159265358979323846;
inline const double kSqrt2 = std::sqrt(2.0);
// Diagonal of the unit cube; the largest possible scaled separation.
inline const double kSqrt3 = std::sqrt(3.0);

// Scaled separation lambda = l / a of two points inside a cube of side a.
// All internal formulas work at a = 1; the side-aware entry points rescale
// at the boundary. Construction enforces 0 <= lambda <= sqrt(3).
class ScaledLength {
  public:
    explicit ScaledLength(double lambda) : lambda_(lambda) {
        if (!(lambda >= 0.0 && lambda <= kSqrt3))
            throw std::domain_error("ScaledLength: lambda = " + std::to_string(lambda) +
                                    " outside [0, sqrt(3)]");
    }

    double value() const { return lambda_; }

  private:
    double lambda_;
};

// The three intervals of lambda on which the density has a distinct closed
// form, set by how the sphere of radius l intersects the cube.
enum class Regime { Near, Mid, Far };

// Near: [0, 1]; Mid: (1, sqrt2]; Far: (sqrt2, sqrt3]. Boundary values go to
// the lower branch; the density is continuous there so the choice is
// observationally irrelevant, but a deterministic rule is required.
inline Regime classify(ScaledLength lambda) {
    const double x = lambda.value();
    if (x <= 1.0) return Regime::Near;
    if (x <= kSqrt2) return Regime::Mid;
    return Regime::Far;
}

inline const char* regime_name(Regime r) {
    switch (r) {
        case Regime::Near: return "near";
        case Regime::Mid: return "mid";
        case Regime::Far: return "far";
    }
    return "?";
}

}  // namespace cubesep
