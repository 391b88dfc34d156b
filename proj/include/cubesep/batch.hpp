#pragma once

#include <span>
#include <vector>

#include "cubesep/domain.hpp"

namespace cubesep::batch {

// Pointwise evaluation of the closed-form density over a grid of scaled
// lengths. The _parallel kernels split the grid across OpenMP threads; the
// _reference kernels are the serial implementations kept for testing. Both
// produce bit-identical results: every point is an independent pure call.
std::vector<double> pdf_grid_parallel(std::span<const double> lambdas);
std::vector<double> pdf_grid_reference(std::span<const double> lambdas);

// Same split for the quadrature oracle, which is far more expensive per
// point.
std::vector<double> oracle_grid_parallel(std::span<const double> lambdas, double tol);
std::vector<double> oracle_grid_reference(std::span<const double> lambdas, double tol);

}  // namespace cubesep::batch
