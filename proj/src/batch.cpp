#include "cubesep/batch.hpp"

#include <exception>

#include "cubesep/analytic.hpp"
#include "cubesep/oracle.hpp"

namespace cubesep::batch {

namespace {

// OpenMP regions must not leak exceptions; capture the first one and rethrow
// after the join. Cheap uniform kernels get static scheduling; the oracle's
// per-point cost varies with the regime, so it is scheduled dynamically.
template <class F>
std::vector<double> map_grid_static(std::span<const double> lambdas, F&& f,
                                    [[maybe_unused]] bool parallel) {
    std::vector<double> out(lambdas.size());
    std::exception_ptr failure = nullptr;
#pragma omp parallel for schedule(static) if (parallel)
    for (long long i = 0; i < static_cast<long long>(lambdas.size()); ++i) {
        try {
            out[static_cast<std::size_t>(i)] = f(lambdas[static_cast<std::size_t>(i)]);
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

template <class F>
std::vector<double> map_grid_dynamic(std::span<const double> lambdas, F&& f,
                                     [[maybe_unused]] bool parallel) {
    std::vector<double> out(lambdas.size());
    std::exception_ptr failure = nullptr;
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long long i = 0; i < static_cast<long long>(lambdas.size()); ++i) {
        try {
            out[static_cast<std::size_t>(i)] = f(lambdas[static_cast<std::size_t>(i)]);
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

double pdf_at(double x) { return analytic::pdf(ScaledLength(x)); }

}  // namespace

std::vector<double> pdf_grid_parallel(std::span<const double> lambdas) {
    return map_grid_static(lambdas, pdf_at, true);
}

std::vector<double> pdf_grid_reference(std::span<const double> lambdas) {
    return map_grid_static(lambdas, pdf_at, false);
}

std::vector<double> oracle_grid_parallel(std::span<const double> lambdas, double tol) {
    return map_grid_dynamic(
        lambdas, [tol](double x) { return oracle::pdf_by_quadrature(ScaledLength(x), tol); },
        true);
}

std::vector<double> oracle_grid_reference(std::span<const double> lambdas, double tol) {
    return map_grid_dynamic(
        lambdas, [tol](double x) { return oracle::pdf_by_quadrature(ScaledLength(x), tol); },
        false);
}

}  // namespace cubesep::batch
