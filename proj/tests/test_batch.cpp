#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "cubesep/batch.hpp"
#include "cubesep/domain.hpp"

using namespace cubesep;

namespace {

std::vector<double> make_grid(int n) {
    std::vector<double> grid(n);
    for (int i = 0; i < n; ++i) grid[i] = kSqrt3 * (i + 0.5) / n;
    return grid;
}

}  // namespace

TEST_CASE("parallel pdf grid is bit-identical to the serial reference") {
    const auto grid = make_grid(5000);
    const auto par = batch::pdf_grid_parallel(grid);
    const auto ref = batch::pdf_grid_reference(grid);
    CHECK(par == ref);
}

TEST_CASE("parallel oracle grid is bit-identical to the serial reference") {
    const auto grid = make_grid(12);
    const auto par = batch::oracle_grid_parallel(grid, 1e-8);
    const auto ref = batch::oracle_grid_reference(grid, 1e-8);
    CHECK(par == ref);
}

TEST_CASE("domain errors escape the parallel region intact") {
    const std::vector<double> bad = {0.5, 2.5, 0.7};
    CHECK_THROWS_AS(batch::pdf_grid_parallel(bad), std::domain_error);
    CHECK_THROWS_AS(batch::pdf_grid_reference(bad), std::domain_error);
    CHECK_THROWS_AS(batch::oracle_grid_parallel(bad, 1e-8), std::domain_error);
}

TEST_CASE("empty grids are fine") {
    CHECK(batch::pdf_grid_parallel(std::vector<double>{}).empty());
    CHECK(batch::pdf_grid_reference(std::vector<double>{}).empty());
}
