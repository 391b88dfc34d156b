#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "cubesep/analytic.hpp"
#include "cubesep/domain.hpp"

using namespace cubesep;
namespace an = cubesep::analytic;

namespace {

// Term-by-term antiderivative of the near branch, an oracle for the CDF that
// is independent of the quadrature path.
double near_cdf_exact(double x) {
    const double x3 = x * x * x;
    return 4.0 * kPi / 3.0 * x3 - 1.5 * kPi * x3 * x + 1.6 * x3 * x * x -
           x3 * x3 / 6.0;
}

}  // namespace

TEST_CASE("scaled length construction enforces the domain") {
    CHECK_THROWS_AS(ScaledLength(-0.1), std::domain_error);
    CHECK_THROWS_AS(ScaledLength(kSqrt3 + 1e-9), std::domain_error);
    CHECK_THROWS_AS(ScaledLength(std::nan("")), std::domain_error);
    CHECK(ScaledLength(0.0).value() == 0.0);
    CHECK(ScaledLength(kSqrt3).value() == kSqrt3);
}

TEST_CASE("classify partitions the domain with boundaries on the lower branch") {
    CHECK(classify(ScaledLength(0.0)) == Regime::Near);
    CHECK(classify(ScaledLength(0.5)) == Regime::Near);
    CHECK(classify(ScaledLength(1.0)) == Regime::Near);
    CHECK(classify(ScaledLength(1.2)) == Regime::Mid);
    CHECK(classify(ScaledLength(kSqrt2)) == Regime::Mid);
    CHECK(classify(ScaledLength(1.5)) == Regime::Far);  // 1.5 > sqrt2
    CHECK(classify(ScaledLength(kSqrt3)) == Regime::Far);
}

TEST_CASE("pdf endpoint and boundary values") {
    CHECK(an::pdf(ScaledLength(0.0)) == 0.0);
    CHECK(an::pdf(ScaledLength(kSqrt3)) == 0.0);
    CHECK(an::pdf(ScaledLength(1.0)) == doctest::Approx(7.0 - 2.0 * kPi).epsilon(1e-12));
    // Direct substitution into the near branch at lambda = 1/2.
    CHECK(an::pdf(ScaledLength(0.5)) ==
          doctest::Approx(0.25 * (kPi + 1.875)).epsilon(1e-14));
}

TEST_CASE("adjacent branch formulas agree at the regime boundaries") {
    CHECK(std::fabs(an::near_branch(1.0) - an::mid_branch(1.0)) < 1e-9);
    CHECK(std::fabs(an::mid_branch(kSqrt2) - an::far_branch(kSqrt2)) < 1e-9);
}

TEST_CASE("pdf is nonnegative on a dense grid") {
    const int n = 10000;
    for (int i = 0; i <= n; ++i) {
        const double x = kSqrt3 * (static_cast<double>(i) / n);
        CHECK(an::pdf(ScaledLength(x)) >= 0.0);
    }
}

TEST_CASE("cdf endpoints and the near-regime antiderivative oracle") {
    CHECK(an::cdf(ScaledLength(0.0)) == 0.0);
    CHECK(std::fabs(an::cdf(ScaledLength(kSqrt3)) - 1.0) < 1e-8);
    for (const double x : {0.25, 0.5, 0.75, 1.0})
        CHECK(std::fabs(an::cdf(ScaledLength(x)) - near_cdf_exact(x)) < 1e-9);
    // Mass below the first boundary in closed form: 43/30 - pi/6.
    CHECK(std::fabs(an::cdf(ScaledLength(1.0)) - (43.0 / 30.0 - kPi / 6.0)) < 1e-9);
    CHECK(std::fabs(an::cdf(ScaledLength(kSqrt2)) - 0.999606512771) < 1e-9);
}

TEST_CASE("cdf is monotone on random pairs") {
    std::mt19937_64 gen(20260808);
    std::uniform_real_distribution<double> u(0.0, kSqrt3);
    for (int i = 0; i < 300; ++i) {
        double a = u(gen), b = u(gen);
        if (a > b) std::swap(a, b);
        CHECK(an::cdf(ScaledLength(a)) <= an::cdf(ScaledLength(b)));
    }
}

TEST_CASE("quantile endpoints, domain errors and round trip") {
    CHECK_THROWS_AS(an::quantile(-0.01), std::domain_error);
    CHECK_THROWS_AS(an::quantile(1.01), std::domain_error);
    CHECK(an::quantile(0.0).value() == 0.0);
    CHECK(an::quantile(1.0).value() == kSqrt3);
    for (int i = 1; i <= 99; ++i) {
        const double p = i / 100.0;
        const double x = an::quantile(p).value();
        CHECK(std::fabs(an::cdf(ScaledLength(x)) - p) < 1e-8);
    }
}

TEST_CASE("moments: normalization, mean, and the exact second moment") {
    CHECK(std::fabs(an::moment(0) - 1.0) < 1e-8);
    // Mean separation of the unit cube in closed form.
    const double mean = (4.0 + 17.0 * kSqrt2 - 6.0 * kSqrt3 - 7.0 * kPi +
                         21.0 * std::log(1.0 + kSqrt2) + 42.0 * std::log(2.0 + kSqrt3)) /
                        105.0;
    CHECK(std::fabs(an::moment(1) - mean) < 1e-9);
    // E|A-B|^2 = 3 E(dx^2) = 3/6, independent of the density formulas.
    CHECK(std::fabs(an::moment(2) - 0.5) < 1e-8);
    CHECK(an::moment(8) > 0.0);
    CHECK_THROWS_AS(an::moment(-1), std::domain_error);
    CHECK_THROWS_AS(an::moment(9), std::domain_error);
}

TEST_CASE("regime masses partition the distribution") {
    const auto m = an::regime_masses();
    CHECK(std::fabs(m.near + m.mid + m.far - 1.0) < 1e-8);
    CHECK(std::fabs(m.near - (43.0 / 30.0 - kPi / 6.0)) < 1e-9);
    CHECK(std::fabs(m.mid - 0.089871955036) < 1e-9);
    CHECK(std::fabs(m.far - 3.93487229e-4) < 1e-9);
}

TEST_CASE("tail expansion is extracted, not assumed") {
    const auto tail = an::tail_expansion();
    CHECK(tail.exponent == 5);
    CHECK(std::fabs(tail.coefficient - 1.8) < 1e-10);
}

TEST_CASE("series and direct evaluation agree at the tail switchover") {
    // pdf switches from the printed far branch to the endpoint series 0.05
    // away from sqrt3; the two evaluations must splice seamlessly.
    const double sw = kSqrt3 - 0.05;
    const double below = an::pdf(ScaledLength(sw - 1e-8));  // direct branch
    const double above = an::pdf(ScaledLength(sw + 1e-8));  // series branch
    CHECK(std::fabs(below - above) < 1e-11);
    CHECK(below > above);  // the density decreases toward the diagonal
}

TEST_CASE("tail check precondition and convergence") {
    CHECK_THROWS_AS(an::tail_check(0.0), std::domain_error);
    CHECK_THROWS_AS(an::tail_check(-0.01), std::domain_error);
    CHECK_THROWS_AS(an::tail_check(0.06), std::domain_error);

    const auto f1 = an::tail_check(0.01);
    const auto f2 = an::tail_check(0.001);
    CHECK(f1.relative_error < 0.02);
    CHECK(f2.relative_error < 0.002);
    CHECK(f2.relative_error < f1.relative_error);  // residual shrinks with epsilon
    CHECK(f1.fitted_coefficient == doctest::Approx(1.8).epsilon(0.02));
}

TEST_CASE("derivative probe validates its stencil") {
    CHECK_THROWS_AS(an::derivative_probe(ScaledLength(0.5), 3, 1e-4), std::domain_error);
    CHECK_THROWS_AS(an::derivative_probe(ScaledLength(0.5), 1, 1e-7), std::domain_error);
    CHECK_THROWS_AS(an::derivative_probe(ScaledLength(0.5), 1, 0.1), std::domain_error);
    CHECK_THROWS_AS(an::derivative_probe(ScaledLength(0.0), 1, 1e-4), std::domain_error);
    // Stencil would cross the lower boundary.
    CHECK_THROWS_AS(an::derivative_probe(ScaledLength(1e-5), 1, 1e-2), std::domain_error);
    CHECK_THROWS_AS(an::derivative_probe(ScaledLength(kSqrt3 - 1e-5), 2, 1e-2),
                    std::domain_error);
}

TEST_CASE("derivative probe matches the hand derivative in smooth territory") {
    // d/dx of the near branch at 1/2: 8 pi x - 18 pi x^2 + 32 x^3 - 5 x^4.
    const double x = 0.5;
    const double exact = 8.0 * kPi * x - 18.0 * kPi * x * x + 32.0 * x * x * x -
                         5.0 * x * x * x * x;
    const auto d = an::derivative_probe(ScaledLength(x), 1, 1e-4);
    CHECK(d.left == doctest::Approx(exact).epsilon(1e-6));
    CHECK(d.right == doctest::Approx(exact).epsilon(1e-6));
}

TEST_CASE("first derivative is continuous across both boundaries") {
    for (const double x : {1.0, kSqrt2}) {
        for (const double h : {1e-3, 1e-4, 1e-5}) {
            const auto d = an::derivative_probe(ScaledLength(x), 1, h);
            CHECK(std::fabs(d.right - d.left) < 10.0 * h);
        }
    }
}

TEST_CASE("second derivative jumps at 1 and not at sqrt2") {
    const auto gap = [](double x, double h) {
        const auto d = an::derivative_probe(ScaledLength(x), 2, h);
        return d.right - d.left;
    };
    const double j3 = gap(1.0, 1e-3);
    const double j4 = gap(1.0, 1e-4);
    CHECK(std::fabs(j4) > 1.0);
    CHECK(std::fabs(j3 - j4) < 0.05 * std::fabs(j4));  // stable as h shrinks
    CHECK(std::fabs(gap(kSqrt2, 1e-3)) < 0.05);
    CHECK(std::fabs(gap(kSqrt2, 1e-4)) < 0.05);
}

TEST_CASE("side-aware entry points apply the scaling rule") {
    CHECK(an::pdf_scaled(0.5, 1.0) == an::pdf(ScaledLength(0.5)));
    CHECK(an::pdf_scaled(1.0, 2.0) ==
          doctest::Approx(an::pdf(ScaledLength(0.5)) / 2.0).epsilon(1e-15));
    CHECK(std::fabs(an::cdf_scaled(2.0 * kSqrt3, 2.0) - 1.0) < 1e-8);
    CHECK_THROWS_AS(an::pdf_scaled(0.5, 0.0), std::domain_error);
    CHECK_THROWS_AS(an::pdf_scaled(0.5, -1.0), std::domain_error);
    CHECK_THROWS_AS(an::pdf_scaled(3.0, 1.0), std::domain_error);
}

TEST_CASE("cdf_prefix agrees with pointwise cdf and rejects bad input") {
    std::vector<double> grid;
    for (int i = 0; i <= 40; ++i) grid.push_back(kSqrt3 * i / 40.0);
    const auto swept = an::cdf_prefix(grid);
    REQUIRE(swept.size() == grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        CHECK(std::fabs(swept[i] - an::cdf(ScaledLength(grid[i]))) < 1e-9);

    CHECK_THROWS_AS(an::cdf_prefix(std::vector<double>{0.5, 0.4}), std::invalid_argument);
    CHECK_THROWS_AS(an::cdf_prefix(std::vector<double>{-0.1}), std::invalid_argument);
    CHECK_THROWS_AS(an::cdf_prefix(std::vector<double>{2.0}), std::invalid_argument);
}
