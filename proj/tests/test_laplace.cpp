#include <cmath>

#include "doctest.h"

#include "convchar/laplace.hpp"

using namespace convchar;

namespace {

// Closed forms on [0, inf).
double laplace_exp(double a, double y) { return 1.0 / (a + y); }
// x^2 (1-x)^2 on [0,1]: reference by composite Simpson with a fine step.
double laplace_poly_reference(double y) {
    const int n = 20000;
    const double h = 1.0 / n;
    double acc = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double x = i * h;
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        acc += w * std::exp(-y * x) * x * x * (1 - x) * (1 - x);
    }
    return acc * h / 3.0;
}

}  // namespace

TEST_SUITE("laplace") {

TEST_CASE("grid construction") {
    const HalfLineGrid g(0.5, 5);
    CHECK(g.horizon() == 2.0);
    CHECK(g.node(3) == 1.5);
    CHECK(g.weight(0) == 0.25);
    CHECK(g.weight(2) == 0.5);
    CHECK(g.weight(4) == 0.25);
    CHECK(HalfLineGrid::from_horizon(0.01, 20).count() == 2001);
    CHECK(HalfLineGrid::from_horizon(0.3, 1.0).count() == 4);
    CHECK_THROWS_AS(HalfLineGrid(0.0, 5), std::invalid_argument);
    CHECK_THROWS_AS(HalfLineGrid(-1.0, 5), std::invalid_argument);
    CHECK_THROWS_AS(HalfLineGrid(0.1, 1), std::invalid_argument);
}

TEST_CASE("test functions") {
    CHECK(TestFunction::parse("exp")(1.0) == doctest::Approx(std::exp(-1.0)));
    CHECK(TestFunction::parse("exp:2.5")(1.0) == doctest::Approx(std::exp(-2.5)));
    CHECK(TestFunction::parse("const")(123.0) == 1.0);
    CHECK(TestFunction::parse("zero")(0.0) == 0.0);
    CHECK(TestFunction::parse("poly-cutoff")(0.5) == doctest::Approx(0.0625));
    CHECK(TestFunction::parse("poly-cutoff")(1.5) == 0.0);
    CHECK_THROWS_AS(TestFunction::parse("sin"), std::invalid_argument);
    CHECK_THROWS_AS(TestFunction::parse("exp:-1"), std::invalid_argument);
    CHECK_THROWS_AS(TestFunction::parse("exp:abc"), std::invalid_argument);
    CHECK(TestFunction::builtins().size() == 3);
}

TEST_CASE("laplace_transform against closed forms") {
    const auto grid = HalfLineGrid::from_horizon(0.001, 40.0);
    for (double y : {0.5, 1.0, 2.0, 5.0}) {
        CHECK(std::abs(laplace_transform(TestFunction::parse("exp").sample(grid), y) - laplace_exp(1, y)) <= 1e-6);
        CHECK(std::abs(laplace_transform(TestFunction::parse("const").sample(grid), y) - 1.0 / y) <= 1e-6);
        CHECK(std::abs(laplace_transform(TestFunction::parse("poly-cutoff").sample(grid), y) -
                       laplace_poly_reference(y)) <= 1e-8);
    }
    CHECK_THROWS_AS(laplace_transform(GridSignal(grid), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(laplace_transform(GridSignal(grid), -1.0), std::invalid_argument);
}

TEST_CASE("laplace_convolution against a closed form") {
    // (e^{-x} * e^{-x})(x) = x e^{-x}
    const auto grid = HalfLineGrid::from_horizon(0.001, 10.0);
    const auto e = TestFunction::parse("exp").sample(grid);
    const auto c = laplace_convolution(e, e);
    CHECK(c[0] == complex(0.0));
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.count(); ++i) {
        const double x = grid.node(i);
        worst = std::max(worst, std::abs(c[i] - x * std::exp(-x)));
    }
    CHECK(worst <= 1e-6);

    // With constants: (1 * 1)(x) = x, exact for the trapezoid rule.
    const auto one = TestFunction::parse("const").sample(grid);
    const auto lin = laplace_convolution(one, one);
    for (std::size_t i = 0; i < grid.count(); i += 997) CHECK(lin[i].real() == doctest::Approx(grid.node(i)));

    CHECK_THROWS_AS(laplace_convolution(e, GridSignal(HalfLineGrid(0.01, 3))), std::invalid_argument);
}

TEST_CASE("identity residual shrinks with the step, at second order") {
    const auto f = TestFunction::parse("exp");
    const std::vector<double> y{0.5, 1.0, 2.0};
    const double r1 = laplace_identity_residual(f, f, y, 0.01, 30.0);
    const double r2 = laplace_identity_residual(f, f, y, 0.005, 30.0);
    CHECK(r1 / r2 >= 3.0);
    CHECK(r1 / r2 <= 5.0);
    CHECK(laplace_identity_residual(f, f, y, 0.001, 30.0) <= 1e-5);
}

TEST_CASE("convergence study tables") {
    const auto f = TestFunction::parse("exp");
    const auto g = TestFunction::parse("poly-cutoff");
    const std::vector<double> y{0.5, 1.0, 2.0};
    const auto study = convergence_study(f, g, y, {0.02, 0.01, 0.005}, 30.0, {30.0, 60.0});
    REQUIRE(study.by_step.size() == 3);
    CHECK(study.by_step[0].ratio.has_value());
    CHECK(study.by_step[1].ratio.has_value());
    CHECK_FALSE(study.by_step[2].ratio.has_value());
    CHECK(study.by_step[0].residual_by_y.size() == 3);
    for (const auto& row : study.by_step) CHECK(row.residual > 0.0);
    CHECK(*study.by_step[0].order == doctest::Approx(std::log2(*study.by_step[0].ratio)));
    REQUIRE(study.by_horizon.size() == 2);

    // A short horizon truncates e^{-x}, and doubling it shrinks the truncation error.
    const auto shortr = convergence_study(f, f, y, {0.01}, 2.0, {2.0, 4.0});
    CHECK(shortr.by_horizon[1].residual < shortr.by_horizon[0].residual);

    const auto zero = convergence_study(TestFunction::parse("zero"), f, y, {0.01}, 10.0);
    CHECK(zero.by_step[0].residual == 0.0);
}

}  // TEST_SUITE
