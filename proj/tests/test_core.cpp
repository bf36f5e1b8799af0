#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "ptbox/core.hpp"

using namespace ptbox;

namespace {
constexpr double pi = std::numbers::pi;

// 5-point numeric derivative used as an independent oracle for the closed-form
// derivatives
cplx numeric_derivative(const SuperpotentialSpec& w, ComplexCoordinate x) {
    const double h = 1e-4;
    auto at = [&](double dx) { return eval_superpotential(w, {x.re + dx, x.im}); };
    return (-at(2 * h) + 8.0 * at(h) - 8.0 * at(-h) + at(-2 * h)) / (12.0 * h);
}
}  // namespace

TEST_CASE("grid spacing and node layout") {
    Grid1D dirichlet{0.0, pi, 3, 0.0, true};
    CHECK(dirichlet.spacing() == doctest::Approx(pi / 4).epsilon(1e-15));
    CHECK(dirichlet.x(0) == doctest::Approx(pi / 4));
    CHECK(dirichlet.x(2) == doctest::Approx(3 * pi / 4));
    CHECK(dirichlet.point(1).im == 0.0);

    Grid1D open{0.0, 2.0, 5, 0.3, false};
    CHECK(open.spacing() == doctest::Approx(0.5));
    CHECK(open.x(0) == 0.0);
    CHECK(open.x(4) == doctest::Approx(2.0));
    CHECK(open.point(2).im == 0.3);

    CHECK_THROWS_AS(validate(Grid1D{0.0, 1.0, 2, 0.0, true}), error);
    CHECK_THROWS_AS(validate(Grid1D{1.0, 1.0, 9, 0.0, true}), error);
    CHECK_THROWS_AS(validate(Grid1D{2.0, 1.0, 9, 0.0, true}), error);
}

TEST_CASE("superpotential family values") {
    CHECK(eval_superpotential(Constant{cplx(0.5, 0.0)}, {1.7, -0.3}) == cplx(0.5, 0.0));

    cplx cot_zero = eval_superpotential(GeneralizedCot{1.0, 1.0, 0.0, 0.0}, {pi / 2, 0.0});
    CHECK(std::abs(cot_zero) < 1e-15);

    cplx with_shift = eval_superpotential(GeneralizedCot{1.0, 1.0, 0.5, 0.0}, {pi / 2, 0.0});
    CHECK(with_shift.real() == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(with_shift.imag() == doctest::Approx(0.5));

    cplx deformed_zero = eval_superpotential(Deformed{cplx(0.0, 1.0), 0.0}, {pi / 2, 0.0});
    CHECK(std::abs(deformed_zero) < 1e-14);
}

TEST_CASE("deformed family equals the coth closed form away from poles") {
    for (cplx A : {cplx(0.0, 1.0), cplx(1.0, 0.0), cplx(0.7, 0.3)}) {
        SuperpotentialSpec deformed{Deformed{A, cplx(0.1, -0.2)}};
        SuperpotentialSpec coth{CothShifted{A, cplx(0.1, -0.2)}};
        for (double x : {0.4, 0.9, 1.7, 2.6}) {
            ComplexCoordinate p{x, 0.15};
            if (pole_distance(coth, p) < 0.1) continue;
            CHECK(std::abs(eval_superpotential(deformed, p) - eval_superpotential(coth, p)) <
                  1e-12);
        }
    }
}

TEST_CASE("closed-form superpotential derivatives match a numeric stencil") {
    std::vector<SuperpotentialSpec> specs = {
        Constant{cplx(0.5, 0.2)},
        CothShifted{cplx(1.0, 0.0), cplx(0.2, 0.0)},
        GeneralizedCot{1.0, 2.0, 1.5, cplx(0.0, 0.0)},
        Deformed{cplx(0.0, 1.0), cplx(0.0, 0.0)},
    };
    for (const SuperpotentialSpec& w : specs) {
        for (double x : {0.7, 1.1, 1.3}) {
            ComplexCoordinate p{x, 0.1};
            if (pole_distance(w, p) < 0.3) continue;
            cplx closed = eval_superpotential_derivative(w, p);
            CHECK(std::abs(closed - numeric_derivative(w, p)) < 1e-8);
        }
    }
}

TEST_CASE("potential family values") {
    PotentialSpec well{Analytic{CscSquared{1.0, 0.0}}};
    CHECK(eval_potential(well, {pi / 2, 0.0}).real() == doctest::Approx(1.0));
    CHECK(std::abs(eval_potential(well, {pi / 2, 0.0}).imag()) < 1e-15);

    PotentialSpec flat{Analytic{ConstantV{}, cplx(-1.0, 0.0)}};
    CHECK(eval_potential(flat, {0.123, 4.5}) == cplx(-1.0, 0.0));

    // (a^2 + alpha a) csc^2(pi/2) - 0 - (a^2 + B^2) = 3 - 1.25
    PotentialSpec pt{Analytic{GeneralizedPT{1.0, 2.0, 0.5, 0.0}}};
    cplx v = eval_potential(pt, {pi / 4, 0.0});
    CHECK(v.real() == doctest::Approx(1.75).epsilon(1e-14));
    CHECK(std::abs(v.imag()) < 1e-14);

    PotentialSpec pt_minus{Analytic{GeneralizedPTMinus{2.0, 1.0, 0.0, 0.0}}};
    CHECK(eval_potential(pt_minus, {pi / 2, 0.0}).real() == doctest::Approx(-2.0));
}

TEST_CASE("generalized family reduces to the csc^2 well at alpha = a, B = 0") {
    PotentialSpec general{Analytic{GeneralizedPT{2.0, 2.0, 0.0, cplx(0.3, 0.1)}}};
    PotentialSpec reduced{Analytic{CscSquared{2.0, cplx(0.3, 0.1)}}};
    for (double x : {0.2, 0.55, 0.9, 1.21}) {
        for (double eta : {0.0, 0.25}) {
            ComplexCoordinate p{x, eta};
            if (pole_distance(reduced, p) < 0.1) continue;
            CHECK(std::abs(eval_potential(general, p) - eval_potential(reduced, p)) < 1e-13);
        }
    }
}

TEST_CASE("singularity metadata is sound") {
    PotentialSpec well{Analytic{CscSquared{1.0, 0.0}}};
    CHECK_THROWS_AS((void)eval_potential(well, {pi, 0.0}), error);
    CHECK_NOTHROW((void)eval_potential(well, {pi - 1e-3, 0.0}));

    SuperpotentialSpec coth{CothShifted{cplx(1.0, 0.0), 0.0}};
    CHECK_THROWS_AS((void)eval_superpotential(coth, {0.0, 0.0}), error);
    CHECK_NOTHROW((void)eval_superpotential(coth, {1e-3, 0.0}));

    try {
        (void)eval_potential(well, {2 * pi, 0.0});
        FAIL("expected a singular-point error");
    } catch (const error& e) {
        CHECK(e.code() == errc::singular_point);
    }
}

TEST_CASE("pole distances and singular point enumeration") {
    PotentialSpec well{Analytic{CscSquared{1.0, 0.0}}};
    CHECK(pole_distance(well, {pi / 2, 0.0}) == doctest::Approx(pi / 2));
    CHECK(pole_distance(well, {pi, 0.4}) == doctest::Approx(0.4));

    SuperpotentialSpec cot2{GeneralizedCot{1.0, 2.0, 0.0, 0.0}};
    CHECK(pole_distance(cot2, {pi / 4, 0.0}) == doctest::Approx(pi / 2));

    SuperpotentialSpec flat{Constant{cplx(1.0, 0.0)}};
    CHECK(pole_distance(flat, {0.0, 0.0}) > 1e300);

    std::vector<ComplexCoordinate> poles = singular_points(well, -0.1, 2 * pi + 0.1);
    REQUIRE(poles.size() == 3);
    CHECK(poles[0].re == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(poles[1].re == doctest::Approx(pi));
    CHECK(poles[2].re == doctest::Approx(2 * pi));
    CHECK(singular_points(PotentialSpec{Analytic{ConstantV{}, 0.0}}, -10.0, 10.0).empty());
}

TEST_CASE("sampled potentials interpolate on their contour only") {
    Grid1D grid{0.0, 1.0, 11, 0.2, true};
    std::vector<cplx> values(grid.n);
    for (int i = 0; i < grid.n; ++i) values[i] = cplx(grid.x(i) * grid.x(i), -grid.x(i));
    PotentialSpec sampled{Sampled{grid, values}};

    // node recovery up to rounding, midpoints carry the O(h^2) interp error
    CHECK(std::abs(eval_potential(sampled, {grid.x(3), 0.2}) - values[3]) < 1e-12);
    double mid = 0.5 * (grid.x(4) + grid.x(5));
    double h = grid.spacing();
    CHECK(std::abs(eval_potential(sampled, {mid, 0.2}).real() - mid * mid) < h * h);

    CHECK_THROWS_AS((void)eval_potential(sampled, {2.0, 0.2}), error);
    CHECK_THROWS_AS((void)eval_potential(sampled, {0.5, 0.0}), error);
    try {
        (void)eval_potential(sampled, {grid.x(0) - 0.5 * h, 0.2});
        FAIL("expected out-of-range");
    } catch (const error& e) {
        CHECK(e.code() == errc::out_of_range);
    }
}

TEST_CASE("family parameter validation") {
    CHECK_THROWS_AS((void)eval_superpotential(GeneralizedCot{1.0, 0.0, 0.0, 0.0}, {1.0, 0.0}),
                    error);
    CHECK_THROWS_AS((void)eval_superpotential(Deformed{cplx(0.0, 0.0), 0.0}, {1.0, 0.0}), error);
    CHECK_THROWS_AS((void)eval_potential(PotentialSpec{Analytic{CscSquared{0.0, 0.0}}}, {1.0, 0.0}),
                    error);
}
