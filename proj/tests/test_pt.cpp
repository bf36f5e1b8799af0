#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "ptbox/pt.hpp"

using namespace ptbox;

namespace {
constexpr double pi = std::numbers::pi;

Spectrum spectrum_of(std::vector<cplx> values) {
    Spectrum s;
    s.eigenvalues = std::move(values);
    return s;
}
}  // namespace

TEST_CASE("pt residual certifies symmetry about the well center") {
    CHECK(pt_residual(Analytic{CscSquared{1.0, 0.0}}, pi / 2, 1.2, 0.3, 200) < 1e-12);
    CHECK(pt_residual(Analytic{GeneralizedPT{1.0, 1.0, 0.7, 0.0}}, pi / 2, 1.2, 0.0, 200) < 1e-12);
    CHECK(pt_residual(Analytic{GeneralizedPT{2.0, 2.0, 1.5, 0.0}}, pt_center(Analytic{GeneralizedPT{2.0, 2.0, 1.5, 0.0}}),
                      pi / 4 - 0.05, 0.25, 300) < 1e-10);

    // a linear sampled potential is maximally asymmetric: residual = 2 delta_max
    Grid1D grid{-1.0, 1.0, 401, 0.0, true};
    Sampled linear{grid, std::vector<cplx>(grid.n)};
    for (int i = 0; i < grid.n; ++i) linear.values[i] = grid.x(i);
    CHECK(pt_residual(linear, 0.0, 0.5, 0.0, 200) == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS((void)pt_residual(Analytic{ConstantV{}}, 0.0, 0.0, 0.0, 10), error);
}

TEST_CASE("split real/imaginary form of the complexified well") {
    auto [re0, im0] = eq11_real_imag(pi / 2, 0.0, 1.0);
    CHECK(re0 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(im0 == 0.0);

    // even/odd parity in xi holds bitwise (libm sin/cos sign symmetry)
    for (int j = 1; j <= 100; ++j) {
        double xi = 0.03 * j + 0.11;
        double eta = 0.4 + 0.007 * j;
        auto [re_p, im_p] = eq11_real_imag(xi, eta, 1.3);
        auto [re_m, im_m] = eq11_real_imag(-xi, eta, 1.3);
        CHECK(re_m == re_p);
        CHECK(im_m == -im_p);
    }

    // split form agrees with direct complex evaluation
    cplx u(pi / 4, 0.5);
    cplx direct = 2.0 / (std::sin(u) * std::sin(u)) - 1.0;
    auto [re, im] = eq11_real_imag(pi / 4, 0.5, 1.0);
    CHECK(std::abs(re - direct.real()) < 1e-13);
    CHECK(std::abs(im - direct.imag()) < 1e-13);

    CHECK_THROWS_AS((void)eq11_real_imag(pi, 0.0, 1.0), error);
}

TEST_CASE("phase classification of a spectrum") {
    PTClassification real_case = classify(spectrum_of({{1.0, 0.0}, {4.0, 0.0}, {9.0, 0.0}}));
    CHECK(real_case.phase == PTPhase::Unbroken);
    CHECK(real_case.max_abs_im == 0.0);
    CHECK(real_case.conjugate_pairs.empty());
    CHECK(real_case.unpaired_complex.empty());

    // solver-level imaginary noise stays unbroken; the tolerance is strict
    CHECK(classify(spectrum_of({{1.0, 1e-9}, {4.0, -3e-10}})).phase == PTPhase::Unbroken);
    CHECK(classify(spectrum_of({{1.0, 1e-6}})).phase == PTPhase::Unbroken);
    CHECK(classify(spectrum_of({{1.0, 1.0001e-6}})).phase == PTPhase::Broken);

    PTClassification paired =
        classify(spectrum_of({{1.0, 0.0}, {2.0, 0.1}, {2.0, -0.1}}));
    CHECK(paired.phase == PTPhase::Broken);
    CHECK(paired.max_abs_im == doctest::Approx(0.1));
    REQUIRE(paired.conjugate_pairs.size() == 1);
    CHECK(paired.conjugate_pairs[0].first == 1);
    CHECK(paired.conjugate_pairs[0].second == 2);
    CHECK(paired.unpaired_complex.empty());

    PTClassification lone =
        classify(spectrum_of({{1.0, 0.0}, {2.0, 0.1}, {5.0, -0.1}}));
    CHECK(lone.phase == PTPhase::Broken);
    CHECK(lone.conjugate_pairs.empty());
    CHECK(lone.unpaired_complex == std::vector<int>{1, 2});

    // conjugating the whole spectrum cannot change the verdict
    PTClassification flipped =
        classify(spectrum_of({{1.0, 0.0}, {2.0, -0.1}, {2.0, 0.1}}));
    CHECK(flipped.phase == paired.phase);
    CHECK(flipped.conjugate_pairs == paired.conjugate_pairs);

    CHECK_THROWS_AS((void)classify(spectrum_of({})), error);
}

TEST_CASE("symmetry centers of the analytic families") {
    CHECK(pt_center(Analytic{ConstantV{}}) == 0.0);
    CHECK(pt_center(Analytic{CscSquared{1.0, 0.0}}) == doctest::Approx(pi / 2).epsilon(1e-15));
    CHECK(pt_center(Analytic{CscSquared{1.0, cplx(0.3, 0.0)}}) ==
          doctest::Approx(pi / 2 - 0.3).epsilon(1e-14));
    CHECK(pt_center(Analytic{GeneralizedPT{1.0, 2.0, 0.5, 0.0}}) ==
          doctest::Approx(pi / 4).epsilon(1e-15));
    CHECK(pt_center(Analytic{SinhInvSquared{cplx(1.0, 0.0), cplx(0.2, 0.1)}}) ==
          doctest::Approx(-0.2).epsilon(1e-14));

    Grid1D grid{0.0, 1.0, 11, 0.0, true};
    Sampled sampled{grid, std::vector<cplx>(grid.n, cplx(1.0, 0.0))};
    CHECK_THROWS_AS((void)pt_center(PotentialSpec{sampled}), error);
}

TEST_CASE("phase scan over the self-partner line is unbroken") {
    for (double a : {0.5, 1.0, 2.0}) {
        Grid1D grid{0.0, pi / a, 501, 0.0, true};
        std::vector<PhaseMapRecord> recs = phase_scan({a}, {a}, {0.0}, 0.0, grid, 4, 1);
        REQUIRE(recs.size() == 1);
        CHECK(recs[0].solver_note.empty());
        CHECK(recs[0].classification.phase == PTPhase::Unbroken);
    }
}

TEST_CASE("scan point reproduces the partner-well ladder") {
    Grid1D grid{0.0, pi, 1001, 0.0, true};
    std::vector<PhaseMapRecord> recs = phase_scan({1.0}, {1.0}, {0.0}, 0.0, grid, 6, 1);
    REQUIRE(recs.size() == 1);
    REQUIRE(recs[0].lowest_levels.size() == 6);
    const double exact[] = {3.0, 8.0, 15.0, 24.0, 35.0, 48.0};
    for (int i = 0; i < 6; ++i) {
        CHECK(std::abs(recs[0].lowest_levels[i] - exact[i]) / exact[i] < 5e-3);
    }
}

TEST_CASE("scan records a per-point failure and keeps going") {
    // alpha = 2 puts a potential pole exactly on an interior node at pi/2
    Grid1D grid{0.0, pi, 1001, 0.0, true};
    std::vector<PhaseMapRecord> recs = phase_scan({1.0}, {1.0, 2.0}, {0.0}, 0.0, grid, 4, 2);
    REQUIRE(recs.size() == 2);
    CHECK(recs[0].solver_note.empty());
    CHECK_FALSE(recs[0].lowest_levels.empty());
    CHECK_FALSE(recs[1].solver_note.empty());
    CHECK(recs[1].solver_note.find("singular") != std::string::npos);
    CHECK(recs[1].lowest_levels.empty());
}

TEST_CASE("scan output does not depend on the worker count") {
    Grid1D grid{0.0, pi, 301, 0.0, true};
    std::vector<PhaseMapRecord> one = phase_scan({1.0}, {1.0}, {0.0, 1.0}, 0.0, grid, 4, 1);
    std::vector<PhaseMapRecord> three = phase_scan({1.0}, {1.0}, {0.0, 1.0}, 0.0, grid, 4, 3);
    REQUIRE(one.size() == three.size());
    for (size_t i = 0; i < one.size(); ++i) {
        CHECK(one[i].a == three[i].a);
        CHECK(one[i].B == three[i].B);
        CHECK(one[i].classification.phase == three[i].classification.phase);
        CHECK(one[i].classification.max_abs_im == three[i].classification.max_abs_im);
        REQUIRE(one[i].lowest_levels.size() == three[i].lowest_levels.size());
        for (size_t j = 0; j < one[i].lowest_levels.size(); ++j) {
            CHECK(one[i].lowest_levels[j] == three[i].lowest_levels[j]);
        }
    }

    CHECK_THROWS_AS((void)phase_scan({}, {1.0}, {0.0}, 0.0, grid, 4, 1), error);
}
