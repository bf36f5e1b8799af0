#include "ptbox/box.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace ptbox {

namespace {
constexpr double pi = std::numbers::pi;
constexpr int verdict_level_count = 10;
}  // namespace

std::vector<double> box_spectrum(double length, int n_max) {
    require(length > 0.0, errc::validation, "box length must be positive");
    require(n_max >= 1, errc::validation, "box spectrum requires n_max >= 1");
    std::vector<double> out;
    out.reserve(n_max);
    for (int n = 1; n <= n_max; ++n) {
        // same expression shape as the admissibility wavenumbers so the
        // two agree bitwise
        double k = n * pi / length;
        out.push_back(k * k);
    }
    return out;
}

std::vector<double> quantized_widths(double a, const std::vector<int>& kappa_list) {
    require(a != 0.0, errc::validation, "quantized widths require a != 0");
    std::vector<double> out;
    out.reserve(kappa_list.size());
    for (int kappa : kappa_list) {
        require(kappa >= 1, errc::validation, "width index kappa must be >= 1");
        out.push_back(kappa * pi / a);
    }
    return out;
}

AdmissibilityVerdict complex_box_admissibility(const ComplexBox& box, double tolerance) {
    require(tolerance > 0.0, errc::validation, "tolerance must be positive");
    double d_re = box.endpoint2.re - box.endpoint1.re;
    double d_im = box.endpoint2.im - box.endpoint1.im;
    if (std::hypot(d_re, d_im) <= tolerance) {
        fail(errc::degenerate_box, "box endpoints coincide");
    }

    AdmissibilityVerdict verdict;
    verdict.m_index = 0;  // no real solution admits m != 0
    if (std::abs(d_im) < tolerance) {
        verdict.admissible = true;
        double width = std::abs(d_re);
        verdict.k_real.reserve(verdict_level_count);
        for (int n = 1; n <= verdict_level_count; ++n) {
            verdict.k_real.push_back(n * pi / width);
        }
        verdict.reason = "endpoints share an imaginary part; the box is parallel to the real axis";
    } else {
        verdict.admissible = false;
        std::ostringstream msg;
        msg << "imaginary parts differ by " << d_im
            << "; exp(K (dx_im)) = exp(i 2 m pi) with real K has no solution except m = 0, "
               "dx_im = 0";
        verdict.reason = msg.str();
    }
    return verdict;
}

std::vector<SampledWavefunction> complex_box_modes(double length, double eta, int n_max,
                                                   int grid_n) {
    require(length > 0.0, errc::validation, "box length must be positive");
    require(n_max >= 1, errc::validation, "mode count must be >= 1");
    Grid1D grid{0.0, length, grid_n, eta, true};
    validate(grid);

    std::vector<SampledWavefunction> modes;
    modes.reserve(n_max);
    for (int n = 1; n <= n_max; ++n) {
        SampledWavefunction psi{grid, std::vector<cplx>(grid_n), NormConvention::unit_l2};
        for (int i = 0; i < grid_n; ++i) {
            psi.values[i] = std::sin(n * pi * (grid.x(i) - grid.x_min) / length);
        }
        double nrm = l2_norm(psi);
        for (cplx& v : psi.values) v /= nrm;
        modes.push_back(std::move(psi));
    }
    return modes;
}

}  // namespace ptbox
