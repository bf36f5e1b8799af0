#pragma once

#include <string>

#include "ptbox/core.hpp"
#include "ptbox/susy.hpp"

namespace ptbox {

/// Infinite well between two points of the complex coordinate plane.
struct ComplexBox {
    ComplexCoordinate endpoint1;
    ComplexCoordinate endpoint2;
};

/// Outcome of the separation-of-variables boundary analysis. A box is
/// admissible exactly when its endpoints share an imaginary part (the
/// imaginary-direction index m is forced to 0: with real separation
/// constants, exp(K~ dx_im) = exp(i 2 m pi) has no other real solution).
/// k_real lists the allowed real wavenumbers K_n = n pi / |dx_re|.
struct AdmissibilityVerdict {
    bool admissible = false;
    int m_index = 0;
    std::vector<double> k_real;
    std::string reason;
};

/// E_n = (n pi / L)^2 for n = 1..n_max (lambda = 1).
std::vector<double> box_spectrum(double length, int n_max);

/// The quantized well widths L_kappa = kappa pi / a.
std::vector<double> quantized_widths(double a, const std::vector<int>& kappa_list);

/// Decision procedure for the complex box: errc::degenerate_box when the
/// endpoints coincide within tolerance; otherwise admissible iff the
/// imaginary parts agree within tolerance. Reports the first 10 allowed
/// wavenumbers when admissible.
AdmissibilityVerdict complex_box_admissibility(const ComplexBox& box, double tolerance = 1e-9);

/// Box modes on the contour at height eta: psi_n(x_re) =
/// sin(n pi (x_re - x_min) / L) with x_min = 0, unit-L2 samples. The
/// imaginary-direction factor is constant on the admissible branch and is
/// absorbed into normalization, so the samples are eta-independent.
std::vector<SampledWavefunction> complex_box_modes(double length, double eta, int n_max,
                                                   int grid_n);

}  // namespace ptbox
