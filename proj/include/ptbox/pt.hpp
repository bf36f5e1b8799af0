#pragma once

#include <string>
#include <utility>

#include "ptbox/core.hpp"
#include "ptbox/spectral.hpp"

namespace ptbox {

enum class PTPhase { Unbroken, Broken };

/// Verdict over a computed spectrum. Unbroken means every |Im E| is within
/// im_tolerance and both index lists are empty. In the broken phase every
/// eigenvalue beyond the tolerance sits in conjugate_pairs or, failing the
/// pairing tolerance, in unpaired_complex (a solver-quality warning).
struct PTClassification {
    PTPhase phase = PTPhase::Unbroken;
    double max_abs_im = 0.0;
    std::vector<std::pair<int, int>> conjugate_pairs;
    std::vector<int> unpaired_complex;
};

/// One point of a parameter sweep; keyed by (a, alpha, B, eta, grid).
/// lowest_levels holds the first six computed eigenvalues. solver_note is
/// empty on success and carries the error text when the point's eigensolve
/// failed (the scan continues past such points).
struct PhaseMapRecord {
    double a = 0.0;
    double alpha = 0.0;
    double B = 0.0;
    double eta = 0.0;
    PTClassification classification;
    std::vector<cplx> lowest_levels;
    std::string solver_note;
};

/// max over delta in (0, half_width] (n_samples uniform points) of
/// |V(center + delta + i eta) - conj(V(center - delta + i eta))|.
/// A value at rounding level (<= 1e-12 at moderate |V|) certifies PT symmetry
/// about `center` under the parity that flips only the real part.
double pt_residual(const PotentialSpec& v, double center, double half_width, double eta,
                   int n_samples);

/// Real and imaginary parts of 2 a^2 csc^2(xi + i eta) - a^2 in split form:
///   Re = a^2 [ 8 (sin^2 xi cosh^2 eta - cos^2 xi sinh^2 eta)
///              / (cos 2xi - cosh 2eta)^2 - 1 ]
///   Im = -4 a^2 sin 2xi sinh 2eta / (cos 2xi - cosh 2eta)^2
/// The real part is even and the imaginary part odd under xi -> -xi.
std::pair<double, double> eq11_real_imag(double xi, double eta, double a);

/// Classification per the type invariants. Eigenvalues with |Im E| within
/// im_tolerance count as real; the rest are greedily matched to the nearest
/// conjugate (j != i) within pair_tolerance.
PTClassification classify(const Spectrum& spectrum, double im_tolerance = 1e-6,
                          double pair_tolerance = 1e-4);

/// Symmetry center of an analytic potential on the real axis: the midpoint
/// of the pole cell containing x = -Re c (trig families), -Re c itself for
/// the hyperbolic family, 0 for constants. Sampled potentials have no
/// analytic center (errc::validation).
double pt_center(const PotentialSpec& v);

/// Sweeps the (a, alpha, B) grid in lexicographic input order; each point
/// discretizes the generalized PT potential (c = 0) on `grid` with its eta
/// replaced by `eta`, solves k_levels eigenpairs, and classifies them.
/// Points are distributed over `workers` threads (0 = hardware concurrency);
/// output order and content are bitwise independent of the worker count.
/// Per-point solver failures are recorded in the record and the scan
/// continues.
std::vector<PhaseMapRecord> phase_scan(const std::vector<double>& a_values,
                                       const std::vector<double>& alpha_values,
                                       const std::vector<double>& B_values, double eta,
                                       const Grid1D& grid, int k_levels, int workers = 0);

}  // namespace ptbox
