#pragma once

#include <optional>

#include "ptbox/core.hpp"

namespace ptbox {

/// Partner potentials V-/V+ = W^2 -/+ W' (lambda = 1) of a superpotential.
struct PartnerPair {
    PotentialSpec v_minus;
    PotentialSpec v_plus;
    SuperpotentialSpec w;
};

enum class NormConvention { unit_l2, unnormalized };

/// Wavefunction samples at the nodes of a grid. The discrete L2 norm carries
/// the spacing weight: ||psi||^2 = h * sum |psi_i|^2.
struct SampledWavefunction {
    Grid1D grid;
    std::vector<cplx> values;
    NormConvention norm_convention = NormConvention::unnormalized;
};

double l2_norm(const SampledWavefunction& psi);

/// Closed-form partner pair per family:
///   Constant{A}           -> V-/V+ = A^2 (both constant)
///   CothShifted/Deformed  -> V- = A^2, V+ = A^2 + 2A^2 csch^2(A(x+c));
///                            for purely imaginary A = ia the partner is
///                            returned as CscSquared{a, c} (same function)
///   GeneralizedCot        -> V-/+ = (a^2 -/+ alpha a) csc^2(alpha(x+c))
///                            - 2iaB cot(alpha(x+c)) - (a^2 + B^2),
///                            collapsed to ConstantV when the x-dependence
///                            vanishes (alpha = +/-a with B = 0, or a = 0)
PartnerPair partner_potentials(const SuperpotentialSpec& w);

/// psi0 = exp(-int W) in closed form per family:
///   Constant{A}           -> exp(-A x)
///   CothShifted/Deformed  -> sinh(A(x + c))
///   GeneralizedCot        -> sin(alpha(x+c))^(a/alpha) * exp(-iBx)
///                            (principal complex power)
/// Throws errc::non_normalizable when |psi0| diverges at the grid edges
/// (generalized-cot with exponent a/alpha <= -1/2 against a wall pole, or a
/// non-finite sample anywhere).
SampledWavefunction ground_state_from_superpotential(
    const SuperpotentialSpec& w, const Grid1D& grid,
    NormConvention norm = NormConvention::unit_l2);

/// Closed-form solution g(x) = -2A e^{2A(x+c)} / (e^{2A(x+c)} - 1) of the
/// deformation equation g' = g^2 + 2Ag for constant base superpotential A.
class DeformationClosedForm {
public:
    DeformationClosedForm(cplx A, cplx c);

    /// g(x); throws errc::singular_point at e^{2A(x+c)} = 1.
    cplx operator()(ComplexCoordinate x) const;

    /// Argument-space distance to the nearest pole A(x+c) = i k pi.
    double pole_distance(ComplexCoordinate x) const;

    cplx A() const { return A_; }
    cplx c() const { return c_; }

private:
    cplx A_;
    cplx c_;
};

DeformationClosedForm deformation_closed_form(cplx A, cplx c);

/// Integrates g' = g^2 + 2 W(x) g with fixed-step RK4 (step = grid spacing)
/// from the anchor (x0, g0) outward in both directions along the contour
/// Im x = grid.eta; x0 is first snapped to the nearest node by one partial
/// step. Throws errc::blow_up (reporting the reach point) when |g| exceeds
/// 1e12 before a grid edge.
SampledWavefunction deformation_numeric(const SuperpotentialSpec& w, double x0, cplx g0,
                                        const Grid1D& grid);

/// lower: A = d/dx + W (maps the minus sector down to the plus sector)
/// raise: At = -d/dx + W
enum class IntertwinerDirection { lower, raise };

/// Applies the intertwining operator with 3-point central differences
/// (2nd-order one-sided stencils at the edges). With an energy supplied the
/// result is scaled by |E|^(-1/2) (errc::zero_energy for |E| < 1e-12);
/// nullopt returns the raw application, which is what annihilation checks
/// need at E0 = 0.
SampledWavefunction apply_intertwiner(IntertwinerDirection direction,
                                      const SuperpotentialSpec& w,
                                      const SampledWavefunction& psi,
                                      std::optional<cplx> energy);

}  // namespace ptbox
