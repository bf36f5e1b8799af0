#pragma once

#include <complex>
#include <variant>
#include <vector>

#include "ptbox/errors.hpp"

namespace ptbox {

using cplx = std::complex<double>;

/// Unit convention: lambda = hbar/sqrt(2m) is fixed to 1, so H = -d2/dx2 + V
/// and energies carry units of inverse length squared.
inline constexpr double lambda_unit = 1.0;

/// Argument-space distance to a pole lattice below which evaluation counts
/// as singular.
inline constexpr double pole_tolerance = 1e-12;

/// Point x = re + i*im in the complex coordinate plane.
struct ComplexCoordinate {
    double re = 0.0;
    double im = 0.0;

    cplx value() const { return cplx(re, im); }
};

// --- superpotential families -------------------------------------------------
//
// W(x) on complex x, lambda = 1 throughout.

struct Constant {
    cplx A;  // W(x) = A
};

struct CothShifted {
    cplx A;  // W(x) = -A coth(A(x + c))
    cplx c;
};

struct GeneralizedCot {
    double a;     // W(x) = -a cot(alpha(x + c)) + iB
    double alpha; // must be nonzero
    double B;
    cplx c;
};

struct Deformed {
    cplx A;  // W(x) = A + g(x), g the isospectral deformation; A must be nonzero
    cplx c;
};

using SuperpotentialSpec = std::variant<Constant, CothShifted, GeneralizedCot, Deformed>;

// --- grids -------------------------------------------------------------------

/// Uniform grid on [x_min, x_max] along the horizontal contour Im x = eta.
/// With endpoints excluded (the Dirichlet convention) the n nodes are
/// x_min + h, ..., x_max - h with h = (x_max - x_min)/(n + 1).
struct Grid1D {
    double x_min = 0.0;
    double x_max = 0.0;
    int n = 0;
    double eta = 0.0;
    bool endpoints_excluded = true;

    double spacing() const {
        return (x_max - x_min) / (endpoints_excluded ? n + 1 : n - 1);
    }
    double x(int i) const {
        return x_min + (endpoints_excluded ? i + 1 : i) * spacing();
    }
    ComplexCoordinate point(int i) const { return {x(i), eta}; }
};

/// Throws errc::validation unless x_min < x_max and n >= 3.
void validate(const Grid1D& grid);

bool same_grid(const Grid1D& lhs, const Grid1D& rhs);

// --- analytic potential families ----------------------------------------------
//
// Each family value is listed next to its tag; the Analytic wrapper adds a
// complex offset (default 0). ConstantV has no intrinsic value, the offset IS
// the constant.

struct ConstantV {};

struct CscSquared {
    double a;  // 2 a^2 csc^2(a(x + c)) - a^2 ; a must be nonzero
    cplx c;
};

struct SinhInvSquared {
    cplx A;  // A^2 + 2 A^2 sinh^-2(A(x + c)) ; A must be nonzero
    cplx c;
};

struct GeneralizedPT {
    double a;     // (a^2 + alpha a) csc^2(alpha(x + c)) - 2iaB cot(alpha(x + c)) - (a^2 + B^2)
    double alpha; // must be nonzero
    double B;
    cplx c;
};

/// Companion of GeneralizedPT on the other partner sector: the csc^2
/// coefficient flips from (a^2 + alpha a) to (a^2 - alpha a). Needed because
/// that sector is not reachable by reparametrizing GeneralizedPT when
/// alpha = a or B != 0.
struct GeneralizedPTMinus {
    double a;     // (a^2 - alpha a) csc^2(alpha(x + c)) - 2iaB cot(alpha(x + c)) - (a^2 + B^2)
    double alpha; // must be nonzero
    double B;
    cplx c;
};

using AnalyticFamily =
    std::variant<ConstantV, CscSquared, SinhInvSquared, GeneralizedPT, GeneralizedPTMinus>;

struct Analytic {
    AnalyticFamily family;
    cplx offset{0.0, 0.0};
};

/// Grid-sampled potential; values live at the grid nodes on the contour
/// Im x = grid.eta. Evaluation interpolates linearly between nodes and is
/// only defined on [first node, last node].
struct Sampled {
    Grid1D grid;
    std::vector<cplx> values;
};

using PotentialSpec = std::variant<Analytic, Sampled>;

// --- evaluation ----------------------------------------------------------------

/// W(x). Throws errc::singular_point within pole_tolerance of a pole of the
/// family, errc::validation on invalid family parameters.
cplx eval_superpotential(const SuperpotentialSpec& spec, ComplexCoordinate x);

/// dW/dx in closed form per family (the Deformed derivative uses the
/// defining first-order equation g' = g^2 + 2Ag).
cplx eval_superpotential_derivative(const SuperpotentialSpec& spec, ComplexCoordinate x);

/// V(x). Same singularity contract; Sampled specs throw errc::out_of_range
/// outside their node span or off their contour.
cplx eval_potential(const PotentialSpec& spec, ComplexCoordinate x);

/// Distance from x to the nearest singularity of the family, measured in the
/// argument plane of the defining cot/coth/csc (infinite for pole-free
/// families). This is the metadata behind the singular_point contract.
double pole_distance(const SuperpotentialSpec& spec, ComplexCoordinate x);
double pole_distance(const PotentialSpec& spec, ComplexCoordinate x);

/// Singular points of an analytic potential whose real part lies in
/// [x_lo, x_hi]; empty for pole-free families. Sampled specs have none.
std::vector<ComplexCoordinate> singular_points(const PotentialSpec& spec, double x_lo,
                                               double x_hi);

}  // namespace ptbox
