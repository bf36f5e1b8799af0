#include "ptbox/susy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace ptbox {

namespace {

constexpr double blow_up_threshold = 1e12;

// |Re A| negligible against |A|: treat A as purely imaginary ia so the
// hyperbolic partner can be reported in its trigonometric csc^2 form.
bool purely_imaginary(cplx A) { return std::abs(A.real()) <= 1e-14 * std::abs(A); }

cplx stable_sinh(cplx u) { return std::sinh(u); }

}  // namespace

double l2_norm(const SampledWavefunction& psi) {
    double sum = 0.0;
    for (cplx v : psi.values) sum += std::norm(v);
    return std::sqrt(psi.grid.spacing() * sum);
}

PartnerPair partner_potentials(const SuperpotentialSpec& w) {
    return std::visit(
        [&](const auto& s) -> PartnerPair {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Constant>) {
                Analytic both{ConstantV{}, s.A * s.A};
                return {PotentialSpec{both}, PotentialSpec{both}, w};
            } else if constexpr (std::is_same_v<T, CothShifted> || std::is_same_v<T, Deformed>) {
                // W = -A coth(A(x+c)) (the deformed family is the same
                // function by the Bernoulli closed form), so
                // V- = A^2 and V+ = A^2 + 2A^2 csch^2.
                require(s.A != cplx(0.0, 0.0), errc::validation,
                        "partner construction requires A != 0");
                Analytic v_minus{ConstantV{}, s.A * s.A};
                if (purely_imaginary(s.A)) {
                    Analytic v_plus{CscSquared{s.A.imag(), s.c}, cplx(0.0, 0.0)};
                    return {PotentialSpec{v_minus}, PotentialSpec{v_plus}, w};
                }
                Analytic v_plus{SinhInvSquared{s.A, s.c}, cplx(0.0, 0.0)};
                return {PotentialSpec{v_minus}, PotentialSpec{v_plus}, w};
            } else if constexpr (std::is_same_v<T, GeneralizedCot>) {
                require(s.alpha != 0.0, errc::validation,
                        "generalized-cot family requires alpha != 0");
                double coeff_minus = s.a * s.a - s.alpha * s.a;
                double coeff_plus = s.a * s.a + s.alpha * s.a;
                cplx constant = -(s.a * s.a + s.B * s.B);
                auto make = [&](double coeff, bool plus) -> PotentialSpec {
                    if (coeff == 0.0 && s.a * s.B == 0.0) {
                        return Analytic{ConstantV{}, constant};
                    }
                    if (plus) return Analytic{GeneralizedPT{s.a, s.alpha, s.B, s.c}, cplx(0.0)};
                    return Analytic{GeneralizedPTMinus{s.a, s.alpha, s.B, s.c}, cplx(0.0)};
                };
                return {make(coeff_minus, false), make(coeff_plus, true), w};
            } else {
                fail(errc::unsupported_family, "partner_potentials: unknown family");
            }
        },
        w);
}

SampledWavefunction ground_state_from_superpotential(const SuperpotentialSpec& w,
                                                     const Grid1D& grid, NormConvention norm) {
    validate(grid);
    SampledWavefunction psi{grid, std::vector<cplx>(grid.n), norm};

    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Constant>) {
                for (int i = 0; i < grid.n; ++i) {
                    psi.values[i] = std::exp(-s.A * grid.point(i).value());
                }
            } else if constexpr (std::is_same_v<T, CothShifted> || std::is_same_v<T, Deformed>) {
                require(s.A != cplx(0.0, 0.0), errc::validation,
                        "ground state requires A != 0");
                for (int i = 0; i < grid.n; ++i) {
                    psi.values[i] = stable_sinh(s.A * (grid.point(i).value() + s.c));
                }
            } else if constexpr (std::is_same_v<T, GeneralizedCot>) {
                require(s.alpha != 0.0, errc::validation,
                        "generalized-cot family requires alpha != 0");
                double exponent = s.a / s.alpha;
                if (exponent <= -0.5) {
                    // sin^(2p) is non-integrable at a wall pole for p <= -1/2;
                    // report divergence when the grid actually touches one.
                    double edge_window = 2.0 * std::abs(s.alpha) * grid.spacing();
                    double d_lo = pole_distance(w, grid.point(0));
                    double d_hi = pole_distance(w, grid.point(grid.n - 1));
                    if (std::min(d_lo, d_hi) < edge_window) {
                        std::ostringstream msg;
                        msg << "ground state sin^p with p = " << exponent
                            << " diverges at a grid-edge pole";
                        fail(errc::non_normalizable, msg.str());
                    }
                }
                for (int i = 0; i < grid.n; ++i) {
                    cplx x = grid.point(i).value();
                    cplx u = s.alpha * (x + s.c);
                    psi.values[i] = std::exp(exponent * std::log(std::sin(u)) -
                                             cplx(0.0, s.B) * x);
                }
            }
        },
        w);

    for (cplx v : psi.values) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            fail(errc::non_normalizable, "ground state sample is non-finite");
        }
    }
    if (norm == NormConvention::unit_l2) {
        double nrm = l2_norm(psi);
        require(nrm > 0.0, errc::non_normalizable, "ground state has zero norm");
        for (cplx& v : psi.values) v /= nrm;
    }
    return psi;
}

DeformationClosedForm::DeformationClosedForm(cplx A, cplx c) : A_(A), c_(c) {
    require(A != cplx(0.0, 0.0), errc::validation, "deformation requires A != 0");
}

cplx DeformationClosedForm::operator()(ComplexCoordinate x) const {
    double dist = pole_distance(x);
    if (dist <= pole_tolerance) {
        fail(errc::singular_point, "deformation g(x) evaluated at a pole of e^{2A(x+c)} = 1");
    }
    cplx u = 2.0 * A_ * (x.value() + c_);
    if (u.real() > 0.0) return -2.0 * A_ / (1.0 - std::exp(-u));
    cplx eu = std::exp(u);
    return -2.0 * A_ * eu / (eu - 1.0);
}

double DeformationClosedForm::pole_distance(ComplexCoordinate x) const {
    cplx u = A_ * (x.value() + c_);
    double k = std::round(u.imag() / std::numbers::pi);
    return std::hypot(u.real(), u.imag() - k * std::numbers::pi);
}

DeformationClosedForm deformation_closed_form(cplx A, cplx c) {
    return DeformationClosedForm(A, c);
}

namespace {

// One RK4 step of g' = g^2 + 2 W g along the contour Im x = eta.
cplx rk4_step(const SuperpotentialSpec& w, double eta, double x, cplx g, double step) {
    auto f = [&](double xr, cplx gv) {
        cplx wv = eval_superpotential(w, {xr, eta});
        return gv * gv + 2.0 * wv * gv;
    };
    cplx k1 = f(x, g);
    cplx k2 = f(x + 0.5 * step, g + 0.5 * step * k1);
    cplx k3 = f(x + 0.5 * step, g + 0.5 * step * k2);
    cplx k4 = f(x + step, g + step * k3);
    return g + (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

[[noreturn]] void report_blow_up(double x) {
    std::ostringstream msg;
    msg << "deformation integration exceeded |g| = " << blow_up_threshold << " at x = " << x;
    fail(errc::blow_up, msg.str());
}

}  // namespace

SampledWavefunction deformation_numeric(const SuperpotentialSpec& w, double x0, cplx g0,
                                        const Grid1D& grid) {
    validate(grid);
    require(std::isfinite(g0.real()) && std::isfinite(g0.imag()), errc::validation,
            "deformation anchor value must be finite");
    require(x0 >= grid.x_min && x0 <= grid.x_max, errc::validation,
            "deformation anchor x0 must lie inside the grid");

    const double h = grid.spacing();
    int i0 = static_cast<int>(std::lround((x0 - grid.x(0)) / h));
    i0 = std::clamp(i0, 0, grid.n - 1);

    SampledWavefunction g{grid, std::vector<cplx>(grid.n), NormConvention::unnormalized};

    // partial step from the anchor onto the nearest node
    double snap = grid.x(i0) - x0;
    cplx g_node = (snap == 0.0) ? g0 : rk4_step(w, grid.eta, x0, g0, snap);
    if (std::abs(g_node) > blow_up_threshold) report_blow_up(grid.x(i0));
    g.values[i0] = g_node;

    cplx gv = g_node;
    for (int i = i0; i < grid.n - 1; ++i) {
        gv = rk4_step(w, grid.eta, grid.x(i), gv, h);
        if (std::abs(gv) > blow_up_threshold) report_blow_up(grid.x(i + 1));
        g.values[i + 1] = gv;
    }
    gv = g_node;
    for (int i = i0; i > 0; --i) {
        gv = rk4_step(w, grid.eta, grid.x(i), gv, -h);
        if (std::abs(gv) > blow_up_threshold) report_blow_up(grid.x(i - 1));
        g.values[i - 1] = gv;
    }
    return g;
}

SampledWavefunction apply_intertwiner(IntertwinerDirection direction,
                                      const SuperpotentialSpec& w,
                                      const SampledWavefunction& psi,
                                      std::optional<cplx> energy) {
    const Grid1D& grid = psi.grid;
    validate(grid);
    require(psi.values.size() == static_cast<size_t>(grid.n), errc::grid_mismatch,
            "wavefunction sample count differs from its grid");

    double scale = 1.0;
    if (energy.has_value()) {
        double mag = std::abs(*energy);
        if (mag < 1e-12) {
            fail(errc::zero_energy,
                 "normalized intertwining is undefined at zero energy (SUSY-unpaired state)");
        }
        scale = 1.0 / std::sqrt(mag);
    }

    const double h = grid.spacing();
    const double sign = (direction == IntertwinerDirection::lower) ? 1.0 : -1.0;
    const auto& v = psi.values;
    SampledWavefunction out{grid, std::vector<cplx>(grid.n), NormConvention::unnormalized};

    for (int i = 0; i < grid.n; ++i) {
        cplx dpsi;
        if (i == 0) {
            dpsi = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
        } else if (i == grid.n - 1) {
            dpsi = (3.0 * v[i] - 4.0 * v[i - 1] + v[i - 2]) / (2.0 * h);
        } else {
            dpsi = (v[i + 1] - v[i - 1]) / (2.0 * h);
        }
        cplx wv = eval_superpotential(w, grid.point(i));
        out.values[i] = scale * (sign * dpsi + wv * v[i]);
    }
    return out;
}

}  // namespace ptbox
