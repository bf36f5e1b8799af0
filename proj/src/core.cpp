#include "ptbox/core.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace ptbox {

namespace {

constexpr double pi = std::numbers::pi;

// min over integer k of |u - k*pi| (pole lattice of cot/csc arguments)
double dist_to_real_pi_lattice(cplx u) {
    double k = std::round(u.real() / pi);
    return std::hypot(u.real() - k * pi, u.imag());
}

// min over integer k of |u - i*k*pi| (pole lattice of coth/csch arguments)
double dist_to_imag_pi_lattice(cplx u) {
    double k = std::round(u.imag() / pi);
    return std::hypot(u.real(), u.imag() - k * pi);
}

void check_not_singular(double distance, const char* what) {
    if (distance <= pole_tolerance) {
        std::ostringstream msg;
        msg << what << ": argument within " << pole_tolerance << " of a pole";
        fail(errc::singular_point, msg.str());
    }
}

cplx cot(cplx u) { return std::cos(u) / std::sin(u); }

cplx csc_squared(cplx u) {
    cplx s = std::sin(u);
    return 1.0 / (s * s);
}

cplx coth(cplx u) { return std::cosh(u) / std::sinh(u); }

cplx csch_squared(cplx u) {
    cplx s = std::sinh(u);
    return 1.0 / (s * s);
}

// g(x) = -2A e^{2A(x+c)} / (e^{2A(x+c)} - 1), arranged to avoid overflow for
// large |Re 2A(x+c)|.
cplx deformation_g(cplx A, cplx c, cplx x) {
    cplx u = 2.0 * A * (x + c);
    if (u.real() > 0.0) return -2.0 * A / (1.0 - std::exp(-u));
    cplx eu = std::exp(u);
    return -2.0 * A * eu / (eu - 1.0);
}

void validate_generalized_cot(double alpha) {
    require(alpha != 0.0, errc::validation, "generalized-cot family requires alpha != 0");
}

void validate_nonzero(cplx A, const char* what) {
    require(A != cplx(0.0, 0.0), errc::validation,
            std::string(what) + " requires a nonzero scale parameter A");
}

}  // namespace

void validate(const Grid1D& grid) {
    require(grid.x_min < grid.x_max, errc::validation, "grid requires x_min < x_max");
    require(grid.n >= 3, errc::validation, "grid requires n >= 3");
}

bool same_grid(const Grid1D& lhs, const Grid1D& rhs) {
    return lhs.x_min == rhs.x_min && lhs.x_max == rhs.x_max && lhs.n == rhs.n &&
           lhs.eta == rhs.eta && lhs.endpoints_excluded == rhs.endpoints_excluded;
}

double pole_distance(const SuperpotentialSpec& spec, ComplexCoordinate x) {
    return std::visit(
        [&](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Constant>) {
                return std::numeric_limits<double>::infinity();
            } else if constexpr (std::is_same_v<T, CothShifted>) {
                return dist_to_imag_pi_lattice(s.A * (x.value() + s.c));
            } else if constexpr (std::is_same_v<T, GeneralizedCot>) {
                validate_generalized_cot(s.alpha);
                return dist_to_real_pi_lattice(s.alpha * (x.value() + s.c));
            } else {
                validate_nonzero(s.A, "deformed family");
                return dist_to_imag_pi_lattice(s.A * (x.value() + s.c));
            }
        },
        spec);
}

double pole_distance(const PotentialSpec& spec, ComplexCoordinate x) {
    if (const auto* analytic = std::get_if<Analytic>(&spec)) {
        return std::visit(
            [&](const auto& f) -> double {
                using T = std::decay_t<decltype(f)>;
                if constexpr (std::is_same_v<T, ConstantV>) {
                    return std::numeric_limits<double>::infinity();
                } else if constexpr (std::is_same_v<T, CscSquared>) {
                    require(f.a != 0.0, errc::validation, "csc-squared family requires a != 0");
                    return dist_to_real_pi_lattice(f.a * (x.value() + f.c));
                } else if constexpr (std::is_same_v<T, SinhInvSquared>) {
                    validate_nonzero(f.A, "sinh-inverse-squared family");
                    return dist_to_imag_pi_lattice(f.A * (x.value() + f.c));
                } else {
                    validate_generalized_cot(f.alpha);
                    return dist_to_real_pi_lattice(f.alpha * (x.value() + f.c));
                }
            },
            analytic->family);
    }
    return std::numeric_limits<double>::infinity();
}

cplx eval_superpotential(const SuperpotentialSpec& spec, ComplexCoordinate x) {
    return std::visit(
        [&](const auto& s) -> cplx {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Constant>) {
                return s.A;
            } else if constexpr (std::is_same_v<T, CothShifted>) {
                cplx u = s.A * (x.value() + s.c);
                check_not_singular(dist_to_imag_pi_lattice(u), "coth superpotential");
                return -s.A * coth(u);
            } else if constexpr (std::is_same_v<T, GeneralizedCot>) {
                validate_generalized_cot(s.alpha);
                cplx u = s.alpha * (x.value() + s.c);
                check_not_singular(dist_to_real_pi_lattice(u), "cot superpotential");
                return -s.a * cot(u) + cplx(0.0, s.B);
            } else {
                validate_nonzero(s.A, "deformed family");
                cplx u = s.A * (x.value() + s.c);
                check_not_singular(dist_to_imag_pi_lattice(u), "deformed superpotential");
                return s.A + deformation_g(s.A, s.c, x.value());
            }
        },
        spec);
}

cplx eval_superpotential_derivative(const SuperpotentialSpec& spec, ComplexCoordinate x) {
    return std::visit(
        [&](const auto& s) -> cplx {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Constant>) {
                return cplx(0.0, 0.0);
            } else if constexpr (std::is_same_v<T, CothShifted>) {
                cplx u = s.A * (x.value() + s.c);
                check_not_singular(dist_to_imag_pi_lattice(u), "coth superpotential");
                return s.A * s.A * csch_squared(u);
            } else if constexpr (std::is_same_v<T, GeneralizedCot>) {
                validate_generalized_cot(s.alpha);
                cplx u = s.alpha * (x.value() + s.c);
                check_not_singular(dist_to_real_pi_lattice(u), "cot superpotential");
                return s.a * s.alpha * csc_squared(u);
            } else {
                // W = A + g with g' = g^2 + 2Ag
                validate_nonzero(s.A, "deformed family");
                cplx u = s.A * (x.value() + s.c);
                check_not_singular(dist_to_imag_pi_lattice(u), "deformed superpotential");
                cplx g = deformation_g(s.A, s.c, x.value());
                return g * g + 2.0 * s.A * g;
            }
        },
        spec);
}

cplx eval_potential(const PotentialSpec& spec, ComplexCoordinate x) {
    if (const auto* analytic = std::get_if<Analytic>(&spec)) {
        cplx base = std::visit(
            [&](const auto& f) -> cplx {
                using T = std::decay_t<decltype(f)>;
                if constexpr (std::is_same_v<T, ConstantV>) {
                    return cplx(0.0, 0.0);
                } else if constexpr (std::is_same_v<T, CscSquared>) {
                    require(f.a != 0.0, errc::validation, "csc-squared family requires a != 0");
                    cplx u = f.a * (x.value() + f.c);
                    check_not_singular(dist_to_real_pi_lattice(u), "csc-squared potential");
                    double a2 = f.a * f.a;
                    return 2.0 * a2 * csc_squared(u) - a2;
                } else if constexpr (std::is_same_v<T, SinhInvSquared>) {
                    validate_nonzero(f.A, "sinh-inverse-squared family");
                    cplx u = f.A * (x.value() + f.c);
                    check_not_singular(dist_to_imag_pi_lattice(u), "sinh-inverse-squared potential");
                    cplx A2 = f.A * f.A;
                    return A2 + 2.0 * A2 * csch_squared(u);
                } else if constexpr (std::is_same_v<T, GeneralizedPT>) {
                    validate_generalized_cot(f.alpha);
                    cplx u = f.alpha * (x.value() + f.c);
                    check_not_singular(dist_to_real_pi_lattice(u), "generalized-PT potential");
                    return (f.a * f.a + f.alpha * f.a) * csc_squared(u) -
                           cplx(0.0, 2.0 * f.a * f.B) * cot(u) - (f.a * f.a + f.B * f.B);
                } else {
                    validate_generalized_cot(f.alpha);
                    cplx u = f.alpha * (x.value() + f.c);
                    check_not_singular(dist_to_real_pi_lattice(u), "generalized-PT-minus potential");
                    return (f.a * f.a - f.alpha * f.a) * csc_squared(u) -
                           cplx(0.0, 2.0 * f.a * f.B) * cot(u) - (f.a * f.a + f.B * f.B);
                }
            },
            analytic->family);
        return base + analytic->offset;
    }

    const auto& sampled = std::get<Sampled>(spec);
    const Grid1D& grid = sampled.grid;
    require(sampled.values.size() == static_cast<size_t>(grid.n), errc::validation,
            "sampled potential requires values.length = grid.n");
    if (std::abs(x.im - grid.eta) > 1e-9) {
        fail(errc::out_of_range, "sampled potential evaluated off its contour");
    }
    double h = grid.spacing();
    double t = (x.re - grid.x(0)) / h;
    if (t < 0.0 || t > grid.n - 1) {
        fail(errc::out_of_range, "sampled potential evaluated outside its node span");
    }
    int i = static_cast<int>(std::floor(t));
    if (i >= grid.n - 1) return sampled.values.back();
    double frac = t - i;
    return sampled.values[i] + frac * (sampled.values[i + 1] - sampled.values[i]);
}

std::vector<ComplexCoordinate> singular_points(const PotentialSpec& spec, double x_lo,
                                               double x_hi) {
    std::vector<ComplexCoordinate> out;
    const auto* analytic = std::get_if<Analytic>(&spec);
    if (analytic == nullptr) return out;

    // Trig families: poles at x = k*pi/alpha - c, all sharing Im x = -Im c.
    auto real_lattice = [&](double alpha, cplx c) {
        double im = -c.imag();
        long k_lo = static_cast<long>(std::ceil((x_lo + c.real()) * alpha / pi - 1e-12));
        long k_hi = static_cast<long>(std::floor((x_hi + c.real()) * alpha / pi + 1e-12));
        if (alpha < 0.0) std::swap(k_lo, k_hi);
        for (long k = k_lo; k <= k_hi; ++k) {
            out.push_back({k * pi / alpha - c.real(), im});
        }
    };

    std::visit(
        [&](const auto& f) {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, CscSquared>) {
                real_lattice(f.a, f.c);
            } else if constexpr (std::is_same_v<T, SinhInvSquared>) {
                // poles at x = i*k*pi/A - c; enumerate the directions the
                // window can see. When i/A is purely imaginary the poles stack
                // vertically at one real abscissa; report the five nearest the
                // real axis.
                cplx dir = cplx(0.0, pi) / f.A;
                if (dir.real() != 0.0) {
                    double k_a = (x_lo + f.c.real()) / dir.real();
                    double k_b = (x_hi + f.c.real()) / dir.real();
                    long k_lo = static_cast<long>(std::ceil(std::min(k_a, k_b) - 1e-12));
                    long k_hi = static_cast<long>(std::floor(std::max(k_a, k_b) + 1e-12));
                    for (long k = k_lo; k <= k_hi; ++k) {
                        cplx p = static_cast<double>(k) * dir - f.c;
                        out.push_back({p.real(), p.imag()});
                    }
                } else if (-f.c.real() >= x_lo && -f.c.real() <= x_hi) {
                    for (long k = -2; k <= 2; ++k) {
                        cplx p = static_cast<double>(k) * dir - f.c;
                        out.push_back({p.real(), p.imag()});
                    }
                }
            } else if constexpr (std::is_same_v<T, GeneralizedPT> ||
                                 std::is_same_v<T, GeneralizedPTMinus>) {
                real_lattice(f.alpha, f.c);
            }
        },
        analytic->family);
    return out;
}

}  // namespace ptbox
