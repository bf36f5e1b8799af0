#include "ptbox/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <sstream>

namespace ptbox {

namespace {

bool lex_less(cplx a, cplx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

// Overflow-safe plain 2-norm (no grid weight).
double vec_norm(const std::vector<cplx>& v) {
    double mx = 0.0;
    for (cplx z : v) mx = std::max(mx, std::abs(z));
    if (mx == 0.0 || !std::isfinite(mx)) return mx;
    double sum = 0.0;
    for (cplx z : v) {
        double r = std::abs(z) / mx;
        sum += r * r;
    }
    return mx * std::sqrt(sum);
}

// QL iteration with implicit shifts for a complex-symmetric tridiagonal
// matrix. Rotations satisfy c^2 + s^2 = 1 (complex-orthogonal, not unitary);
// a near-zero rotation denominator is a genuine breakdown and is retried
// after a relative 1e-12 perturbation of the active off-diagonal.
std::vector<cplx> ql_eigenvalues(std::vector<cplx> d, std::vector<cplx> e) {
    const int n = static_cast<int>(d.size());
    if (n == 0) return d;
    e.resize(n, cplx(0.0, 0.0));
    const double eps = std::numeric_limits<double>::epsilon();
    constexpr int max_sweeps = 80;

    for (int l = 0; l < n; ++l) {
        int sweeps = 0;
        for (;;) {
            int m = l;
            while (m < n - 1 &&
                   std::abs(e[m]) > eps * (std::abs(d[m]) + std::abs(d[m + 1]))) {
                ++m;
            }
            if (m == l) break;
            if (++sweeps > max_sweeps) {
                std::ostringstream msg;
                msg << "QL sweep failed to isolate eigenvalue " << l << " after "
                    << max_sweeps << " iterations (n = " << n << ")";
                fail(errc::no_convergence, msg.str());
            }

            // Wilkinson-style shift from the 2x2 block at the low end.
            cplx g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            cplx r = std::sqrt(g * g + 1.0);
            if (std::abs(g + r) < std::abs(g - r)) r = -r;
            g = d[m] - d[l] + e[l] / (g + r);

            cplx s(1.0, 0.0);
            cplx c(1.0, 0.0);
            cplx p(0.0, 0.0);
            bool breakdown = false;
            for (int i = m - 1; i >= l; --i) {
                cplx f = s * e[i];
                cplx b = c * e[i];
                r = std::sqrt(f * f + g * g);
                double scale = std::abs(f) + std::abs(g);
                if (std::abs(r) <= 1e-12 * scale) {
                    breakdown = true;
                    break;
                }
                // keep r in the half-plane of g so c = g/r stays bounded
                if (g.real() * r.real() + g.imag() * r.imag() < 0.0) r = -r;
                e[i + 1] = r;
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                cplx t = (d[i] - g) * s + 2.0 * c * b;
                p = s * t;
                d[i + 1] = g + p;
                g = c * t - b;
            }
            if (breakdown) {
                e[l] *= (1.0 + 1e-12);
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = cplx(0.0, 0.0);
        }
    }
    return d;
}

// Solve (T - theta I) x = b for the complex-symmetric tridiagonal T with
// constant off-diagonal, by LU with partial pivoting (one superdiagonal of
// fill-in). Exactly singular pivots are replaced by 1e-300; inverse-iteration
// callers only need the solution direction.
std::vector<cplx> tridiag_solve_shifted(const std::vector<cplx>& diag, double off, cplx theta,
                                        std::vector<cplx> x) {
    const int n = static_cast<int>(diag.size());
    std::vector<cplx> sub(n, cplx(off, 0.0));
    std::vector<cplx> dd(n);
    std::vector<cplx> ee(n, cplx(off, 0.0));
    std::vector<cplx> f2(n, cplx(0.0, 0.0));
    for (int i = 0; i < n; ++i) dd[i] = diag[i] - theta;
    ee[n - 1] = cplx(0.0, 0.0);

    constexpr cplx tiny(1e-300, 0.0);
    for (int i = 0; i + 1 < n; ++i) {
        if (std::abs(sub[i + 1]) > std::abs(dd[i])) {
            std::swap(dd[i], sub[i + 1]);
            std::swap(ee[i], dd[i + 1]);
            if (i + 2 < n) std::swap(f2[i], ee[i + 1]);
            std::swap(x[i], x[i + 1]);
        }
        if (dd[i] == cplx(0.0, 0.0)) dd[i] = tiny;
        cplx m = sub[i + 1] / dd[i];
        dd[i + 1] -= m * ee[i];
        if (i + 2 < n) ee[i + 1] -= m * f2[i];
        x[i + 1] -= m * x[i];
    }
    if (dd[n - 1] == cplx(0.0, 0.0)) dd[n - 1] = tiny;
    x[n - 1] /= dd[n - 1];
    if (n > 1) x[n - 2] = (x[n - 2] - ee[n - 2] * x[n - 1]) / dd[n - 2];
    for (int i = n - 3; i >= 0; --i) {
        x[i] = (x[i] - ee[i] * x[i + 1] - f2[i] * x[i + 2]) / dd[i];
    }
    return x;
}

std::vector<cplx> apply_tridiag(const std::vector<cplx>& diag, double off,
                                const std::vector<cplx>& v) {
    const int n = static_cast<int>(diag.size());
    std::vector<cplx> out(n);
    for (int i = 0; i < n; ++i) {
        cplx acc = diag[i] * v[i];
        if (i > 0) acc += off * v[i - 1];
        if (i + 1 < n) acc += off * v[i + 1];
        out[i] = acc;
    }
    return out;
}

// splitmix64; explicit so start vectors are identical across toolchains
double unit_uniform(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= (z >> 31);
    return static_cast<double>(z >> 11) * 0x1.0p-53;
}

struct Refined {
    cplx theta;
    std::vector<cplx> v;
    double residual;
    int iterations;
};

// Inverse iteration from the QL seed with complex-symmetric Rayleigh-quotient
// updates theta = v^T T v / v^T v (unconjugated; the Hermitian quotient is the
// fallback when v^T v degenerates near an exceptional point).
Refined refine_eigenpair(const std::vector<cplx>& diag, double off, cplx seed,
                         double target_residual) {
    const int n = static_cast<int>(diag.size());
    std::vector<cplx> v(n);
    std::uint64_t rng_state = 0x6d8ab1f2c3e47a55ULL;
    // real start vector: for a real-valued matrix the whole iteration then
    // stays exactly real, so real spectra come out with Im E == 0 bitwise
    for (int i = 0; i < n; ++i) {
        v[i] = cplx(unit_uniform(rng_state) - 0.5, 0.0);
    }
    double nv = vec_norm(v);
    for (cplx& z : v) z /= nv;

    const double floor_residual = 1e-5 * target_residual;
    cplx theta = seed;
    Refined best{seed, v, std::numeric_limits<double>::infinity(), 0};

    constexpr int max_iterations = 30;
    for (int it = 1; it <= max_iterations; ++it) {
        std::vector<cplx> w = tridiag_solve_shifted(diag, off, theta, v);
        double wn = vec_norm(w);
        if (wn == 0.0 || !std::isfinite(wn)) {
            // exactly singular shift; nudge off the eigenvalue and retry
            theta += cplx(target_residual, 0.0);
            continue;
        }
        for (cplx& z : w) z /= wn;
        v = std::move(w);

        std::vector<cplx> tv = apply_tridiag(diag, off, v);
        cplx vv(0.0, 0.0);
        cplx vtv(0.0, 0.0);
        for (int i = 0; i < n; ++i) {
            vv += v[i] * v[i];
            vtv += v[i] * tv[i];
        }
        cplx theta_new;
        if (std::abs(vv) > 1e-8) {
            theta_new = vtv / vv;
        } else {
            cplx herm(0.0, 0.0);
            for (int i = 0; i < n; ++i) herm += std::conj(v[i]) * tv[i];
            theta_new = herm;
        }

        std::vector<cplx> res_vec(n);
        for (int i = 0; i < n; ++i) res_vec[i] = tv[i] - theta_new * v[i];
        double res = vec_norm(res_vec);

        if (res < best.residual) best = {theta_new, v, res, it};
        theta = theta_new;
        if (res <= floor_residual) break;
    }

    if (best.residual > target_residual) {
        std::ostringstream msg;
        msg << "inverse iteration stalled: best residual " << best.residual
            << " exceeds contract " << target_residual << " after " << best.iterations
            << " of " << max_iterations << " iterations (seed Re E = " << seed.real() << ")";
        fail(errc::no_convergence, msg.str());
    }
    return best;
}

double lattice_distance_pi(cplx u) {
    double k = std::round(u.real() / std::numbers::pi);
    return std::hypot(u.real() - k * std::numbers::pi, u.imag());
}

}  // namespace

HamiltonianMatrix discretize(const PotentialSpec& v, const Grid1D& grid) {
    validate(grid);
    require(grid.endpoints_excluded, errc::validation,
            "discretization assumes Dirichlet walls with endpoints excluded");
    const double h = grid.spacing();
    HamiltonianMatrix m{grid.n, std::vector<cplx>(grid.n), -1.0 / (h * h), h, grid};
    const double kinetic = 2.0 / (h * h);
    for (int i = 0; i < grid.n; ++i) {
        m.diag[i] = kinetic + eval_potential(v, grid.point(i));
    }
    return m;
}

double inf_norm(const HamiltonianMatrix& m) {
    double mx = 0.0;
    for (int i = 0; i < m.n; ++i) {
        double row = std::abs(m.diag[i]);
        if (i > 0) row += std::abs(m.offdiag);
        if (i + 1 < m.n) row += std::abs(m.offdiag);
        mx = std::max(mx, row);
    }
    return mx;
}

std::vector<cplx> all_eigenvalues(const HamiltonianMatrix& m) {
    std::vector<cplx> e(static_cast<size_t>(std::max(0, m.n - 1)), cplx(m.offdiag, 0.0));
    std::vector<cplx> vals = ql_eigenvalues(m.diag, e);
    std::sort(vals.begin(), vals.end(), lex_less);
    return vals;
}

Spectrum eigenpairs(const HamiltonianMatrix& m, int k, bool want_vectors) {
    require(k >= 1 && k <= m.n, errc::validation, "eigenpairs requires 1 <= k <= n");
    std::vector<cplx> estimates = all_eigenvalues(m);
    const double target = 1e-8 * inf_norm(m);

    std::vector<Refined> refined;
    refined.reserve(k);
    for (int i = 0; i < k; ++i) {
        refined.push_back(refine_eigenpair(m.diag, m.offdiag, estimates[i], target));
    }
    std::sort(refined.begin(), refined.end(),
              [](const Refined& a, const Refined& b) { return lex_less(a.theta, b.theta); });

    Spectrum out;
    out.eigenvalues.reserve(k);
    std::vector<double> residuals;
    residuals.reserve(k);
    for (const Refined& r : refined) {
        out.eigenvalues.push_back(r.theta);
        residuals.push_back(r.residual);
    }
    out.residuals = std::move(residuals);

    if (want_vectors) {
        std::vector<SampledWavefunction> vectors;
        vectors.reserve(k);
        for (Refined& r : refined) {
            // rotate the largest-magnitude component onto the positive real
            // axis, then renormalize in the h-weighted discrete L2 norm
            size_t imax = 0;
            double amax = 0.0;
            for (size_t i = 0; i < r.v.size(); ++i) {
                double a = std::abs(r.v[i]);
                if (a > amax) {
                    amax = a;
                    imax = i;
                }
            }
            cplx phase = r.v[imax] / amax;
            for (cplx& z : r.v) z /= phase;
            SampledWavefunction psi{m.grid, std::move(r.v), NormConvention::unit_l2};
            double nrm = l2_norm(psi);
            for (cplx& z : psi.values) z /= nrm;
            vectors.push_back(std::move(psi));
        }
        out.eigenvectors = std::move(vectors);
    }
    return out;
}

double residual_norm(const PotentialSpec& v, const Grid1D& grid,
                     const SampledWavefunction& psi, cplx energy) {
    require(same_grid(psi.grid, grid), errc::grid_mismatch,
            "wavefunction grid differs from the requested grid");
    require(psi.values.size() == static_cast<size_t>(grid.n), errc::grid_mismatch,
            "wavefunction sample count differs from grid.n");
    HamiltonianMatrix m = discretize(v, grid);
    std::vector<cplx> hv = apply_tridiag(m.diag, m.offdiag, psi.values);
    std::vector<cplx> res(m.n);
    for (int i = 0; i < m.n; ++i) res[i] = hv[i] - energy * psi.values[i];
    double denom = vec_norm(psi.values);
    require(denom > 0.0, errc::validation, "residual of the zero wavefunction is undefined");
    return vec_norm(res) / denom;
}

cplx analytic_plus_eigenfunction(int n, double a, cplx c, ComplexCoordinate x) {
    require(n >= 0, errc::validation, "eigenfunction index must be nonnegative");
    cplx u = a * (x.value() + c);
    if (lattice_distance_pi(u) <= pole_tolerance) {
        fail(errc::singular_point, "analytic eigenfunction evaluated at a csc pole");
    }
    double np1 = n + 1.0;
    double np2 = n + 2.0;
    return np1 * std::cos(np2 * u) - std::sin(np1 * u) / std::sin(u);
}

std::vector<double> shape_invariant_spectrum(double a, double alpha, int n_max,
                                             SpectrumConvention convention) {
    require(alpha != 0.0, errc::validation, "shape-invariant ladder requires alpha != 0");
    require(n_max >= 0, errc::validation, "n_max must be nonnegative");
    std::vector<double> out;
    out.reserve(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        if (convention == SpectrumConvention::minus_shift) {
            double shifted = a - n * alpha;
            out.push_back(a * a - shifted * shifted);
        } else {
            double shifted = a + n * alpha;
            out.push_back(shifted * shifted - a * a);
        }
    }
    return out;
}

}  // namespace ptbox
