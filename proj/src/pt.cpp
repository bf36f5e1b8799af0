#include "ptbox/pt.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

namespace ptbox {

namespace {
constexpr double pi = std::numbers::pi;
}

double pt_residual(const PotentialSpec& v, double center, double half_width, double eta,
                   int n_samples) {
    require(half_width > 0.0, errc::validation, "half_width must be positive");
    require(n_samples >= 1, errc::validation, "n_samples must be >= 1");
    double worst = 0.0;
    for (int j = 1; j <= n_samples; ++j) {
        double delta = half_width * j / n_samples;
        cplx right = eval_potential(v, {center + delta, eta});
        cplx left = eval_potential(v, {center - delta, eta});
        worst = std::max(worst, std::abs(right - std::conj(left)));
    }
    return worst;
}

std::pair<double, double> eq11_real_imag(double xi, double eta, double a) {
    double k = std::round(xi / pi);
    if (std::hypot(xi - k * pi, eta) <= pole_tolerance) {
        fail(errc::singular_point, "split evaluation at a csc^2 pole (xi = k pi, eta = 0)");
    }
    double s = std::sin(xi);
    double c = std::cos(xi);
    double ch = std::cosh(eta);
    double sh = std::sinh(eta);
    double den = std::cos(2.0 * xi) - std::cosh(2.0 * eta);
    double den2 = den * den;
    double a2 = a * a;
    double re = a2 * (8.0 * (s * s * ch * ch - c * c * sh * sh) / den2 - 1.0);
    double im = -4.0 * a2 * std::sin(2.0 * xi) * std::sinh(2.0 * eta) / den2;
    return {re, im};
}

PTClassification classify(const Spectrum& spectrum, double im_tolerance,
                          double pair_tolerance) {
    const auto& eig = spectrum.eigenvalues;
    require(!eig.empty(), errc::validation, "classification of an empty spectrum");

    PTClassification result;
    std::vector<int> complex_indices;
    for (int i = 0; i < static_cast<int>(eig.size()); ++i) {
        result.max_abs_im = std::max(result.max_abs_im, std::abs(eig[i].imag()));
        if (std::abs(eig[i].imag()) > im_tolerance) complex_indices.push_back(i);
    }
    if (complex_indices.empty()) {
        result.phase = PTPhase::Unbroken;
        return result;
    }

    result.phase = PTPhase::Broken;
    std::vector<bool> matched(eig.size(), false);
    for (int i : complex_indices) {
        if (matched[i]) continue;
        int best = -1;
        double best_dist = pair_tolerance;
        for (int j : complex_indices) {
            if (j == i || matched[j]) continue;
            double dist = std::abs(eig[i] - std::conj(eig[j]));
            if (dist <= best_dist) {
                best_dist = dist;
                best = j;
            }
        }
        if (best >= 0) {
            matched[i] = matched[best] = true;
            result.conjugate_pairs.emplace_back(i, best);
        } else {
            matched[i] = true;
            result.unpaired_complex.push_back(i);
        }
    }
    return result;
}

double pt_center(const PotentialSpec& v) {
    const auto* analytic = std::get_if<Analytic>(&v);
    require(analytic != nullptr, errc::validation,
            "sampled potentials have no analytic symmetry center");
    return std::visit(
        [&](const auto& f) -> double {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, ConstantV>) {
                return 0.0;
            } else if constexpr (std::is_same_v<T, CscSquared>) {
                require(f.a != 0.0, errc::validation, "csc-squared family requires a != 0");
                return pi / (2.0 * f.a) - f.c.real();
            } else if constexpr (std::is_same_v<T, SinhInvSquared>) {
                return -f.c.real();
            } else {
                require(f.alpha != 0.0, errc::validation,
                        "generalized families require alpha != 0");
                return pi / (2.0 * f.alpha) - f.c.real();
            }
        },
        analytic->family);
}

std::vector<PhaseMapRecord> phase_scan(const std::vector<double>& a_values,
                                       const std::vector<double>& alpha_values,
                                       const std::vector<double>& B_values, double eta,
                                       const Grid1D& grid, int k_levels, int workers) {
    require(!a_values.empty() && !alpha_values.empty() && !B_values.empty(), errc::validation,
            "phase scan requires nonempty parameter ranges");
    Grid1D scan_grid = grid;
    scan_grid.eta = eta;
    validate(scan_grid);
    require(k_levels >= 1 && k_levels <= scan_grid.n, errc::validation,
            "phase scan requires 1 <= k_levels <= grid.n");

    struct Point {
        double a, alpha, B;
    };
    std::vector<Point> points;
    points.reserve(a_values.size() * alpha_values.size() * B_values.size());
    for (double a : a_values) {
        for (double alpha : alpha_values) {
            for (double B : B_values) points.push_back({a, alpha, B});
        }
    }

    std::vector<PhaseMapRecord> records(points.size());
    std::atomic<size_t> next{0};
    auto work = [&]() {
        for (;;) {
            size_t idx = next.fetch_add(1);
            if (idx >= points.size()) return;
            const Point& p = points[idx];
            PhaseMapRecord rec;
            rec.a = p.a;
            rec.alpha = p.alpha;
            rec.B = p.B;
            rec.eta = eta;
            try {
                PotentialSpec v =
                    Analytic{GeneralizedPT{p.a, p.alpha, p.B, cplx(0.0, 0.0)}, cplx(0.0, 0.0)};
                HamiltonianMatrix h = discretize(v, scan_grid);
                Spectrum s = eigenpairs(h, k_levels, false);
                rec.classification = classify(s);
                size_t keep = std::min<size_t>(6, s.eigenvalues.size());
                rec.lowest_levels.assign(s.eigenvalues.begin(), s.eigenvalues.begin() + keep);
            } catch (const error& e) {
                rec.solver_note = std::string(to_string(e.code())) + ": " + e.what();
            }
            records[idx] = std::move(rec);
        }
    };

    size_t thread_count = workers > 0 ? static_cast<size_t>(workers)
                                      : std::max(1u, std::thread::hardware_concurrency());
    thread_count = std::min(thread_count, points.size());
    if (thread_count <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(thread_count);
        for (size_t t = 0; t < thread_count; ++t) pool.emplace_back(work);
        for (std::thread& t : pool) t.join();
    }
    return records;
}

}  // namespace ptbox
