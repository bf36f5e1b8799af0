#include "ptbox/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ptbox/box.hpp"
#include "ptbox/core.hpp"
#include "ptbox/pt.hpp"
#include "ptbox/spectral.hpp"
#include "ptbox/susy.hpp"
#include "ptbox/verify.hpp"

namespace ptbox::cli {
namespace {

using nlohmann::json;
constexpr double pi = std::numbers::pi;

// --- tabular output ----------------------------------------------------------

using Cell = std::variant<double, long long, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void csv_field(std::ostream& os, const Cell& cell) {
    if (const double* d = std::get_if<double>(&cell)) {
        os << format_double(*d);
    } else if (const long long* i = std::get_if<long long>(&cell)) {
        os << *i;
    } else {
        const std::string& s = std::get<std::string>(cell);
        if (s.find_first_of(",\"\r\n") == std::string::npos) {
            os << s;
        } else {
            os << '"';
            for (char ch : s) {
                if (ch == '"') os << '"';
                os << ch;
            }
            os << '"';
        }
    }
}

void write_csv(std::ostream& os, const Table& t) {
    for (size_t i = 0; i < t.columns.size(); ++i) {
        if (i) os << ',';
        os << t.columns[i];
    }
    os << '\n';
    for (const auto& row : t.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            csv_field(os, row[i]);
        }
        os << '\n';
    }
}

void write_json(std::ostream& os, const Table& t) {
    json arr = json::array();
    for (const auto& row : t.rows) {
        json obj = json::object();  // keys come out sorted
        for (size_t i = 0; i < row.size(); ++i) {
            const std::string& key = t.columns[i];
            std::visit([&](const auto& v) { obj[key] = v; }, row[i]);
        }
        arr.push_back(std::move(obj));
    }
    os << arr.dump(1) << '\n';
}

void emit_table(const RunConfig& cfg, const Table& t) {
    require(cfg.format == "csv" || cfg.format == "json", errc::validation,
            "format must be csv or json");
    auto write = [&](std::ostream& os) {
        if (cfg.format == "json") {
            write_json(os, t);
        } else {
            write_csv(os, t);
        }
    };
    if (cfg.output_path == "-") {
        write(std::cout);
        return;
    }
    std::filesystem::path path{cfg.output_path};
    if (path.is_relative()) {
        if (const char* dir = std::getenv("PTBOX_OUTPUT_DIR")) {
            path = std::filesystem::path(dir) / path;
        }
    }
    std::ofstream file(path);
    require(file.good(), errc::validation, "cannot open output file " + path.string());
    write(file);
    file.flush();
    require(file.good(), errc::validation, "write to " + path.string() + " failed");
}

// --- option access -----------------------------------------------------------

bool has_num(const RunConfig& c, const std::string& key) { return c.num.count(key) > 0; }

double num_or(const RunConfig& c, const std::string& key, double fallback) {
    auto it = c.num.find(key);
    return it == c.num.end() ? fallback : it->second;
}

double num_req(const RunConfig& c, const std::string& key) {
    auto it = c.num.find(key);
    require(it != c.num.end(), errc::validation, "missing required option --" + key);
    return it->second;
}

long long int_or(const RunConfig& c, const std::string& key, long long fallback) {
    auto it = c.num.find(key);
    if (it == c.num.end()) return fallback;
    double v = it->second;
    require(v == std::floor(v) && std::abs(v) < 1e15, errc::validation,
            "--" + key + " must be an integer");
    return static_cast<long long>(v);
}

std::string text_or(const RunConfig& c, const std::string& key, const std::string& fallback) {
    auto it = c.text.find(key);
    return it == c.text.end() ? fallback : it->second;
}

std::string text_req(const RunConfig& c, const std::string& key) {
    auto it = c.text.find(key);
    require(it != c.text.end(), errc::validation, "missing required option --" + key);
    return it->second;
}

Grid1D grid_from(const RunConfig& c, double def_x_min, double def_x_max, int def_n) {
    Grid1D grid{num_or(c, "x-min", def_x_min), num_or(c, "x-max", def_x_max),
                static_cast<int>(int_or(c, "n", def_n)), num_or(c, "eta", 0.0), true};
    validate(grid);
    return grid;
}

double to_double(const std::string& s) {
    size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::invalid_argument&) {
        fail(errc::validation, "not a number: '" + s + "'");
    } catch (const std::out_of_range&) {
        fail(errc::validation, "number out of range: '" + s + "'");
    }
    require(pos == s.size(), errc::validation, "trailing characters in number '" + s + "'");
    return v;
}

// "v1,v2,..." or "min:max:step" (step > 0, inclusive endpoints up to rounding)
std::vector<double> parse_values(const std::string& text) {
    require(!text.empty(), errc::validation, "empty value list");
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ':')) parts.push_back(item);
        require(parts.size() == 3, errc::validation,
                "range syntax is min:max:step, got '" + text + "'");
        double lo = to_double(parts[0]);
        double hi = to_double(parts[1]);
        double step = to_double(parts[2]);
        require(step > 0.0, errc::validation, "range step must be positive");
        require(hi >= lo, errc::validation, "range max must be >= min");
        long long count = static_cast<long long>(std::floor((hi - lo) / step + 1e-9));
        for (long long k = 0; k <= count; ++k) out.push_back(lo + k * step);
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_double(item));
    require(!out.empty(), errc::validation, "empty value list");
    return out;
}

// --- commands ----------------------------------------------------------------

SuperpotentialSpec superpotential_from(const RunConfig& c) {
    std::string family = text_req(c, "family");
    cplx A{num_or(c, "A-re", 0.0), num_or(c, "A-im", 0.0)};
    cplx shift{num_or(c, "c-re", 0.0), num_or(c, "c-im", 0.0)};
    if (family == "constant") return Constant{A};
    if (family == "coth") return CothShifted{A, shift};
    if (family == "deformed") return Deformed{A, shift};
    if (family == "cot") {
        return GeneralizedCot{num_or(c, "a", 1.0), num_or(c, "alpha", 1.0), num_or(c, "B", 0.0),
                              shift};
    }
    fail(errc::validation,
         "unknown family '" + family + "' (expected constant, coth, cot or deformed)");
}

int run_partner(const RunConfig& cfg) {
    SuperpotentialSpec w = superpotential_from(cfg);
    PartnerPair pair = partner_potentials(w);
    Grid1D grid = grid_from(cfg, 0.0, pi, 201);

    Table t;
    if (cfg.split_parts) {
        const Analytic* analytic = std::get_if<Analytic>(&pair.v_plus);
        const CscSquared* well =
            analytic ? std::get_if<CscSquared>(&analytic->family) : nullptr;
        require(well != nullptr, errc::validation,
                "--split-parts needs a csc^2 partner; use the coth or deformed family "
                "with purely imaginary A");
        t.columns = {"xi", "re_v_plus", "im_v_plus"};
        for (int i = 0; i < grid.n; ++i) {
            double xi = well->a * (grid.x(i) + well->c.real());
            double eta_arg = well->a * (grid.eta + well->c.imag());
            auto [re, im] = eq11_real_imag(xi, eta_arg, well->a);
            t.rows.push_back({xi, re + analytic->offset.real(), im + analytic->offset.imag()});
        }
    } else {
        t.columns = {"x",          "re_w",      "im_w",      "re_v_minus",
                     "im_v_minus", "re_v_plus", "im_v_plus"};
        for (int i = 0; i < grid.n; ++i) {
            ComplexCoordinate x = grid.point(i);
            cplx wv = eval_superpotential(w, x);
            cplx vm = eval_potential(pair.v_minus, x);
            cplx vp = eval_potential(pair.v_plus, x);
            t.rows.push_back(
                {grid.x(i), wv.real(), wv.imag(), vm.real(), vm.imag(), vp.real(), vp.imag()});
        }
    }
    emit_table(cfg, t);
    return 0;
}

int run_deform(const RunConfig& cfg) {
    cplx A{num_or(cfg, "A-re", 0.0), num_or(cfg, "A-im", 0.0)};
    cplx shift{num_or(cfg, "c-re", 0.0), num_or(cfg, "c-im", 0.0)};
    Grid1D grid = grid_from(cfg, 0.3, pi - 0.3, 1001);
    double x0 = num_req(cfg, "x0");

    DeformationClosedForm closed = deformation_closed_form(A, shift);
    cplx g0;
    if (has_num(cfg, "g0-re") || has_num(cfg, "g0-im")) {
        g0 = cplx{num_or(cfg, "g0-re", 0.0), num_or(cfg, "g0-im", 0.0)};
    } else {
        g0 = closed({x0, grid.eta});
    }
    SampledWavefunction numeric = deformation_numeric(Constant{A}, x0, g0, grid);

    Table t;
    t.columns = {"x", "re_g", "im_g", "re_g_closed", "im_g_closed", "abs_dev"};
    double max_dev = 0.0;
    for (int i = 0; i < grid.n; ++i) {
        cplx ref = closed(grid.point(i));
        double dev = std::abs(numeric.values[i] - ref);
        max_dev = std::max(max_dev, dev);
        t.rows.push_back({grid.x(i), numeric.values[i].real(), numeric.values[i].imag(),
                          ref.real(), ref.imag(), dev});
    }
    std::cerr << "max_abs_deviation=" << format_double(max_dev) << '\n';
    emit_table(cfg, t);
    return 0;
}

int run_spectrum(const RunConfig& cfg) {
    std::string name = text_req(cfg, "potential");
    cplx shift{num_or(cfg, "c-re", 0.0), num_or(cfg, "c-im", 0.0)};
    double a = 0.0, alpha = 0.0, B = 0.0;
    cplx A{0.0, 0.0};

    PotentialSpec v{Analytic{ConstantV{}, cplx(0.0, 0.0)}};
    if (name == "box") {
        // flat well; Dirichlet walls come from the grid
    } else if (name == "constant") {
        v = Analytic{ConstantV{}, cplx{num_or(cfg, "value-re", 0.0), num_or(cfg, "value-im", 0.0)}};
    } else if (name == "csc2") {
        a = num_req(cfg, "a");
        v = Analytic{CscSquared{a, shift}};
    } else if (name == "csch2") {
        A = cplx{num_or(cfg, "A-re", 0.0), num_or(cfg, "A-im", 0.0)};
        v = Analytic{SinhInvSquared{A, shift}};
    } else if (name == "pt" || name == "pt-minus") {
        a = num_req(cfg, "a");
        alpha = num_or(cfg, "alpha", 1.0);
        B = num_or(cfg, "B", 0.0);
        if (name == "pt") {
            v = Analytic{GeneralizedPT{a, alpha, B, shift}};
        } else {
            v = Analytic{GeneralizedPTMinus{a, alpha, B, shift}};
        }
    } else {
        fail(errc::validation, "unknown potential '" + name +
                                   "' (expected box, constant, csc2, csch2, pt or pt-minus)");
    }

    Grid1D grid = grid_from(cfg, 0.0, pi, 1001);
    int k = static_cast<int>(int_or(cfg, "k", 6));
    HamiltonianMatrix m = discretize(v, grid);
    Spectrum s = eigenpairs(m, k, false);

    Table t;
    t.columns = {"potential", "a",   "alpha", "B",    "A_re", "A_im",    "c_re",
                 "c_im",      "eta", "n",     "re_E", "im_E", "residual"};
    for (size_t i = 0; i < s.eigenvalues.size(); ++i) {
        t.rows.push_back({name, a, alpha, B, A.real(), A.imag(), shift.real(), shift.imag(),
                          grid.eta, static_cast<long long>(i), s.eigenvalues[i].real(),
                          s.eigenvalues[i].imag(), (*s.residuals)[i]});
    }
    emit_table(cfg, t);
    return 0;
}

int run_box(const RunConfig& cfg) {
    bool widths_mode = has_num(cfg, "a") || has_num(cfg, "kappa-max");
    bool verdict_mode = has_num(cfg, "e1-re") || has_num(cfg, "e1-im") ||
                        has_num(cfg, "e2-re") || has_num(cfg, "e2-im");
    require(widths_mode != verdict_mode, errc::validation,
            "choose one mode: quantized widths (--a, --kappa-max) or admissibility "
            "(--e1-re/--e1-im/--e2-re/--e2-im)");

    Table t;
    if (widths_mode) {
        double a = num_req(cfg, "a");
        long long kappa_max = int_or(cfg, "kappa-max", 5);
        require(kappa_max >= 1, errc::validation, "--kappa-max must be >= 1");
        std::vector<int> kappa_list;
        for (long long kappa = 1; kappa <= kappa_max; ++kappa) {
            kappa_list.push_back(static_cast<int>(kappa));
        }
        std::vector<double> widths = quantized_widths(a, kappa_list);
        t.columns = {"a", "kappa", "width"};
        for (size_t i = 0; i < widths.size(); ++i) {
            t.rows.push_back({a, static_cast<long long>(kappa_list[i]), widths[i]});
        }
    } else {
        ComplexBox box{{num_or(cfg, "e1-re", 0.0), num_or(cfg, "e1-im", 0.0)},
                       {num_or(cfg, "e2-re", 0.0), num_or(cfg, "e2-im", 0.0)}};
        double tolerance = num_or(cfg, "tolerance", 1e-9);
        AdmissibilityVerdict verdict = complex_box_admissibility(box, tolerance);
        t.columns = {"e1_re", "e1_im", "e2_re",     "e2_im", "admissible",
                     "m_index", "n",   "k_n",       "reason"};
        auto base = [&](long long n, double k_n) {
            return std::vector<Cell>{box.endpoint1.re,
                                     box.endpoint1.im,
                                     box.endpoint2.re,
                                     box.endpoint2.im,
                                     static_cast<long long>(verdict.admissible ? 1 : 0),
                                     static_cast<long long>(verdict.m_index),
                                     n,
                                     k_n,
                                     verdict.reason};
        };
        if (verdict.admissible) {
            for (size_t i = 0; i < verdict.k_real.size(); ++i) {
                t.rows.push_back(base(static_cast<long long>(i + 1), verdict.k_real[i]));
            }
        } else {
            t.rows.push_back(base(0, 0.0));
        }
    }
    emit_table(cfg, t);
    return 0;
}

int run_scan(const RunConfig& cfg) {
    std::vector<double> a_values = parse_values(text_or(cfg, "a-values", "1"));
    std::vector<double> alpha_values = parse_values(text_or(cfg, "alpha-values", "1"));
    std::vector<double> B_values = parse_values(text_or(cfg, "B-values", "0"));
    Grid1D grid = grid_from(cfg, 0.0, pi / 2, 1001);
    double eta = num_or(cfg, "eta", 0.0);
    int k = static_cast<int>(int_or(cfg, "k", 8));
    int workers = static_cast<int>(int_or(cfg, "workers", 0));

    std::vector<PhaseMapRecord> records =
        phase_scan(a_values, alpha_values, B_values, eta, grid, k, workers);

    Table t;
    t.columns = {"a",    "alpha",      "B",    "eta",  "phase", "max_abs_im",
                 "pairs", "unpaired",  "note", "level", "re_E",  "im_E"};
    for (const PhaseMapRecord& rec : records) {
        std::string phase = !rec.solver_note.empty()
                                ? "Failed"
                                : (rec.classification.phase == PTPhase::Unbroken ? "Unbroken"
                                                                                 : "Broken");
        auto base = [&](long long level, double re, double im) {
            return std::vector<Cell>{rec.a,
                                     rec.alpha,
                                     rec.B,
                                     rec.eta,
                                     phase,
                                     rec.classification.max_abs_im,
                                     static_cast<long long>(rec.classification.conjugate_pairs.size()),
                                     static_cast<long long>(rec.classification.unpaired_complex.size()),
                                     rec.solver_note,
                                     level,
                                     re,
                                     im};
        };
        if (rec.lowest_levels.empty()) {
            t.rows.push_back(base(-1, 0.0, 0.0));
        } else {
            for (size_t i = 0; i < rec.lowest_levels.size(); ++i) {
                t.rows.push_back(base(static_cast<long long>(i), rec.lowest_levels[i].real(),
                                      rec.lowest_levels[i].imag()));
            }
        }
    }
    emit_table(cfg, t);
    return 0;
}

int run_verify() {
    std::vector<verify::CheckResult> results = verify::run_all();
    int failed = 0;
    for (const verify::CheckResult& r : results) {
        if (r.passed) {
            std::cout << "PASS " << r.name << '\n';
        } else {
            ++failed;
            std::cout << "FAIL " << r.name << ": " << r.detail << '\n';
        }
    }
    if (failed == 0) {
        std::cout << "all " << results.size() << " checks passed\n";
        return 0;
    }
    std::cout << failed << " of " << results.size() << " checks failed\n";
    return 1;
}

std::string defaults_text() {
    return "Defaults (v1):\n"
           "  grids       partner (0, pi) n=201 | deform (0.3, pi-0.3) n=1001 |\n"
           "              spectrum (0, pi) n=1001 | scan (0, pi/2) n=1001; eta=0\n"
           "  levels      spectrum k=6; scan k=8, workers=0 (hardware concurrency)\n"
           "  families    cot: a=1 alpha=1 B=0; A and c default to 0+0i\n"
           "  tolerances  eigenpair residual <= 1e-8 * ||H||_inf; classification\n"
           "              |Im E| <= 1e-6, conjugate pairing <= 1e-4; box 1e-9\n"
           "  output      '-' (stdout), csv; %.17g doubles in csv, shortest\n"
           "              round-trip numbers in json\n"
           "  environment PTBOX_OUTPUT_DIR prefixes relative output paths;\n"
           "              nothing else is read from the environment";
}

}  // namespace

int run(const RunConfig& cfg) {
    try {
        switch (cfg.command) {
            case RunConfig::Command::partner:
                return run_partner(cfg);
            case RunConfig::Command::deform:
                return run_deform(cfg);
            case RunConfig::Command::spectrum:
                return run_spectrum(cfg);
            case RunConfig::Command::box:
                return run_box(cfg);
            case RunConfig::Command::scan:
                return run_scan(cfg);
            case RunConfig::Command::verify:
                return run_verify();
        }
        fail(errc::validation, "unknown command");
    } catch (const error& e) {
        json err{{"error", to_string(e.code())}, {"message", e.what()}};
        std::cerr << err.dump() << '\n';
        bool numerical = e.code() == errc::no_convergence || e.code() == errc::blow_up;
        return numerical ? 2 : 1;
    } catch (const std::exception& e) {
        json err{{"error", "internal"}, {"message", e.what()}};
        std::cerr << err.dump() << '\n';
        return 2;
    }
}

int main_entry(int argc, const char* const* argv) {
    RunConfig cfg;
    CLI::App app{
        "pt-symmetric isospectral toolbox: partner potentials, Bernoulli deformations,\n"
        "complex-contour spectra, quantized boxes and PT phase scans"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "ptbox 1.0.0");
    app.footer(defaults_text());

    auto key_of = [](const std::string& name) { return name.substr(name.find_first_not_of('-')); };
    auto bind_num = [&](CLI::App* sub, const std::string& name, const std::string& help) {
        return sub->add_option_function<double>(
            name, [&cfg, key = key_of(name)](const double& v) { cfg.num[key] = v; }, help);
    };
    auto bind_text = [&](CLI::App* sub, const std::string& name, const std::string& help) {
        return sub->add_option_function<std::string>(
            name, [&cfg, key = key_of(name)](const std::string& v) { cfg.text[key] = v; }, help);
    };
    auto add_grid = [&](CLI::App* sub) {
        bind_num(sub, "--x-min", "left grid edge");
        bind_num(sub, "--x-max", "right grid edge");
        bind_num(sub, "--n", "interior node count");
        bind_num(sub, "--eta", "contour height Im x");
    };
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("-o,--output", cfg.output_path,
                        "output path ('-' = stdout; PTBOX_OUTPUT_DIR prefixes relative paths)");
        sub->add_option("--format", cfg.format, "csv | json")
            ->check(CLI::IsMember({"csv", "json"}));
    };

    CLI::App* partner =
        app.add_subcommand("partner", "superpotential and its partner pair on a grid");
    bind_text(partner, "--family", "constant | coth | cot | deformed")->required();
    bind_num(partner, "--A-re", "Re A (constant/coth/deformed)");
    bind_num(partner, "--A-im", "Im A");
    bind_num(partner, "--a", "cot family: strength a");
    bind_num(partner, "--alpha", "cot family: frequency alpha");
    bind_num(partner, "--B", "cot family: imaginary shift B");
    bind_num(partner, "--c-re", "Re c");
    bind_num(partner, "--c-im", "Im c");
    add_grid(partner);
    partner->add_flag("--split-parts", cfg.split_parts,
                      "emit (xi, Re V+, Im V+) of the csc^2 partner in split form");
    add_common(partner);
    partner->callback([&cfg] { cfg.command = RunConfig::Command::partner; });

    CLI::App* deform = app.add_subcommand(
        "deform", "integrate the deformation g' = g^2 + 2Ag and compare to the closed form");
    bind_num(deform, "--A-re", "Re A");
    bind_num(deform, "--A-im", "Im A");
    bind_num(deform, "--c-re", "Re c");
    bind_num(deform, "--c-im", "Im c");
    bind_num(deform, "--x0", "anchor abscissa")->required();
    bind_num(deform, "--g0-re", "Re g(x0) (default: closed form)");
    bind_num(deform, "--g0-im", "Im g(x0)");
    add_grid(deform);
    add_common(deform);
    deform->callback([&cfg] { cfg.command = RunConfig::Command::deform; });

    CLI::App* spectrum = app.add_subcommand(
        "spectrum", "lowest eigenvalues of -d2/dx2 + V on the contour Im x = eta");
    bind_text(spectrum, "--potential", "box | constant | csc2 | csch2 | pt | pt-minus")
        ->required();
    bind_num(spectrum, "--value-re", "constant potential: Re value");
    bind_num(spectrum, "--value-im", "constant potential: Im value");
    bind_num(spectrum, "--a", "csc2/pt families: strength a");
    bind_num(spectrum, "--alpha", "pt families: frequency alpha");
    bind_num(spectrum, "--B", "pt families: imaginary strength B");
    bind_num(spectrum, "--A-re", "csch2 family: Re A");
    bind_num(spectrum, "--A-im", "csch2 family: Im A");
    bind_num(spectrum, "--c-re", "Re c");
    bind_num(spectrum, "--c-im", "Im c");
    bind_num(spectrum, "--k", "number of eigenpairs");
    add_grid(spectrum);
    add_common(spectrum);
    spectrum->callback([&cfg] { cfg.command = RunConfig::Command::spectrum; });

    CLI::App* box =
        app.add_subcommand("box", "quantized well widths or complex-box admissibility");
    bind_num(box, "--a", "widths mode: strength a");
    bind_num(box, "--kappa-max", "widths mode: emit widths for kappa = 1..kappa-max");
    bind_num(box, "--e1-re", "admissibility mode: Re endpoint 1");
    bind_num(box, "--e1-im", "admissibility mode: Im endpoint 1");
    bind_num(box, "--e2-re", "admissibility mode: Re endpoint 2");
    bind_num(box, "--e2-im", "admissibility mode: Im endpoint 2");
    bind_num(box, "--tolerance", "admissibility tolerance");
    add_common(box);
    box->callback([&cfg] { cfg.command = RunConfig::Command::box; });

    CLI::App* scan = app.add_subcommand(
        "scan", "classify the PT phase over an (a, alpha, B) parameter grid");
    bind_text(scan, "--a-values", "list v1,v2,... or range min:max:step");
    bind_text(scan, "--alpha-values", "list or range");
    bind_text(scan, "--B-values", "list or range");
    bind_num(scan, "--eta", "contour height Im x");
    bind_num(scan, "--x-min", "left grid edge");
    bind_num(scan, "--x-max", "right grid edge");
    bind_num(scan, "--n", "interior node count");
    bind_num(scan, "--k", "eigenpairs classified per point");
    bind_num(scan, "--workers", "thread count (0 = hardware concurrency)");
    add_common(scan);
    scan->callback([&cfg] { cfg.command = RunConfig::Command::scan; });

    CLI::App* verify_cmd = app.add_subcommand(
        "verify", "run the cross-module invariant battery (exit 0 iff every check passes)");
    verify_cmd->callback([&cfg] { cfg.command = RunConfig::Command::verify; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);  // --help / --version
    } catch (const CLI::ParseError& e) {
        json err{{"error", "validation"}, {"message", e.what()}};
        std::cerr << err.dump() << '\n';
        return 1;
    }
    return run(cfg);
}

}  // namespace ptbox::cli
