#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "ptbox/cli.hpp"
#include "ptbox/pt.hpp"

using namespace ptbox;
using cli::RunConfig;

namespace {
constexpr double pi = std::numbers::pi;

std::filesystem::path temp_dir() {
    static std::filesystem::path dir = [] {
        auto d = std::filesystem::temp_directory_path() / "ptbox_cli_test";
        std::filesystem::remove_all(d);
        std::filesystem::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// rows of unquoted CSV (safe for the numeric tables exercised here)
std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::stringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (!line.empty() && line.back() == ',') fields.push_back("");
        rows.push_back(std::move(fields));
    }
    return rows;
}

double as_double(const std::string& s) { return std::strtod(s.c_str(), nullptr); }
}  // namespace

TEST_CASE("spectrum command prints the partner-well ladder") {
    auto out = temp_dir() / "spec.csv";
    RunConfig cfg;
    cfg.command = RunConfig::Command::spectrum;
    cfg.text["potential"] = "csc2";
    cfg.num["a"] = 1.0;
    cfg.num["n"] = 2001;
    cfg.num["k"] = 3;
    cfg.output_path = out.string();
    REQUIRE(cli::run(cfg) == 0);

    auto rows = csv_rows(slurp(out));
    REQUIRE(rows.size() == 4);  // header + 3 levels
    CHECK(rows[0][10] == "re_E");
    const double exact[] = {3.0, 8.0, 15.0};
    for (int i = 0; i < 3; ++i) {
        CHECK(std::abs(as_double(rows[i + 1][10]) - exact[i]) / exact[i] < 5e-3);
        CHECK(std::abs(as_double(rows[i + 1][11])) < 1e-6);
        CHECK(as_double(rows[i + 1][12]) < 5e-2);  // contract bound 1e-8 * ||H||_inf
    }
}

TEST_CASE("box widths command emits exact multiples of pi") {
    auto out = temp_dir() / "widths.csv";
    RunConfig cfg;
    cfg.command = RunConfig::Command::box;
    cfg.num["a"] = 1.0;
    cfg.num["kappa-max"] = 3;
    cfg.output_path = out.string();
    REQUIRE(cli::run(cfg) == 0);

    auto rows = csv_rows(slurp(out));
    REQUIRE(rows.size() == 4);
    // %.17g round-trips doubles, so the parsed widths are bitwise exact
    CHECK(as_double(rows[1][2]) == pi);
    CHECK(as_double(rows[2][2]) == 2 * pi);
    CHECK(as_double(rows[3][2]) == 3 * pi);
}

TEST_CASE("scan command classifies the hermitian line as unbroken") {
    auto out = temp_dir() / "scan.csv";
    RunConfig cfg;
    cfg.command = RunConfig::Command::scan;
    cfg.text["a-values"] = "1";
    cfg.text["alpha-values"] = "1";
    cfg.text["B-values"] = "0";
    cfg.num["x-max"] = pi;
    cfg.num["n"] = 501;
    cfg.num["k"] = 6;
    cfg.output_path = out.string();
    REQUIRE(cli::run(cfg) == 0);

    auto rows = csv_rows(slurp(out));
    REQUIRE(rows.size() == 7);  // header + one row per level
    for (size_t r = 1; r < rows.size(); ++r) {
        CHECK(rows[r][4] == "Unbroken");
        CHECK(rows[r][8].empty());
    }
}

TEST_CASE("scan range syntax expands inclusively") {
    auto out = temp_dir() / "scan_range.csv";
    RunConfig cfg;
    cfg.command = RunConfig::Command::scan;
    cfg.text["B-values"] = "0:1:0.5";
    cfg.num["x-max"] = pi;
    cfg.num["n"] = 301;
    cfg.num["k"] = 2;
    cfg.num["workers"] = 2;
    cfg.output_path = out.string();
    REQUIRE(cli::run(cfg) == 0);

    auto rows = csv_rows(slurp(out));
    REQUIRE(rows.size() == 7);  // header + 3 B points x 2 levels
    CHECK(as_double(rows[1][2]) == 0.0);
    CHECK(as_double(rows[3][2]) == 0.5);
    CHECK(as_double(rows[5][2]) == 1.0);
}

TEST_CASE("csv and json payloads carry identical values") {
    auto csv_path = temp_dir() / "pair.csv";
    auto json_path = temp_dir() / "pair.json";
    RunConfig cfg;
    cfg.command = RunConfig::Command::spectrum;
    cfg.text["potential"] = "pt";
    cfg.num["a"] = 1.0;
    cfg.num["alpha"] = 2.0;
    cfg.num["B"] = 1.5;
    cfg.num["x-max"] = pi / 2;
    cfg.num["n"] = 801;
    cfg.num["k"] = 4;
    cfg.output_path = csv_path.string();
    REQUIRE(cli::run(cfg) == 0);
    cfg.format = "json";
    cfg.output_path = json_path.string();
    REQUIRE(cli::run(cfg) == 0);

    auto rows = csv_rows(slurp(csv_path));
    nlohmann::json parsed = nlohmann::json::parse(slurp(json_path));
    REQUIRE(parsed.is_array());
    REQUIRE(parsed.size() + 1 == rows.size());
    const auto& header = rows[0];
    for (size_t r = 0; r < parsed.size(); ++r) {
        for (size_t col = 0; col < header.size(); ++col) {
            const nlohmann::json& jv = parsed[r].at(header[col]);
            if (jv.is_string()) {
                CHECK(jv.get<std::string>() == rows[r + 1][col]);
            } else {
                // both encodings round-trip doubles exactly
                CHECK(jv.get<double>() == as_double(rows[r + 1][col]));
            }
        }
    }
}

TEST_CASE("split-parts emits the complexified well in split form") {
    auto out = temp_dir() / "split.csv";
    RunConfig cfg;
    cfg.command = RunConfig::Command::partner;
    cfg.text["family"] = "coth";
    cfg.num["A-im"] = 1.0;
    cfg.split_parts = true;
    cfg.output_path = out.string();
    REQUIRE(cli::run(cfg) == 0);

    auto rows = csv_rows(slurp(out));
    REQUIRE(rows.size() == 202);  // header + default 201 nodes
    for (size_t r = 1; r < rows.size(); r += 40) {
        double xi = as_double(rows[r][0]);
        auto [re, im] = eq11_real_imag(xi, 0.0, 1.0);
        CHECK(as_double(rows[r][1]) == re);
        CHECK(as_double(rows[r][2]) == im);
    }

    // split form only exists for a csc^2 partner
    cfg.text["family"] = "constant";
    CHECK(cli::run(cfg) == 1);
}

TEST_CASE("exit codes distinguish validation from numerical failure") {
    RunConfig bad_family;
    bad_family.command = RunConfig::Command::partner;
    bad_family.text["family"] = "weird";
    bad_family.output_path = (temp_dir() / "never.csv").string();
    CHECK(cli::run(bad_family) == 1);

    RunConfig blow_up;
    blow_up.command = RunConfig::Command::deform;
    blow_up.num["A-re"] = 1.0;
    blow_up.num["x0"] = 0.4;
    blow_up.num["x-min"] = -0.5;
    blow_up.num["x-max"] = 0.5;
    blow_up.output_path = (temp_dir() / "never2.csv").string();
    CHECK(cli::run(blow_up) == 2);

    RunConfig too_many;
    too_many.command = RunConfig::Command::spectrum;
    too_many.text["potential"] = "box";
    too_many.num["n"] = 51;
    too_many.num["k"] = 60;
    too_many.output_path = (temp_dir() / "never3.csv").string();
    CHECK(cli::run(too_many) == 1);

    RunConfig both_modes;
    both_modes.command = RunConfig::Command::box;
    both_modes.num["a"] = 1.0;
    both_modes.num["e1-re"] = 0.0;
    both_modes.output_path = (temp_dir() / "never4.csv").string();
    CHECK(cli::run(both_modes) == 1);
}

TEST_CASE("relative outputs land under PTBOX_OUTPUT_DIR") {
    auto dir = temp_dir() / "redirect";
    std::filesystem::create_directories(dir);
    REQUIRE(setenv("PTBOX_OUTPUT_DIR", dir.c_str(), 1) == 0);

    RunConfig cfg;
    cfg.command = RunConfig::Command::box;
    cfg.num["a"] = 2.0;
    cfg.num["kappa-max"] = 1;
    cfg.output_path = "rel_out.csv";
    int rc = cli::run(cfg);
    unsetenv("PTBOX_OUTPUT_DIR");
    REQUIRE(rc == 0);

    auto rows = csv_rows(slurp(dir / "rel_out.csv"));
    REQUIRE(rows.size() == 2);
    CHECK(as_double(rows[1][2]) == pi / 2);
}

TEST_CASE("argument parsing front end") {
    auto out = temp_dir() / "argv.csv";
    std::string out_str = out.string();
    const char* ok[] = {"ptbox", "box", "--a", "1", "--kappa-max", "2", "-o", out_str.c_str()};
    CHECK(cli::main_entry(8, ok) == 0);
    CHECK(csv_rows(slurp(out)).size() == 3);

    const char* bogus[] = {"ptbox", "box", "--bogus"};
    CHECK(cli::main_entry(3, bogus) == 1);

    const char* missing[] = {"ptbox", "spectrum"};
    CHECK(cli::main_entry(2, missing) == 1);

    const char* help[] = {"ptbox", "--help"};
    CHECK(cli::main_entry(2, help) == 0);
}
