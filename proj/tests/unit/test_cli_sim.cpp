#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "modvar/cli_sim.hpp"
#include "modvar/overlap_window.hpp"

using namespace modvar;
using namespace modvar::cli;

namespace {

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string l;
    while (std::getline(in, l)) out.push_back(l);
    return out;
}

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string f;
    while (std::getline(ss, f, ',')) out.push_back(f);
    if (!s.empty() && s.back() == ',') out.emplace_back();
    return out;
}

// Data rows of a CSV as columns of strings.
std::vector<std::vector<std::string>> rows(const std::string& csv) {
    std::vector<std::vector<std::string>> out;
    bool header = true;
    for (const auto& l : lines(csv)) {
        if (l.rfind("#", 0) == 0) continue;
        if (header) {
            header = false;
            continue;
        }
        out.push_back(split(l));
    }
    return out;
}

std::string column_header(const std::string& csv) {
    for (const auto& l : lines(csv)) {
        if (l.rfind("#", 0) != 0) return l;
    }
    return "";
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
    const auto p = std::filesystem::temp_directory_path() / name;
    std::ofstream(p) << content;
    return p;
}

}  // namespace

TEST_CASE("numbers") {
    CHECK(parse_number("0.25") == 0.25);
    CHECK(parse_number("+3") == 3.0);
    CHECK(parse_number("pi/4") == doctest::Approx(kPi / 4.0));
    CHECK(parse_number("-pi") == doctest::Approx(-kPi));
    CHECK(parse_number("3*pi/4") == doctest::Approx(3.0 * kPi / 4.0));
    CHECK_THROWS_AS(parse_number("abc"), ConfigError);
    CHECK_THROWS_AS(parse_number("inf"), ConfigError);
    CHECK(format_number(0.1 + 0.2) == "0.3");
    CHECK(format_number(1.0 / 3.0) == "0.333333333333333");
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("settings and validation") {
    RunConfig cfg = figure_defaults("fig3");
    apply_setting(cfg, "temperature", "2, 5,15");
    CHECK(cfg.temperature.size() == 3);
    apply_setting(cfg, "alpha", "pi/2");
    CHECK(cfg.alpha.size() == 1);
    CHECK_THROWS_AS(apply_setting(cfg, "gama", "1"), ConfigError);
    CHECK_THROWS_AS(apply_setting(cfg, "samples", "2.5"), ConfigError);
    CHECK_THROWS_AS(apply_setting(cfg, "framework", "lindblad"), ConfigError);
    CHECK_THROWS_AS(figure_defaults("fig9"), ConfigError);

    RunConfig bad = figure_defaults("fig2");
    bad.samples = 1;
    CHECK_THROWS_AS(validate(bad), ConfigError);
    bad = figure_defaults("fig2");
    bad.gamma = -1.0;
    CHECK_THROWS_AS(validate(bad), ConfigError);
    bad = figure_defaults("fig2");
    bad.separation = 5.0;
    CHECK_THROWS_AS(validate(bad), ConfigError);
}

TEST_CASE("precedence: defaults < config file < flags") {
    const auto path = temp_file("modvar_test.cfg", "# comment\ngamma = 0.002\ntemperature=3\n\nsamples=11\n");
    const auto file = read_config_file(path.string());
    CHECK(file.size() == 3);
    const auto cfg = resolve_config("fig2", file, {{"temperature", "4"}});
    CHECK(cfg.gamma == 0.002);
    CHECK(cfg.temperature == std::vector<double>{4.0});
    CHECK(cfg.samples == 11);
    CHECK(cfg.alpha.front() == doctest::Approx(kPi / 4.0));

    const auto bad = temp_file("modvar_bad.cfg", "gamma=0.1\nsigma=2\n");
    CHECK_THROWS_AS(resolve_config("fig2", read_config_file(bad.string()), {}), ConfigError);
    const auto malformed = temp_file("modvar_malformed.cfg", "gamma 0.1\n");
    CHECK_THROWS_AS(read_config_file(malformed.string()), ConfigError);
    CHECK_THROWS_AS(read_config_file("/nonexistent/modvar.cfg"), ConfigError);
}

TEST_CASE("figure defaults") {
    const auto f2 = generate_figure(figure_defaults("fig2"));
    REQUIRE(f2.size() == 1);
    CHECK(split(column_header(f2[0].content)).size() == 7);
    CHECK(f2[0].content.find("# gamma=0.001") != std::string::npos);
    CHECK(f2[0].content.find("# temperature=2\n") != std::string::npos);

    const auto f3 = generate_figure(figure_defaults("fig3"));
    CHECK(split(column_header(f3[0].content)).size() == 13);

    const auto f4 = generate_figure(figure_defaults("fig4"));
    CHECK(split(column_header(f4[0].content)).size() == 7);
    CHECK(rows(f4[0].content).size() == 2001);
}

TEST_CASE("fig4 cells beyond the two-particle window are empty") {
    RunConfig cfg = figure_defaults("fig4");
    cfg.tmax = 8.0;
    cfg.samples = 9;
    const auto r = rows(generate_figure(cfg)[0].content);
    // T = 15 window ends near 5.72; T = 2 near 8.89.
    CHECK(r[5].size() == 7);
    CHECK_FALSE(r[5][5].empty());
    CHECK(r[6][5].empty());
    CHECK_FALSE(r[8][1].empty());
}

TEST_CASE("output is deterministic and reproducible from its header") {
    RunConfig cfg = figure_defaults("fig2");
    cfg.samples = 51;
    cfg.alpha = {kPi / 3.0};
    const auto first = generate_figure(cfg)[0].content;
    CHECK(first == generate_figure(cfg)[0].content);
    CHECK(first.find('\r') == std::string::npos);

    const auto path = temp_file("modvar_header.csv", first);
    const auto again = resolve_config("", read_config_file(path.string()), {});
    CHECK(generate_figure(again)[0].content == first);
}

TEST_CASE("fig1 without a bath: the CL panel reproduces the Schrodinger one") {
    RunConfig cfg = figure_defaults("fig1");
    cfg.gamma = 0.0;
    cfg.samples = 41;
    const auto files = generate_figure(cfg);
    REQUIRE(files.size() == 4);
    auto max_diff = [](const std::string& a, const std::string& b) {
        const auto ra = rows(a), rb = rows(b);
        REQUIRE(ra.size() == rb.size());
        double d = 0.0;
        for (std::size_t i = 0; i < ra.size(); ++i) {
            for (std::size_t j = 1; j < ra[i].size(); ++j) {
                d = std::max(d, std::abs(std::stod(ra[i][j]) - std::stod(rb[i][j])));
            }
        }
        return d;
    };
    CHECK(max_diff(files[0].content, files[1].content) <= 1e-8);
    CHECK(max_diff(files[2].content, files[3].content) <= 1e-8);
    CHECK(split(column_header(files[2].content)).size() == 10);
}

TEST_CASE("windows") {
    RunConfig cfg;
    CHECK(solve_windows(cfg).front().second.t_max == doctest::Approx(10.002).epsilon(5e-4));
    cfg.framework = "cl";
    cfg.temperature = {2.0, 15.0};
    const auto w = solve_windows(cfg);
    REQUIRE(w.size() == 2);
    CHECK(w[0].second.t_max == doctest::Approx(9.606).epsilon(5e-4));
    CHECK(w[1].second.t_max == doctest::Approx(7.858).epsilon(5e-4));

    // Insensitive to the search bracket.
    const PhysicalConstants c;
    const auto s = make_superposition(50.0, 1.0, 0.1, 0.0, c);
    const auto b = BathParams::make(c, 0.001, 2.0);
    const double ref = overlap_window(Framework::CaldeiraLeggett, s, b, c, 5.0, 100.0).t_max;
    for (double hi : {20.0, 50.0}) {
        CHECK(std::abs(overlap_window(Framework::CaldeiraLeggett, s, b, c, 5.0, hi).t_max - ref) < 1e-6);
    }
    const double tm = ref;
    CHECK(overlap_margin(Framework::CaldeiraLeggett, s, b, c, tm - 1e-6) < 0.0);
    CHECK(overlap_margin(Framework::CaldeiraLeggett, s, b, c, tm + 1e-6) > 0.0);
    const auto touching = make_superposition(8.0, 1.0, 0.1, 0.0, c);
    CHECK_THROWS_AS(overlap_window(Framework::Schrodinger, touching, BathParams::none(), c), DomainError);
}

TEST_CASE("write_files creates the directory") {
    const auto dir = std::filesystem::temp_directory_path() / "modvar_out_test";
    std::filesystem::remove_all(dir);
    write_files({{"a.csv", "t\n0\n", {}}}, dir.string());
    CHECK(std::filesystem::exists(dir / "a.csv"));
}
