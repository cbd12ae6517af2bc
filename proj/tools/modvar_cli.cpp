// modvar: non-overlap windows, figure data, verification gates and golden values.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "modvar/acceptance.hpp"
#include "modvar/cli_sim.hpp"

#ifndef MODVAR_GOLDEN_DIR
#define MODVAR_GOLDEN_DIR ""
#endif

namespace {

using modvar::cli::ConfigError;
using modvar::cli::RunConfig;

constexpr int kExitGateFailure = 1;
constexpr int kExitConfigError = 2;

// Raw flag values; only the flags actually given override the configuration.
struct Flags {
    std::string config;
    std::map<std::string, std::string> scalars;
    std::map<std::string, std::vector<std::string>> lists;
};

void add_config_flags(CLI::App* app, Flags& f) {
    app->add_option("--config", f.config, "key=value file or a CSV produced by this tool");
    const std::pair<const char*, const char*> scalars[] = {
        {"framework", "schrodinger | cl | two-particle"},
        {"gamma", "relaxation rate"},
        {"separation", "packet separation L"},
        {"sigma0", "initial packet width"},
        {"kick", "wavenumber k of the right packet"},
        {"gravity", "field strength g (signed)"},
        {"mass", "particle mass"},
        {"hbar", "reduced Planck constant"},
        {"kb", "Boltzmann constant"},
        {"tmax", "end of the time grid"},
        {"samples", "number of time samples"},
        {"support-factor", "effective support in widths per packet"},
        {"out", "output directory"},
    };
    for (const auto& [name, help] : scalars) {
        app->add_option(std::string("--") + name, f.scalars[name], help);
    }
    const std::pair<const char*, const char*> lists[] = {
        {"temperature", "bath temperature (repeatable)"},
        {"alpha", "relative phase, e.g. pi/4 (repeatable)"},
        {"x0-offset", "initial position offset from -L/2 in units of sigma0 (repeatable)"},
    };
    for (const auto& [name, help] : lists) {
        app->add_option(std::string("--") + name, f.lists[name], help)->delimiter(',');
    }
}

RunConfig resolve(const std::string& figure, const Flags& f, CLI::App* app) {
    modvar::cli::ConfigEntries file_entries, flag_entries;
    if (!f.config.empty()) file_entries = modvar::cli::read_config_file(f.config);
    for (const auto& [k, v] : f.scalars) {
        if (app->count("--" + k)) flag_entries.emplace_back(k, v);
    }
    for (const auto& [k, v] : f.lists) {
        if (!app->count("--" + k)) continue;
        std::string joined;
        for (const auto& item : v) joined += (joined.empty() ? "" : ",") + item;
        flag_entries.emplace_back(k, joined);
    }
    return modvar::cli::resolve_config(figure, file_entries, flag_entries);
}

std::optional<modvar::PlanckReading> parse_reading(const std::string& s) {
    if (s == "hbar") return modvar::PlanckReading::ReducedPlanck;
    if (s == "unit") return modvar::PlanckReading::Unit;
    if (s == "h") return modvar::PlanckReading::FullPlanck;
    return std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Modular-variable dynamics of separated wave packets"};
    app.require_subcommand(1);

    Flags window_flags, figure_flags, verify_flags;
    std::string figure_name;
    std::string suite = "fast";
    std::string golden_dir = MODVAR_GOLDEN_DIR;
    std::string reading = "hbar";
    std::string golden_out = "golden_values.txt";

    auto* window = app.add_subcommand("window", "solve the non-overlap window");
    add_config_flags(window, window_flags);

    auto* figure = app.add_subcommand("figure", "write figure data as CSV");
    figure->add_option("name", figure_name, "fig1 | fig2 | fig3 | fig4");
    add_config_flags(figure, figure_flags);

    auto* verify = app.add_subcommand("verify", "run the verification gates");
    verify->add_option("--suite", suite, "fast | full")->check(CLI::IsMember({"fast", "full"}));
    verify->add_option("--golden-dir", golden_dir, "directory with the committed figure CSVs");
    verify->add_option("--planck-reading", reading, "Planck constant in the density-matrix coefficients: hbar | unit | h")
        ->check(CLI::IsMember({"hbar", "unit", "h"}));
    add_config_flags(verify, verify_flags);

    auto* golden = app.add_subcommand("golden", "write the golden-values file");
    golden->add_option("--out", golden_out, "output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfigError;
    }

    try {
        if (*window) {
            const auto cfg = resolve("", window_flags, window);
            for (const auto& [T, w] : modvar::cli::solve_windows(cfg)) {
                std::cout << "framework=" << cfg.framework;
                if (cfg.framework != "schrodinger") {
                    std::cout << " gamma=" << modvar::cli::format_number(cfg.gamma)
                              << " temperature=" << modvar::cli::format_number(T);
                }
                std::cout << " t_max=" << modvar::cli::format_number(w.t_max) << "\n";
                std::cerr << w.criterion << "\n";
            }
            return 0;
        }
        if (*figure) {
            const auto cfg = resolve(figure_name, figure_flags, figure);
            if (cfg.figure.empty()) throw ConfigError("no figure given (fig1..fig4)");
            const auto files = modvar::cli::generate_figure(cfg);
            modvar::cli::write_files(files, cfg.out);
            for (const auto& f : files) {
                for (const auto& w : f.warnings) std::cerr << "warning: " << f.name << ": " << w << "\n";
                std::cerr << "wrote " << cfg.out << "/" << f.name << "\n";
            }
            return 0;
        }
        if (*verify) {
            const auto cfg = resolve("", verify_flags, verify);
            modvar::gates::GateOptions opts;
            opts.fast = suite == "fast";
            opts.golden_dir = golden_dir;
            opts.reading = *parse_reading(reading);
            bool ok = true;
            for (int id = 1; id <= modvar::gates::kCriterionCount; ++id) {
                const auto r = modvar::gates::run_criterion(id, opts);
                std::cout << modvar::gates::format_gate(r) << std::endl;
                ok = ok && r.pass;
            }
            for (const auto& r : modvar::gates::config_gates(cfg, opts)) {
                std::cout << modvar::gates::format_gate(r) << std::endl;
                ok = ok && r.pass;
            }
            return ok ? 0 : kExitGateFailure;
        }
        if (*golden) {
            std::string command = "modvar golden --out " + golden_out;
            std::ofstream out(golden_out, std::ios::binary);
            out << modvar::gates::render_golden(command);
            if (!out) throw std::runtime_error("cannot write " + golden_out);
            std::cerr << "wrote " << golden_out << "\n";
            return 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const modvar::ParameterError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const modvar::DomainError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitGateFailure;
    }
    return 0;
}
