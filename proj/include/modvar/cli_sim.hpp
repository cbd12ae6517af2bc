#pragma once

// Run configuration, CSV emission and figure-data generation for the
// command-line tool.

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "modvar/core_model.hpp"
#include "modvar/overlap_window.hpp"

namespace modvar::cli {

/// Invalid or unknown configuration entry; maps to exit status 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline const std::vector<std::string> kFigureNames = {"fig1", "fig2", "fig3", "fig4"};

struct RunConfig {
    std::string figure;                   // fig1..fig4, empty for non-figure commands
    std::string framework = "schrodinger";  // schrodinger | cl | two-particle (window only)
    double mass = 1.0;
    double hbar = 1.0;
    double kb = 1.0;
    double gravity = -3.0;
    double gamma = 0.001;
    std::vector<double> temperature{2.0};
    std::vector<double> alpha{0.0};
    double separation = 50.0;
    double sigma0 = 1.0;
    double kick = 0.1;
    double tmax = 2.0;
    int samples = 2001;
    std::vector<double> x0_offset{0.0};  // in units of sigma0, relative to -L/2
    double support_factor = kDefaultSupportFactor;
    std::string out = ".";

    PhysicalConstants constants() const;
    BathParams bath(double T) const;
    SuperpositionSpec spec(double alpha) const;
    TimeGrid grid() const;
};

/// Built-in defaults; for a figure name these encode the figure's parameters.
RunConfig figure_defaults(const std::string& figure);

/// Parses a number; also accepts multiples and fractions of pi ("pi/4", "3*pi/4", "-pi").
double parse_number(const std::string& text);

/// Applies one key=value entry. List-valued keys take comma-separated values.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

using ConfigEntries = std::vector<std::pair<std::string, std::string>>;

/// Reads key=value lines with '#' comments. A file starting with a '# modvar'
/// line is read as a CSV header: its '# key=value' lines are the entries and
/// reading stops at the first line without '#'.
ConfigEntries read_config_file(const std::string& path);

/// The resolved configuration as key=value pairs in a fixed order, with
/// numbers printed exactly. The output path is not part of it.
ConfigEntries config_entries(const RunConfig& cfg);

/// Figure defaults, then the config-file entries, then the flag entries. The
/// figure is taken from `figure` or else from the file's "figure" entry.
RunConfig resolve_config(const std::string& figure, const ConfigEntries& file_entries,
                         const ConfigEntries& flag_entries);

/// Throws ConfigError unless every value satisfies the model invariants.
void validate(const RunConfig& cfg);

/// 15 significant digits.
std::string format_number(double v);

struct Table {
    std::string first_column;  // "t" or "x"
    std::vector<double> first;
    std::vector<std::string> names;
    std::vector<std::vector<std::optional<double>>> columns;  // empty cell when unset
    std::vector<std::string> notes;                            // extra '#' header lines
};

/// Header block echoing the configuration, then the column names and rows.
std::string render_csv(const std::string& title, const RunConfig& cfg, const Table& table);

struct OutputFile {
    std::string name;
    std::string content;
    std::vector<std::string> warnings;
};

/// CSV files of a figure, computed from a validated configuration.
std::vector<OutputFile> generate_figure(const RunConfig& cfg);

/// Non-overlap windows for the configured framework, one per temperature.
std::vector<std::pair<double, OverlapWindow>> solve_windows(const RunConfig& cfg);

/// Writes each file into `dir`, creating it if needed.
void write_files(const std::vector<OutputFile>& files, const std::string& dir);

/// 64-bit FNV-1a of a string, printed as 16 hex digits.
std::string fnv1a_hex(const std::string& text);

}  // namespace modvar::cli
