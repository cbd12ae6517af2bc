#include "modvar/cli_sim.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <regex>
#include <sstream>

#include "modvar/cl_dynamics.hpp"
#include "modvar/schrodinger.hpp"
#include "modvar/two_particle.hpp"

namespace modvar::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string exact(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string exact_list(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += exact(v[i]);
    }
    return out;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_number(trim(item)));
    if (out.empty()) throw ConfigError("empty list");
    return out;
}

bool parse_plain(const std::string& s, double& v) {
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    return ec == std::errc() && ptr == last;
}

void check(bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
}

bool is_figure(const std::string& name) {
    return std::find(kFigureNames.begin(), kFigureNames.end(), name) != kFigureNames.end();
}

// Column label fragments.
std::string label_alpha(double a) { return "alpha=" + format_number(a); }
std::string label_x0(double x) { return "X0=" + format_number(x); }
std::string label_T(double T) { return "T=" + format_number(T); }

std::vector<std::optional<double>> to_cells(const std::vector<double>& v) {
    return {v.begin(), v.end()};
}

Table time_table(const RunConfig& cfg) {
    Table t;
    t.first_column = "t";
    t.first = cfg.grid().samples();
    return t;
}

void require_single(const std::vector<double>& v, const char* key, const std::string& fig) {
    check(v.size() == 1, fig + " takes exactly one " + key + " value");
}

std::vector<OutputFile> figure1(const RunConfig& cfg) {
    require_single(cfg.temperature, "temperature", cfg.figure);
    const auto c = cfg.constants();
    const auto b = cfg.bath(cfg.temperature.front());
    const auto spec = cfg.spec(cfg.alpha.front());
    const auto grid = cfg.grid();

    // Density slices every quarter of the time range on an x grid of spacing
    // sigma0 / 4 that covers both packets at all times.
    const int n_slices = 9;
    std::vector<double> slices;
    for (int i = 0; i < n_slices; ++i) slices.push_back(cfg.tmax * i / (n_slices - 1));
    double lo = spec.a.x0, hi = spec.b.x0, w_max = spec.sigma0();
    for (double t : slices) {
        for (const auto& p : {spec.a, spec.b}) {
            const auto s = packet_state(p, c, t);
            const auto q = cl_packet_state(p, b, c, t);
            lo = std::min({lo, s.x_t, q.x_t});
            hi = std::max({hi, s.x_t, q.x_t});
            w_max = std::max({w_max, s.sigma_t, q.w_t});
        }
    }
    const double dx = spec.sigma0() / 4.0;
    lo = std::floor((lo - 8.0 * w_max) / dx) * dx;
    hi = std::ceil((hi + 8.0 * w_max) / dx) * dx;
    const int n_x = static_cast<int>(std::lround((hi - lo) / dx)) + 1;

    auto density_table = [&](bool cl) {
        Table t;
        t.first_column = "x";
        for (int i = 0; i < n_x; ++i) t.first.push_back(lo + dx * i);
        std::vector<std::future<std::vector<double>>> jobs;
        for (double ts : slices) {
            t.names.push_back("t=" + format_number(ts));
            jobs.push_back(std::async(std::launch::async, [&, ts] {
                std::vector<double> col;
                col.reserve(t.first.size());
                for (double x : t.first) {
                    col.push_back(cl ? cl_density(spec, b, c, x, ts)
                                     : superposed_density_current(spec, c, x, ts).density);
                }
                return col;
            }));
        }
        for (auto& j : jobs) t.columns.push_back(to_cells(j.get()));
        return t;
    };

    auto trajectory_table = [&](bool cl) {
        Table t = time_table(cfg);
        std::vector<std::future<BohmianTrajectory>> jobs;
        for (double off : cfg.x0_offset) {
            const double X0 = spec.a.x0 + off * spec.sigma0();
            t.names.push_back(label_x0(X0));
            jobs.push_back(std::async(std::launch::async, [&, X0] {
                return cl ? cl_bohmian_trajectory(spec.a, b, c, X0, grid)
                          : bohmian_trajectory(spec.a, c, X0, grid);
            }));
        }
        for (auto& j : jobs) t.columns.push_back(to_cells(j.get().X));
        return t;
    };

    std::vector<OutputFile> files;
    files.push_back({"fig1_density_schrodinger.csv",
                     render_csv("fig1 density schrodinger", cfg, density_table(false)), {}});
    files.push_back({"fig1_density_cl.csv", render_csv("fig1 density cl", cfg, density_table(true)),
                     {}});
    files.push_back({"fig1_trajectories_schrodinger.csv",
                     render_csv("fig1 trajectories schrodinger", cfg, trajectory_table(false)),
                     {}});
    files.push_back({"fig1_trajectories_cl.csv",
                     render_csv("fig1 trajectories cl", cfg, trajectory_table(true)), {}});
    for (auto& f : files) {
        for (const auto& w : validate_regime(c, b)) f.warnings.push_back(w);
    }
    return files;
}

// Local modular value along trajectories: Schrodinger and one CL panel per
// temperature, for every alpha and X0 offset.
std::vector<OutputFile> local_modular_figure(const RunConfig& cfg) {
    const auto c = cfg.constants();
    const auto grid = cfg.grid();
    Table table = time_table(cfg);
    std::vector<std::future<TimeSeries>> jobs;
    for (double alpha : cfg.alpha) {
        const auto spec = cfg.spec(alpha);
        for (double off : cfg.x0_offset) {
            const double X0 = spec.a.x0 + off * spec.sigma0();
            const std::string tail = ":" + label_alpha(alpha) + ":" + label_x0(X0);
            table.names.push_back("schrodinger" + tail);
            jobs.push_back(std::async(std::launch::async, [=, &c, &cfg] {
                return local_modular_on_trajectory(spec, c, X0, grid, cfg.support_factor);
            }));
            for (double T : cfg.temperature) {
                const auto b = cfg.bath(T);
                table.names.push_back("cl:" + label_T(T) + tail);
                jobs.push_back(std::async(std::launch::async, [=, &c, &cfg] {
                    return cl_local_modular_on_trajectory(spec, b, c, X0, grid,
                                                          cfg.support_factor);
                }));
            }
        }
    }
    OutputFile file{cfg.figure + ".csv", "", {}};
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        auto ts = jobs[i].get();
        for (const auto& w : ts.warnings) file.warnings.push_back(table.names[i] + ": " + w);
        table.columns.push_back(to_cells(ts.value));
    }
    file.content = render_csv(cfg.figure + " local modular value along trajectories", cfg, table);
    return {file};
}

std::vector<OutputFile> figure4(const RunConfig& cfg) {
    const auto c = cfg.constants();
    Table table = time_table(cfg);
    for (double T : cfg.temperature) {
        const auto b = cfg.bath(T);
        const auto window =
            overlap_window(Framework::CommonBath, cfg.spec(0.0), b, c, cfg.support_factor);
        table.notes.push_back("two-particle window for " + label_T(T) +
                              " ends at t = " + format_number(window.t_max));
        for (double alpha : cfg.alpha) {
            const auto spec = cfg.spec(alpha);
            table.names.push_back("two-particle:" + label_T(T) + ":" + label_alpha(alpha));
            std::vector<std::optional<double>> col;
            col.reserve(table.first.size());
            for (double t : table.first) {
                if (t > window.t_max) {
                    col.emplace_back();
                } else {
                    col.emplace_back(reduced_modular_common_bath(spec, b, c, t).value);
                }
            }
            table.columns.push_back(std::move(col));
        }
    }
    return {{"fig4.csv",
             render_csv("fig4 reduced modular value, common bath", cfg, table), {}}};
}

}  // namespace

PhysicalConstants RunConfig::constants() const {
    return PhysicalConstants::make(mass, hbar, kb, gravity);
}

BathParams RunConfig::bath(double T) const { return BathParams::make(constants(), gamma, T); }

SuperpositionSpec RunConfig::spec(double a) const {
    return make_superposition(separation, sigma0, kick, a, constants());
}

TimeGrid RunConfig::grid() const { return TimeGrid::make(0.0, tmax, samples); }

RunConfig figure_defaults(const std::string& figure) {
    RunConfig cfg;
    cfg.figure = figure;
    if (figure.empty()) return cfg;
    check(is_figure(figure), "unknown figure '" + figure + "' (expected fig1..fig4)");
    if (figure == "fig1") {
        cfg.gamma = 0.1;
        cfg.temperature = {10.0};
        cfg.alpha = {0.0};
        cfg.x0_offset = {-2.0, -1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0};
    } else if (figure == "fig2") {
        cfg.gamma = 0.001;
        cfg.temperature = {2.0};
        cfg.alpha = {kPi / 4.0};
        cfg.x0_offset = {-2.0, 0.0, 2.0};
    } else if (figure == "fig3") {
        cfg.gamma = 0.001;
        cfg.temperature = {2.0, 5.0};
        cfg.alpha = {0.0, kPi / 4.0, kPi / 2.0, kPi};
        cfg.x0_offset = {0.0};
    } else {
        cfg.gamma = 0.005;
        cfg.temperature = {2.0, 5.0, 15.0};
        cfg.alpha = {0.0, kPi / 2.0};
        cfg.x0_offset = {0.0};
    }
    return cfg;
}

double parse_number(const std::string& raw) {
    const std::string s = trim(raw);
    double v = 0.0;
    if (parse_plain(s, v)) {
        check(std::isfinite(v), "value '" + s + "' is not finite");
        return v;
    }
    static const std::regex pi_form(R"(^([+-]?)([0-9.eE+-]*?)\*?pi(?:/([0-9.eE+]+))?$)");
    std::smatch m;
    if (std::regex_match(s, m, pi_form)) {
        double mult = 1.0, div = 1.0;
        if (m[2].length() && !parse_plain(m[2].str(), mult)) {
            throw ConfigError("cannot parse number '" + s + "'");
        }
        if (m[3].matched && !parse_plain(m[3].str(), div)) {
            throw ConfigError("cannot parse number '" + s + "'");
        }
        check(div != 0.0, "division by zero in '" + s + "'");
        return (m[1] == "-" ? -1.0 : 1.0) * mult * kPi / div;
    }
    throw ConfigError("cannot parse number '" + s + "'");
}

void apply_setting(RunConfig& cfg, const std::string& raw_key, const std::string& raw_value) {
    const std::string key = trim(raw_key);
    const std::string value = trim(raw_value);
    try {
        if (key == "figure") {
            check(value.empty() || is_figure(value), "unknown figure '" + value + "'");
            cfg.figure = value;
        } else if (key == "framework") {
            check(value == "schrodinger" || value == "cl" || value == "two-particle",
                  "framework must be schrodinger, cl or two-particle");
            cfg.framework = value;
        } else if (key == "mass") {
            cfg.mass = parse_number(value);
        } else if (key == "hbar") {
            cfg.hbar = parse_number(value);
        } else if (key == "kb") {
            cfg.kb = parse_number(value);
        } else if (key == "gravity") {
            cfg.gravity = parse_number(value);
        } else if (key == "gamma") {
            cfg.gamma = parse_number(value);
        } else if (key == "temperature") {
            cfg.temperature = parse_list(value);
        } else if (key == "alpha") {
            cfg.alpha = parse_list(value);
        } else if (key == "separation") {
            cfg.separation = parse_number(value);
        } else if (key == "sigma0") {
            cfg.sigma0 = parse_number(value);
        } else if (key == "kick") {
            cfg.kick = parse_number(value);
        } else if (key == "tmax") {
            cfg.tmax = parse_number(value);
        } else if (key == "samples") {
            int n = 0;
            auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), n);
            check(ec == std::errc() && ptr == value.data() + value.size(),
                  "samples must be an integer");
            cfg.samples = n;
        } else if (key == "x0-offset") {
            cfg.x0_offset = parse_list(value);
        } else if (key == "support-factor") {
            cfg.support_factor = parse_number(value);
        } else if (key == "out") {
            cfg.out = value;
        } else {
            throw ConfigError("unknown configuration key '" + key + "'");
        }
    } catch (const ConfigError& e) {
        if (std::string(e.what()).rfind("unknown configuration key", 0) == 0) throw;
        throw ConfigError(key + ": " + e.what());
    }
}

ConfigEntries read_config_file(const std::string& path) {
    std::ifstream in(path);
    check(static_cast<bool>(in), "cannot open config file '" + path + "'");
    ConfigEntries out;
    std::string line;
    bool header_mode = false;
    bool first = true;
    static const std::regex header_entry(R"(^#\s*([a-z0-9-]+)=(.*)$)");
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (first) {
            first = false;
            if (line.rfind("# modvar", 0) == 0) {
                header_mode = true;
                continue;
            }
        }
        if (header_mode) {
            if (line.empty() || line[0] != '#') break;
            std::smatch m;
            if (std::regex_match(line, m, header_entry)) out.emplace_back(m[1], m[2]);
            continue;
        }
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        check(eq != std::string::npos,
              path + ":" + std::to_string(lineno) + ": expected key=value");
        out.emplace_back(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
    return out;
}

ConfigEntries config_entries(const RunConfig& cfg) {
    return {{"figure", cfg.figure},
            {"framework", cfg.framework},
            {"mass", exact(cfg.mass)},
            {"hbar", exact(cfg.hbar)},
            {"kb", exact(cfg.kb)},
            {"gravity", exact(cfg.gravity)},
            {"gamma", exact(cfg.gamma)},
            {"temperature", exact_list(cfg.temperature)},
            {"alpha", exact_list(cfg.alpha)},
            {"separation", exact(cfg.separation)},
            {"sigma0", exact(cfg.sigma0)},
            {"kick", exact(cfg.kick)},
            {"tmax", exact(cfg.tmax)},
            {"samples", std::to_string(cfg.samples)},
            {"x0-offset", exact_list(cfg.x0_offset)},
            {"support-factor", exact(cfg.support_factor)}};
}

RunConfig resolve_config(const std::string& figure, const ConfigEntries& file_entries,
                         const ConfigEntries& flag_entries) {
    std::string fig = figure;
    for (const auto& [k, v] : file_entries) {
        if (k == "figure" && fig.empty()) fig = v;
    }
    RunConfig cfg = figure_defaults(fig);
    for (const auto& [k, v] : file_entries) {
        check(k != "figure" || v.empty() || v == fig,
              "config file is for " + v + ", not " + fig);
        apply_setting(cfg, k, v);
    }
    for (const auto& [k, v] : flag_entries) {
        check(k != "figure", "the figure is not a flag");
        apply_setting(cfg, k, v);
    }
    cfg.figure = fig;
    validate(cfg);
    return cfg;
}

void validate(const RunConfig& cfg) {
    check(cfg.figure.empty() || is_figure(cfg.figure), "unknown figure '" + cfg.figure + "'");
    check(cfg.framework == "schrodinger" || cfg.framework == "cl" ||
              cfg.framework == "two-particle",
          "framework must be schrodinger, cl or two-particle");
    check(cfg.tmax > 0.0 && std::isfinite(cfg.tmax), "tmax must be positive");
    check(cfg.samples >= 2, "samples must be at least 2");
    check(cfg.support_factor > 0.0 && std::isfinite(cfg.support_factor),
          "support-factor must be positive");
    check(!cfg.temperature.empty() && !cfg.alpha.empty() && !cfg.x0_offset.empty(),
          "temperature, alpha and x0-offset lists must not be empty");
    try {
        const auto c = cfg.constants();
        for (double T : cfg.temperature) (void)cfg.bath(T);
        for (double a : cfg.alpha) (void)cfg.spec(a);
        const auto spec = cfg.spec(cfg.alpha.front());
        check(overlap_margin(Framework::Schrodinger, spec, BathParams::none(), c, 0.0,
                             cfg.support_factor) < 0.0,
              "packet supports overlap at t = 0; increase separation or reduce sigma0");
    } catch (const ParameterError& e) {
        throw ConfigError(e.what());
    }
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

std::string render_csv(const std::string& title, const RunConfig& cfg, const Table& table) {
    std::string out = "# modvar " + title + "\n";
    for (const auto& [k, v] : config_entries(cfg)) out += "# " + k + "=" + v + "\n";
    for (const auto& n : table.notes) out += "# note: " + n + "\n";
    out += table.first_column;
    for (const auto& n : table.names) out += "," + n;
    out += "\n";
    for (std::size_t i = 0; i < table.first.size(); ++i) {
        out += format_number(table.first[i]);
        for (const auto& col : table.columns) {
            out += ",";
            if (col[i]) out += format_number(*col[i]);
        }
        out += "\n";
    }
    return out;
}

std::vector<OutputFile> generate_figure(const RunConfig& cfg) {
    validate(cfg);
    if (cfg.figure == "fig1") return figure1(cfg);
    if (cfg.figure == "fig2" || cfg.figure == "fig3") return local_modular_figure(cfg);
    if (cfg.figure == "fig4") return figure4(cfg);
    throw ConfigError("no figure selected");
}

std::vector<std::pair<double, OverlapWindow>> solve_windows(const RunConfig& cfg) {
    validate(cfg);
    const auto c = cfg.constants();
    const auto spec = cfg.spec(cfg.alpha.front());
    Framework f = Framework::Schrodinger;
    if (cfg.framework == "cl") f = Framework::CaldeiraLeggett;
    if (cfg.framework == "two-particle") f = Framework::CommonBath;
    std::vector<std::pair<double, OverlapWindow>> out;
    if (f == Framework::Schrodinger) {
        out.emplace_back(0.0, overlap_window(f, spec, BathParams::none(), c, cfg.support_factor));
        return out;
    }
    for (double T : cfg.temperature) {
        out.emplace_back(T, overlap_window(f, spec, cfg.bath(T), c, cfg.support_factor));
    }
    return out;
}

void write_files(const std::vector<OutputFile>& files, const std::string& dir) {
    std::filesystem::create_directories(dir);
    for (const auto& f : files) {
        const auto path = std::filesystem::path(dir) / f.name;
        std::ofstream out(path, std::ios::binary);
        out << f.content;
        if (!out) throw std::runtime_error("cannot write " + path.string());
    }
}

std::string fnv1a_hex(const std::string& text) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace modvar::cli
