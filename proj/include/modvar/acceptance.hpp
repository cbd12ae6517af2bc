#pragma once

// Verification gates: each acceptance criterion as a runnable check that
// reports its tolerance and the observed value.

#include <functional>
#include <string>
#include <vector>

#include "modvar/cl_dynamics.hpp"
#include "modvar/cli_sim.hpp"

namespace modvar::gates {

struct GateResult {
    int criterion = 0;  // 0 for configuration gates
    std::string name;
    bool pass = false;
    std::string tolerance;
    std::string observed;
    double seconds = 0.0;
};

struct GateOptions {
    bool fast = false;        // fewer samples
    std::string golden_dir;   // committed figure CSVs
    PlanckReading reading = PlanckReading::ReducedPlanck;  // reading under test
};

inline constexpr int kCriterionCount = 14;

/// Runs one acceptance criterion (1..kCriterionCount).
GateResult run_criterion(int id, const GateOptions& opts);

/// Oracle gates for the bath of a run configuration: closed-form vs
/// quadrature modular value, Heisenberg check and PDE residual. With
/// gamma = 0 these compare against the Schrodinger closed forms.
std::vector<GateResult> config_gates(const cli::RunConfig& cfg, const GateOptions& opts);

struct GoldenCheck {
    std::string quantity;
    std::string parameters;  // canonical key=value list, hashed into the record
    std::string oracle_id;
    double tolerance;        // absolute, per component
    std::function<std::vector<double>()> oracle;
    std::function<std::vector<double>()> closed_form;
};

/// Quantities recorded in the golden-values file.
std::vector<GoldenCheck> golden_checks();

struct GoldenRecord {
    std::string quantity;
    std::string hash;
    std::vector<double> values;
    std::string oracle_id;
    double tolerance = 0.0;
};

/// Evaluates every oracle and renders the file, recording `command` in the header.
std::string render_golden(const std::string& command);

/// Parses a golden-values file; '#' lines are skipped.
std::vector<GoldenRecord> parse_golden(const std::string& text);

/// "criterion 03 PASS name | tolerance ... | observed ... | 0.12 s"
std::string format_gate(const GateResult& r);

}  // namespace modvar::gates
