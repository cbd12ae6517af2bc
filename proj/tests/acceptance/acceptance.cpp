// Acceptance criteria: one pass/fail line per criterion.

#include <iostream>
#include <vector>

#include <CLI11.hpp>

#include "modvar/acceptance.hpp"

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    std::vector<int> ids;
    bool fast = false;
    std::string reading = "hbar";
    std::string golden_dir = MODVAR_GOLDEN_DIR;
    app.add_option("--criterion", ids, "criterion number (repeatable); all when omitted")
        ->check(CLI::Range(1, modvar::gates::kCriterionCount));
    app.add_flag("--fast", fast, "reduced sample counts");
    app.add_option("--planck-reading", reading, "hbar | unit | h")
        ->check(CLI::IsMember({"hbar", "unit", "h"}));
    app.add_option("--golden-dir", golden_dir, "committed figure CSVs");
    CLI11_PARSE(app, argc, argv);

    if (ids.empty()) {
        for (int i = 1; i <= modvar::gates::kCriterionCount; ++i) ids.push_back(i);
    }
    modvar::gates::GateOptions opts;
    opts.fast = fast;
    opts.golden_dir = golden_dir;
    if (reading == "unit") opts.reading = modvar::PlanckReading::Unit;
    if (reading == "h") opts.reading = modvar::PlanckReading::FullPlanck;

    bool ok = true;
    for (int id : ids) {
        const auto r = modvar::gates::run_criterion(id, opts);
        std::cout << modvar::gates::format_gate(r) << std::endl;
        ok = ok && r.pass;
    }
    return ok ? 0 : 1;
}
