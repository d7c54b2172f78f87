// acceptance.hpp — Machine-checkable release criteria and their report

#pragma once

#include <string>
#include <utility>
#include <vector>

namespace synthdim {

struct CriterionResult {
    std::string id;        // "01 norm-conservation", ...
    bool passed{false};
    std::vector<std::pair<std::string, double>> measured;  // named values, fixed order
    std::string detail;    // bound that was checked, or the error that occurred
};

// Deliberate-fault hook: scaling the two-level coupling in the model
// comparison must make that entry fail, proving the harness can fail.
struct AcceptanceOptions {
    double fault_lambda_scale{1.0};
};

struct AcceptanceReport {
    std::vector<CriterionResult> results;
    bool all_passed() const;
};

// Runs every criterion in order. Failures and exceptions become report
// entries; the call itself does not throw. The report is deterministic.
AcceptanceReport run_acceptance(const AcceptanceOptions& opts = {});

// Runs one criterion by its id prefix ("03") or full id; used by tests.
CriterionResult run_criterion(const std::string& id, const AcceptanceOptions& opts = {});

// One line per criterion plus a final tally; byte-identical across runs.
std::string render_report(const AcceptanceReport& report);

}  // namespace synthdim
