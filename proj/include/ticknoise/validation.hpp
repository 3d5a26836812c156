#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ticknoise::validation {

struct CheckResult {
    std::string name;
    bool passed;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    std::vector<CheckResult> checks;

    int passed() const;
    int failed() const;
};

// Suites: "channels", "fidelity", "unitarity", "cooling". Each runs the
// oracle comparisons for its module: Monte Carlo vs closed forms, Kraus vs
// spectral-filter routes, brute-force enumerations vs formulas.
std::vector<std::string> suite_names();
SuiteReport run_suite(const std::string& name, std::uint64_t seed, std::size_t mc_samples);

// Deterministic JSON for the report (same seed => identical bytes).
std::string reports_to_json(const std::vector<SuiteReport>& reports);

}  // namespace ticknoise::validation
