#pragma once

// Invariant batteries behind `kderiv check`.

#include <string>
#include <vector>

#include "kderiv/basecat.hpp"

namespace kderiv {

enum class CheckStatus { Pass, Fail, Skip };
std::string status_tag(CheckStatus s);

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::Pass;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::string base;
    int bound = 0;
    std::vector<CheckResult> checks;

    /// Skips do not fail a suite.
    bool pass() const;
    /// Name and detail of the first failing check, or empty.
    std::string first_failure() const;
};

struct CheckConfig {
    HomotopicalBase base = HomotopicalBase::vect(2);
    int bound = 1;
};

/// "axioms", "simplicial", "enrichment", "comparison" or "all". Capability
/// errors become skips; cap overruns propagate as CapExceeded.
SuiteReport run_suite(const std::string& suite, const CheckConfig& config);

}  // namespace kderiv
