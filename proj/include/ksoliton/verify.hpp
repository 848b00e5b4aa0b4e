#pragma once

#include <ksoliton/soliton.hpp>

#include <string>
#include <vector>

namespace ksol::verify {

struct CheckResult {
    std::string name;
    double sup_deviation = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    std::string detail;
};

/// passed is set to sup_deviation <= tolerance (false for NaN).
CheckResult make_check(std::string name, double sup_deviation, double tolerance,
                       std::string detail = {});

struct VerificationReport {
    soliton::SolitonParams params;
    soliton::GridSpec grid;
    std::vector<CheckResult> checks;
    bool overall = false;
    double wall_time_s = 0.0;

    const CheckResult* find(std::string_view name) const;
};

/// Builds the profile and runs every invariant check on it. Failures while
/// building (including strict-mode validation) yield a failed report.
VerificationReport run_suite(const soliton::SolitonParams& params,
                             const soliton::GridSpec& grid = {});

/// Checks that only need a built profile and its construction.
std::vector<CheckResult> profile_checks(const soliton::Construction& construction,
                                        const soliton::SolitonProfile& profile);

/// Sup deviation from the closed-form solutions: S^2 and R^2 at alpha = 1/2 and
/// the real-hyperbolic horosphere family in dimension 2 at alpha = 1/2.
CheckResult compare_closed_forms(const soliton::SolitonProfile& profile);
CheckResult compare_closed_forms(const soliton::SolitonParams& params,
                                 const soliton::GridSpec& grid);
bool has_closed_form(const soliton::SolitonProfile& profile);

}  // namespace ksol::verify
