#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace roucir::verify {

struct CheckResult {
    std::string id;
    std::string name;
    bool pass = false;
    std::string measured;               // value vs threshold, human readable
    std::vector<std::string> details;   // per-case lines
};

// One function per acceptance criterion; every tolerance is pinned in the
// implementation.
CheckResult check_fbm_covariance();                       // A1
CheckResult check_positivity();                           // A2
CheckResult check_ladder_ordering();                      // A3
std::vector<CheckResult> check_uniform_convergence();     // A4, A5, A9
CheckResult check_exact_identities();                     // A6
CheckResult check_square_consistency();                   // A7
CheckResult check_local_time();                           // A8
CheckResult check_mean_ode();                             // A10
CheckResult check_integrability();                        // A11

bool known_suite(const std::string& suite);

/// suite is one of: noise, schemes, reflection, convergence, all.
std::vector<CheckResult> run_suite(const std::string& suite);

/// One pass/fail line per check (plus detail lines when verbose); returns
/// true when everything passed.
bool print_results(std::ostream& out, const std::vector<CheckResult>& results,
                   bool verbose = false);

}  // namespace roucir::verify
