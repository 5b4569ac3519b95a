#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qst/cli/config.hpp"
#include "qst/cli/report.hpp"

namespace qst::cli {

enum class Suite { group, hopf, twist, trace, mixing, gauge, causality, all };

std::string_view to_string(Suite s);
Suite parse_suite(std::string_view name);

// Raised for requests that cannot run at all: a suite applied to a spacetime it does not
// cover, malformed grids. Maps to exit code 2.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int check_failed = 1;
inline constexpr int usage = 2;
}  // namespace exit_code

struct SuiteOutcome {
    int exit_code = exit_code::ok;
    Report report;
    std::string error;  // set with exit_code::usage
};

// Whether the suite has anything to check on the configured spacetime.
bool applicable(Suite s, const RunConfig& cfg);

// Never throws for check failures; usage problems come back as exit code 2.
SuiteOutcome run_suite(Suite s, const RunConfig& cfg);

// Individual suites; they throw UsageError when not applicable.
Report group_suite(const RunConfig& cfg);
Report hopf_suite(const RunConfig& cfg);
Report twist_suite(const RunConfig& cfg);
Report trace_suite(const RunConfig& cfg);
Report mixing_suite(const RunConfig& cfg);
Report gauge_suite(const RunConfig& cfg);
Report causality_suite(const RunConfig& cfg);

// Truncated Moyal matrix-basis identities at the given truncation; shared by the trace suite
// and the matrix-basis command.
Report matrix_basis_checks(int truncation, double theta, std::uint64_t seed, double tolerance);

// a:b:step with step > 0, endpoints included to within half a step.
std::vector<double> arithmetic_grid(std::string_view text);

}  // namespace qst::cli
