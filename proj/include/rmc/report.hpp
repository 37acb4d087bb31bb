#ifndef RMC_REPORT_HPP
#define RMC_REPORT_HPP

#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>
#include <vector>

#include "rmc/bigint.hpp"

namespace rmc {

inline constexpr const char* kToolVersion = "0.1.0";

enum class Command { Triple, Plan, Curve, Count, Congruence, Analyze };

struct RunConfig {
    Command command = Command::Analyze;
    std::string traces_text;  // "x=<elt> z=<elt> [n=<n>]"
    std::string family_name;  // legendre | j1728 | ttv-odd:<r> | ttv-even:<r>
    std::string target_name;  // congruence command: family syntax or "eisenstein"
    int64_t plan_n = 0;       // plan command
    std::vector<BigRat> x0s;
    int64_t ell = 0;   // congruence command
    int64_t p = 0;     // count command
    int64_t pmax = 100;
    int precision = 30;
    bool deep = false;
    bool strict = false;
    bool parallel = true;
};

// Build the full report for a config.  Throws std::invalid_argument for
// malformed configs and std::domain_error/runtime_error for computation
// failures; science verdicts and unsupported-family outcomes are recorded in
// the report instead of thrown.
nlohmann::json run_pipeline(const RunConfig& config);

// Canonical serialization: sorted keys, two-space indent, trailing newline.
// Byte-identical across runs for the same config.
std::string emit(const nlohmann::json& report);

// 0 when every science verdict in the report is "verified" (or there are
// none); 2 otherwise.
int science_flag(const nlohmann::json& report);

}  // namespace rmc

#endif
