#pragma once

#include <optional>
#include <string>

#include "exogas/config.hpp"
#include "exogas/diagnostics.hpp"

namespace exogas {

inline constexpr const char* kVersion = "exogas 1.0.0";

struct RunReport {
    int exit_code = 0;
    std::string message;
    bool theorem_regime = false;
    bool outside_theorem_regime = false;
    double decay_initial = 0;
    double decay_final = 0;
    FunctionalRecord final_record;
    ValidationReport final_state;
    long long steps = 0;
    double max_audit_residual = 0;
    double gplus_slope = 0;  // fitted growth envelope of ||g+||_inf
    bool invariants_pass = true;
};

// Executes the solver loop to t_end, writing the timeseries (one
// FunctionalRecord row per sample_stride steps), optional snapshots and
// audit residual CSV, and a final report. Nonzero exit on StepFailure or a
// runtime invariant violation. out_dir_override, when set, wins over
// config/output.dir and the EXOGAS_OUT_DIR fallback.
RunReport run(const RunConfig& cfg,
              const std::optional<std::string>& out_dir_override = {},
              bool quiet = false);

// Identity/invariant verification table for a config (runs it, then prints
// one row per check with its threshold). Returns true iff all checks pass.
struct VerifyRow {
    std::string name;
    double value;
    double threshold;
    bool pass;
};
std::vector<VerifyRow> verify(const RunConfig& cfg,
                              const std::optional<std::string>& out_dir = {},
                              bool quiet = false);

std::string resolve_out_dir(const RunConfig& cfg,
                            const std::optional<std::string>& override_dir);

// Domain-truncation insensitivity check: reruns the config with x_max
// doubled at the same dx and returns the sup-difference of the final
// (v, u, theta, z) over the original domain.
double xmax_doubling_difference(const RunConfig& cfg);

}  // namespace exogas
