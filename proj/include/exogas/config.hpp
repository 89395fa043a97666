#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "exogas/grid.hpp"
#include "exogas/params.hpp"
#include "exogas/solver.hpp"

namespace exogas {

struct OutputConfig {
    std::string dir = "out";
    std::string timeseries = "timeseries.csv";
    bool jsonl = false;
    std::vector<double> snapshot_times;
    std::string snapshot_prefix = "snapshot";
};

struct AuditConfig {
    bool representation = false;
    int k = 1;
};

// Full run configuration, parsed from flat `section.key = value` text.
struct RunConfig {
    PhysParams params;
    Grid grid;
    InitialCondition ic;
    StepperConfig stepper;
    BoundaryConditions boundary;
    bool hydro = true;
    double t_end = 10.0;
    int sample_stride = 10;
    std::uint64_t seed = 0;
    OutputConfig output;
    AuditConfig audit;
};

// Parses the key-value text; collects *all* errors (unknown keys, type
// mismatches, violated invariants with the rule named) before throwing
// ConfigError.
RunConfig parse_config(const std::string& text);

// Canonical text form; parse(serialize(c)) == c.
std::string serialize_config(const RunConfig& c);

// FNV-1a hash of the canonical form, for output headers.
std::string config_hash(const RunConfig& c);

// Applies a single `section.key = value` override (the sweep primitive).
void apply_override(RunConfig& c, const std::string& key,
                    const std::string& value);

}  // namespace exogas
