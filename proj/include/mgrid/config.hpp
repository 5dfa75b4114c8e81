#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mgrid/milp.hpp"
#include "mgrid/pms.hpp"
#include "mgrid/profiles.hpp"
#include "mgrid/sizing.hpp"

namespace mgrid::config {

// INI-style sectioned key-value file. Unknown keys are errors; typos in
// engineering parameters must not pass silently.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    // profiles
    std::optional<std::string> load_csv;
    LoadSpec load_spec = default_load_spec();
    std::optional<std::string> irradiance_csv;
    IrradianceSpec irradiance_spec;
    double horizon_days = 365.0;
    double step_min = 5.0;
    std::uint64_t seed = 1;

    sizing::DeviceCatalog catalog = sizing::default_catalog();
    sizing::CostModel costs;
    pms::PmsConfig pms_cfg;
    milp::SolveOptions solve_opts;
    sizing::SizingGrid grid;

    // simulation
    double soc0 = 0.5;
    std::string out_dir = "out";
};

// Parses the file, applies environment overrides of the form
// MGRID_<SECTION>_<KEY>, and validates every section.
// throws ConfigError with file:line plus the offending field.
RunConfig load_config(const std::string& path);

// Decision files written by `size` and consumed by `simulate`.
void write_decision(const sizing::SizingDecision& d, const std::string& path);
sizing::SizingDecision read_decision(const std::string& path);

}  // namespace mgrid::config
