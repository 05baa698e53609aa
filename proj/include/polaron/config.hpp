#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "polaron/model.hpp"
#include "polaron/series.hpp"

namespace polaron {

// Flat key-value configuration with dotted sections (model.*, compute.*,
// output.*).  Parsing is strict: unknown keys are errors.  Values may be
// overridden by environment variables POLARON_<SECTION>_<KEY> and then by
// CLI flags.
struct RunConfig {
    ModelSpec model;

    std::uint64_t seed = 1;
    int nmax = 3;
    int nmax_cap = 5;
    int mc_count = 2000;
    int quad_order_coupling = 32;
    int quad_order_dispersion = 200;
    int pairing_cap = kDefaultPairingCap;
    int threads = 1;
    int grid_count = 64;
    double trunc_fraction = 0.1;
    bool deterministic_low_dim = true;
    double t_min = 2.0;
    double t_max = 6.0;
    int t_count = 9;

    std::string format = "csv";  // csv | json
    std::string path;            // empty: stdout

    SeriesOptions series_options() const;

    // canonical "key = value" listing (sorted), used for hashing and reports
    std::map<std::string, std::string> canonical() const;
    std::string config_hash() const;  // FNV-1a over the canonical listing
};

// Parse a config file (lines "section.key = value", '#' comments); then apply
// POLARON_* environment overrides.  Throws ConfigError naming any unknown key.
RunConfig load_config(const std::string& file_path);

// Environment overrides only, on top of defaults (no file).
RunConfig default_config_with_env();

// Apply a single "section.key" assignment (used by both file and env paths).
void apply_key(RunConfig& cfg, const std::string& key, const std::string& value);

}  // namespace polaron
