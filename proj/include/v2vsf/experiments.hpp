#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "v2vsf/monte_carlo.hpp"

namespace v2vsf::cli {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& what, int line = 0)
        : std::runtime_error(line > 0 ? what + " (line " + std::to_string(line) + ")" : what),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_ = 0;
};

double dbm_to_watt(double dbm);
double watt_to_dbm(double watt);

// Flat key=value experiment description; defaults are the baseline network
// setting. d_s may be given directly or through v_s (two-second rule,
// d_s = 2 v_s).
struct ExperimentConfig {
    double lambda_p = 0.1;       // m^-1
    double d_v = 5.0;            // m
    std::optional<double> d_s;   // m
    std::optional<double> v_s;   // m/s
    double w_l = 5.0;            // m
    double alpha = 4.0;
    double pt_dbm = 30.0;
    double noise_dbm = -90.0;
    double freq_hz = 5e9;
    double d0_m = 1.0;
    std::string antenna = "both";  // c1 | c2 | both
    std::size_t trials = 100000;
    std::uint64_t seed = 20260810;
    double window_half_length = 4000.0;
    std::size_t grid_points = 199;
    double grid_mh_min = 1e-2;
    double grid_mh_max = 1e2;
    double sigma_mh = 0.5;       // SF operating point for power sweeps, in MH
    bool renormalize_c2 = true;

    // sweep-only keys
    std::string sweep_key;
    std::vector<std::string> sweep_values;
    std::vector<std::string> curves = {"analytic"};
    std::size_t dump_fields = 0;
    std::size_t dump_patterns = 0;

    std::set<std::string> set_keys;  // keys explicitly assigned

    // Assign one key; throws ConfigError on unknown keys or bad values.
    void set(const std::string& key, const std::string& value, int line = 0);
    bool is_set(const std::string& key) const { return set_keys.count(key) > 0; }

    double safety_distance() const;  // resolves d_s / v_s / default (145 m)
    double hard_core() const { return d_v + safety_distance(); }

    link::RadioConfig radio() const;
    link::LaneGeometry geometry() const;
    mc::SimConfig sim_config(lanes::AntennaCase antenna_case) const;
    std::vector<double> sigma_grid() const;
    std::vector<lanes::AntennaCase> cases() const;

    // Canonical "k=v;..." snapshot of every resolved value, and its FNV-1a
    // hash; both go into emitted file headers.
    std::string snapshot() const;
    std::string snapshot_hash() const;
};

// key = value lines, '#' comments; parse errors carry the line number.
ExperimentConfig load_config_file(const std::filesystem::path& path);

// Seed fallback: V2V_SF_SEED, when the config does not set one.
void apply_seed_env(ExperimentConfig& config);

struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> comments;  // emitted as leading '#' lines
};

void write_csv(const std::filesystem::path& path, const ResultTable& table);

struct RunOutputs {
    std::map<std::string, ResultTable> tables;
    std::vector<std::filesystem::path> files;
    std::vector<std::string> notices;
};

// fig1: analytic + Monte Carlo + replacement-PPP SF CCDFs, both antenna
//       cases, alpha in {3,4} (single alpha when overridden).
// fig2: exact vs small/large-threshold approximations (case c1) plus the
//       relative-error probes at the 99% and 5% points.
// fig3: SF CCDF vs transmit power with the noise-free limit per case.
RunOutputs run_named(const std::string& name, ExperimentConfig config,
                     const std::filesystem::path& out_dir);

// Single-key sweep driven by a config file; writes one CSV per sweep value,
// a summary, and a gnuplot script.
RunOutputs run_sweep(const ExperimentConfig& config, const std::filesystem::path& out_dir);

}  // namespace v2vsf::cli
