#pragma once

#include "linkopt/optimizer.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace linkopt {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SweepSpec {
    std::string variable = "distance"; // distance | snr | payload
    double lo = 1.0;                   // snr sweeps are specified in dB
    double hi = 80.0;
    int points = 80;
    std::string spacing = "linear"; // linear | log
};

struct RunConfig {
    LinkBudget link;
    EnergyParams energy;
    ReliabilityTarget reliability{1e-3, 3};
    PacketShape shape{48, 40};
    std::vector<std::string> schemes;
    SweepSpec sweep;
    RefitConstants refit;
    std::vector<int> per_error_n_bits{32, 1024};
    bool oracle_quadrature = true;
    bool oracle_monte_carlo = false;
    std::uint64_t seed = 12345;
    long n_packets = 100000;
    std::string output_path; // empty = stdout
    std::string format = "csv";
};

// INI-style file: [section] lines and key = value pairs; '#' or ';' comments.
RunConfig load_config(const std::string& path);

// Apply one "section.key=value" override; throws ConfigError on unknown keys.
void apply_set(RunConfig& config, const std::string& assignment);

// Field-path validation (sweep bounds, scheme names, probability ranges).
void validate_config(const RunConfig& config);

// Resolve the catalog entries named in config.schemes (all entries if empty).
std::vector<ModulationScheme> selected_schemes(const RunConfig& config);

// Config echo as "section.key=value" lines, for JSON meta blocks.
std::vector<std::pair<std::string, std::string>> config_echo(const RunConfig& config);

} // namespace linkopt
