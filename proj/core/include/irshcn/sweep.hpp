#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "irshcn/netmodel.hpp"

namespace irshcn {

enum class Engine { analytical, simulation, both };

// "KEY=v1,v2,v3" with a dotted parameter path as KEY
struct SweepSpec {
    std::string key;
    std::vector<double> values;
};
SweepSpec parse_sweep(const std::string& arg);

// Set a numeric scenario parameter by path, e.g. "irs.density_per_m2",
// "tiers.1.bias", "eval.sinr_threshold_db".  Unknown paths -> ConfigError.
void apply_parameter(Scenario& s, const std::string& key, double value);

struct RunOptions {
    std::string config_path;
    Engine engine = Engine::both;
    int trials = 10000;
    std::uint64_t seed = 1;
    std::optional<std::string> sweep;  // raw KEY=v1,v2,...
    std::optional<std::string> figure; // fig2 | fig3 | fig4
    std::string out_dir = ".";
    double window_m = 4000.0;
    int threads = 0;
};

// Runs point evaluations / sweeps / figure bundles and writes CSV artifacts
// into out_dir.  Returns a process exit code: 0 ok, 2 config error,
// 3 numeric failure.  Messages go to log.
int cli_run(const RunOptions& opts, std::ostream& log);

struct CompareOptions {
    std::string file_a;
    std::string file_b;
    double tolerance = 0.03;
};

// Compares two result CSVs on a shared grid; prints the per-metric maximum
// deviation.  Returns 0 on pass, 1 on tolerance failure, 2 on grid mismatch
// or unreadable input.
int cli_compare(const CompareOptions& opts, std::ostream& log);

} // namespace irshcn
