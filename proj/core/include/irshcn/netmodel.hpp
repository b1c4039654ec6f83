#pragma once

#include <string>
#include <vector>

namespace irshcn {

// ---------------- scenario description (config units) ----------------

struct TierConfig {
    double power_dbm = 0.0;      // BS transmit power
    double height_m = 0.0;       // BS height above UE plane
    double density_per_m2 = 0.0; // PPP intensity
    double pathloss_exponent = 4.0;
    double bias = 1.0;           // association bias B_k (linear)
    double load_factor = 1.0;    // activity probability p_k in (0,1]
};

struct IrsConfig {
    double height_m = 1.0;
    int elements = 1;            // N reflecting elements per surface
    double density_per_m2 = 0.0; // PPP intensity (0 = conventional network)
    double pathloss_exponent = 3.0;
    double local_radius_m = 50.0; // D_max: radius of the local region around the UE
};

struct EvalConfig {
    double carrier_hz = 2e9;
    double noise_dbm = -117.0;
    double sinr_threshold = 1.0;  // gamma_0, linear
    double priority_factor = 0.6; // M, weights the floor/ceil mix for non-integer shape

    // numeric controls
    double quad_rel_tol = 1e-6;
    double tail_cutoff_exponent = 30.0; // truncate radial integrals once exp(-cutoff) is reached
    double tau_threshold = 20.0;        // shape above which the CDF-inversion branch is used
    std::string laplace_method = "euler"; // "euler" | "talbot"
    int laplace_terms = 40;
    double laplace_precision = 1e-6;
};

struct Scenario {
    std::vector<TierConfig> tiers;
    IrsConfig irs;
    EvalConfig eval;
};

// ---------------- validation ----------------

struct ValidationReport {
    struct Violation {
        std::string path;    // e.g. "tiers[1].pathloss_exponent"
        std::string message;
    };
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    std::string to_string() const;
};

ValidationReport validate(const Scenario& s);

// ---------------- linearized view (SI units, watts) ----------------

struct LinearTier {
    double power_w = 0.0;
    double height_m = 0.0;
    double density = 0.0;         // lambda_j
    double thinned_density = 0.0; // lambda_j' = p_j * lambda_j
    double alpha = 4.0;
    double bias = 1.0;
    double load = 1.0;
};

struct LinearScenario {
    std::vector<LinearTier> tiers;
    IrsConfig irs;     // already linear
    double beta = 0.0; // free-space gain at 1 m
    double noise_w = 0.0;
    double gamma0 = 1.0;
    double rate_bps_hz = 1.0; // log2(1 + gamma0)
    double priority_factor = 0.6;

    double quad_rel_tol = 1e-6;
    double tail_cutoff_exponent = 30.0;
    double tau_threshold = 20.0;
    std::string laplace_method = "euler";
    int laplace_terms = 40;
    double laplace_precision = 1e-6;

    int num_tiers() const { return static_cast<int>(tiers.size()); }
};

// Requires a scenario that passes validate(); throws ConfigError otherwise.
LinearScenario linearize(const Scenario& s);

} // namespace irshcn
