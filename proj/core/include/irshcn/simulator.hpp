#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "irshcn/analytical.hpp" // CoverageBreakdown
#include "irshcn/netmodel.hpp"

namespace irshcn::sim {

using Rng = std::mt19937_64;

// SplitMix64 finalizer; trial t of a run draws from
// Rng(splitmix64(seed + GOLDEN * (t+1))), which decouples the per-trial
// streams from the thread layout and keeps results bit-identical for any
// thread count.
std::uint64_t splitmix64(std::uint64_t x);

struct Point {
    double x = 0.0, y = 0.0;
    double r2() const { return x * x + y * y; } // squared distance to the UE at the origin
};

// homogeneous PPP on the square [-w/2, w/2]^2
std::vector<Point> sample_ppp(double density, double window_m, Rng& rng);
// homogeneous PPP on the disc of given radius around the origin
std::vector<Point> sample_ppp_disc(double density, double radius_m, Rng& rng);

struct NetworkRealization {
    struct Tier {
        std::vector<Point> points;
        std::vector<std::uint8_t> active; // Bernoulli(p_j) load thinning
    };
    std::vector<Tier> tiers;
    std::vector<Point> irs; // only surfaces inside the local disc matter
    double window_m = 0.0;
};

NetworkRealization sample_network(const LinearScenario& scn, double window_m, Rng& rng);

struct Association {
    int tier = -1; // -1 if no BS fell in the window (practically impossible)
    int index = -1;
    double z = 0.0; // 3D serving distance
};

// max-biased-average-power rule over all BSs; ties break to the lowest tier.
Association associate(const NetworkRealization& net, const LinearScenario& scn);

struct SinrSample {
    double signal_w = 0.0;
    double interference_w = 0.0;
    double sinr = 0.0;
    int tier = -1;
    bool empty_local = true; // no surface inside the local disc
};

SinrSample simulate_sample(const NetworkRealization& net, const LinearScenario& scn, Rng& rng);

// amplitude/power composition of the serving link, split out so the
// deterministic algebra can be checked with frozen fading draws:
// amp = sqrt(l_d e_d) + sum_n sqrt(l_i e_i[n]) sqrt(l_r e_r[n])
double coherent_amplitude(double l_d, double e_d, double l_i, double l_r,
                          const std::vector<double>& e_i, const std::vector<double>& e_r);
inline double signal_power(double tx_power_w, double amp, double f2_re, double f2_im) {
    return tx_power_w * ((amp + f2_re) * (amp + f2_re) + f2_im * f2_im);
}

struct Interval {
    double lo = 0.0, hi = 1.0;
};

// 95% Wilson score interval for successes/trials
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials);

struct SimOptions {
    int trials = 10000;
    std::uint64_t seed = 1;
    double window_m = 4000.0;
    int threads = 0; // 0: IRSHCN_THREADS env var, else hardware concurrency
};

struct SimulationResult {
    CoverageBreakdown breakdown;
    Interval overall_ci;
    std::vector<Interval> tier_ci;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    double gamma0 = 1.0;
};

SimulationResult estimate(const LinearScenario& scn, const SimOptions& opts);

// one shared set of SINR samples evaluated against several thresholds
std::vector<SimulationResult> estimate_multi(const LinearScenario& scn,
                                             const std::vector<double>& gamma_values,
                                             const SimOptions& opts);

} // namespace irshcn::sim
