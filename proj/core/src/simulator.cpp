#include "irshcn/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <string>
#include <thread>

#include "irshcn/channel.hpp"
#include "irshcn/errors.hpp"

namespace irshcn::sim {

namespace {
using std::numbers::pi;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::vector<Point> sample_ppp(double density, double window_m, Rng& rng) {
    std::vector<Point> pts;
    if (density <= 0.0) return pts;
    std::poisson_distribution<int> count(density * window_m * window_m);
    std::uniform_real_distribution<double> u(-window_m / 2.0, window_m / 2.0);
    const int n = count(rng);
    pts.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double x = u(rng);
        const double y = u(rng);
        pts.push_back({x, y});
    }
    return pts;
}

std::vector<Point> sample_ppp_disc(double density, double radius_m, Rng& rng) {
    std::vector<Point> pts;
    if (density <= 0.0) return pts;
    std::poisson_distribution<int> count(density * pi * radius_m * radius_m);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const int n = count(rng);
    pts.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double r = radius_m * std::sqrt(u(rng));
        const double th = 2.0 * pi * u(rng);
        pts.push_back({r * std::cos(th), r * std::sin(th)});
    }
    return pts;
}

NetworkRealization sample_network(const LinearScenario& scn, double window_m, Rng& rng) {
    NetworkRealization net;
    net.window_m = window_m;
    net.tiers.resize(scn.tiers.size());
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (size_t j = 0; j < scn.tiers.size(); ++j) {
        auto& tier = net.tiers[j];
        tier.points = sample_ppp(scn.tiers[j].density, window_m, rng);
        tier.active.resize(tier.points.size());
        const double p = scn.tiers[j].load;
        for (auto& a : tier.active) a = (p >= 1.0) ? 1 : (u01(rng) < p ? 1 : 0);
    }
    net.irs = sample_ppp_disc(scn.irs.density_per_m2, scn.irs.local_radius_m, rng);
    return net;
}

Association associate(const NetworkRealization& net, const LinearScenario& scn) {
    Association best;
    double best_metric = -std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < net.tiers.size(); ++j) {
        const auto& pts = net.tiers[j].points;
        if (pts.empty()) continue;
        double r2min = std::numeric_limits<double>::infinity();
        int imin = -1;
        for (size_t i = 0; i < pts.size(); ++i) {
            const double r2 = pts[i].r2();
            if (r2 < r2min) {
                r2min = r2;
                imin = static_cast<int>(i);
            }
        }
        const auto& t = scn.tiers[j];
        const double z = std::sqrt(r2min + t.height_m * t.height_m);
        const double metric = t.power_w * t.bias * std::pow(z, -t.alpha);
        if (metric > best_metric) { // strict: earlier tier wins ties
            best_metric = metric;
            best = {static_cast<int>(j), imin, z};
        }
    }
    return best;
}

double coherent_amplitude(double l_d, double e_d, double l_i, double l_r,
                          const std::vector<double>& e_i, const std::vector<double>& e_r) {
    double amp = std::sqrt(l_d * e_d);
    for (size_t n = 0; n < e_i.size(); ++n) amp += std::sqrt(l_i * e_i[n] * l_r * e_r[n]);
    return amp;
}

SinrSample simulate_sample(const NetworkRealization& net, const LinearScenario& scn, Rng& rng) {
    SinrSample out;
    const Association srv = associate(net, scn);
    out.tier = srv.tier;
    if (srv.tier < 0) return out; // empty window; report zero SINR
    const auto& tk = scn.tiers[srv.tier];
    const Point bs0 = net.tiers[srv.tier].points[srv.index];
    const double l_d0 = channel::l_direct(scn.beta, tk.alpha, srv.z);

    // nearest surface in the local disc
    int irs0 = -1;
    double d0_r2 = std::numeric_limits<double>::infinity();
    for (size_t q = 0; q < net.irs.size(); ++q) {
        const double r2 = net.irs[q].r2();
        if (r2 < d0_r2) {
            d0_r2 = r2;
            irs0 = static_cast<int>(q);
        }
    }
    out.empty_local = irs0 < 0;

    std::exponential_distribution<double> exp1(1.0);
    std::normal_distribution<double> normal(0.0, 1.0);
    const int n_el = scn.irs.elements;
    const double a_i = scn.irs.pathloss_exponent;
    const double h_i = scn.irs.height_m;

    // Per-surface sum of element powers toward the UE, W_q = sum_n |f_r|^2.
    // Conditioned on {W_q}, every non-aligned cascade is complex Gaussian, so
    // interferers need no per-element draws; the serving surface draws its
    // element amplitudes explicitly (they feed both the aligned sum and W_0).
    std::vector<double> w(net.irs.size(), 0.0);
    std::vector<double> e_i, e_r;
    for (size_t q = 0; q < net.irs.size(); ++q) {
        const double l_r =
            channel::l_irs_to_ue(scn.beta, a_i, h_i, std::sqrt(net.irs[q].r2()));
        if (static_cast<int>(q) == irs0) {
            e_i.resize(n_el);
            e_r.resize(n_el);
            double acc = 0.0;
            for (int n = 0; n < n_el; ++n) {
                e_i[n] = exp1(rng);
                e_r[n] = exp1(rng);
                acc += e_r[n];
            }
            w[q] = l_r * acc;
        } else {
            std::gamma_distribution<double> gamma_n(static_cast<double>(n_el), l_r);
            w[q] = gamma_n(rng);
        }
    }

    // serving signal
    const double e_d = exp1(rng);
    double amp;
    if (irs0 >= 0) {
        const double dx = bs0.x - net.irs[irs0].x;
        const double dy = bs0.y - net.irs[irs0].y;
        const double l_i00 = channel::l_bs_to_irs(scn.beta, tk.alpha, tk.height_m, h_i,
                                                  std::sqrt(dx * dx + dy * dy));
        const double l_r0 = channel::l_irs_to_ue(scn.beta, a_i, h_i, std::sqrt(d0_r2));
        amp = coherent_amplitude(l_d0, e_d, l_i00, l_r0, e_i, e_r);
    } else {
        amp = std::sqrt(l_d0 * e_d);
    }
    double f2_re = 0.0, f2_im = 0.0;
    if (net.irs.size() > (irs0 >= 0 ? 1u : 0u)) {
        double v2 = 0.0;
        for (size_t q = 0; q < net.irs.size(); ++q) {
            if (static_cast<int>(q) == irs0) continue;
            const double dx = bs0.x - net.irs[q].x;
            const double dy = bs0.y - net.irs[q].y;
            v2 += channel::l_bs_to_irs(scn.beta, tk.alpha, tk.height_m, h_i,
                                       std::sqrt(dx * dx + dy * dy)) *
                  w[q];
        }
        const double s = std::sqrt(v2 / 2.0);
        f2_re = s * normal(rng);
        f2_im = s * normal(rng);
    }
    out.signal_w = signal_power(tk.power_w, amp, f2_re, f2_im);

    // interference: load-thinned BSs, serving one excluded
    double interference = 0.0;
    for (size_t j = 0; j < net.tiers.size(); ++j) {
        const auto& tier = net.tiers[j];
        const auto& tj = scn.tiers[j];
        for (size_t m = 0; m < tier.points.size(); ++m) {
            if (static_cast<int>(j) == srv.tier && static_cast<int>(m) == srv.index) continue;
            if (!tier.active[m]) continue;
            const Point& p = tier.points[m];
            double v = scn.beta *
                       std::pow(p.r2() + tj.height_m * tj.height_m, -tj.alpha / 2.0);
            for (size_t q = 0; q < net.irs.size(); ++q) {
                const double dx = p.x - net.irs[q].x;
                const double dy = p.y - net.irs[q].y;
                v += channel::l_bs_to_irs(scn.beta, tj.alpha, tj.height_m, h_i,
                                          std::sqrt(dx * dx + dy * dy)) *
                     w[q];
            }
            interference += tj.power_w * v * exp1(rng);
        }
    }
    out.interference_w = interference;
    out.sinr = out.signal_w / (interference + scn.noise_w);
    return out;
}

namespace {

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("IRSHCN_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

void check_window(const LinearScenario& scn, double window_m) {
    double guard = scn.irs.local_radius_m;
    for (const auto& t : scn.tiers)
        guard = std::max(guard, 5.0 * 0.5 / std::sqrt(t.density)); // 5x mean nearest distance
    if (window_m / 2.0 < guard)
        throw ConfigError("simulation window " + std::to_string(window_m) +
                          " m too small; needs half-width >= " + std::to_string(guard) + " m");
}

struct Counters {
    // [gamma][tier]
    std::vector<std::vector<std::uint64_t>> covered;
    std::vector<std::vector<std::uint64_t>> associated;
    std::uint64_t empty_local = 0;
    std::uint64_t trials = 0;

    Counters(size_t n_gamma, size_t n_tier)
        : covered(n_gamma, std::vector<std::uint64_t>(n_tier, 0)),
          associated(n_gamma, std::vector<std::uint64_t>(n_tier, 0)) {}

    void merge(const Counters& o) {
        for (size_t g = 0; g < covered.size(); ++g)
            for (size_t k = 0; k < covered[g].size(); ++k) {
                covered[g][k] += o.covered[g][k];
                associated[g][k] += o.associated[g][k];
            }
        empty_local += o.empty_local;
        trials += o.trials;
    }
};

} // namespace

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials) {
    if (trials == 0) return {0.0, 1.0};
    const double z = 1.959963984540054; // 97.5% normal quantile
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2n = z * z / n;
    const double center = (p + z2n / 2.0) / (1.0 + z2n);
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2n / (4.0 * n)) / (1.0 + z2n);
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

std::vector<SimulationResult> estimate_multi(const LinearScenario& scn,
                                             const std::vector<double>& gamma_values,
                                             const SimOptions& opts) {
    if (gamma_values.empty()) throw ConfigError("estimate_multi: no thresholds given");
    if (opts.trials <= 0) throw ConfigError("estimate: trials must be > 0");
    check_window(scn, opts.window_m);
    const size_t n_gamma = gamma_values.size();
    const size_t n_tier = scn.tiers.size();
    const int n_threads = std::min(resolve_threads(opts.threads), opts.trials);

    auto run_range = [&](int begin, int end, Counters& local) {
        for (int t = begin; t < end; ++t) {
            Rng rng(splitmix64(opts.seed + 0x9E3779B97F4A7C15ULL * (t + 1)));
            const NetworkRealization net = sample_network(scn, opts.window_m, rng);
            const SinrSample s = simulate_sample(net, scn, rng);
            local.trials += 1;
            if (s.empty_local) local.empty_local += 1;
            if (s.tier < 0) continue;
            for (size_t g = 0; g < n_gamma; ++g) {
                local.associated[g][s.tier] += 1;
                if (s.sinr > gamma_values[g]) local.covered[g][s.tier] += 1;
            }
        }
    };

    Counters total(n_gamma, n_tier);
    if (n_threads <= 1) {
        run_range(0, opts.trials, total);
    } else {
        std::vector<Counters> parts(n_threads, Counters(n_gamma, n_tier));
        std::vector<std::thread> workers;
        const int chunk = (opts.trials + n_threads - 1) / n_threads;
        for (int w = 0; w < n_threads; ++w) {
            const int begin = w * chunk;
            const int end = std::min(opts.trials, begin + chunk);
            if (begin >= end) break;
            workers.emplace_back([&, w, begin, end] { run_range(begin, end, parts[w]); });
        }
        for (auto& th : workers) th.join();
        for (const auto& p : parts) total.merge(p); // fixed order: thread-count invariant
    }

    std::vector<SimulationResult> results(n_gamma);
    const double nt = static_cast<double>(total.trials);
    for (size_t g = 0; g < n_gamma; ++g) {
        auto& r = results[g];
        r.gamma0 = gamma_values[g];
        r.trials = total.trials;
        r.seed = opts.seed;
        auto& b = r.breakdown;
        b.association.resize(n_tier);
        b.tier_coverage.resize(n_tier);
        b.tier_throughput.resize(n_tier);
        r.tier_ci.resize(n_tier);
        const double rate = std::log2(1.0 + gamma_values[g]);
        std::uint64_t cov_total = 0;
        for (size_t k = 0; k < n_tier; ++k) {
            const std::uint64_t na = total.associated[g][k];
            const std::uint64_t nc = total.covered[g][k];
            cov_total += nc;
            b.association[k] = na / nt;
            b.tier_coverage[k] = na > 0 ? static_cast<double>(nc) / na : 0.0;
            b.tier_throughput[k] = rate * scn.tiers[k].load * scn.tiers[k].density *
                                   (static_cast<double>(nc) / nt);
            r.tier_ci[k] = wilson_interval(nc, na);
        }
        b.overall_coverage = cov_total / nt;
        b.throughput = 0.0;
        for (size_t k = 0; k < n_tier; ++k) b.throughput += b.tier_throughput[k];
        b.empty_local_prob = total.empty_local / nt;
        r.overall_ci = wilson_interval(cov_total, total.trials);
    }
    return results;
}

SimulationResult estimate(const LinearScenario& scn, const SimOptions& opts) {
    return estimate_multi(scn, {scn.gamma0}, opts).front();
}

} // namespace irshcn::sim
