#include "irshcn/analytical.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "irshcn/channel.hpp"
#include "irshcn/errors.hpp"
#include "irshcn/quadrature.hpp"
#include "irshcn/specialfn.hpp"

namespace irshcn {

namespace {

using std::numbers::pi;
using specialfn::gauss_2f1;

double factorial(int m) {
    double f = 1.0;
    for (int i = 2; i <= m; ++i) f *= i;
    return f;
}

template <typename T>
T u_impl(T x, double alpha, double z, double beta) {
    const double b0 = 2.0 / alpha;
    const double g = beta * std::pow(z, -alpha);
    const T xi = g * x;
    const double axi = std::abs(xi);
    if (axi == 0.0) return T(0.0);
    if (axi <= 1.0)
        return (z * z / alpha) * xi / (1.0 - b0) * gauss_2f1(1.0, 1.0 - b0, 2.0 - b0, -xi);
    // |xi| > 1: (beta x)^(2/alpha) scaling law plus correction in 1/xi
    const T lead = pi / (alpha * std::sin(pi * b0)) * std::pow(beta * x, b0);
    const T corr = -(z * z / 2.0) * gauss_2f1(1.0, b0, 1.0 + b0, T(-1.0) / xi);
    return lead + corr;
}

} // namespace

double u_function(double x, double alpha, double z_j, double beta) {
    return u_impl(x, alpha, z_j, beta);
}

std::complex<double> u_function(std::complex<double> x, double alpha, double z_j, double beta) {
    return u_impl(x, alpha, z_j, beta);
}

double u_derivative_scaled(int m, double x, double alpha, double z, double beta) {
    if (m == 0) return u_function(x, alpha, z, beta);
    const double b0 = 2.0 / alpha;
    const double g = beta * std::pow(z, -alpha);
    const double xi = g * x;
    const double sign = (m % 2 == 0) ? -1.0 : 1.0; // (-1)^(m+1)
    if (xi <= 1.0)
        return sign * factorial(m) / alpha * z * z * std::pow(xi, m) / (m - b0) *
               gauss_2f1(m + 1.0, m - b0, m + 1.0 - b0, -xi);
    const double lead =
        std::tgamma(m - b0) * std::tgamma(1.0 + b0) / alpha * std::pow(beta * x, b0);
    const double corr = factorial(m) / (alpha * (1.0 + b0)) * std::pow(z, alpha + 2.0) /
                        (beta * x) * gauss_2f1(m + 1.0, 1.0 + b0, 2.0 + b0, -1.0 / xi);
    return sign * (lead - corr);
}

double u_derivative(int m, double x, double alpha, double z_j, double beta) {
    if (m == 0) return u_function(x, alpha, z_j, beta);
    if (x == 0.0) {
        const double b0 = 2.0 / alpha;
        const double g = beta * std::pow(z_j, -alpha);
        const double sign = (m % 2 == 0) ? -1.0 : 1.0;
        return sign * factorial(m) / alpha * z_j * z_j * std::pow(g, m) / (m - b0);
    }
    return u_derivative_scaled(m, x, alpha, z_j, beta) / std::pow(x, m);
}

// ---------------- engine ----------------

AnalyticalEngine::AnalyticalEngine(LinearScenario s) : scn_(std::move(s)) {
    const int K = scn_.num_tiers();
    assoc_.resize(K);
    zmax_.resize(K);
    for (int k = 0; k < K; ++k) {
        const auto& t = scn_.tiers[k];
        // own-tier envelope: exponent >= pi lambda_k (x^2 - H_k^2)
        double hi = std::sqrt(t.height_m * t.height_m +
                              scn_.tail_cutoff_exponent / (pi * t.density));
        // Other tiers' exclusion terms can dominate the decay, leaving all the
        // mass in a boundary layer far narrower than the own-tier envelope.
        // Truncate where the total exponent reaches the cutoff so the adaptive
        // rule sees the layer instead of a sea of zeros around it.
        double lo = t.height_m;
        if (exclusion_exponent(k, lo) >= scn_.tail_cutoff_exponent) {
            zmax_[k] = lo; // never the best tier: all mass below e^-cutoff
            assoc_[k] = 0.0;
            continue;
        }
        for (int it = 0; it < 60; ++it) { // the exponent is monotone in x
            const double m = 0.5 * (lo + hi);
            if (exclusion_exponent(k, m) >= scn_.tail_cutoff_exponent)
                hi = m;
            else
                lo = m;
        }
        zmax_[k] = hi;
        assoc_[k] = integrate(
            [&](double x) {
                return 2.0 * pi * t.density * x * std::exp(-exclusion_exponent(k, x));
            },
            t.height_m, zmax_[k], 1e-9, 1e-12);
    }

    // Precompute the d0 values where the coverage expression changes branch:
    // the CDF-inversion switch at tau = tau_threshold and the mixture kinks at
    // integer tau.  tau depends on d0 only, so one break list serves every
    // (tier, z) pair and the d0 integrand is smooth between breaks.
    d0_breaks_.push_back(0.0);
    if (scn_.irs.density_per_m2 > 0.0 && scn_.irs.elements > 0) {
        const double dmax = scn_.irs.local_radius_m;
        constexpr int grid = 512;
        std::vector<double> taus(grid + 1);
        for (int i = 0; i <= grid; ++i) taus[i] = tau_profile(dmax * i / grid);
        std::vector<double> targets;
        for (int n = 1; n <= static_cast<int>(scn_.tau_threshold); ++n) targets.push_back(n);
        targets.push_back(scn_.tau_threshold);
        for (double target : targets) {
            for (int i = 0; i < grid; ++i) {
                const bool lo_ge = taus[i] >= target, hi_ge = taus[i + 1] >= target;
                if (lo_ge == hi_ge) continue;
                double a = dmax * i / grid, b = dmax * (i + 1) / grid;
                for (int it = 0; it < 60; ++it) {
                    const double m = 0.5 * (a + b);
                    if ((tau_profile(m) >= target) == lo_ge)
                        a = m;
                    else
                        b = m;
                }
                d0_breaks_.push_back(0.5 * (a + b));
            }
        }
        std::sort(d0_breaks_.begin(), d0_breaks_.end());
    }
    d0_breaks_.push_back(scn_.irs.local_radius_m);
}

double AnalyticalEngine::tau_profile(double d0) const {
    const int n = scn_.irs.elements;
    const double l_r0 =
        channel::l_irs_to_ue(scn_.beta, scn_.irs.pathloss_exponent, scn_.irs.height_m, d0);
    // unit direct gain: the l_d factors cancel out of the shape ratio
    const auto f1 = channel::f1_moments(1.0, l_r0, n);
    const double e1 = channel::er1(d0, scn_.irs, scn_.beta);
    const double e3 = channel::er3(d0, scn_.irs, scn_.beta);
    const auto f2 = channel::f2_moments(1.0, n, e1, e3);
    const double mean = f1.m2 + f2.m2;
    const double var = f1.m4 + f2.m4 + 4.0 * f1.m2 * f2.m2 - mean * mean;
    return mean * mean / var;
}

double AnalyticalEngine::exclusion_distance(int k, int j, double z) const {
    const auto& tk = scn_.tiers[k];
    const auto& tj = scn_.tiers[j];
    const double ratio = (tj.power_w * tj.bias) / (tk.power_w * tk.bias);
    const double zj = std::pow(ratio, 1.0 / tj.alpha) * std::pow(z, tk.alpha / tj.alpha);
    return std::max(zj, tj.height_m);
}

double AnalyticalEngine::exclusion_exponent(int k, double x) const {
    double acc = 0.0;
    for (int j = 0; j < scn_.num_tiers(); ++j) {
        const double zj = exclusion_distance(k, j, x);
        const double hj = scn_.tiers[j].height_m;
        acc += pi * scn_.tiers[j].density * (zj * zj - hj * hj);
    }
    return acc;
}

double AnalyticalEngine::serving_distance_pdf(int k, double x) const {
    const auto& t = scn_.tiers[k];
    if (x < t.height_m || assoc_[k] <= 0.0) return 0.0;
    return 2.0 * pi * t.density / assoc_[k] * x * std::exp(-exclusion_exponent(k, x));
}

double AnalyticalEngine::irs_distance_pdf(double d) const {
    const double li = scn_.irs.density_per_m2;
    if (d < 0.0 || li <= 0.0) return 0.0;
    return 2.0 * pi * li * d * std::exp(-pi * li * d * d);
}

GammaParams AnalyticalEngine::signal_gamma(int k, double z, std::optional<double> d0) const {
    const auto& t = scn_.tiers[k];
    const double l_d = channel::l_direct(scn_.beta, t.alpha, z);
    if (!d0) return GammaParams{1.0, t.power_w * l_d}; // plain Rayleigh signal
    const int n = scn_.irs.elements;
    const double l_r0 =
        channel::l_irs_to_ue(scn_.beta, scn_.irs.pathloss_exponent, scn_.irs.height_m, *d0);
    const auto f1 = channel::f1_moments(l_d, l_r0, n);
    const double e1 = channel::er1(*d0, scn_.irs, scn_.beta);
    const double e3 = channel::er3(*d0, scn_.irs, scn_.beta);
    const auto f2 = channel::f2_moments(l_d, n, e1, e3);
    const double mean = t.power_w * (f1.m2 + f2.m2);
    const double second = t.power_w * t.power_w * (f1.m4 + f2.m4 + 4.0 * f1.m2 * f2.m2);
    const double var = second - mean * mean;
    if (!(var > 0.0) || !(mean > 0.0)) {
        std::ostringstream os;
        os << "signal_gamma: degenerate moments (k=" << k << ", z=" << z << ", d0=" << *d0
           << ", mean=" << mean << ", var=" << var << ")";
        throw NumericError(os.str());
    }
    return GammaParams{mean * mean / var, var / mean};
}

double AnalyticalEngine::mean_field_rho(std::optional<double> d0) const {
    if (!d0) return 1.0;
    const int n = scn_.irs.elements;
    const double l_r0 =
        channel::l_irs_to_ue(scn_.beta, scn_.irs.pathloss_exponent, scn_.irs.height_m, *d0);
    return 1.0 + n * l_r0 + n * channel::er1(*d0, scn_.irs, scn_.beta);
}

namespace {

// shared between the real and complex transform evaluations
template <typename T>
T laplace_impl(const LinearScenario& scn, const std::vector<double>& zj, T s, double rho) {
    T acc(0.0);
    for (size_t j = 0; j < scn.tiers.size(); ++j) {
        const auto& t = scn.tiers[j];
        acc += t.thinned_density * u_impl(s * (rho * t.power_w), t.alpha, zj[j], scn.beta);
    }
    return std::exp(-2.0 * pi * acc);
}

} // namespace

double AnalyticalEngine::laplace_interference(int k, double s, double z,
                                              std::optional<double> d0) const {
    if (s < 0.0)
        throw NumericError("laplace_interference: s must be >= 0, got " + std::to_string(s));
    std::vector<double> zj(scn_.num_tiers());
    for (int j = 0; j < scn_.num_tiers(); ++j) zj[j] = exclusion_distance(k, j, z);
    return laplace_impl(scn_, zj, s, mean_field_rho(d0));
}

std::complex<double> AnalyticalEngine::laplace_interference(int k, std::complex<double> s,
                                                            double z,
                                                            std::optional<double> d0) const {
    std::vector<double> zj(scn_.num_tiers());
    for (int j = 0; j < scn_.num_tiers(); ++j) zj[j] = exclusion_distance(k, j, z);
    return laplace_impl(scn_, zj, s, mean_field_rho(d0));
}

double AnalyticalEngine::coverage_gamma_sum(int k, double z, int tau_int, double theta,
                                            double rho) const {
    const double g0 = scn_.gamma0;
    const double noise_term = g0 * scn_.noise_w / theta;
    const int K = scn_.num_tiers();
    std::vector<double> zj(K), cj(K);
    for (int j = 0; j < K; ++j) {
        zj[j] = exclusion_distance(k, j, z);
        cj[j] = g0 * rho * scn_.tiers[j].power_w / theta;
    }
    // V(s) = -s g0 sigma^2/theta - 2 pi sum_j lambda_j' U_j(s c_j), at s=1
    double v0 = -noise_term;
    for (int j = 0; j < K; ++j)
        v0 -= 2.0 * pi * scn_.tiers[j].thinned_density *
              u_function(cj[j], scn_.tiers[j].alpha, zj[j], scn_.beta);
    std::vector<double> vd(tau_int - 1);
    for (int i = 1; i < tau_int; ++i) {
        double v = (i == 1) ? -noise_term : 0.0;
        for (int j = 0; j < K; ++j)
            v -= 2.0 * pi * scn_.tiers[j].thinned_density *
                 u_derivative_scaled(i, cj[j], scn_.tiers[j].alpha, zj[j], scn_.beta);
        vd[i - 1] = v;
    }
    const auto d = specialfn::composition_derivatives(vd, tau_int - 1, v0);
    // complete monotonicity of E[exp(-s gamma0 (I+N)/theta)] makes every term
    // of this alternating sum non-negative, so no cancellation occurs
    double p = 0.0, fact = 1.0;
    for (int i = 0; i < tau_int; ++i) {
        if (i > 0) fact *= i;
        p += ((i % 2 == 0) ? 1.0 : -1.0) * d[i] / fact;
    }
    if (p < 0.0) return 0.0;
    if (p > 1.0) return 1.0;
    return p;
}

double AnalyticalEngine::coverage_cdf_branch(int k, double z, double mean_signal,
                                             double rho) const {
    const double y = mean_signal / scn_.gamma0 - scn_.noise_w;
    if (y <= 0.0) return 0.0;
    std::vector<double> zj(scn_.num_tiers());
    for (int j = 0; j < scn_.num_tiers(); ++j) zj[j] = exclusion_distance(k, j, z);
    specialfn::LaplaceInverter inv;
    inv.method = scn_.laplace_method == "talbot"
                     ? specialfn::LaplaceInverter::Method::talbot_contour
                     : specialfn::LaplaceInverter::Method::euler_summation;
    inv.terms = scn_.laplace_terms;
    inv.precision_target = scn_.laplace_precision;
    const auto lt = [&](std::complex<double> s) { return laplace_impl(scn_, zj, s, rho); };
    return specialfn::inverse_laplace_cdf(lt, y, inv);
}

double AnalyticalEngine::conditional_coverage_gamma(int k, double z, const GammaParams& gp,
                                                    double rho) const {
    if (gp.shape > scn_.tau_threshold)
        return coverage_cdf_branch(k, z, gp.mean(), rho);
    const double r = std::round(gp.shape);
    if (std::abs(gp.shape - r) < 1e-9 && r >= 1.0)
        return coverage_gamma_sum(k, z, static_cast<int>(r), gp.scale, rho);
    const double lo = std::floor(gp.shape);
    const double hi = lo + 1.0;
    const double m = scn_.priority_factor;
    const double omega = m * (hi - gp.shape) / (m * (hi - gp.shape) + (gp.shape - lo));
    const double p_lo =
        lo >= 1.0 ? coverage_gamma_sum(k, z, static_cast<int>(lo), gp.scale, rho) : 0.0;
    const double p_hi = coverage_gamma_sum(k, z, static_cast<int>(hi), gp.scale, rho);
    const double p = omega * p_lo + (1.0 - omega) * p_hi;
    return std::min(1.0, std::max(0.0, p));
}

double AnalyticalEngine::conditional_coverage(int k, double z, std::optional<double> d0) const {
    return conditional_coverage_gamma(k, z, signal_gamma(k, z, d0), mean_field_rho(d0));
}

CoverageBreakdown AnalyticalEngine::overall_coverage() const {
    const int K = scn_.num_tiers();
    CoverageBreakdown b;
    b.association = assoc_;
    b.tier_coverage.resize(K);
    b.tier_throughput.resize(K);
    const double li = scn_.irs.density_per_m2;
    const double dmax = scn_.irs.local_radius_m;
    b.empty_local_prob = std::exp(-li * pi * dmax * dmax);
    // pieces are smooth between branch breaks, so the inner integral can run
    // at the same relative tolerance as the outer one
    const double inner_tol = scn_.quad_rel_tol;
    for (int k = 0; k < K; ++k) {
        if (assoc_[k] <= 0.0) { // tier never serves; nothing to average over
            b.tier_coverage[k] = 0.0;
            b.tier_throughput[k] = 0.0;
            continue;
        }
        const auto cond_at = [&](double z) {
            double v = b.empty_local_prob * conditional_coverage(k, z, std::nullopt);
            if (li > 0.0) {
                // integrate between the precomputed branch breaks so each
                // piece hands the adaptive rule a smooth integrand
                for (size_t i = 0; i + 1 < d0_breaks_.size(); ++i)
                    v += integrate(
                        [&](double d) {
                            return conditional_coverage(k, z, d) * irs_distance_pdf(d);
                        },
                        d0_breaks_[i], d0_breaks_[i + 1], inner_tol, 1e-12);
            }
            return v;
        };
        b.tier_coverage[k] = integrate(
            [&](double z) { return serving_distance_pdf(k, z) * cond_at(z); },
            scn_.tiers[k].height_m, zmax_[k], scn_.quad_rel_tol, 1e-12);
        b.tier_throughput[k] = assoc_[k] * b.tier_coverage[k] * scn_.rate_bps_hz *
                               scn_.tiers[k].load * scn_.tiers[k].density;
    }
    b.overall_coverage = 0.0;
    b.throughput = 0.0;
    for (int k = 0; k < K; ++k) {
        b.overall_coverage += assoc_[k] * b.tier_coverage[k];
        b.throughput += b.tier_throughput[k];
    }
    return b;
}

double AnalyticalEngine::spatial_throughput() const { return overall_coverage().throughput; }

} // namespace irshcn
