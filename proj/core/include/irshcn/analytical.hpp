#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "irshcn/netmodel.hpp"

namespace irshcn {

struct GammaParams {
    double shape = 1.0; // tau
    double scale = 1.0; // theta
    double mean() const { return shape * scale; }
    double variance() const { return shape * scale * scale; }
};

struct CoverageBreakdown {
    std::vector<double> association;     // A_k, sums to 1
    std::vector<double> tier_coverage;   // coverage conditioned on serving tier
    std::vector<double> tier_throughput; // A_k * cov_k * R0 * p_k * lambda_k
    double overall_coverage = 0.0;
    double throughput = 0.0; // bits/s/Hz per m^2
    double empty_local_prob = 0.0;
};

// Exclusion-zone interference integral
//   U(x) = int_{z_j}^inf (1 - 1/(1 + x beta z^-alpha)) z dz
// and its x-derivatives, in hypergeometric closed form.  Two regimes are
// used: a series form in xi = x beta z_j^-alpha for |xi| <= 1 and the 1/xi
// connection form above (the latter is the familiar (beta x)^(2/alpha)
// scaling law plus a correction term).
double u_function(double x, double alpha, double z_j, double beta);
std::complex<double> u_function(std::complex<double> x, double alpha, double z_j, double beta);
double u_derivative(int m, double x, double alpha, double z_j, double beta);
// x^m U^(m)(x): the combination the Laplace-exponent derivatives need; safe
// where x^m alone would overflow.
double u_derivative_scaled(int m, double x, double alpha, double z_j, double beta);

class AnalyticalEngine {
public:
    explicit AnalyticalEngine(LinearScenario s);

    const LinearScenario& scenario() const { return scn_; }

    // probability of associating with tier k (unthinned densities)
    double association_probability(int k) const { return assoc_[k]; }
    // pdf of the serving 3D distance conditioned on association with tier k
    double serving_distance_pdf(int k, double x) const;
    // pdf of the ground distance to the nearest surface (unconditioned)
    double irs_distance_pdf(double d) const;
    // radial truncation point of the serving-distance integrals for tier k
    double serving_distance_upper(int k) const { return zmax_[k]; }

    // Gamma moment-match of the conditional signal power; d0 = nullopt means
    // the local region holds no surface.
    GammaParams signal_gamma(int k, double z, std::optional<double> d0) const;

    // mean-field interference scaling rho of a single interferer
    double mean_field_rho(std::optional<double> d0) const;

    // E[exp(-s I)] conditioned on serving tier k at distance z, nearest
    // surface at d0; complex s serves the numerical CDF inversion.
    double laplace_interference(int k, double s, double z, std::optional<double> d0) const;
    std::complex<double> laplace_interference(int k, std::complex<double> s, double z,
                                              std::optional<double> d0) const;

    // P[SINR > gamma0 | tier k, serving distance z, nearest surface d0]
    double conditional_coverage(int k, double z, std::optional<double> d0) const;

    // branch internals, exposed so they can be validated against each other:
    // integer-shape alternating-derivative sum, and the CDF-inversion route.
    double coverage_gamma_sum(int k, double z, int tau_int, double theta, double rho) const;
    double coverage_cdf_branch(int k, double z, double mean_signal, double rho) const;

    CoverageBreakdown overall_coverage() const;
    double spatial_throughput() const;

private:
    LinearScenario scn_;
    std::vector<double> assoc_;
    std::vector<double> zmax_;
    std::vector<double> d0_breaks_; // smooth pieces of the d0 integrand

    // sum_j pi lambda_j [z_j(x)^2 - H_j^2]^+ appearing in the association law
    double exclusion_exponent(int k, double x) const;
    // biased-power exclusion distance toward tier j, clamped to >= H_j
    double exclusion_distance(int k, int j, double z) const;
    double conditional_coverage_gamma(int k, double z, const GammaParams& gp, double rho) const;
    // matched Gamma shape as a function of d0 alone (the direct-gain factor
    // cancels out of the moment ratio, so tau is tier- and z-independent)
    double tau_profile(double d0) const;
};

} // namespace irshcn
