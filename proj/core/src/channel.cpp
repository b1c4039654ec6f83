#include "irshcn/channel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "irshcn/errors.hpp"

namespace irshcn::channel {

namespace {
using std::numbers::pi;
}

double l_direct(double beta, double alpha_j, double dist3d_m) {
    if (dist3d_m <= 0.0)
        throw NumericError("l_direct: distance must be > 0, got " + std::to_string(dist3d_m));
    return beta * std::pow(dist3d_m, -alpha_j);
}

double l_bs_to_irs(double beta, double alpha_j, double tier_height_m, double irs_height_m,
                   double dist2d_m) {
    const double d2 = dist2d_m * dist2d_m + tier_height_m * tier_height_m -
                      irs_height_m * irs_height_m;
    if (d2 <= 0.0)
        throw NumericError("l_bs_to_irs: r^2 + H_j^2 - H_I^2 = " + std::to_string(d2) +
                           " <= 0 (r=" + std::to_string(dist2d_m) + ")");
    return beta * std::pow(d2, -alpha_j / 2.0);
}

double l_irs_to_ue(double beta, double alpha_i, double irs_height_m, double dist2d_m) {
    const double d2 = dist2d_m * dist2d_m + irs_height_m * irs_height_m;
    if (d2 <= 0.0)
        throw NumericError("l_irs_to_ue: d^2 + H_I^2 must be > 0");
    return beta * std::pow(d2, -alpha_i / 2.0);
}

double beamforming_gain(int n) {
    const double nd = n;
    return pi * pi * nd * nd / 16.0 + (1.0 - pi * pi / 16.0) * nd;
}

double scattering_gain(int n) { return static_cast<double>(n); }

// Campbell's theorem over the annulus d0 < d < D_max of the IRS PPP:
//   E[sum l_r^p] = 2 pi lambda_I beta^p int_d0^Dmax d (d^2+H^2)^(-p a/2) dd,
// which integrates in closed form.
double er1(double d0_m, const IrsConfig& irs, double beta) {
    const double a = irs.pathloss_exponent;
    const double h2 = irs.height_m * irs.height_m;
    const double lo = d0_m * d0_m + h2;
    const double hi = irs.local_radius_m * irs.local_radius_m + h2;
    return 2.0 * pi * irs.density_per_m2 * beta / (a - 2.0) *
           (std::pow(lo, (2.0 - a) / 2.0) - std::pow(hi, (2.0 - a) / 2.0));
}

double er2(double d0_m, const IrsConfig& irs, double beta) {
    const double a = irs.pathloss_exponent;
    const double h2 = irs.height_m * irs.height_m;
    const double lo = d0_m * d0_m + h2;
    const double hi = irs.local_radius_m * irs.local_radius_m + h2;
    return pi * irs.density_per_m2 * beta * beta / (a - 1.0) *
           (std::pow(lo, 1.0 - a) - std::pow(hi, 1.0 - a));
}

double er3(double d0_m, const IrsConfig& irs, double beta) {
    const double e1 = er1(d0_m, irs, beta);
    return e1 * e1 + er2(d0_m, irs, beta);
}

SignalMoments f1_moments(double l_d, double l_r0, int n) {
    const double nd = n;
    const double gbf = beamforming_gain(n);
    const double sq = std::sqrt(pi * l_r0);
    SignalMoments m;
    m.m2 = l_d * (1.0 + nd * pi / 4.0 * sq + gbf * l_r0);
    const double k1m = 1.0 - pi * pi / 16.0; // per-element amplitude variance factor
    const double c32 = pi * pi * pi * nd * nd * nd / 64.0 + (3.0 * pi + nd * nd * k1m) / 4.0;
    const double c2 = std::pow(pi, 4.0) * std::pow(nd, 4.0) / 256.0 +
                      3.0 * pi * pi * nd * nd * nd * k1m / 8.0 + 3.0 * nd * nd * k1m * k1m;
    m.m4 = l_d * l_d *
           (2.0 + 0.75 * std::pow(pi, 1.5) * nd * std::sqrt(l_r0) + 6.0 * gbf * l_r0 +
            2.0 * std::sqrt(pi) * c32 * std::pow(l_r0, 1.5) + c2 * l_r0 * l_r0);
    return m;
}

SignalMoments f2_moments(double l_d, int n, double er1_val, double er3_val) {
    SignalMoments m;
    m.m2 = n * l_d * er1_val;
    m.m4 = 2.0 * static_cast<double>(n) * n * l_d * l_d * er3_val;
    return m;
}

} // namespace irshcn::channel
