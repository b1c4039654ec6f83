#pragma once

#include "irshcn/netmodel.hpp"

namespace irshcn::channel {

// Average power gains of the three link types.  Distances follow the model
// geometry: BS<->UE uses the 3D distance x >= H_j directly, BS<->IRS and
// IRS<->UE take ground-plane separations and fold in the height offsets.

// l_d = beta x^-alpha_j, x = 3D BS-UE distance (>= tier height).
double l_direct(double beta, double alpha_j, double dist3d_m);

// l_i = beta (r^2 + H_j^2 - H_I^2)^(-alpha_j/2), r = ground BS-IRS distance.
// Throws NumericError when r^2 + H_j^2 - H_I^2 <= 0 (IRS above the BS and
// too close for the distance model to make sense).
double l_bs_to_irs(double beta, double alpha_j, double tier_height_m, double irs_height_m,
                   double dist2d_m);

// l_r = beta (d^2 + H_I^2)^(-alpha_I/2), d = ground IRS-UE distance.
double l_irs_to_ue(double beta, double alpha_i, double irs_height_m, double dist2d_m);

// Array gains of an N-element surface.
double beamforming_gain(int n); // coherent: pi^2 N^2/16 + (1 - pi^2/16) N
double scattering_gain(int n);  // random phases: N

// Moments of the aggregate IRS->UE kernel over the PPP of non-serving
// surfaces in the local disc, conditioned on the nearest one at d0:
//   er1 = E[ sum_q l_r(d_q) ],  er2 = E[ sum_q l_r(d_q)^2 ],
//   er3 = er1^2 + er2  (second moment of the sum).
double er1(double d0_m, const IrsConfig& irs, double beta);
double er2(double d0_m, const IrsConfig& irs, double beta);
double er3(double d0_m, const IrsConfig& irs, double beta);

struct SignalMoments {
    double m2 = 0.0; // E|f|^2
    double m4 = 0.0; // E|f|^4
};

// Composite serving-link fading f1 = direct Rayleigh + coherently aligned
// cascade through the nearest surface; l_r0 = l_r(d0) toward that surface.
// Moments use the l_i ~ l_d substitution baked into the closed forms.
SignalMoments f1_moments(double l_d, double l_r0, int n);

// Aggregate scattered component f2 from the non-serving surfaces in the
// local disc (er1/er3 as above, evaluated at the conditioning d0).
SignalMoments f2_moments(double l_d, int n, double er1_val, double er3_val);

} // namespace irshcn::channel
