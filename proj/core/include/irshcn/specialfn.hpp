#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace irshcn::specialfn {

// Gauss hypergeometric 2F1(a,b;c;x) on the non-positive real axis.
// Strategy: Pfaff transformation up to moderate |x| (the mapped argument
// stays in [0,1), where a cancellation-free series variant exists), and the
// 1/x connection formula for large |x| (needs a-b non-integer).
double gauss_2f1(double a, double b, double c, double x);

// Same function continued to complex x with Re(x) <= 0.  Used by the Laplace
// inversion path, where interference transforms are evaluated at complex s.
std::complex<double> gauss_2f1(double a, double b, double c, std::complex<double> x);

// Regularized incomplete gamma functions P(a,x) (lower) and Q(a,x) (upper),
// a > 0, x >= 0.  Series / continued-fraction pair with log-space prefactor,
// stable for shapes well beyond 10^3.
double lower_gamma_reg(double a, double x);
double upper_gamma_reg(double a, double x);

// Derivatives of exp(V(s)) at a point, given v0 = V(s0) and the derivatives
// v_derivs = {V'(s0), V''(s0), ..., V^(n)(s0)}.  Returns {d^m/ds^m exp(V)}
// for m = 0..n via the complete Bell recurrence with exact binomials.
// n is capped at 20; above that the coefficients outgrow double precision.
std::vector<double> composition_derivatives(const std::vector<double>& v_derivs, int n,
                                            double v0);

struct LaplaceInverter {
    enum class Method { euler_summation, talbot_contour };
    Method method = Method::euler_summation;
    int terms = 40;                 // transform evaluations per inversion (~terms+1)
    double precision_target = 1e-6; // residual threshold for the self-check
};

// Evaluate the CDF F(y) of a non-negative random variable from its Laplace
// transform L(s) = E[exp(-s X)] by numerical inversion of L(s)/s.
// Requires L(0) = 1 (checked); the result is clamped to [0,1].
// Euler summation only touches Re(s) > 0 and is safe for transforms that are
// analytic in the right half-plane; the Talbot contour reaches Re(s) < 0 and
// must only be used for transforms analytic there.
double inverse_laplace_cdf(const std::function<std::complex<double>(std::complex<double>)>& lt,
                           double y, const LaplaceInverter& inv = {});

} // namespace irshcn::specialfn
