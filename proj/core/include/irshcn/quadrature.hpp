#pragma once

// Adaptive Gauss-Kronrod 15(7) on a finite interval.  Semi-infinite radial
// integrals in this project are truncated analytically (exponential or
// power-law envelopes) before being handed here.

#include <cmath>
#include <string>
#include <vector>

#include "irshcn/errors.hpp"

namespace irshcn {

namespace gk_detail {

// 15-point Kronrod abscissae/weights with embedded 7-point Gauss rule.
inline constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename F>
inline void gk15(const F& f, double a, double b, double& result, double& abserr) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * xgk[i]);
        fv[14 - i] = f(c + h * xgk[i]);
    }
    fv[7] = f(c);
    double resk = wgk[7] * fv[7];
    double resg = wg[3] * fv[7];
    for (int i = 0; i < 7; ++i) resk += wgk[i] * (fv[i] + fv[14 - i]);
    for (int i = 0; i < 3; ++i) {
        const int j = 2 * i + 1;
        resg += wg[i] * (fv[j] + fv[14 - j]);
    }
    result = resk * h;
    abserr = std::abs((resk - resg) * h);
}

} // namespace gk_detail

// Integrate f over [a,b] to relative tolerance rel_tol (with a small absolute
// floor so integrals that are genuinely ~0 terminate).  Throws NumericError
// if the subdivision budget is exhausted before the error target is met.
template <typename F>
double integrate(const F& f, double a, double b, double rel_tol = 1e-6,
                 double abs_floor = 1e-300) {
    if (a == b) return 0.0;
    struct Seg {
        double a, b, val, err;
    };
    // 2000 segments is far beyond anything the smooth integrands here need,
    // so hitting the cap indicates a genuine problem.  Local storage keeps
    // nested integrate() calls (outer radial x inner angular) independent.
    constexpr int cap = 2000;
    std::vector<Seg> segs;
    segs.reserve(64);
    double v0, e0;
    gk_detail::gk15(f, a, b, v0, e0);
    segs.push_back({a, b, v0, e0});
    int n = 1;
    double total = v0, total_err = e0;
    for (int iter = 0; iter < 100000; ++iter) {
        if (total_err <= rel_tol * std::abs(total) + abs_floor) break;
        // refine the worst segment
        int worst = 0;
        for (int i = 1; i < n; ++i)
            if (segs[i].err > segs[worst].err) worst = i;
        if (segs[worst].err <= 1e-300) break; // nothing left to gain
        if (n >= cap)
            throw NumericError("integrate: segment budget exhausted on [" + std::to_string(a) +
                               ", " + std::to_string(b) + "], err=" + std::to_string(total_err));
        const Seg s = segs[worst];
        const double mid = 0.5 * (s.a + s.b);
        Seg l{s.a, mid, 0, 0}, r{mid, s.b, 0, 0};
        gk_detail::gk15(f, l.a, l.b, l.val, l.err);
        gk_detail::gk15(f, r.a, r.b, r.val, r.err);
        total += l.val + r.val - s.val;
        total_err += l.err + r.err - s.err;
        segs[worst] = l;
        segs.push_back(r);
        ++n;
    }
    if (!std::isfinite(total))
        throw NumericError("integrate: non-finite result on [" + std::to_string(a) + ", " +
                           std::to_string(b) + "]");
    return total;
}

} // namespace irshcn
