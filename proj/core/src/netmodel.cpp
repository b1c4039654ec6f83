#include "irshcn/netmodel.hpp"

#include <cmath>
#include <sstream>

#include "irshcn/errors.hpp"
#include "irshcn/units.hpp"

namespace irshcn {

std::string ValidationReport::to_string() const {
    std::ostringstream os;
    for (const auto& v : violations) os << v.path << ": " << v.message << "\n";
    return os.str();
}

namespace {

bool finite(double v) { return std::isfinite(v); }

void check(ValidationReport& r, bool cond, const std::string& path, const std::string& msg) {
    if (!cond) r.violations.push_back({path, msg});
}

} // namespace

ValidationReport validate(const Scenario& s) {
    ValidationReport r;
    check(r, !s.tiers.empty(), "tiers", "at least one BS tier is required");
    for (size_t k = 0; k < s.tiers.size(); ++k) {
        const auto& t = s.tiers[k];
        const std::string p = "tiers[" + std::to_string(k) + "]";
        check(r, finite(t.power_dbm), p + ".power_dbm", "must be finite");
        check(r, finite(t.height_m) && t.height_m >= 0.0, p + ".height_m", "must be >= 0");
        check(r, finite(t.density_per_m2) && t.density_per_m2 > 0.0, p + ".density_per_m2",
              "must be > 0");
        check(r, finite(t.pathloss_exponent) && t.pathloss_exponent > 2.0,
              p + ".pathloss_exponent", "must be > 2 (interference diverges otherwise)");
        check(r, finite(t.bias) && t.bias > 0.0, p + ".bias", "must be > 0");
        check(r, finite(t.load_factor) && t.load_factor > 0.0 && t.load_factor <= 1.0,
              p + ".load_factor", "must be in (0, 1]");
    }
    const auto& i = s.irs;
    check(r, finite(i.height_m) && i.height_m >= 0.0, "irs.height_m", "must be >= 0");
    check(r, i.elements >= 1, "irs.elements", "must be >= 1");
    check(r, finite(i.density_per_m2) && i.density_per_m2 >= 0.0, "irs.density_per_m2",
          "must be >= 0");
    check(r, finite(i.pathloss_exponent) && i.pathloss_exponent > 2.0, "irs.pathloss_exponent",
          "must be > 2");
    check(r, finite(i.local_radius_m) && i.local_radius_m > 0.0, "irs.local_radius_m",
          "must be > 0");
    const auto& e = s.eval;
    check(r, finite(e.carrier_hz) && e.carrier_hz > 0.0, "eval.carrier_hz", "must be > 0");
    check(r, finite(e.noise_dbm), "eval.noise_dbm", "must be finite");
    check(r, finite(e.sinr_threshold) && e.sinr_threshold > 0.0, "eval.sinr_threshold",
          "must be > 0");
    check(r, finite(e.priority_factor) && e.priority_factor > 0.0 && e.priority_factor <= 1.0,
          "eval.priority_factor", "must be in (0, 1]");
    check(r, finite(e.quad_rel_tol) && e.quad_rel_tol > 0.0 && e.quad_rel_tol < 0.1,
          "numerics.quad_rel_tol", "must be in (0, 0.1)");
    check(r, finite(e.tail_cutoff_exponent) && e.tail_cutoff_exponent >= 10.0,
          "numerics.tail_cutoff_exponent", "must be >= 10");
    check(r, finite(e.tau_threshold) && e.tau_threshold >= 1.0 && e.tau_threshold <= 20.0,
          "numerics.tau_threshold", "must be in [1, 20] (factorial growth above)");
    check(r, e.laplace_method == "euler" || e.laplace_method == "talbot",
          "numerics.laplace_method", "must be \"euler\" or \"talbot\"");
    check(r, e.laplace_terms >= 10 && e.laplace_terms <= 200, "numerics.laplace_terms",
          "must be in [10, 200]");
    check(r, finite(e.laplace_precision) && e.laplace_precision > 0.0,
          "numerics.laplace_precision", "must be > 0");
    return r;
}

LinearScenario linearize(const Scenario& s) {
    if (auto rep = validate(s); !rep.ok())
        throw ConfigError("linearize: scenario invalid:\n" + rep.to_string());
    LinearScenario lin;
    lin.tiers.reserve(s.tiers.size());
    for (const auto& t : s.tiers) {
        LinearTier lt;
        lt.power_w = dbm_to_watts(t.power_dbm);
        lt.height_m = t.height_m;
        lt.density = t.density_per_m2;
        lt.thinned_density = t.load_factor * t.density_per_m2;
        lt.alpha = t.pathloss_exponent;
        lt.bias = t.bias;
        lt.load = t.load_factor;
        lin.tiers.push_back(lt);
    }
    lin.irs = s.irs;
    lin.beta = beta_from_carrier(s.eval.carrier_hz);
    lin.noise_w = dbm_to_watts(s.eval.noise_dbm);
    lin.gamma0 = s.eval.sinr_threshold;
    lin.rate_bps_hz = std::log2(1.0 + s.eval.sinr_threshold);
    lin.priority_factor = s.eval.priority_factor;
    lin.quad_rel_tol = s.eval.quad_rel_tol;
    lin.tail_cutoff_exponent = s.eval.tail_cutoff_exponent;
    lin.tau_threshold = s.eval.tau_threshold;
    lin.laplace_method = s.eval.laplace_method;
    lin.laplace_terms = s.eval.laplace_terms;
    lin.laplace_precision = s.eval.laplace_precision;
    return lin;
}

} // namespace irshcn
