#include <doctest.h>

#include <cmath>
#include <string>

#include "irshcn/config_io.hpp"
#include "irshcn/errors.hpp"
#include "irshcn/netmodel.hpp"
#include "irshcn/units.hpp"

using namespace irshcn;

namespace {

double rel_diff(double got, double want) {
    return std::fabs(got - want) / std::fabs(want);
}

// a well-formed two-tier scenario to mutate in the validation tests
Scenario reference_scenario() {
    Scenario s;
    TierConfig macro;
    macro.power_dbm = 53.0;
    macro.height_m = 20.0;
    macro.density_per_m2 = 5e-5;
    macro.pathloss_exponent = 4.0;
    TierConfig pico;
    pico.power_dbm = 33.0;
    pico.height_m = 10.0;
    pico.density_per_m2 = 2.5e-4;
    pico.pathloss_exponent = 3.5;
    s.tiers = {macro, pico};
    s.irs.height_m = 1.0;
    s.irs.elements = 1000;
    s.irs.density_per_m2 = 1e-3;
    s.irs.pathloss_exponent = 3.0;
    s.irs.local_radius_m = 50.0;
    return s;
}

bool has_violation(const ValidationReport& r, const std::string& path) {
    for (const auto& v : r.violations)
        if (v.path == path) return true;
    return false;
}

template <typename F>
std::string config_error_message(F&& f) {
    try {
        f();
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST_CASE("dbm/watt conversions follow the defining power law") {
    CHECK(rel_diff(dbm_to_watts(53.0), 199.52623149688787) < 1e-14);
    CHECK(rel_diff(dbm_to_watts(0.0), 1e-3) < 1e-14);
    CHECK(rel_diff(dbm_to_watts(30.0), 1.0) < 1e-14);
    CHECK(rel_diff(dbm_to_watts(-117.0), 1.995262314968883e-15) < 1e-14);
    for (double dbm : {-117.0, -30.0, 0.0, 12.5, 33.0, 53.0})
        CHECK(std::fabs(watts_to_dbm(dbm_to_watts(dbm)) - dbm) < 1e-12);
    CHECK(rel_diff(db_to_linear(10.0), 10.0) < 1e-14);
    CHECK(rel_diff(linear_to_db(100.0), 20.0) < 1e-14);
}

TEST_CASE("free-space reference gain matches (c / 4 pi f)^2") {
    // independently evaluated from c = 299792458 m/s at f = 2 GHz
    CHECK(rel_diff(beta_from_carrier(2e9), 1.4228584142858626e-4) < 1e-14);
    // beta scales as f^-2
    CHECK(rel_diff(beta_from_carrier(1e9) / beta_from_carrier(2e9), 4.0) < 1e-13);
}

TEST_CASE("validate accepts a well-formed scenario") {
    const auto r = validate(reference_scenario());
    CHECK(r.ok());
    CHECK(r.to_string().empty());
}

TEST_CASE("validate flags every out-of-domain parameter with its path") {
    {
        Scenario s = reference_scenario();
        s.tiers[0].pathloss_exponent = 2.0; // boundary: interference diverges
        const auto r = validate(s);
        CHECK(!r.ok());
        CHECK(has_violation(r, "tiers[0].pathloss_exponent"));
        CHECK(r.to_string().find("tiers[0].pathloss_exponent") != std::string::npos);
    }
    {
        Scenario s = reference_scenario();
        s.tiers[1].load_factor = 0.0;
        CHECK(has_violation(validate(s), "tiers[1].load_factor"));
    }
    {
        Scenario s = reference_scenario();
        s.tiers[0].density_per_m2 = -1.0;
        CHECK(has_violation(validate(s), "tiers[0].density_per_m2"));
    }
    {
        Scenario s = reference_scenario();
        s.tiers[0].bias = 0.0;
        CHECK(has_violation(validate(s), "tiers[0].bias"));
    }
    {
        Scenario s = reference_scenario();
        s.irs.elements = 0;
        CHECK(has_violation(validate(s), "irs.elements"));
    }
    {
        Scenario s = reference_scenario();
        s.irs.pathloss_exponent = 2.0;
        CHECK(has_violation(validate(s), "irs.pathloss_exponent"));
    }
    {
        Scenario s = reference_scenario();
        s.eval.sinr_threshold = 0.0;
        CHECK(has_violation(validate(s), "eval.sinr_threshold"));
    }
    {
        Scenario s = reference_scenario();
        s.eval.laplace_method = "fourier";
        CHECK(has_violation(validate(s), "numerics.laplace_method"));
    }
    {
        Scenario s = reference_scenario();
        s.eval.tau_threshold = 40.0; // factorial growth caps the gamma-sum branch
        CHECK(has_violation(validate(s), "numerics.tau_threshold"));
    }
    {
        Scenario s = reference_scenario();
        s.eval.quad_rel_tol = 0.5;
        CHECK(has_violation(validate(s), "numerics.quad_rel_tol"));
    }
    {
        Scenario s = reference_scenario();
        s.tiers.clear();
        CHECK(has_violation(validate(s), "tiers"));
    }
    { // violations accumulate instead of stopping at the first
        Scenario s = reference_scenario();
        s.tiers[0].pathloss_exponent = 1.5;
        s.tiers[1].load_factor = 2.0;
        s.irs.local_radius_m = 0.0;
        CHECK(validate(s).violations.size() == 3);
    }
}

TEST_CASE("linearize converts to SI units") {
    Scenario s = reference_scenario();
    s.tiers[1].load_factor = 0.25;
    s.eval.noise_dbm = -117.0;
    s.eval.sinr_threshold = 3.0;
    const LinearScenario lin = linearize(s);
    REQUIRE(lin.num_tiers() == 2);
    CHECK(rel_diff(lin.tiers[0].power_w, 199.52623149688787) < 1e-14);
    CHECK(rel_diff(lin.tiers[1].power_w, 1.9952623149688828) < 1e-14);
    CHECK(lin.tiers[0].thinned_density == lin.tiers[0].density);
    CHECK(rel_diff(lin.tiers[1].thinned_density, 0.25 * 2.5e-4) < 1e-15);
    CHECK(rel_diff(lin.noise_w, 1.995262314968883e-15) < 1e-14);
    CHECK(rel_diff(lin.beta, 1.4228584142858626e-4) < 1e-14);
    CHECK(lin.gamma0 == 3.0);
    CHECK(rel_diff(lin.rate_bps_hz, 2.0) < 1e-15); // log2(1 + 3)
}

TEST_CASE("linearize refuses an invalid scenario") {
    Scenario s = reference_scenario();
    s.tiers[0].pathloss_exponent = 2.0;
    CHECK_THROWS_AS(linearize(s), ConfigError);
    const auto msg =
        config_error_message([&] { linearize(s); });
    CHECK(msg.find("tiers[0].pathloss_exponent") != std::string::npos);
}

static const char* kScenarioJson = R"({
  "lambda0_per_m2": 5e-6,
  "tiers": [
    {"power_dbm": 53, "height_m": 20, "density_lambda0": 10, "pathloss_exponent": 4.0},
    {"power_dbm": 33, "height_m": 10, "density_lambda0": 50, "pathloss_exponent": 3.5,
     "bias": 2.0, "load_factor": 0.5}
  ],
  "irs": {"height_m": 1, "elements": 1000, "density_lambda0": 200,
          "pathloss_exponent": 3.0, "local_radius_m": 50},
  "eval": {"carrier_hz": 2e9, "noise_dbm": -117, "sinr_threshold": 1.0,
           "priority_factor": 0.6}
})";

TEST_CASE("json parsing resolves relative densities against lambda0") {
    const Scenario s = scenario_from_json(kScenarioJson);
    REQUIRE(s.tiers.size() == 2);
    CHECK(s.tiers[0].density_per_m2 == 10.0 * 5e-6);
    CHECK(s.tiers[1].density_per_m2 == 50.0 * 5e-6);
    CHECK(s.irs.density_per_m2 == 200.0 * 5e-6);
    CHECK(s.tiers[0].bias == 1.0);        // defaulted
    CHECK(s.tiers[1].bias == 2.0);
    CHECK(s.tiers[1].load_factor == 0.5);
    CHECK(s.irs.elements == 1000);
    // lambda0 omitted: the 5e-6 default applies
    const Scenario d = scenario_from_json(R"({
      "tiers": [{"power_dbm": 50, "height_m": 0, "density_lambda0": 10,
                 "pathloss_exponent": 4.0}],
      "irs": {"height_m": 1, "elements": 1, "density_lambda0": 0,
              "pathloss_exponent": 3.0, "local_radius_m": 50},
      "eval": {"carrier_hz": 2e9, "noise_dbm": -117, "sinr_threshold": 1.0}
    })");
    CHECK(d.tiers[0].density_per_m2 == 10.0 * 5e-6);
}

TEST_CASE("json round trip is canonical and bit-identical") {
    const Scenario s = scenario_from_json(kScenarioJson);
    const std::string j1 = scenario_to_json(s);
    const Scenario s2 = scenario_from_json(j1);
    const std::string j2 = scenario_to_json(s2);
    CHECK(j1 == j2);
    CHECK(s2.tiers[0].power_dbm == s.tiers[0].power_dbm);
    CHECK(s2.tiers[1].density_per_m2 == s.tiers[1].density_per_m2);
    CHECK(s2.irs.density_per_m2 == s.irs.density_per_m2);
    CHECK(s2.eval.sinr_threshold == s.eval.sinr_threshold);
    CHECK(s2.eval.laplace_method == s.eval.laplace_method);
}

TEST_CASE("unknown or malformed config keys are hard errors") {
    CHECK(config_error_message([] { scenario_from_json("{]"); })
              .find("not valid JSON") != std::string::npos);
    CHECK(config_error_message([] { scenario_from_json("[1,2]"); })
              .find("object") != std::string::npos);
    {
        std::string txt(kScenarioJson);
        txt.insert(1, "\"lambda\": 1,"); // misspelled lambda0_per_m2
        CHECK(config_error_message([&] { scenario_from_json(txt); })
                  .find("unknown key \"lambda\"") != std::string::npos);
    }
    {
        std::string txt(kScenarioJson);
        const auto pos = txt.find("\"power_dbm\": 53");
        std::string tier_typo = txt;
        tier_typo.replace(pos, 12, "\"power_db\": "); // misspelled field
        CHECK(config_error_message([&] { scenario_from_json(tier_typo); })
                  .find("tiers[0].power_db") != std::string::npos);
    }
    { // both density spellings at once
        std::string txt(kScenarioJson);
        txt.replace(txt.find("\"density_lambda0\": 10"), std::string("\"density_lambda0\": 10").size(),
                    "\"density_lambda0\": 10, \"density_per_m2\": 1e-5");
        CHECK(config_error_message([&] { scenario_from_json(txt); })
                  .find("not both") != std::string::npos);
    }
    { // two threshold spellings at once
        std::string txt(kScenarioJson);
        txt.replace(txt.find("\"sinr_threshold\": 1.0"), std::string("\"sinr_threshold\": 1.0").size(),
                    "\"sinr_threshold\": 1.0, \"sinr_threshold_db\": 0");
        CHECK(config_error_message([&] { scenario_from_json(txt); })
                  .find("exactly one") != std::string::npos);
    }
    { // fractional element count
        std::string txt(kScenarioJson);
        txt.replace(txt.find("\"elements\": 1000"), std::string("\"elements\": 1000").size(),
                    "\"elements\": 2.5");
        CHECK(config_error_message([&] { scenario_from_json(txt); })
                  .find("elements") != std::string::npos);
    }
    CHECK(config_error_message([] {
              scenario_from_json(R"({"irs": {}, "eval": {}})");
          }).find("tiers") != std::string::npos);
}

TEST_CASE("threshold spellings map onto the same linear gamma0") {
    auto with_eval = [](const std::string& eval_body) {
        return scenario_from_json(R"({
          "tiers": [{"power_dbm": 50, "height_m": 0, "density_lambda0": 10,
                     "pathloss_exponent": 4.0}],
          "irs": {"height_m": 1, "elements": 1, "density_lambda0": 0,
                  "pathloss_exponent": 3.0, "local_radius_m": 50},
          "eval": {"carrier_hz": 2e9, "noise_dbm": -117, )" + eval_body + "}}");
    };
    CHECK(with_eval("\"sinr_threshold\": 2.0").eval.sinr_threshold == 2.0);
    CHECK(rel_diff(with_eval("\"sinr_threshold_db\": 10").eval.sinr_threshold, 10.0) < 1e-14);
    // R0 = 1 bit/s/Hz <-> gamma0 = 2^1 - 1 = 1
    CHECK(with_eval("\"rate_threshold_bps_hz\": 1").eval.sinr_threshold == 1.0);
    CHECK(rel_diff(with_eval("\"rate_threshold_bps_hz\": 2").eval.sinr_threshold, 3.0) < 1e-14);
}
