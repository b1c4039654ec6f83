#include "irshcn/config_io.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include <json.hpp>

#include "irshcn/errors.hpp"
#include "irshcn/units.hpp"

namespace irshcn {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* a : allowed)
            if (it.key() == a) {
                known = true;
                break;
            }
        if (!known)
            throw ConfigError("unknown key \"" + path + (path.empty() ? "" : ".") + it.key() +
                              "\"");
    }
}

double get_num(const json& obj, const std::string& path, const char* key) {
    const auto it = obj.find(key);
    if (it == obj.end()) throw ConfigError("missing key \"" + path + "." + key + "\"");
    if (!it->is_number())
        throw ConfigError("key \"" + path + "." + key + "\" must be a number");
    return it->get<double>();
}

double get_num_or(const json& obj, const std::string& path, const char* key, double fallback) {
    return obj.contains(key) ? get_num(obj, path, key) : fallback;
}

// density may be given absolutely or as a multiple of the reference lambda0
double get_density(const json& obj, const std::string& path, double lambda0) {
    const bool abs = obj.contains("density_per_m2");
    const bool rel = obj.contains("density_lambda0");
    if (abs && rel)
        throw ConfigError(path + ": specify density_per_m2 or density_lambda0, not both");
    if (abs) return get_num(obj, path, "density_per_m2");
    if (rel) return get_num(obj, path, "density_lambda0") * lambda0;
    throw ConfigError(path + ": missing density (density_per_m2 or density_lambda0)");
}

} // namespace

Scenario scenario_from_json(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("config root must be a JSON object");
    check_keys(root, "", {"lambda0_per_m2", "tiers", "irs", "eval", "numerics"});
    const double lambda0 = get_num_or(root, "", "lambda0_per_m2", 5e-6);

    Scenario s;
    if (!root.contains("tiers") || !root["tiers"].is_array() || root["tiers"].empty())
        throw ConfigError("config needs a non-empty \"tiers\" array");
    int idx = 0;
    for (const auto& jt : root["tiers"]) {
        const std::string path = "tiers[" + std::to_string(idx++) + "]";
        if (!jt.is_object()) throw ConfigError(path + " must be an object");
        check_keys(jt, path,
                   {"power_dbm", "height_m", "density_per_m2", "density_lambda0",
                    "pathloss_exponent", "bias", "load_factor"});
        TierConfig t;
        t.power_dbm = get_num(jt, path, "power_dbm");
        t.height_m = get_num(jt, path, "height_m");
        t.density_per_m2 = get_density(jt, path, lambda0);
        t.pathloss_exponent = get_num(jt, path, "pathloss_exponent");
        t.bias = get_num_or(jt, path, "bias", 1.0);
        t.load_factor = get_num_or(jt, path, "load_factor", 1.0);
        s.tiers.push_back(t);
    }

    if (!root.contains("irs") || !root["irs"].is_object())
        throw ConfigError("config needs an \"irs\" object");
    {
        const auto& ji = root["irs"];
        check_keys(ji, "irs",
                   {"height_m", "elements", "density_per_m2", "density_lambda0",
                    "pathloss_exponent", "local_radius_m"});
        s.irs.height_m = get_num(ji, "irs", "height_m");
        const double el = get_num(ji, "irs", "elements");
        if (el < 1.0 || el != std::floor(el))
            throw ConfigError("irs.elements must be a positive integer");
        s.irs.elements = static_cast<int>(el);
        s.irs.density_per_m2 = get_density(ji, "irs", lambda0);
        s.irs.pathloss_exponent = get_num(ji, "irs", "pathloss_exponent");
        s.irs.local_radius_m = get_num(ji, "irs", "local_radius_m");
    }

    if (!root.contains("eval") || !root["eval"].is_object())
        throw ConfigError("config needs an \"eval\" object");
    {
        const auto& je = root["eval"];
        check_keys(je, "eval",
                   {"carrier_hz", "noise_dbm", "sinr_threshold", "sinr_threshold_db",
                    "rate_threshold_bps_hz", "priority_factor"});
        s.eval.carrier_hz = get_num(je, "eval", "carrier_hz");
        s.eval.noise_dbm = get_num(je, "eval", "noise_dbm");
        const int given = je.contains("sinr_threshold") + je.contains("sinr_threshold_db") +
                          je.contains("rate_threshold_bps_hz");
        if (given != 1)
            throw ConfigError("eval: specify exactly one of sinr_threshold, "
                              "sinr_threshold_db, rate_threshold_bps_hz");
        if (je.contains("sinr_threshold"))
            s.eval.sinr_threshold = get_num(je, "eval", "sinr_threshold");
        else if (je.contains("sinr_threshold_db"))
            s.eval.sinr_threshold = db_to_linear(get_num(je, "eval", "sinr_threshold_db"));
        else
            s.eval.sinr_threshold =
                std::exp2(get_num(je, "eval", "rate_threshold_bps_hz")) - 1.0;
        s.eval.priority_factor = get_num_or(je, "eval", "priority_factor", 0.6);
    }

    if (root.contains("numerics")) {
        const auto& jn = root["numerics"];
        if (!jn.is_object()) throw ConfigError("\"numerics\" must be an object");
        check_keys(jn, "numerics",
                   {"quad_rel_tol", "tail_cutoff_exponent", "tau_threshold", "laplace_method",
                    "laplace_terms", "laplace_precision"});
        s.eval.quad_rel_tol = get_num_or(jn, "numerics", "quad_rel_tol", s.eval.quad_rel_tol);
        s.eval.tail_cutoff_exponent =
            get_num_or(jn, "numerics", "tail_cutoff_exponent", s.eval.tail_cutoff_exponent);
        s.eval.tau_threshold = get_num_or(jn, "numerics", "tau_threshold", s.eval.tau_threshold);
        if (jn.contains("laplace_method")) {
            if (!jn["laplace_method"].is_string())
                throw ConfigError("numerics.laplace_method must be a string");
            s.eval.laplace_method = jn["laplace_method"].get<std::string>();
        }
        s.eval.laplace_terms = static_cast<int>(
            get_num_or(jn, "numerics", "laplace_terms", s.eval.laplace_terms));
        s.eval.laplace_precision =
            get_num_or(jn, "numerics", "laplace_precision", s.eval.laplace_precision);
    }
    return s;
}

std::string scenario_to_json(const Scenario& s) {
    json root;
    for (const auto& t : s.tiers) {
        json jt;
        jt["power_dbm"] = t.power_dbm;
        jt["height_m"] = t.height_m;
        jt["density_per_m2"] = t.density_per_m2;
        jt["pathloss_exponent"] = t.pathloss_exponent;
        jt["bias"] = t.bias;
        jt["load_factor"] = t.load_factor;
        root["tiers"].push_back(jt);
    }
    root["irs"]["height_m"] = s.irs.height_m;
    root["irs"]["elements"] = s.irs.elements;
    root["irs"]["density_per_m2"] = s.irs.density_per_m2;
    root["irs"]["pathloss_exponent"] = s.irs.pathloss_exponent;
    root["irs"]["local_radius_m"] = s.irs.local_radius_m;
    root["eval"]["carrier_hz"] = s.eval.carrier_hz;
    root["eval"]["noise_dbm"] = s.eval.noise_dbm;
    root["eval"]["sinr_threshold"] = s.eval.sinr_threshold;
    root["eval"]["priority_factor"] = s.eval.priority_factor;
    root["numerics"]["quad_rel_tol"] = s.eval.quad_rel_tol;
    root["numerics"]["tail_cutoff_exponent"] = s.eval.tail_cutoff_exponent;
    root["numerics"]["tau_threshold"] = s.eval.tau_threshold;
    root["numerics"]["laplace_method"] = s.eval.laplace_method;
    root["numerics"]["laplace_terms"] = s.eval.laplace_terms;
    root["numerics"]["laplace_precision"] = s.eval.laplace_precision;
    return root.dump(2) + "\n";
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return scenario_from_json(buf.str());
}

void save_scenario(const Scenario& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write config file \"" + path + "\"");
    out << scenario_to_json(s);
}

} // namespace irshcn
