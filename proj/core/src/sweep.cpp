#include "irshcn/sweep.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <set>

#include "irshcn/analytical.hpp"
#include "irshcn/config_io.hpp"
#include "irshcn/csvio.hpp"
#include "irshcn/errors.hpp"
#include "irshcn/simulator.hpp"
#include "irshcn/units.hpp"

namespace irshcn {

namespace {

using csv::format_double;

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    parts.push_back(cur);
    return parts;
}

} // namespace

SweepSpec parse_sweep(const std::string& arg) {
    const auto eq = arg.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError("sweep must look like KEY=v1,v2,... got \"" + arg + "\"");
    SweepSpec spec;
    spec.key = arg.substr(0, eq);
    for (const auto& tok : split(arg.substr(eq + 1), ',')) {
        if (tok.empty()) throw ConfigError("empty value in sweep \"" + arg + "\"");
        spec.values.push_back(csv::parse_double(tok, "sweep \"" + arg + "\""));
    }
    if (spec.values.empty()) throw ConfigError("sweep \"" + arg + "\" has no values");
    return spec;
}

void apply_parameter(Scenario& s, const std::string& key, double value) {
    // accept tiers[2].bias and tiers.2.bias alike; tier indices are 1-based,
    // matching the assoc_k / cov_k / thr_k output columns
    std::string norm;
    for (char ch : key) {
        if (ch == '[') norm.push_back('.');
        else if (ch != ']') norm.push_back(ch);
    }
    const auto parts = split(norm, '.');
    auto fail = [&] { throw ConfigError("unknown sweep/parameter key \"" + key + "\""); };
    if (parts.size() == 3 && parts[0] == "tiers") {
        size_t idx = 0, pos = 0;
        try {
            idx = std::stoul(parts[1], &pos);
        } catch (...) {
            fail();
        }
        if (pos != parts[1].size()) fail();
        if (idx < 1 || idx > s.tiers.size())
            throw ConfigError("tier index out of range in \"" + key + "\"");
        auto& t = s.tiers[idx - 1];
        const std::string& f = parts[2];
        if (f == "power_dbm") t.power_dbm = value;
        else if (f == "height_m") t.height_m = value;
        else if (f == "density_per_m2") t.density_per_m2 = value;
        else if (f == "pathloss_exponent") t.pathloss_exponent = value;
        else if (f == "bias") t.bias = value;
        else if (f == "load_factor") t.load_factor = value;
        else fail();
        return;
    }
    if (parts.size() == 2 && parts[0] == "irs") {
        const std::string& f = parts[1];
        if (f == "height_m") s.irs.height_m = value;
        else if (f == "elements") s.irs.elements = static_cast<int>(value);
        else if (f == "density_per_m2") s.irs.density_per_m2 = value;
        else if (f == "pathloss_exponent") s.irs.pathloss_exponent = value;
        else if (f == "local_radius_m") s.irs.local_radius_m = value;
        else fail();
        return;
    }
    if (parts.size() == 2 && parts[0] == "eval") {
        const std::string& f = parts[1];
        if (f == "carrier_hz") s.eval.carrier_hz = value;
        else if (f == "noise_dbm") s.eval.noise_dbm = value;
        else if (f == "sinr_threshold") s.eval.sinr_threshold = value;
        else if (f == "sinr_threshold_db") s.eval.sinr_threshold = db_to_linear(value);
        else if (f == "rate_threshold_bps_hz") s.eval.sinr_threshold = std::exp2(value) - 1.0;
        else if (f == "priority_factor") s.eval.priority_factor = value;
        else fail();
        return;
    }
    fail();
}

namespace {

bool is_gamma_key(const std::string& key) {
    return key == "eval.sinr_threshold" || key == "eval.sinr_threshold_db" ||
           key == "eval.rate_threshold_bps_hz";
}

double gamma_from_key_value(const std::string& key, double v) {
    if (key == "eval.sinr_threshold_db") return db_to_linear(v);
    if (key == "eval.rate_threshold_bps_hz") return std::exp2(v) - 1.0;
    return v;
}

csv::Table make_table(int num_tiers) {
    csv::Table t;
    t.columns = {"sweep_key",      "sweep_value", "engine",   "gamma0_db",
                 "trials",         "seed",        "empty_delta_prob",
                 "overall_coverage", "cov_lo",    "cov_hi",   "throughput_total"};
    for (int k = 1; k <= num_tiers; ++k) t.columns.push_back("assoc_" + std::to_string(k));
    for (int k = 1; k <= num_tiers; ++k) t.columns.push_back("cov_" + std::to_string(k));
    for (int k = 1; k <= num_tiers; ++k) t.columns.push_back("thr_" + std::to_string(k));
    t.columns.push_back("wall_ms");
    return t;
}

void push_row(csv::Table& t, const std::string& sweep_key, double sweep_value,
              const std::string& engine, double gamma0, std::uint64_t trials,
              std::uint64_t seed, const CoverageBreakdown& b, double cov_lo, double cov_hi,
              double wall_ms) {
    std::vector<std::string> row;
    row.push_back(sweep_key);
    row.push_back(format_double(sweep_value));
    row.push_back(engine);
    row.push_back(format_double(linear_to_db(gamma0)));
    row.push_back(std::to_string(trials));
    row.push_back(std::to_string(seed));
    row.push_back(format_double(b.empty_local_prob));
    row.push_back(format_double(b.overall_coverage));
    row.push_back(format_double(cov_lo));
    row.push_back(format_double(cov_hi));
    row.push_back(format_double(b.throughput));
    for (double v : b.association) row.push_back(format_double(v));
    for (double v : b.tier_coverage) row.push_back(format_double(v));
    for (double v : b.tier_throughput) row.push_back(format_double(v));
    row.push_back(format_double(wall_ms));
    t.rows.push_back(std::move(row));
}

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

// one sweep, one engine, one output table
void run_sweep_rows(const Scenario& base, const SweepSpec& spec, Engine engine,
                    const RunOptions& opts, csv::Table& out) {
    const bool gamma_sweep = is_gamma_key(spec.key);
    if (engine == Engine::simulation && gamma_sweep) {
        // one set of SINR samples serves every threshold
        Scenario s = base;
        apply_parameter(s, spec.key, spec.values.front());
        const LinearScenario lin = linearize(s);
        std::vector<double> gammas;
        for (double v : spec.values) gammas.push_back(gamma_from_key_value(spec.key, v));
        sim::SimOptions so{opts.trials, opts.seed, opts.window_m, opts.threads};
        const auto t0 = std::chrono::steady_clock::now();
        const auto results = sim::estimate_multi(lin, gammas, so);
        const double wall = ms_since(t0) / results.size();
        for (size_t i = 0; i < results.size(); ++i) {
            const auto& r = results[i];
            push_row(out, spec.key, spec.values[i], "sim", r.gamma0, r.trials, r.seed,
                     r.breakdown, r.overall_ci.lo, r.overall_ci.hi, wall);
        }
        return;
    }
    for (double v : spec.values) {
        Scenario s = base;
        apply_parameter(s, spec.key, v);
        const LinearScenario lin = linearize(s);
        const auto t0 = std::chrono::steady_clock::now();
        if (engine == Engine::analytical) {
            const AnalyticalEngine eng(lin);
            const CoverageBreakdown b = eng.overall_coverage();
            push_row(out, spec.key, v, "analytical", lin.gamma0, 0, 0, b, b.overall_coverage,
                     b.overall_coverage, ms_since(t0));
        } else {
            sim::SimOptions so{opts.trials, opts.seed, opts.window_m, opts.threads};
            const auto r = sim::estimate(lin, so);
            push_row(out, spec.key, v, "sim", r.gamma0, r.trials, r.seed, r.breakdown,
                     r.overall_ci.lo, r.overall_ci.hi, ms_since(t0));
        }
    }
}

void write_engine_tables(const Scenario& base, const SweepSpec& spec, const RunOptions& opts,
                         const std::string& stem, std::ostream& log) {
    namespace fs = std::filesystem;
    const int K = static_cast<int>(base.tiers.size());
    const auto emit = [&](Engine e, const char* tag) {
        csv::Table t = make_table(K);
        run_sweep_rows(base, spec, e, opts, t);
        const auto path = (fs::path(opts.out_dir) / (stem + "_" + tag + ".csv")).string();
        csv::write_csv(t, path);
        log << "wrote " << path << " (" << t.rows.size() << " rows)\n";
    };
    if (opts.engine != Engine::simulation) emit(Engine::analytical, "analytical");
    if (opts.engine != Engine::analytical) emit(Engine::simulation, "sim");
}

// ---------- canned figure bundles ----------

std::string mult_tag(double m) {
    std::string s = format_double(m);
    for (auto& ch : s)
        if (ch == '.') ch = 'p';
    return s;
}

void run_fig2(const Scenario& base, const RunOptions& opts, std::ostream& log) {
    SweepSpec spec;
    spec.key = "eval.sinr_threshold_db";
    for (double db = -10.0; db <= 20.0 + 1e-9; db += 2.5) spec.values.push_back(db);
    const double li0 = base.irs.density_per_m2;
    const double l20 = base.tiers.size() > 1 ? base.tiers[1].density_per_m2 : 0.0;
    for (double l2m : {1.0, 2.0}) {
        if (l2m != 1.0 && base.tiers.size() < 2) continue;
        for (double lim : {0.0, 1.0, 2.0}) {
            Scenario s = base;
            s.irs.density_per_m2 = li0 * lim;
            if (base.tiers.size() > 1) s.tiers[1].density_per_m2 = l20 * l2m;
            write_engine_tables(s, spec, opts,
                                "fig2_l2x" + mult_tag(l2m) + "_lix" + mult_tag(lim), log);
        }
    }
}

void run_fig3(const Scenario& base, const RunOptions& opts, std::ostream& log) {
    SweepSpec spec;
    spec.key = "irs.density_per_m2";
    for (double m : {0.0, 0.5, 1.0, 2.0, 4.0}) spec.values.push_back(base.irs.density_per_m2 * m);
    const double l20 = base.tiers.size() > 1 ? base.tiers[1].density_per_m2 : 0.0;
    for (double l2m : {1.0, 2.0}) {
        if (l2m != 1.0 && base.tiers.size() < 2) continue;
        Scenario s = base;
        if (base.tiers.size() > 1) s.tiers[1].density_per_m2 = l20 * l2m;
        write_engine_tables(s, spec, opts, "fig3_l2x" + mult_tag(l2m), log);
    }
}

void run_fig4(const Scenario& base, const RunOptions& opts, std::ostream& log) {
    if (base.tiers.size() < 2)
        throw ConfigError("fig4 sweeps the bias of tier 2; config has only one tier");
    SweepSpec spec;
    spec.key = "tiers[2].bias";
    spec.values = {1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0};
    for (double lim : {1.0, 2.0}) {
        Scenario s = base;
        s.irs.density_per_m2 = base.irs.density_per_m2 * lim;
        write_engine_tables(s, spec, opts, "fig4_lix" + mult_tag(lim), log);
    }
}

} // namespace

int cli_run(const RunOptions& opts, std::ostream& log) {
    try {
        const Scenario base = load_scenario(opts.config_path);
        if (const auto rep = validate(base); !rep.ok()) {
            log << "config invalid:\n" << rep.to_string();
            return 2;
        }
        std::filesystem::create_directories(opts.out_dir);
        if (opts.figure) {
            if (*opts.figure == "fig2") run_fig2(base, opts, log);
            else if (*opts.figure == "fig3") run_fig3(base, opts, log);
            else if (*opts.figure == "fig4") run_fig4(base, opts, log);
            else throw ConfigError("unknown figure \"" + *opts.figure + "\"");
            return 0;
        }
        SweepSpec spec;
        if (opts.sweep) {
            spec = parse_sweep(*opts.sweep);
        } else {
            // degenerate single-point sweep at the configured threshold
            spec.key = "eval.sinr_threshold";
            spec.values = {base.eval.sinr_threshold};
        }
        write_engine_tables(base, spec, opts, "run", log);
        return 0;
    } catch (const ConfigError& e) {
        log << "config error: " << e.what() << "\n";
        return 2;
    } catch (const NumericError& e) {
        log << "numeric failure: " << e.what() << "\n";
        return 3;
    }
}

namespace {

bool is_prob_metric(const std::string& col) {
    return col == "empty_delta_prob" || col == "overall_coverage" ||
           col.rfind("assoc_", 0) == 0 || col.rfind("cov_", 0) == 0;
}

bool is_rel_metric(const std::string& col) {
    return col == "throughput_total" || col.rfind("thr_", 0) == 0;
}

} // namespace

int cli_compare(const CompareOptions& opts, std::ostream& log) {
    try {
        const csv::Table a = csv::read_csv(opts.file_a);
        const csv::Table b = csv::read_csv(opts.file_b);
        if (a.columns != b.columns) {
            log << "column mismatch between " << opts.file_a << " and " << opts.file_b << "\n";
            return 2;
        }
        if (a.rows.size() != b.rows.size()) {
            log << "row count mismatch: " << a.rows.size() << " vs " << b.rows.size() << "\n";
            return 2;
        }
        // id columns must agree row by row
        for (const char* id : {"sweep_key", "sweep_value", "gamma0_db"}) {
            const int c = a.column_index(id);
            if (c < 0) {
                log << "missing id column " << id << "\n";
                return 2;
            }
            for (size_t r = 0; r < a.rows.size(); ++r)
                if (a.rows[r][c] != b.rows[r][c]) {
                    log << "grid mismatch at row " << r + 2 << ", column " << id << ": \""
                        << a.rows[r][c] << "\" vs \"" << b.rows[r][c] << "\"\n";
                    return 2;
                }
        }
        bool pass = true;
        for (size_t c = 0; c < a.columns.size(); ++c) {
            const std::string& col = a.columns[c];
            const bool prob = is_prob_metric(col);
            const bool rel = is_rel_metric(col);
            if (!prob && !rel) continue;
            double worst = 0.0;
            size_t worst_row = 0;
            for (size_t r = 0; r < a.rows.size(); ++r) {
                const std::string where =
                    col + " at row " + std::to_string(r + 2);
                const double va = csv::parse_double(a.rows[r][c], opts.file_a + ", " + where);
                const double vb = csv::parse_double(b.rows[r][c], opts.file_b + ", " + where);
                double dev = std::abs(va - vb);
                if (rel) dev /= std::max({std::abs(va), std::abs(vb), 1e-300});
                if (dev > worst) {
                    worst = dev;
                    worst_row = r;
                }
            }
            const bool ok = worst <= opts.tolerance;
            pass = pass && ok;
            log << col << ": max " << (rel ? "relative" : "absolute") << " deviation "
                << format_double(worst) << " at row " << worst_row + 2 << " -> "
                << (ok ? "pass" : "FAIL") << "\n";
        }
        log << (pass ? "PASS" : "FAIL") << " (tolerance " << format_double(opts.tolerance)
            << ")\n";
        return pass ? 0 : 1;
    } catch (const ConfigError& e) {
        log << "compare error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace irshcn
