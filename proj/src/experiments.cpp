#include "v2vsf/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "v2vsf/quadrature.hpp"

namespace v2vsf::cli {

namespace fs = std::filesystem;

double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double watt_to_dbm(double watt) {
    if (!(watt > 0.0)) throw std::invalid_argument("watt_to_dbm: power must be > 0");
    return 10.0 * std::log10(watt) + 30.0;
}

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& value, int line) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("invalid numeric value for '" + key + "': " + value, line);
    }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value, int line) {
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("invalid integer value for '" + key + "': " + value, line);
    }
}

bool parse_bool(const std::string& key, const std::string& value, int line) {
    if (value == "1" || value == "true" || value == "on") return true;
    if (value == "0" || value == "false" || value == "off") return false;
    throw ConfigError("invalid boolean value for '" + key + "': " + value, line);
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void require_positive(const std::string& key, double v, int line) {
    if (!(v > 0.0)) throw ConfigError("'" + key + "' must be > 0", line);
}

}  // namespace

void ExperimentConfig::set(const std::string& key, const std::string& value, int line) {
    if (key == "lambda_p") {
        lambda_p = parse_double(key, value, line);
        require_positive(key, lambda_p, line);
    } else if (key == "d_v") {
        d_v = parse_double(key, value, line);
        require_positive(key, d_v, line);
    } else if (key == "d_s") {
        d_s = parse_double(key, value, line);
        if (*d_s < 0.0) throw ConfigError("'d_s' must be >= 0", line);
    } else if (key == "v_s") {
        v_s = parse_double(key, value, line);
        if (*v_s < 0.0) throw ConfigError("'v_s' must be >= 0", line);
    } else if (key == "w_l") {
        w_l = parse_double(key, value, line);
        require_positive(key, w_l, line);
    } else if (key == "alpha") {
        alpha = parse_double(key, value, line);
        if (!(alpha > 1.0)) throw ConfigError("'alpha' must be > 1", line);
    } else if (key == "pt_dbm") {
        pt_dbm = parse_double(key, value, line);
    } else if (key == "noise_dbm") {
        noise_dbm = parse_double(key, value, line);
    } else if (key == "freq_hz") {
        freq_hz = parse_double(key, value, line);
        require_positive(key, freq_hz, line);
    } else if (key == "d0_m") {
        d0_m = parse_double(key, value, line);
        require_positive(key, d0_m, line);
    } else if (key == "case") {
        if (value != "c1" && value != "c2" && value != "both")
            throw ConfigError("'case' must be c1, c2 or both", line);
        antenna = value;
    } else if (key == "trials") {
        trials = parse_u64(key, value, line);
        if (trials == 0) throw ConfigError("'trials' must be >= 1", line);
    } else if (key == "seed") {
        seed = parse_u64(key, value, line);
    } else if (key == "window_half_length") {
        window_half_length = parse_double(key, value, line);
        require_positive(key, window_half_length, line);
    } else if (key == "grid_points") {
        grid_points = parse_u64(key, value, line);
        if (grid_points < 3) throw ConfigError("'grid_points' must be >= 3", line);
    } else if (key == "grid_mh_min") {
        grid_mh_min = parse_double(key, value, line);
        require_positive(key, grid_mh_min, line);
    } else if (key == "grid_mh_max") {
        grid_mh_max = parse_double(key, value, line);
        require_positive(key, grid_mh_max, line);
    } else if (key == "sigma_mh") {
        sigma_mh = parse_double(key, value, line);
        if (sigma_mh < 0.0) throw ConfigError("'sigma_mh' must be >= 0", line);
    } else if (key == "renormalize_c2") {
        renormalize_c2 = parse_bool(key, value, line);
    } else if (key == "sweep_key") {
        sweep_key = value;
    } else if (key == "sweep_values") {
        sweep_values = split_list(value);
        if (sweep_values.empty()) throw ConfigError("'sweep_values' is empty", line);
    } else if (key == "curves") {
        curves = split_list(value);
        for (const auto& c : curves)
            if (c != "analytic" && c != "mc" && c != "baseline" && c != "f1" && c != "f2")
                throw ConfigError("unknown curve kind '" + c + "'", line);
    } else if (key == "dump_fields") {
        dump_fields = parse_u64(key, value, line);
    } else if (key == "dump_patterns") {
        dump_patterns = parse_u64(key, value, line);
    } else {
        throw ConfigError("unknown configuration key '" + key + "'", line);
    }
    set_keys.insert(key);
}

double ExperimentConfig::safety_distance() const {
    if (d_s) return *d_s;
    if (v_s) return 2.0 * *v_s;  // two-second rule
    return 145.0;
}

link::RadioConfig ExperimentConfig::radio() const {
    link::RadioConfig r;
    r.pt_w = dbm_to_watt(pt_dbm);
    r.noise_w = dbm_to_watt(noise_dbm);
    r.freq_hz = freq_hz;
    r.d0_m = d0_m;
    r.alpha = alpha;
    return r;
}

link::LaneGeometry ExperimentConfig::geometry() const {
    link::LaneGeometry g;
    g.lane1 = {lambda_p, d_v, safety_distance()};
    g.lane2 = g.lane1;  // both lanes share the traffic parameters
    g.layout = {w_l};
    return g;
}

mc::SimConfig ExperimentConfig::sim_config(lanes::AntennaCase antenna_case) const {
    mc::SimConfig s;
    s.trials = trials;
    s.half_length = window_half_length;
    s.seed = seed;
    s.antenna = antenna_case;
    s.geometry = geometry();
    s.radio = radio();
    s.sigma_grid = sigma_grid();
    return s;
}

std::vector<double> ExperimentConfig::sigma_grid() const {
    return default_sigma_grid(grid_points, grid_mh_min, grid_mh_max);
}

std::vector<lanes::AntennaCase> ExperimentConfig::cases() const {
    if (antenna == "c1") return {lanes::AntennaCase::c1_semicircle};
    if (antenna == "c2") return {lanes::AntennaCase::c2_omni};
    return {lanes::AntennaCase::c1_semicircle, lanes::AntennaCase::c2_omni};
}

std::string ExperimentConfig::snapshot() const {
    std::ostringstream os;
    os << "lambda_p=" << fmt(lambda_p) << ";d_v=" << fmt(d_v) << ";d_s=" << fmt(safety_distance())
       << ";w_l=" << fmt(w_l) << ";alpha=" << fmt(alpha) << ";pt_dbm=" << fmt(pt_dbm)
       << ";noise_dbm=" << fmt(noise_dbm) << ";freq_hz=" << fmt(freq_hz) << ";d0_m=" << fmt(d0_m)
       << ";case=" << antenna << ";trials=" << trials << ";seed=" << seed
       << ";window_half_length=" << fmt(window_half_length) << ";grid_points=" << grid_points
       << ";grid_mh_min=" << fmt(grid_mh_min) << ";grid_mh_max=" << fmt(grid_mh_max)
       << ";sigma_mh=" << fmt(sigma_mh) << ";renormalize_c2=" << (renormalize_c2 ? 1 : 0);
    return os.str();
}

std::string ExperimentConfig::snapshot_hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
    for (unsigned char c : snapshot()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

ExperimentConfig load_config_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    ExperimentConfig cfg;
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto hash = raw.find('#');
        std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected 'key = value', got: " + line, lineno);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("expected 'key = value', got: " + line, lineno);
        cfg.set(key, value, lineno);
    }
    return cfg;
}

void apply_seed_env(ExperimentConfig& config) {
    if (config.is_set("seed")) return;
    if (const char* env = std::getenv("V2V_SF_SEED")) {
        config.set("seed", env);
        config.set_keys.erase("seed");  // env is a fallback, not an explicit key
    }
}

void write_csv(const fs::path& path, const ResultTable& table) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    for (const auto& c : table.comments) out << "# " << c << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        out << table.columns[i] << (i + 1 < table.columns.size() ? ',' : '\n');
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << fmt(row[i]) << (i + 1 < row.size() ? ',' : '\n');
    }
}

namespace {

std::vector<std::string> standard_comments(const ExperimentConfig& cfg,
                                           const std::string& title) {
    return {title,
            "config: " + cfg.snapshot(),
            "config_hash: " + cfg.snapshot_hash(),
            "units: sigma in [0,1); mh = sigma/(1-sigma); probabilities in [0,1]; "
            "pt_w in W; distances in m"};
}

void write_meta_json(const fs::path& path, const ExperimentConfig& cfg, const CcdfCurve& curve) {
    nlohmann::json j;
    j["kind"] = to_string(curve.kind);
    j["case"] = lanes::to_string(curve.antenna);
    j["seed"] = curve.meta.seed;
    j["trials"] = curve.meta.trials;
    j["discarded"] = curve.meta.discarded;
    j["discard_rate"] = curve.meta.discard_rate();
    j["window_half_length_m"] = curve.meta.window_half_length;
    j["c2_pdf_mass"] = curve.meta.c2_mass;
    j["config"] = cfg.snapshot();
    j["config_hash"] = cfg.snapshot_hash();
    std::ofstream out(path);
    out << j.dump(2) << '\n';
}

void write_gnuplot(const fs::path& path, const std::string& title,
                   const std::vector<std::pair<std::string, std::vector<std::string>>>& plots) {
    std::ofstream out(path);
    out << "# gnuplot convenience script (CSV files are canonical)\n";
    out << "set datafile separator ','\n";
    out << "set key outside\n";
    out << "set xlabel 'sigma'\n";
    out << "set ylabel 'CCDF'\n";
    out << "set title '" << title << "'\n";
    for (const auto& [file, cols] : plots) {
        out << "plot ";
        for (std::size_t i = 0; i < cols.size(); ++i) {
            out << "'" << file << "' using 1:" << i + 2 << " with lines title '" << cols[i] << "'";
            out << (i + 1 < cols.size() ? ", " : "\n");
        }
        out << "pause -1\n";
    }
}

void dump_requested(const ExperimentConfig& cfg, const fs::path& out_dir, RunOutputs& out) {
    for (std::size_t i = 0; i < cfg.dump_fields; ++i) {
        rng::Stream stream(rng::derive_seed(cfg.seed, 0xF1E1DULL + i));
        const auto geo = cfg.geometry();
        const auto field = lanes::deploy_field(geo.lane1, geo.lane2, geo.layout,
                                               cfg.window_half_length, stream);
        const fs::path p = out_dir / ("field_" + std::to_string(i) + ".csv");
        std::ofstream os(p);
        lanes::write_field_csv(os, field);
        out.files.push_back(p);
    }
    for (std::size_t i = 0; i < cfg.dump_patterns; ++i) {
        rng::Stream stream(rng::derive_seed(cfg.seed, 0x9A77ULL + i));
        const auto pat = hardcore::sample_mhcp(cfg.lambda_p, cfg.hard_core(),
                                               {-cfg.window_half_length, cfg.window_half_length},
                                               stream);
        const fs::path p = out_dir / ("pattern_" + std::to_string(i) + ".csv");
        std::ofstream os(p);
        hardcore::write_pattern_csv(os, pat);
        out.files.push_back(p);
    }
}

// Monotone-decreasing bisection: gamma with model value = target.
double solve_gamma_at(const link::LinkModel& model, double target) {
    double lo = 1e-12, hi = 1e8;
    if (model.coverage_ccdf(lo) < target || model.coverage_ccdf(hi) > target)
        throw std::runtime_error("probe target outside curve range");
    for (int it = 0; it < 200; ++it) {
        const double mid = std::sqrt(lo * hi);
        (model.coverage_ccdf(mid) > target ? lo : hi) = mid;
    }
    return std::sqrt(lo * hi);
}

ResultTable fig1_table(const ExperimentConfig& cfg, double alpha_value,
                       std::map<std::string, CcdfCurve>& curves) {
    ExperimentConfig c = cfg;
    c.set("alpha", fmt(alpha_value));
    // Campaign seeds are decorrelated per case through the derive step.
    ResultTable t;
    t.columns = {"sigma", "analytic_c1", "analytic_c2", "mc_c1", "mc_c2",
                 "baseline_c1", "baseline_c2"};
    const auto grid = c.sigma_grid();

    for (auto antenna : {lanes::AntennaCase::c1_semicircle, lanes::AntennaCase::c2_omni}) {
        auto sim = c.sim_config(antenna);
        sim.seed = rng::derive_seed(c.seed, antenna == lanes::AntennaCase::c1_semicircle ? 1 : 2);
        const std::string tag = lanes::to_string(antenna);
        curves["analytic_" + tag] = mc::analytic_ccdf(sim, c.renormalize_c2);
        curves["mc_" + tag] = mc::run_campaign(sim);
        curves["baseline_" + tag] = mc::baseline_ppp_ccdf(sim);
    }

    for (std::size_t i = 0; i < grid.size(); ++i) {
        t.rows.push_back({grid[i], curves["analytic_c1"].values[i], curves["analytic_c2"].values[i],
                          curves["mc_c1"].values[i], curves["mc_c2"].values[i],
                          curves["baseline_c1"].values[i], curves["baseline_c2"].values[i]});
    }
    t.comments = standard_comments(c, "SF CCDF vs sigma, alpha=" + fmt(alpha_value));
    t.comments.push_back("mc_c1 discard_rate: " + fmt(curves["mc_c1"].meta.discard_rate()));
    t.comments.push_back("mc_c2 discard_rate: " + fmt(curves["mc_c2"].meta.discard_rate()));
    return t;
}

}  // namespace

RunOutputs run_named(const std::string& name, ExperimentConfig config, const fs::path& out_dir) {
    RunOutputs out;
    fs::create_directories(out_dir);

    // Named presets fill only keys the caller did not set explicitly.
    const auto preset = [&](const std::string& key, const std::string& value) {
        if (!config.is_set(key)) {
            config.set(key, value);
            config.set_keys.erase(key);
        }
    };

    if (name == "fig1") {
        preset("d_s", "145");
        std::vector<double> alphas = config.is_set("alpha") ? std::vector<double>{config.alpha}
                                                            : std::vector<double>{3.0, 4.0};
        std::vector<std::pair<std::string, std::vector<std::string>>> plots;
        for (double a : alphas) {
            const std::string key = "fig1_alpha" + fmt(a);
            std::map<std::string, CcdfCurve> curves;
            ResultTable t = fig1_table(config, a, curves);
            const fs::path p = out_dir / (key + ".csv");
            write_csv(p, t);
            out.tables[key] = std::move(t);
            out.files.push_back(p);

            ExperimentConfig c = config;
            c.set("alpha", fmt(a));
            for (const char* tag : {"c1", "c2"}) {
                const fs::path mp = out_dir / (key + "_mc_" + tag + "_meta.json");
                write_meta_json(mp, c, curves.at(std::string("mc_") + tag));
                out.files.push_back(mp);
            }
            plots.emplace_back(key + ".csv", out.tables[key].columns);
        }
        const fs::path gp = out_dir / "fig1.gp";
        write_gnuplot(gp, "SF CCDF vs sigma", plots);
        out.files.push_back(gp);
        dump_requested(config, out_dir, out);
        return out;
    }

    if (name == "fig2") {
        preset("lambda_p", "0.2");
        preset("d_s", "45");
        preset("case", "c1");
        const link::LinkModel model(lanes::AntennaCase::c1_semicircle, config.radio(),
                                    config.geometry(), config.renormalize_c2);
        ResultTable t;
        t.columns = {"sigma", "exact", "f1", "f2"};
        bool any_clamped = false;
        for (double s : config.sigma_grid()) {
            const double g = link::mh_from_sf(s);
            bool clamped = false;
            t.rows.push_back({s, model.sf_ccdf(s), model.approx_small(g, &clamped),
                              model.approx_large(g)});
            any_clamped |= clamped;
        }
        t.comments = standard_comments(config, "exact vs F1/F2 SF CCDF, case c1");
        if (any_clamped) t.comments.push_back("note: f1 clamped to [0,1] at large sigma");

        // Relative-error probes at the high- and low-coverage operating points.
        const double g99 = solve_gamma_at(model, 0.99);
        const double g05 = solve_gamma_at(model, 0.05);
        ResultTable probe;
        probe.columns = {"target_ccdf", "gamma_t", "sigma", "exact", "approx", "rel_error_pct"};
        const double e99 = model.coverage_ccdf(g99), e05 = model.coverage_ccdf(g05);
        const double f1v = model.approx_small(g99), f2v = model.approx_large(g05);
        probe.rows.push_back({0.99, g99, link::sf_from_mh(g99), e99, f1v,
                              100.0 * (f1v - e99) / e99});
        probe.rows.push_back({0.05, g05, link::sf_from_mh(g05), e05, f2v,
                              100.0 * (f2v - e05) / e05});
        probe.comments = standard_comments(config, "approximation error probes (f1@99%, f2@5%)");

        const fs::path p1 = out_dir / "fig2.csv", p2 = out_dir / "fig2_probe.csv";
        write_csv(p1, t);
        write_csv(p2, probe);
        write_gnuplot(out_dir / "fig2.gp", "exact vs approximations", {{"fig2.csv", t.columns}});
        out.tables["fig2"] = std::move(t);
        out.tables["fig2_probe"] = std::move(probe);
        out.files = {p1, p2, out_dir / "fig2.gp"};
        dump_requested(config, out_dir, out);
        return out;
    }

    if (name == "fig3") {
        preset("d_s", "95");
        const double sigma = link::sf_from_mh(config.sigma_mh);
        const link::LinkModel m1(lanes::AntennaCase::c1_semicircle, config.radio(),
                                 config.geometry(), config.renormalize_c2);
        const link::LinkModel m2(lanes::AntennaCase::c2_omni, config.radio(), config.geometry(),
                                 config.renormalize_c2);
        const double lim1 = m1.upper_limit(sigma), lim2 = m2.upper_limit(sigma);
        const double noise_w = dbm_to_watt(config.noise_dbm);
        const double c_fs = config.radio().free_space_c();

        ResultTable t;
        t.columns = {"pt_w", "sf_c1", "sf_c2", "limit_c1", "limit_c2"};
        const int n = 25;
        for (int i = 0; i < n; ++i) {
            const double pt = 0.01 * std::pow(10.0 / 0.01, static_cast<double>(i) / (n - 1));
            const double rho = noise_w / (pt * c_fs);
            t.rows.push_back({pt, m1.sf_ccdf_with_rho(sigma, rho),
                              m2.sf_ccdf_with_rho(sigma, rho), lim1, lim2});
        }
        t.comments = standard_comments(config, "SF CCDF vs transmit power at sigma_mh=" +
                                                   fmt(config.sigma_mh));
        const fs::path p = out_dir / "fig3.csv";
        write_csv(p, t);
        write_gnuplot(out_dir / "fig3.gp", "SF CCDF vs transmit power",
                      {{"fig3.csv", t.columns}});
        out.tables["fig3"] = std::move(t);
        out.files = {p, out_dir / "fig3.gp"};
        dump_requested(config, out_dir, out);
        return out;
    }

    throw UsageError("unknown experiment '" + name + "' (expected fig1, fig2 or fig3)");
}

namespace {

void append_curve_columns(const ExperimentConfig& cfg, ResultTable& t,
                          std::vector<std::string>& notices) {
    const auto grid = cfg.sigma_grid();
    t.columns = {"sigma"};
    t.rows.assign(grid.size(), {});
    for (std::size_t i = 0; i < grid.size(); ++i) t.rows[i].push_back(grid[i]);

    const auto add = [&](const std::string& name, const std::vector<double>& vals) {
        t.columns.push_back(name);
        for (std::size_t i = 0; i < vals.size(); ++i) t.rows[i].push_back(vals[i]);
    };

    for (auto antenna : cfg.cases()) {
        const std::string tag = lanes::to_string(antenna);
        auto sim = cfg.sim_config(antenna);
        sim.seed = rng::derive_seed(cfg.seed, antenna == lanes::AntennaCase::c1_semicircle ? 1 : 2);
        std::optional<link::LinkModel> model;
        const auto ensure_model = [&]() {
            if (!model)
                model.emplace(antenna, cfg.radio(), cfg.geometry(), cfg.renormalize_c2);
        };
        for (const auto& kind : cfg.curves) {
            if (kind == "analytic") {
                ensure_model();
                std::vector<double> v;
                for (double s : grid) v.push_back(model->sf_ccdf(s));
                add("analytic_" + tag, v);
            } else if (kind == "mc") {
                const auto curve = mc::run_campaign(sim);
                add("mc_" + tag, curve.values);
                if (curve.meta.discard_rate() > 0.0)
                    notices.push_back("mc_" + tag + " discard rate " +
                                      fmt(curve.meta.discard_rate()));
            } else if (kind == "baseline") {
                add("baseline_" + tag, mc::baseline_ppp_ccdf(sim).values);
            } else if (kind == "f1") {
                ensure_model();
                std::vector<double> v;
                for (double s : grid) v.push_back(model->approx_small(link::mh_from_sf(s)));
                add("f1_" + tag, v);
            } else if (kind == "f2") {
                ensure_model();
                std::vector<double> v;
                for (double s : grid) v.push_back(model->approx_large(link::mh_from_sf(s)));
                add("f2_" + tag, v);
            }
        }
    }
}

}  // namespace

RunOutputs run_sweep(const ExperimentConfig& config, const fs::path& out_dir) {
    RunOutputs out;
    fs::create_directories(out_dir);
    if (config.sweep_key.empty())
        throw ConfigError("sweep requires 'sweep_key' and 'sweep_values'");
    if (config.sweep_values.empty()) throw ConfigError("'sweep_values' is empty");

    // Defaulted physics keys are worth an explicit notice in sweep mode.
    for (const char* key : {"lambda_p", "d_v", "d_s", "w_l", "alpha"}) {
        if (!config.is_set(key) && config.sweep_key != key) {
            ExperimentConfig def;
            std::string v = key == std::string("lambda_p") ? fmt(def.lambda_p)
                            : key == std::string("d_v")     ? fmt(def.d_v)
                            : key == std::string("d_s")     ? fmt(def.safety_distance())
                            : key == std::string("w_l")     ? fmt(def.w_l)
                                                            : fmt(def.alpha);
            out.notices.push_back(std::string("notice: '") + key + "' not set; defaulting to " + v);
        }
    }

    ResultTable summary;
    summary.columns = {"sweep_value", "curve_columns", "rows"};
    summary.comments = {"sweep of '" + config.sweep_key + "'",
                        "config: " + config.snapshot(),
                        "config_hash: " + config.snapshot_hash()};

    std::vector<std::pair<std::string, std::vector<std::string>>> plots;
    for (std::size_t vi = 0; vi < config.sweep_values.size(); ++vi) {
        const auto& value = config.sweep_values[vi];
        ExperimentConfig c = config;
        c.set(config.sweep_key, value);
        ResultTable t;
        append_curve_columns(c, t, out.notices);
        t.comments = standard_comments(c, "sweep " + config.sweep_key + "=" + value);
        const std::string name = "sweep_" + config.sweep_key + "_" + value;
        const fs::path p = out_dir / (name + ".csv");
        write_csv(p, t);
        double numeric = static_cast<double>(vi);  // non-numeric keys index by position
        try {
            numeric = parse_double(config.sweep_key, value, 0);
        } catch (const ConfigError&) {
        }
        summary.rows.push_back({numeric, static_cast<double>(t.columns.size() - 1),
                                static_cast<double>(t.rows.size())});
        summary.comments.push_back("value[" + std::to_string(vi) + "] = " + value);
        plots.emplace_back(name + ".csv", std::vector<std::string>(t.columns.begin() + 1,
                                                                   t.columns.end()));
        out.tables[name] = std::move(t);
        out.files.push_back(p);
    }

    const fs::path sp = out_dir / "sweep_summary.csv";
    write_csv(sp, summary);
    out.tables["summary"] = std::move(summary);
    out.files.push_back(sp);

    const fs::path gp = out_dir / "sweep.gp";
    write_gnuplot(gp, "sweep of " + config.sweep_key, plots);
    out.files.push_back(gp);

    ExperimentConfig dumps = config;
    dump_requested(dumps, out_dir, out);
    for (const auto& n : out.notices) std::cerr << n << '\n';
    return out;
}

}  // namespace v2vsf::cli
