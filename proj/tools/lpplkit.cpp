// lpplkit: calibrate log-periodic power-law models to price series,
// scan shrinking windows, test significance, and run supply-demand analytics.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "lppl/calibrate.hpp"
#include "lppl/errors.hpp"
#include "lppl/scanner.hpp"
#include "lppl/significance.hpp"
#include "lppl/supply_demand.hpp"
#include "lppl/timeseries.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitMethod = 3;
constexpr int kExitUndefined = 4;

std::string fnv1a_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw lppl::InputError("cannot open file: " + path);
    std::uint64_t h = 1469598103934665603ull;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

struct RunContext {
    std::string command;
    fs::path out_dir = ".";
    std::uint64_t seed = 0;
    unsigned workers = 1;
    json config;             // resolved parameter snapshot
    json input_digests;
    std::string run_id;

    void add_input(const std::string& path) { input_digests[path] = fnv1a_file(path); }

    void write_manifest() {
        json manifest;
        manifest["command"] = command;
        manifest["tool_version"] = kVersion;
        manifest["seed"] = seed;
        manifest["workers"] = workers;
        manifest["config"] = config;
        manifest["inputs"] = input_digests;
        std::ostringstream os;
        os << std::hex << std::hash<std::string>{}(manifest.dump());
        run_id = os.str();
        manifest["run_id"] = run_id;
        fs::create_directories(out_dir);
        std::ofstream out(out_dir / "manifest.json");
        out << manifest.dump(2) << '\n';
    }

    void write_json(const std::string& name, json payload) const {
        payload["manifest"] = "manifest.json";
        payload["run_id"] = run_id;
        std::ofstream out(out_dir / name);
        out << payload.dump(2) << '\n';
    }

    void write_csv(const std::string& name, const std::string& body) const {
        std::ofstream out(out_dir / name);
        out << "# manifest: manifest.json run_id: " << run_id << '\n' << body;
    }
};

struct PriceInputArgs {
    std::string path;
    lppl::CsvSchema schema;

    void attach(CLI::App* cmd) {
        cmd->add_option("--input", path, "price CSV file")->required();
        cmd->add_option("--date-col", schema.date_col, "date column name");
        cmd->add_option("--value-col", schema.value_col, "value column name");
        cmd->add_option("--date-format", schema.date_format, "strptime date format");
    }

    lppl::PriceSeries load(RunContext& ctx) const {
        ctx.add_input(path);
        return lppl::load_csv(path, schema).series;
    }
};

struct FitConfigArgs {
    std::string config_file;
    lppl::FitConfig cfg;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config_file, "JSON file with fit settings");
        cmd->add_option("--m-lo", cfg.m_bounds.lo, "lower bound on m");
        cmd->add_option("--m-hi", cfg.m_bounds.hi, "upper bound on m");
        cmd->add_option("--omega-lo", cfg.omega_bounds.lo, "lower bound on omega");
        cmd->add_option("--omega-hi", cfg.omega_bounds.hi, "upper bound on omega");
        cmd->add_option("--tc-horizon", cfg.tc_horizon,
                        "tc searched up to this many years past t_last");
        cmd->add_option("--grid-tc", cfg.grid_tc, "tc grid steps");
        cmd->add_option("--grid-m", cfg.grid_m, "m grid steps");
        cmd->add_option("--grid-omega", cfg.grid_omega, "omega grid steps");
        cmd->add_option("--top-k", cfg.top_k, "multistart candidates refined");
        cmd->add_option("--max-iter", cfg.max_iter, "local refinement budget");
        cmd->add_option("--tol", cfg.tol, "objective convergence tolerance");
        cmd->add_option("--min-points", cfg.min_points, "minimum window size");
        cmd->add_option("--harmonics", cfg.harmonics, "Weierstrass harmonics N");
    }

    // config file first, then flags already parsed on top of it
    lppl::FitConfig resolve(const CLI::App* cmd, RunContext& ctx) {
        lppl::FitConfig out = cfg;
        if (!config_file.empty()) {
            ctx.add_input(config_file);
            std::ifstream in(config_file);
            if (!in) throw lppl::InputError("cannot open config: " + config_file);
            json j = json::parse(in);
            lppl::FitConfig from_file;
            if (j.contains("m_bounds")) {
                from_file.m_bounds = {j["m_bounds"][0], j["m_bounds"][1]};
            }
            if (j.contains("omega_bounds")) {
                from_file.omega_bounds = {j["omega_bounds"][0], j["omega_bounds"][1]};
            }
            from_file.tc_horizon = j.value("tc_horizon", from_file.tc_horizon);
            from_file.grid_tc = j.value("grid_tc", from_file.grid_tc);
            from_file.grid_m = j.value("grid_m", from_file.grid_m);
            from_file.grid_omega = j.value("grid_omega", from_file.grid_omega);
            from_file.top_k = j.value("top_k", from_file.top_k);
            from_file.max_iter = j.value("max_iter", from_file.max_iter);
            from_file.tol = j.value("tol", from_file.tol);
            from_file.min_points = j.value("min_points", from_file.min_points);
            from_file.harmonics = j.value("harmonics", from_file.harmonics);
            // CLI flags win over the file
            auto keep_if_set = [&](const std::string& flag, auto member) {
                if (cmd->count(flag) == 0) out.*member = from_file.*member;
            };
            keep_if_set("--tc-horizon", &lppl::FitConfig::tc_horizon);
            keep_if_set("--grid-tc", &lppl::FitConfig::grid_tc);
            keep_if_set("--grid-m", &lppl::FitConfig::grid_m);
            keep_if_set("--grid-omega", &lppl::FitConfig::grid_omega);
            keep_if_set("--top-k", &lppl::FitConfig::top_k);
            keep_if_set("--max-iter", &lppl::FitConfig::max_iter);
            keep_if_set("--tol", &lppl::FitConfig::tol);
            keep_if_set("--min-points", &lppl::FitConfig::min_points);
            keep_if_set("--harmonics", &lppl::FitConfig::harmonics);
            if (cmd->count("--m-lo") == 0) out.m_bounds.lo = from_file.m_bounds.lo;
            if (cmd->count("--m-hi") == 0) out.m_bounds.hi = from_file.m_bounds.hi;
            if (cmd->count("--omega-lo") == 0) out.omega_bounds.lo = from_file.omega_bounds.lo;
            if (cmd->count("--omega-hi") == 0) out.omega_bounds.hi = from_file.omega_bounds.hi;
        }
        ctx.config["fit"] = {
            {"m_bounds", {out.m_bounds.lo, out.m_bounds.hi}},
            {"omega_bounds", {out.omega_bounds.lo, out.omega_bounds.hi}},
            {"tc_horizon", out.tc_horizon},
            {"grid_tc", out.grid_tc},
            {"grid_m", out.grid_m},
            {"grid_omega", out.grid_omega},
            {"top_k", out.top_k},
            {"max_iter", out.max_iter},
            {"tol", out.tol},
            {"min_points", out.min_points},
            {"harmonics", out.harmonics},
        };
        return out;
    }
};

std::string fit_result_csv(const lppl::FitResult& result) {
    std::ostringstream os;
    os.precision(12);
    os << "t_start,t_last,variant,tc,tc_calendar,m,omega,rmse,n_points,converged,"
          "qualified\n";
    const auto j = lppl::params_to_json(result.params);
    os << result.window.t_start.iso() << ',' << result.window.t_last.iso() << ','
       << j["model"].get<std::string>() << ',' << j["tc"].get<double>() << ','
       << result.tc_calendar() << ',' << j["m"].get<double>() << ','
       << j["omega"].get<double>() << ',' << result.rmse << ',' << result.n_points << ','
       << (result.converged ? 1 : 0) << ',' << (result.qualified ? 1 : 0) << '\n';
    return os.str();
}

std::string fit_curve_csv(const lppl::FitResult& result, const lppl::LogPriceSeries& data) {
    std::ostringstream os;
    os.precision(12);
    os << "t,log_price,model_log_price\n";
    for (Eigen::Index i = 0; i < data.t.size(); ++i) {
        os << data.t[i] << ',' << data.y[i] << ','
           << lppl::eval_model(result.params, data.t[i]) << '\n';
    }
    return os.str();
}

lppl::Date parse_date_flag(const std::string& text, const std::string& flag) {
    try {
        return lppl::Date::parse(text);
    } catch (const lppl::InputError&) {
        throw lppl::InputError("flag " + flag + ": bad date '" + text + "' (want YYYY-MM-DD)");
    }
}

int run_guarded(const std::function<void()>& body) {
    try {
        body();
        return kExitOk;
    } catch (const lppl::NoCandidateError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitMethod;
    } catch (const lppl::ScanFailedError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitMethod;
    } catch (const lppl::SignificanceUndefinedError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUndefined;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"log-periodic power-law bubble diagnostics"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    RunContext ctx;
    app.add_option("--out-dir", ctx.out_dir, "output directory")->capture_default_str();
    app.add_option("--seed", ctx.seed, "PRNG seed")->capture_default_str();
    app.add_option("--workers", ctx.workers, "worker threads (never changes results)")
        ->capture_default_str();

    // ---- fit ----
    auto* fit_cmd = app.add_subcommand("fit", "calibrate one window");
    PriceInputArgs fit_input;
    FitConfigArgs fit_cfg;
    std::string fit_model = "simple";
    std::string fit_t_start, fit_t_last;
    fit_input.attach(fit_cmd);
    fit_cfg.attach(fit_cmd);
    fit_cmd->add_option("--model", fit_model, "simple|weierstrass|landau");
    fit_cmd->add_option("--t-start", fit_t_start, "window start date (default: first)");
    fit_cmd->add_option("--t-last", fit_t_last, "window end date (default: last)");

    // ---- scan ----
    auto* scan_cmd = app.add_subcommand("scan", "shrinking-window tc scan");
    PriceInputArgs scan_input;
    FitConfigArgs scan_cfg;
    std::string scan_models = "simple";
    std::string scan_t_start_min, scan_t_start_max, scan_t_last;
    long scan_step = 5;
    scan_input.attach(scan_cmd);
    scan_cfg.attach(scan_cmd);
    scan_cmd->add_option("--models", scan_models, "comma-separated model list");
    scan_cmd->add_option("--t-start-min", scan_t_start_min)->required();
    scan_cmd->add_option("--t-start-max", scan_t_start_max)->required();
    scan_cmd->add_option("--t-last", scan_t_last)->required();
    scan_cmd->add_option("--step", scan_step, "days between t_start values");

    // ---- bootstrap ----
    auto* boot_cmd = app.add_subcommand("bootstrap", "block-bootstrap tc distribution");
    PriceInputArgs boot_input;
    FitConfigArgs boot_cfg;
    std::string boot_model = "simple";
    std::string boot_t_start, boot_t_last;
    std::size_t boot_replicas = 200, boot_block = 21;
    boot_input.attach(boot_cmd);
    boot_cfg.attach(boot_cmd);
    boot_cmd->add_option("--model", boot_model);
    boot_cmd->add_option("--t-start", boot_t_start);
    boot_cmd->add_option("--t-last", boot_t_last);
    boot_cmd->add_option("--replicas", boot_replicas, "bootstrap replica count");
    boot_cmd->add_option("--block-len", boot_block, "residual block length");

    // ---- lomb ----
    auto* lomb_cmd = app.add_subcommand("lomb", "Lomb periodogram of (x, y) samples");
    std::string lomb_path, lomb_x_col = "x", lomb_y_col = "y";
    lppl::FrequencyGrid lomb_grid;
    lomb_cmd->add_option("--input", lomb_path, "CSV with x and y columns")->required();
    lomb_cmd->add_option("--x-col", lomb_x_col);
    lomb_cmd->add_option("--y-col", lomb_y_col);
    lomb_cmd->add_option("--omega-min", lomb_grid.omega_min);
    lomb_cmd->add_option("--omega-max", lomb_grid.omega_max);
    lomb_cmd->add_option("--omega-step", lomb_grid.step);

    // ---- supply ----
    auto* supply_cmd = app.add_subcommand("supply", "quarterly supply-demand analytics");
    std::string supply_path, agency_a = "EIA", agency_b = "IEA", cutoff_text = "2006Q1";
    supply_cmd->add_option("--input", supply_path, "quarterly flows CSV")->required();
    supply_cmd->add_option("--agency-a", agency_a);
    supply_cmd->add_option("--agency-b", agency_b);
    supply_cmd->add_option("--cutoff", cutoff_text, "regime cutoff, e.g. 2006Q1");

    // ---- convert ----
    auto* convert_cmd = app.add_subcommand("convert", "currency conversion via FX rates");
    PriceInputArgs convert_input;
    std::string fx_path, fx_date_col = "date", fx_value_col = "value", convert_label;
    convert_input.attach(convert_cmd);
    convert_cmd->add_option("--fx", fx_path, "FX rate CSV (units: input-per-target)")
        ->required();
    convert_cmd->add_option("--fx-date-col", fx_date_col);
    convert_cmd->add_option("--fx-value-col", fx_value_col);
    convert_cmd->add_option("--label", convert_label, "label for the converted series");

    // ---- synth ----
    auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic price series");
    std::string synth_params_path, synth_start = "2006-06-01", synth_noise = "iid-normal";
    int synth_days = 731;
    double synth_sigma = 0.005, synth_rho = 0.0;
    synth_cmd->add_option("--params", synth_params_path, "model parameter JSON")->required();
    synth_cmd->add_option("--start", synth_start, "first date");
    synth_cmd->add_option("--days", synth_days, "number of daily observations");
    synth_cmd->add_option("--noise", synth_noise, "iid-normal|ar1");
    synth_cmd->add_option("--sigma", synth_sigma, "noise std on log price");
    synth_cmd->add_option("--rho", synth_rho, "AR(1) coefficient");

    CLI11_PARSE(app, argc, argv);

    if (fit_cmd->parsed()) {
        return run_guarded([&] {
            ctx.command = "fit";
            const auto series = fit_input.load(ctx);
            const auto config = fit_cfg.resolve(fit_cmd, ctx);
            lppl::TimeWindow window{series.front().date, series.back().date};
            if (!fit_t_start.empty()) window.t_start = parse_date_flag(fit_t_start, "--t-start");
            if (!fit_t_last.empty()) window.t_last = parse_date_flag(fit_t_last, "--t-last");
            ctx.config["model"] = fit_model;
            ctx.config["window"] = {{"t_start", window.t_start.iso()},
                                    {"t_last", window.t_last.iso()}};
            ctx.write_manifest();
            const auto variant = lppl::model_kind_from_string(fit_model);
            const auto result = lppl::fit_window(series, window, config, variant);
            const auto sliced = lppl::slice_window(series, window, config.min_points);
            const auto log_data = lppl::to_log_price(sliced);
            ctx.write_json("fit.json", lppl::fit_result_to_json(result));
            ctx.write_csv("fit.csv", fit_result_csv(result));
            ctx.write_csv("fit_curve.csv", fit_curve_csv(result, log_data));
        });
    }

    if (scan_cmd->parsed()) {
        return run_guarded([&] {
            ctx.command = "scan";
            const auto series = scan_input.load(ctx);
            lppl::ScanConfig config;
            config.fit = scan_cfg.resolve(scan_cmd, ctx);
            config.t_start_min = parse_date_flag(scan_t_start_min, "--t-start-min");
            config.t_start_max = parse_date_flag(scan_t_start_max, "--t-start-max");
            config.t_last = parse_date_flag(scan_t_last, "--t-last");
            config.step_days = scan_step;
            config.workers = ctx.workers;
            config.variants.clear();
            std::stringstream ss(scan_models);
            std::string name;
            while (std::getline(ss, name, ',')) {
                config.variants.push_back(lppl::model_kind_from_string(name));
            }
            ctx.config["models"] = scan_models;
            ctx.config["t_start_min"] = config.t_start_min.iso();
            ctx.config["t_start_max"] = config.t_start_max.iso();
            ctx.config["t_last"] = config.t_last.iso();
            ctx.config["step_days"] = config.step_days;
            ctx.write_manifest();
            const auto result = lppl::scan(series, config);
            ctx.write_csv("scan.csv", lppl::scan_to_csv(result));
            ctx.write_json("scan.json", lppl::scan_to_json(result));
        });
    }

    if (boot_cmd->parsed()) {
        return run_guarded([&] {
            ctx.command = "bootstrap";
            const auto series = boot_input.load(ctx);
            const auto config = boot_cfg.resolve(boot_cmd, ctx);
            lppl::TimeWindow window{series.front().date, series.back().date};
            if (!boot_t_start.empty()) window.t_start = parse_date_flag(boot_t_start, "--t-start");
            if (!boot_t_last.empty()) window.t_last = parse_date_flag(boot_t_last, "--t-last");
            lppl::BootstrapConfig bcfg;
            bcfg.n_replicas = boot_replicas;
            bcfg.block_len = boot_block;
            bcfg.seed = ctx.seed;
            bcfg.workers = ctx.workers;
            ctx.config["model"] = boot_model;
            ctx.config["replicas"] = boot_replicas;
            ctx.config["block_len"] = boot_block;
            ctx.write_manifest();
            const auto variant = lppl::model_kind_from_string(boot_model);
            const auto fit = lppl::fit_window(series, window, config, variant);
            const auto sliced = lppl::slice_window(series, window, config.min_points);
            const auto log_data = lppl::to_log_price(sliced);
            const auto dist = lppl::bootstrap_tc_distribution(fit, log_data, bcfg, config);
            std::ostringstream csv;
            csv.precision(12);
            csv << "replica_tc_calendar\n";
            for (double tc : dist.tc) csv << tc << '\n';
            ctx.write_csv("bootstrap.csv", csv.str());
            json summary;
            summary["fit"] = lppl::fit_result_to_json(fit);
            summary["n_qualified"] = dist.tc.size();
            summary["n_unqualified"] = dist.n_unqualified;
            summary["quantiles"] = {{"q05", dist.q05}, {"q50", dist.q50}, {"q95", dist.q95}};
            ctx.write_json("bootstrap.json", summary);
        });
    }

    if (lomb_cmd->parsed()) {
        return run_guarded([&] {
            ctx.command = "lomb";
            ctx.add_input(lomb_path);
            ctx.config["x_col"] = lomb_x_col;
            ctx.config["y_col"] = lomb_y_col;
            ctx.config["omega_min"] = lomb_grid.omega_min;
            ctx.config["omega_max"] = lomb_grid.omega_max;
            ctx.config["omega_step"] = lomb_grid.step;
            ctx.write_manifest();
            // generic two-column numeric CSV
            std::ifstream in(lomb_path);
            if (!in) throw lppl::InputError("cannot open file: " + lomb_path);
            std::string line;
            std::getline(in, line);
            while (!line.empty() && line[0] == '#') std::getline(in, line);
            std::stringstream header(line);
            std::vector<std::string> cols;
            std::string cell;
            while (std::getline(header, cell, ',')) cols.push_back(cell);
            long xi = -1, yi = -1;
            for (std::size_t i = 0; i < cols.size(); ++i) {
                if (cols[i] == lomb_x_col) xi = static_cast<long>(i);
                if (cols[i] == lomb_y_col) yi = static_cast<long>(i);
            }
            if (xi < 0 || yi < 0) {
                throw lppl::InputError("header lacks column '" +
                                       (xi < 0 ? lomb_x_col : lomb_y_col) + "'");
            }
            std::vector<double> xs, ys;
            while (std::getline(in, line)) {
                if (line.empty() || line[0] == '#') continue;
                std::stringstream ss(line);
                std::vector<std::string> cells;
                while (std::getline(ss, cell, ',')) cells.push_back(cell);
                xs.push_back(std::stod(cells.at(static_cast<std::size_t>(xi))));
                ys.push_back(std::stod(cells.at(static_cast<std::size_t>(yi))));
            }
            Eigen::VectorXd x = Eigen::Map<Eigen::VectorXd>(xs.data(), xs.size());
            Eigen::VectorXd y = Eigen::Map<Eigen::VectorXd>(ys.data(), ys.size());
            const auto spec = lppl::lomb_periodogram(x, y, lomb_grid);
            std::ostringstream csv;
            csv.precision(12);
            csv << "omega,power\n";
            for (std::size_t i = 0; i < spec.freqs.size(); ++i) {
                csv << spec.freqs[i] << ',' << spec.power[i] << '\n';
            }
            ctx.write_csv("spectrum.csv", csv.str());
            json summary;
            summary["peak_omega"] = spec.peak_omega;
            summary["peak_power"] = spec.peak_power;
            summary["degenerate"] = spec.degenerate;
            summary["p_value"] = spec.degenerate
                                     ? 1.0
                                     : lppl::lomb_false_alarm(spec.peak_power,
                                                              spec.freqs.size());
            ctx.write_json("spectrum.json", summary);
            if (spec.degenerate) {
                throw lppl::SignificanceUndefinedError("zero-variance input spectrum");
            }
        });
    }

    if (supply_cmd->parsed()) {
        return run_guarded([&] {
            ctx.command = "supply";
            ctx.add_input(supply_path);
            lppl::Quarter cutoff;
            if (std::sscanf(cutoff_text.c_str(), "%dQ%d", &cutoff.year, &cutoff.q) != 2 ||
                cutoff.q < 1 || cutoff.q > 4) {
                throw lppl::InputError("--cutoff wants e.g. 2006Q1, got " + cutoff_text);
            }
            ctx.config["agency_a"] = agency_a;
            ctx.config["agency_b"] = agency_b;
            ctx.config["cutoff"] = cutoff_text;
            ctx.write_manifest();
            const auto flows = lppl::load_flows_csv(supply_path);
            const auto gaps = lppl::gap_series(flows, agency_a);
            const auto discrepancy = lppl::agency_discrepancy(flows, agency_a, agency_b);
            const auto regime = lppl::regime_flag(flows, agency_a, cutoff);
            std::ostringstream gaps_csv;
            gaps_csv << "quarter,gap_mbd\n";
            for (const auto& g : gaps) {
                gaps_csv << g.quarter.to_string() << ',' << g.gap_mbd << '\n';
            }
            ctx.write_csv("gaps.csv", gaps_csv.str());
            std::ostringstream disc_csv;
            disc_csv << "quarter,supply_diff_mbd,demand_diff_mbd\n";
            for (const auto& d : discrepancy) {
                disc_csv << d.quarter.to_string() << ',' << d.supply_diff_mbd << ','
                         << d.demand_diff_mbd << '\n';
            }
            ctx.write_csv("discrepancy.csv", disc_csv.str());
            json summary;
            summary["gaps"] = lppl::gaps_to_json(gaps);
            summary["discrepancy"] = lppl::discrepancy_to_json(discrepancy);
            summary["regime"] = {{"pre", regime.pre}, {"post", regime.post}};
            ctx.write_json("supply.json", summary);
        });
    }

    if (convert_cmd->parsed()) {
        return run_guarded([&] {
            ctx.command = "convert";
            const auto prices = convert_input.load(ctx);
            ctx.add_input(fx_path);
            lppl::CsvSchema fx_schema;
            fx_schema.date_col = fx_date_col;
            fx_schema.value_col = fx_value_col;
            const auto fx = lppl::load_csv(fx_path, fx_schema).series;
            const std::string label =
                convert_label.empty() ? prices.label() + " (converted)" : convert_label;
            ctx.config["label"] = label;
            ctx.write_manifest();
            const auto converted = lppl::convert_currency(prices, fx, label);
            std::ostringstream csv;
            csv.precision(12);
            csv << "date,value\n";
            for (const auto& p : converted.points()) {
                csv << p.date.iso() << ',' << p.value << '\n';
            }
            ctx.write_csv("converted.csv", csv.str());
        });
    }

    if (synth_cmd->parsed()) {
        return run_guarded([&] {
            ctx.command = "synth";
            ctx.add_input(synth_params_path);
            std::ifstream in(synth_params_path);
            if (!in) throw lppl::InputError("cannot open params: " + synth_params_path);
            const auto params = lppl::params_from_json(json::parse(in));
            lppl::NoiseSpec noise;
            if (synth_noise == "iid-normal") {
                noise.kind = lppl::NoiseKind::iid_normal;
            } else if (synth_noise == "ar1") {
                noise.kind = lppl::NoiseKind::ar1;
            } else {
                throw lppl::InputError("--noise wants iid-normal or ar1");
            }
            noise.sigma = synth_sigma;
            noise.rho = synth_rho;
            ctx.config["start"] = synth_start;
            ctx.config["days"] = synth_days;
            ctx.config["noise"] = synth_noise;
            ctx.config["sigma"] = synth_sigma;
            ctx.config["rho"] = synth_rho;
            ctx.write_manifest();
            const auto start = parse_date_flag(synth_start, "--start");
            std::vector<lppl::Date> dates;
            for (int i = 0; i < synth_days; ++i) dates.push_back(start + i);
            const auto series = lppl::synth_generate(params, dates, noise, ctx.seed);
            std::ostringstream csv;
            csv.precision(12);
            csv << "date,value\n";
            for (const auto& p : series.points()) {
                csv << p.date.iso() << ',' << p.value << '\n';
            }
            ctx.write_csv("synth.csv", csv.str());
        });
    }

    return kExitOk;
}
