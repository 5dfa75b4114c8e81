#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "mgrid/config.hpp"
#include "mgrid/profiles.hpp"
#include "mgrid/sim.hpp"
#include "mgrid/sizing.hpp"

namespace fs = std::filesystem;
using namespace mgrid;

namespace {

// exit codes are a stable contract, listed in --help
constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kInfeasible = 2;
constexpr int kLimitReached = 3;
constexpr int kShedEnergy = 4;

struct CommonFlags {
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<double> gap;
    std::optional<double> time_limit;
};

config::RunConfig load_with_overrides(const CommonFlags& f) {
    config::RunConfig cfg = config::load_config(f.config_path);
    if (!f.out_dir.empty()) cfg.out_dir = f.out_dir;
    if (f.seed) {
        cfg.seed = *f.seed;
        cfg.load_spec.seed = *f.seed;
        cfg.irradiance_spec.seed = *f.seed + 1;
    }
    if (f.gap) cfg.solve_opts.relative_gap = *f.gap;
    if (f.time_limit) cfg.solve_opts.time_limit_s = *f.time_limit;
    return cfg;
}

TimeSeries make_load(const config::RunConfig& cfg) {
    if (cfg.load_csv) return read_timeseries_csv(*cfg.load_csv);
    return synth_load(cfg.load_spec, cfg.horizon_days * 24.0 * 60.0, cfg.step_min);
}

TimeSeries make_pv_perunit(const config::RunConfig& cfg) {
    TimeSeries irr = cfg.irradiance_csv
                         ? read_irradiance_csv(*cfg.irradiance_csv)
                         : synth_irradiance(cfg.irradiance_spec,
                                            cfg.horizon_days * 24.0 * 60.0, cfg.step_min);
    return pv_power(irr, cfg.catalog.pv, 1.0);  // production per installed kWp
}

void write_schedule_csv(const sizing::DispatchSchedule& sch,
                        const sizing::DeviceCatalog& catalog, const TimeSeries& load,
                        const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    out << "step";
    for (const auto& c : catalog.dg_classes) out << ",p_" << c.name << "_kw,on_" << c.name;
    out << ",p_ch_kw,p_dis_kw,soc_kwh,p_curt_kw,p_load_kw\n";
    char buf[64];
    auto put = [&](double v) {
        std::snprintf(buf, sizeof(buf), ",%.6f", v);
        out << buf;
    };
    const int T = static_cast<int>(load.size());
    for (int t = 0; t < T; ++t) {
        out << t;
        for (std::size_t s = 0; s < catalog.dg_classes.size(); ++s) {
            put(sch.dg_power_kw[s][t]);
            out << ',' << sch.dg_on_counts[s][t];
        }
        put(sch.charge_kw[t]);
        put(sch.discharge_kw[t]);
        put(sch.soc_kwh[t]);
        put(sch.curtail_kw[t]);
        put(load.values[t]);
        out << '\n';
    }
}

void write_sizing_summary(const sizing::SizingResult& res,
                          const sizing::DeviceCatalog& catalog, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    out << "[sizing]\n";
    out << "status = " << milp::status_name(res.status) << "\n";
    char buf[128];
    for (std::size_t s = 0; s < catalog.dg_classes.size(); ++s)
        out << "dg_" << catalog.dg_classes[s].name << " = " << res.decision.dg_counts[s]
            << "\n";
    std::snprintf(buf, sizeof(buf), "pv_rated_kwp = %.3f\n", res.decision.pv_rated_kwp);
    out << buf;
    std::snprintf(buf, sizeof(buf), "bess_energy_kwh = %.3f\n",
                  res.decision.bess_energy_kwh);
    out << buf;
    std::snprintf(buf, sizeof(buf), "bess_power_kw = %.3f\n", res.decision.bess_power_kw);
    out << buf;
    std::snprintf(buf, sizeof(buf), "c_rate = %.2f\n", res.decision.c_rate);
    out << buf;
    std::snprintf(buf, sizeof(buf), "total_cost = %.3f\n", res.decision.total_cost);
    out << buf;
    std::snprintf(buf, sizeof(buf), "capex_cost = %.3f\n", res.decision.capex_cost);
    out << buf;
    std::snprintf(buf, sizeof(buf), "fuel_cost = %.3f\n", res.decision.fuel_cost);
    out << buf;
}

pms::DieselFleet fleet_from_decision(const sizing::SizingDecision& d,
                                     const sizing::DeviceCatalog& catalog) {
    pms::DieselFleet fleet;
    int gi = 1;
    for (std::size_t s = 0; s < d.dg_counts.size() && s < catalog.dg_classes.size(); ++s) {
        const auto& cls = catalog.dg_classes[s];
        for (int i = 0; i < d.dg_counts[s]; ++i)
            fleet.units.push_back({"G" + std::to_string(gi++), cls.rating_kw,
                                   cls.min_load_fraction, cls.fuel_intercept_lph,
                                   cls.fuel_slope_lpkwh});
    }
    return fleet;
}

int cmd_size(const CommonFlags& flags) {
    config::RunConfig cfg;
    try {
        cfg = load_with_overrides(flags);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    }
    try {
        fs::create_directories(cfg.out_dir);
        const TimeSeries load = make_load(cfg);
        const TimeSeries pv_pu = make_pv_perunit(cfg);
        const auto res =
            sizing::solve_sizing(load, pv_pu, cfg.catalog, cfg.costs, cfg.solve_opts,
                                 cfg.grid);
        config::write_decision(res.decision, cfg.out_dir + "/decision.ini");
        write_schedule_csv(res.schedule, cfg.catalog, load, cfg.out_dir + "/schedule.csv");
        write_sizing_summary(res, cfg.catalog, cfg.out_dir + "/sizing_summary.txt");
        std::cout << "sizing " << milp::status_name(res.status) << ", total cost "
                  << res.decision.total_cost << "\n";
        if (res.status == milp::Status::Optimal) return kOk;
        return kLimitReached;
    } catch (const config::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::runtime_error& e) {
        std::cerr << e.what() << "\n";
        return kInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfigError;
    }
}

int cmd_simulate(const CommonFlags& flags, const std::string& decision_path) {
    config::RunConfig cfg;
    sizing::SizingDecision decision;
    try {
        cfg = load_with_overrides(flags);
        const std::string dpath =
            decision_path.empty() ? cfg.out_dir + "/decision.ini" : decision_path;
        decision = config::read_decision(dpath);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    }
    try {
        if (std::abs(cfg.step_min - cfg.pms_cfg.t_ctrl_min) > 1e-9) {
            std::cerr << "config error: [profiles] step_min must equal [pms] t_ctrl_min "
                         "for simulation\n";
            return kConfigError;
        }
        fs::create_directories(cfg.out_dir);
        const TimeSeries load = make_load(cfg);
        const TimeSeries pv_pu = make_pv_perunit(cfg);
        TimeSeries pv = pv_pu;
        for (double& v : pv.values) v *= decision.pv_rated_kwp;

        const pms::DieselFleet fleet = fleet_from_decision(decision, cfg.catalog);
        const auto result = sim::run(load, pv, decision, fleet, cfg.pms_cfg, cfg.soc0);

        sim::write_step_csv(result.records, fleet, cfg.out_dir + "/steps.csv");
        sim::write_report(result.report, cfg.out_dir + "/report.txt");
        sim::write_occupancy_csv(result.report, cfg.out_dir + "/occupancy.csv");

        // per-day SOC extrema for plotting
        {
            std::ofstream soc(cfg.out_dir + "/soc_daily.csv", std::ios::binary);
            soc << "day,min_soc,max_soc\n";
            const auto per_day =
                static_cast<std::size_t>(std::llround(24.0 * 60.0 / cfg.step_min));
            char buf[64];
            for (std::size_t d = 0; d * per_day < result.records.size(); ++d) {
                double lo = 1.0, hi = 0.0;
                for (std::size_t i = d * per_day;
                     i < std::min((d + 1) * per_day, result.records.size()); ++i) {
                    lo = std::min(lo, result.records[i].soc);
                    hi = std::max(hi, result.records[i].soc);
                }
                std::snprintf(buf, sizeof(buf), "%zu,%.6f,%.6f\n", d, lo, hi);
                soc << buf;
            }
        }
        std::cout << "simulated " << result.report.steps << " steps, shed energy "
                  << result.report.shed_kwh << " kWh\n";
        return result.report.shed_kwh > 0.0 ? kShedEnergy : kOk;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfigError;
    }
}

int cmd_report(const std::string& dir) {
    const fs::path d(dir);
    const bool have_sizing = fs::exists(d / "sizing_summary.txt");
    const bool have_sim = fs::exists(d / "report.txt") && fs::exists(d / "steps.csv");
    if (!have_sizing && !have_sim) {
        std::cerr << "error: no run artifacts in " << dir << "\n";
        return kConfigError;
    }
    if (have_sizing) {
        std::ifstream in(d / "sizing_summary.txt");
        std::cout << "== sizing ==\n" << in.rdbuf() << "\n";
    }
    if (have_sim) {
        // recompute totals from the step CSV so the report is verifiable
        std::ifstream in(d / "steps.csv");
        std::string header;
        std::getline(in, header);
        std::vector<std::string> cols;
        {
            std::stringstream ss(header);
            std::string c;
            while (std::getline(ss, c, ',')) cols.push_back(c);
        }
        std::map<std::string, int> idx;
        for (std::size_t i = 0; i < cols.size(); ++i) idx[cols[i]] = static_cast<int>(i);
        double fuel = 0.0, shed = 0.0, curt = 0.0;
        double min_soc = 1.0, max_soc = 0.0;
        std::map<int, long long> occupancy;
        long long steps = 0;
        std::string line;
        double step_h = 0.0;
        long long t_prev = -1, t_first = -1;
        while (std::getline(in, line)) {
            std::stringstream ss(line);
            std::vector<std::string> f;
            std::string c;
            while (std::getline(ss, c, ',')) f.push_back(c);
            if (f.size() != cols.size()) continue;
            const long long t = std::stoll(f[idx["timestamp"]]);
            if (t_first < 0) t_first = t;
            if (t_prev >= 0 && step_h == 0.0) step_h = static_cast<double>(t - t_prev) / 3600.0;
            t_prev = t;
            ++steps;
            occupancy[std::stoi(f[idx["state"]])] += 1;
            fuel += std::stod(f[idx["fuel_l"]]);
            const double soc = std::stod(f[idx["soc"]]);
            min_soc = std::min(min_soc, soc);
            max_soc = std::max(max_soc, soc);
            shed += std::stod(f[idx["shed_kw"]]);
            curt += std::stod(f[idx["p_curt_kw"]]);
        }
        std::printf("== simulation ==\n");
        std::printf("steps            %lld\n", steps);
        std::printf("fuel             %.3f L\n", fuel);
        std::printf("curtailed energy %.3f kWh\n", curt * step_h);
        std::printf("shed energy      %.3f kWh\n", shed * step_h);
        std::printf("SOC range        [%.4f, %.4f]\n", min_soc, max_soc);
        std::printf("state occupancy:\n");
        for (const auto& [s, n] : occupancy) std::printf("  state %d: %lld\n", s, n);
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "mgrid: isolated microgrid sizing and power-management simulation\n"
        "exit codes: 0 ok; 1 config/usage error; 2 infeasible scenario;\n"
        "            3 gap or node limit reached; 4 simulation shed energy"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::string decision_path, report_dir;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", flags.config_path, "scenario config file")->required();
        sub->add_option("--out", flags.out_dir, "output directory (overrides config)");
        sub->add_option("--seed", flags.seed, "master RNG seed (overrides config)");
        sub->add_option("--gap", flags.gap, "MILP relative gap (overrides config)");
        sub->add_option("--time-limit", flags.time_limit, "MILP time limit, seconds");
    };

    CLI::App* size = app.add_subcommand("size", "solve the sizing MILP");
    add_common(size);
    CLI::App* simulate =
        app.add_subcommand("simulate", "run the year-long PMS simulation");
    add_common(simulate);
    simulate->add_option("--decision", decision_path,
                         "decision file (default: <out>/decision.ini)");
    CLI::App* report = app.add_subcommand("report", "summarize a run directory");
    report->add_option("dir", report_dir, "run directory")->required();

    CLI11_PARSE(app, argc, argv);

    if (size->parsed()) return cmd_size(flags);
    if (simulate->parsed()) return cmd_simulate(flags, decision_path);
    if (report->parsed()) return cmd_report(report_dir);
    return kConfigError;
}
