#include "mgrid/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

namespace mgrid::config {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<double> parse_list(const std::string& v, const std::string& where) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        try {
            out.push_back(std::stod(item));
        } catch (...) {
            throw ConfigError(where + ": bad number '" + item + "'");
        }
    }
    return out;
}

double parse_num(const std::string& v, const std::string& where) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (trim(v.substr(pos)).empty()) return x;
    } catch (...) {
    }
    throw ConfigError(where + ": bad number '" + v + "'");
}

// key handler registry: section -> key -> setter
using Setter = std::function<void(RunConfig&, const std::string& value,
                                  const std::string& where)>;

std::map<std::string, std::map<std::string, Setter>> build_registry() {
    std::map<std::string, std::map<std::string, Setter>> reg;
    auto num = [](auto member_setter) {
        return [member_setter](RunConfig& c, const std::string& v, const std::string& w) {
            member_setter(c, parse_num(v, w));
        };
    };

    auto& prof = reg["profiles"];
    prof["load_csv"] = [](RunConfig& c, const std::string& v, const std::string&) {
        c.load_csv = v;
    };
    prof["rated_peak_kw"] = num([](RunConfig& c, double x) { c.load_spec.rated_peak_kw = x; });
    prof["fluctuation_sigma"] =
        num([](RunConfig& c, double x) { c.load_spec.fluctuation_sigma = x; });
    prof["daily_shape"] = [](RunConfig& c, const std::string& v, const std::string& w) {
        const auto xs = parse_list(v, w);
        if (xs.size() != 24) throw ConfigError(w + ": daily_shape needs 24 values");
        std::copy(xs.begin(), xs.end(), c.load_spec.daily_shape.begin());
    };
    prof["seasonal_shape"] = [](RunConfig& c, const std::string& v, const std::string& w) {
        const auto xs = parse_list(v, w);
        if (xs.size() != 12) throw ConfigError(w + ": seasonal_shape needs 12 values");
        std::copy(xs.begin(), xs.end(), c.load_spec.seasonal_shape.begin());
    };
    prof["irradiance_csv"] = [](RunConfig& c, const std::string& v, const std::string&) {
        c.irradiance_csv = v;
    };
    prof["irr_peak_wm2"] = num([](RunConfig& c, double x) { c.irradiance_spec.peak_wm2 = x; });
    prof["irr_seasonal_swing"] =
        num([](RunConfig& c, double x) { c.irradiance_spec.seasonal_swing = x; });
    prof["irr_day_fraction"] =
        num([](RunConfig& c, double x) { c.irradiance_spec.day_fraction = x; });
    prof["irr_clearness_mean"] =
        num([](RunConfig& c, double x) { c.irradiance_spec.clearness_mean = x; });
    prof["irr_clearness_sigma"] =
        num([](RunConfig& c, double x) { c.irradiance_spec.clearness_sigma = x; });
    prof["horizon_days"] = num([](RunConfig& c, double x) { c.horizon_days = x; });
    prof["step_min"] = num([](RunConfig& c, double x) { c.step_min = x; });

    auto& cat = reg["catalog"];
    cat["dg"] = [](RunConfig& c, const std::string& v, const std::string& w) {
        // name,rating_mva,rating_kw,min_load_fraction,fuel_intercept_lph,
        // fuel_slope_lpkwh,max_units  (first 'dg' key clears the defaults)
        std::stringstream ss(v);
        std::string name;
        std::getline(ss, name, ',');
        std::string rest;
        std::getline(ss, rest);
        const auto xs = parse_list(rest, w);
        if (xs.size() != 6) throw ConfigError(w + ": dg needs name plus 6 numbers");
        if (!c.catalog.dg_classes.empty() && c.catalog.dg_classes.front().name == "dg_1.9mva" &&
            c.catalog.dg_classes.size() == 3)
            c.catalog.dg_classes.clear();
        c.catalog.dg_classes.push_back({trim(name), xs[0], xs[1], xs[2], xs[3], xs[4],
                                        static_cast<int>(xs[5])});
    };
    cat["bess_eta_ch"] = num([](RunConfig& c, double x) { c.catalog.bess.eta_ch = x; });
    cat["bess_eta_dis"] = num([](RunConfig& c, double x) { c.catalog.bess.eta_dis = x; });
    cat["bess_soc_lo"] = num([](RunConfig& c, double x) { c.catalog.bess.soc_lo = x; });
    cat["bess_soc_hi"] = num([](RunConfig& c, double x) { c.catalog.bess.soc_hi = x; });
    cat["bess_max_energy_kwh"] =
        num([](RunConfig& c, double x) { c.catalog.bess.max_energy_kwh = x; });
    cat["bess_c_rates"] = [](RunConfig& c, const std::string& v, const std::string& w) {
        c.catalog.bess.c_rates = parse_list(v, w);
    };
    cat["pv_eta_panel"] = num([](RunConfig& c, double x) { c.catalog.pv.eta_panel = x; });
    cat["pv_eta_inverter"] =
        num([](RunConfig& c, double x) { c.catalog.pv.eta_inverter = x; });
    cat["pv_degradation_per_year"] =
        num([](RunConfig& c, double x) { c.catalog.pv.degradation_per_year = x; });
    cat["pv_i_std_wm2"] = num([](RunConfig& c, double x) { c.catalog.pv.i_std_wm2 = x; });
    cat["max_pv_kwp"] = num([](RunConfig& c, double x) { c.catalog.max_pv_kwp = x; });

    auto& cost = reg["costs"];
    cost["c_dg_per_kw"] = num([](RunConfig& c, double x) { c.costs.c_dg_per_kw = x; });
    cost["c_bess_power_per_kw"] =
        num([](RunConfig& c, double x) { c.costs.c_bess_power_per_kw = x; });
    cost["c_bess_energy_per_kwh"] =
        num([](RunConfig& c, double x) { c.costs.c_bess_energy_per_kwh = x; });
    cost["c_pv_per_kwp"] = num([](RunConfig& c, double x) { c.costs.c_pv_per_kwp = x; });
    cost["fuel_price_per_l"] =
        num([](RunConfig& c, double x) { c.costs.fuel_price_per_l = x; });
    cost["payback_years"] = num([](RunConfig& c, double x) { c.costs.payback_years = x; });
    cost["maintenance_surcharge_pv"] =
        num([](RunConfig& c, double x) { c.costs.maintenance_surcharge_pv = x; });
    cost["maintenance_surcharge_bess"] =
        num([](RunConfig& c, double x) { c.costs.maintenance_surcharge_bess = x; });

    auto& p = reg["pms"];
    p["t_ctrl_min"] = num([](RunConfig& c, double x) { c.pms_cfg.t_ctrl_min = x; });
    p["soc_margin"] = num([](RunConfig& c, double x) { c.pms_cfg.soc_margin = x; });
    p["soc_lim"] = num([](RunConfig& c, double x) { c.pms_cfg.soc_lim = x; });
    p["k_loss"] = num([](RunConfig& c, double x) { c.pms_cfg.k_loss = x; });
    p["cosphi_dg"] = num([](RunConfig& c, double x) { c.pms_cfg.cosphi_dg = x; });
    p["cosphi_pv"] = num([](RunConfig& c, double x) { c.pms_cfg.cosphi_pv = x; });
    p["v_set_bess"] = num([](RunConfig& c, double x) { c.pms_cfg.v_set_bess = x; });
    p["step_down_margin"] =
        num([](RunConfig& c, double x) { c.pms_cfg.step_down_margin = x; });

    auto& s = reg["solve"];
    s["feasibility_tol"] =
        num([](RunConfig& c, double x) { c.solve_opts.feasibility_tol = x; });
    s["integrality_tol"] =
        num([](RunConfig& c, double x) { c.solve_opts.integrality_tol = x; });
    s["relative_gap"] = num([](RunConfig& c, double x) { c.solve_opts.relative_gap = x; });
    s["node_limit"] = num([](RunConfig& c, double x) {
        c.solve_opts.node_limit = static_cast<std::int64_t>(x);
    });
    s["time_limit_s"] = num([](RunConfig& c, double x) { c.solve_opts.time_limit_s = x; });

    auto& g = reg["grid"];
    g["pv_step_kwp"] = num([](RunConfig& c, double x) { c.grid.pv_step_kwp = x; });
    g["pv_max_steps"] =
        num([](RunConfig& c, double x) { c.grid.pv_max_steps = static_cast<int>(x); });
    g["bess_step_kwh"] = num([](RunConfig& c, double x) { c.grid.bess_step_kwh = x; });
    g["bess_max_steps"] =
        num([](RunConfig& c, double x) { c.grid.bess_max_steps = static_cast<int>(x); });

    auto& r = reg["run"];
    r["seed"] = num([](RunConfig& c, double x) {
        c.seed = static_cast<std::uint64_t>(x);
        c.load_spec.seed = c.seed;
        c.irradiance_spec.seed = c.seed + 1;  // distinct stream, same master seed
    });
    r["soc0"] = num([](RunConfig& c, double x) { c.soc0 = x; });
    r["out_dir"] = [](RunConfig& c, const std::string& v, const std::string&) {
        c.out_dir = v;
    };
    return reg;
}

void validate(const RunConfig& c) {
    c.load_spec.validate();
    c.catalog.validate();
    c.costs.validate();
    c.pms_cfg.validate();
    if (c.solve_opts.feasibility_tol <= 0.0 || c.solve_opts.integrality_tol <= 0.0 ||
        c.solve_opts.relative_gap <= 0.0)
        throw ConfigError("[solve]: tolerances must be positive");
    if (!(c.horizon_days > 0.0) || !(c.step_min > 0.0))
        throw ConfigError("[profiles]: horizon_days and step_min must be positive");
    if (c.soc0 < 0.0 || c.soc0 > 1.0) throw ConfigError("[run] soc0: must be in [0,1]");
    if (c.load_csv && !std::ifstream(*c.load_csv))
        throw ConfigError("[profiles] load_csv: file not found: " + *c.load_csv);
    if (c.irradiance_csv && !std::ifstream(*c.irradiance_csv))
        throw ConfigError("[profiles] irradiance_csv: file not found: " + *c.irradiance_csv);
}

}  // namespace

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    static const auto registry = build_registry();

    RunConfig cfg;
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string where = path + ":" + std::to_string(lineno);
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(where + ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (!registry.count(section))
                throw ConfigError(where + ": unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty()) throw ConfigError(where + ": key outside any section");
        const auto& keys = registry.at(section);
        const auto it = keys.find(key);
        if (it == keys.end())
            throw ConfigError(where + ": unknown key '" + key + "' in [" + section + "]");
        it->second(cfg, value, where + " [" + section + "] " + key);
    }

    // environment overrides: MGRID_<SECTION>_<KEY>
    for (const auto& [sec, keys] : registry) {
        for (const auto& [key, setter] : keys) {
            std::string env = "MGRID_" + sec + "_" + key;
            std::transform(env.begin(), env.end(), env.begin(),
                           [](unsigned char ch) { return std::toupper(ch); });
            if (const char* v = std::getenv(env.c_str()))
                setter(cfg, v, "env " + env);
        }
    }
    validate(cfg);
    return cfg;
}

void write_decision(const sizing::SizingDecision& d, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write decision file: " + path);
    out << "[decision]\n";
    char buf[128];
    std::snprintf(buf, sizeof(buf), "pv_rated_kwp = %.6f\n", d.pv_rated_kwp);
    out << buf;
    std::snprintf(buf, sizeof(buf), "bess_energy_kwh = %.6f\n", d.bess_energy_kwh);
    out << buf;
    std::snprintf(buf, sizeof(buf), "bess_power_kw = %.6f\n", d.bess_power_kw);
    out << buf;
    std::snprintf(buf, sizeof(buf), "c_rate = %.6f\n", d.c_rate);
    out << buf;
    out << "dg_counts =";
    for (std::size_t i = 0; i < d.dg_counts.size(); ++i)
        out << (i ? "," : " ") << d.dg_counts[i];
    out << "\n";
    std::snprintf(buf, sizeof(buf), "total_cost = %.6f\n", d.total_cost);
    out << buf;
    std::snprintf(buf, sizeof(buf), "capex_cost = %.6f\n", d.capex_cost);
    out << buf;
    std::snprintf(buf, sizeof(buf), "fuel_cost = %.6f\n", d.fuel_cost);
    out << buf;
}

sizing::SizingDecision read_decision(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open decision file: " + path);
    sizing::SizingDecision d;
    std::string line;
    int lineno = 0;
    bool in_section = false;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string where = path + ":" + std::to_string(lineno);
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        if (line == "[decision]") {
            in_section = true;
            continue;
        }
        if (!in_section) throw ConfigError(where + ": expected [decision] section");
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "pv_rated_kwp") d.pv_rated_kwp = parse_num(value, where);
        else if (key == "bess_energy_kwh") d.bess_energy_kwh = parse_num(value, where);
        else if (key == "bess_power_kw") d.bess_power_kw = parse_num(value, where);
        else if (key == "c_rate") d.c_rate = parse_num(value, where);
        else if (key == "total_cost") d.total_cost = parse_num(value, where);
        else if (key == "capex_cost") d.capex_cost = parse_num(value, where);
        else if (key == "fuel_cost") d.fuel_cost = parse_num(value, where);
        else if (key == "dg_counts") {
            d.dg_counts.clear();
            for (double x : parse_list(value, where))
                d.dg_counts.push_back(static_cast<int>(std::llround(x)));
        } else {
            throw ConfigError(where + ": unknown key '" + key + "'");
        }
    }
    return d;
}

}  // namespace mgrid::config
