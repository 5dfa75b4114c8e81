#include "mgrid/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace mgrid::sim {

double soc_update(const pms::BessState& bess, double p_bess_kw, double dt_h,
                  double eta_ch, double eta_dis) {
    if (!(dt_h > 0.0)) throw std::invalid_argument("soc_update: dt must be positive");
    double soc;
    if (p_bess_kw <= 0.0)
        soc = bess.soc + (-p_bess_kw) * dt_h * eta_ch / bess.energy_kwh;
    else
        soc = bess.soc - p_bess_kw * dt_h / (eta_dis * bess.energy_kwh);
    if (soc < -1e-9 || soc > 1.0 + 1e-9)
        throw std::runtime_error("simulation-fault: SOC left [0,1], envelope violated");
    return std::clamp(soc, 0.0, 1.0);
}

RunResult run(const TimeSeries& load, const TimeSeries& pv,
              const sizing::SizingDecision& decision, const pms::DieselFleet& fleet,
              const pms::PmsConfig& cfg, double soc0) {
    cfg.validate();
    if (!aligned(load, pv))
        throw std::invalid_argument("sim::run: load and pv series are not aligned");
    if (std::abs(load.step_min - cfg.t_ctrl_min) > 1e-9)
        throw std::invalid_argument("sim::run: series resolution must equal t_ctrl");
    if (soc0 < cfg.soc_lim || soc0 > 1.0)
        throw std::invalid_argument("sim::run: soc0 outside [soc_lim, 1]");

    const double dt_h = cfg.t_ctrl_min / 60.0;
    const auto table = pms::StateTable::capability_ladder(fleet);

    pms::BessState bess;
    bess.soc = soc0;
    bess.delta_soc = 0.0;
    bess.energy_kwh = decision.bess_energy_kwh;
    bess.power_kw = decision.bess_power_kw;

    RunResult out;
    out.records.reserve(load.size());
    SimulationReport& rep = out.report;
    rep.min_soc = soc0;
    rep.max_soc = soc0;

    int state = 1;
    for (std::size_t i = 0; i < load.size(); ++i) {
        const double p_load = load.values[i];
        const double p_pv = pv.values[i];
        auto [next, cmd] = pms::pms_step(state, bess, p_load, p_pv, fleet, table, cfg);
        state = next;

        const pms::AvailabilityEnvelope env = pms::availability(cfg, bess);
        double curt = cmd.curtailment_kw;
        double shed = 0.0;  // recomputed from the slack clamp below
        // the BESS is the slack: it closes the loss-inflated balance, the
        // envelope decides how much of that it may actually carry
        double p_bess = p_load * (1.0 + cfg.k_loss) - (p_pv - curt) - cmd.dg_total();
        if (p_bess > env.p_dis_kw + 1e-12) {
            shed += p_bess - env.p_dis_kw;
            p_bess = env.p_dis_kw;
        } else if (-p_bess > env.p_ch_kw + 1e-12) {
            const double extra = -p_bess - env.p_ch_kw;
            const double cut = std::min(extra, p_pv - curt);
            curt += cut;
            p_bess += cut;
        }
        shed = std::max(0.0, shed);

        const double soc_prev = bess.soc;
        const double soc_now = soc_update(bess, p_bess, dt_h, cfg.eta_ch, cfg.eta_dis);
        bess.delta_soc = soc_now - soc_prev;
        bess.soc = soc_now;

        double fuel = 0.0;
        for (std::size_t u = 0; u < fleet.units.size(); ++u) {
            const double p = cmd.dg_setpoints_kw[u];
            if (p > 0.0)
                fuel += (fleet.units[u].fuel_intercept_lph +
                         fleet.units[u].fuel_slope_lpkwh * p) *
                        dt_h;
        }

        StepRecord rec;
        rec.timestamp = load.start_epoch +
                        static_cast<std::int64_t>(std::llround(60.0 * load.step_min *
                                                               static_cast<double>(i)));
        rec.state = state;
        rec.p_load_kw = p_load;
        rec.p_pv_kw = p_pv;
        rec.p_curt_kw = curt;
        rec.dg_kw = cmd.dg_setpoints_kw;
        rec.p_bess_kw = p_bess;
        rec.soc = soc_now;
        rec.fuel_l = fuel;
        rec.shed_kw = shed;
        out.records.push_back(std::move(rec));

        rep.state_occupancy[state - 1] += 1;
        rep.total_fuel_l += fuel;
        rep.pv_curtailed_kwh += curt * dt_h;
        rep.bess_throughput_kwh += std::abs(p_bess) * dt_h;
        rep.shed_kwh += shed * dt_h;
        rep.min_soc = std::min(rep.min_soc, soc_now);
        rep.max_soc = std::max(rep.max_soc, soc_now);
        rep.load_energy_kwh += p_load * dt_h;
        rep.dg_energy_kwh += cmd.dg_total() * dt_h;
        rep.pv_energy_kwh += p_pv * dt_h;
        rep.steps += 1;
    }
    return out;
}

std::array<std::int64_t, 8> state_occupancy(const std::vector<StepRecord>& records) {
    if (records.empty())
        throw std::invalid_argument("state_occupancy: no records");
    std::array<std::int64_t, 8> h{};
    for (const auto& r : records) h.at(r.state - 1) += 1;
    return h;
}

void write_step_csv(const std::vector<StepRecord>& records,
                    const pms::DieselFleet& fleet, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "timestamp,state,p_load_kw,p_pv_kw,p_curt_kw";
    for (const auto& u : fleet.units) out << ",p_" << u.id << "_kw";
    out << ",p_bess_kw,soc,fuel_l,shed_kw\n";
    char buf[64];
    auto put = [&](double v) {
        std::snprintf(buf, sizeof(buf), ",%.6f", v);
        out << buf;
    };
    for (const auto& r : records) {
        out << r.timestamp << ',' << r.state;
        put(r.p_load_kw);
        put(r.p_pv_kw);
        put(r.p_curt_kw);
        for (double p : r.dg_kw) put(p);
        put(r.p_bess_kw);
        put(r.soc);
        put(r.fuel_l);
        put(r.shed_kw);
        out << '\n';
    }
}

void write_report(const SimulationReport& rep, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    char buf[128];
    out << "[simulation]\n";
    out << "steps = " << rep.steps << "\n";
    std::snprintf(buf, sizeof(buf), "total_fuel_l = %.3f\n", rep.total_fuel_l);
    out << buf;
    std::snprintf(buf, sizeof(buf), "pv_curtailed_kwh = %.3f\n", rep.pv_curtailed_kwh);
    out << buf;
    std::snprintf(buf, sizeof(buf), "bess_throughput_kwh = %.3f\n", rep.bess_throughput_kwh);
    out << buf;
    std::snprintf(buf, sizeof(buf), "shed_kwh = %.3f\n", rep.shed_kwh);
    out << buf;
    std::snprintf(buf, sizeof(buf), "min_soc = %.6f\nmax_soc = %.6f\n", rep.min_soc,
                  rep.max_soc);
    out << buf;
    std::snprintf(buf, sizeof(buf), "load_energy_kwh = %.3f\n", rep.load_energy_kwh);
    out << buf;
    std::snprintf(buf, sizeof(buf), "dg_energy_kwh = %.3f\n", rep.dg_energy_kwh);
    out << buf;
    std::snprintf(buf, sizeof(buf), "pv_energy_kwh = %.3f\n", rep.pv_energy_kwh);
    out << buf;
    for (int s = 0; s < 8; ++s)
        out << "occupancy_state_" << (s + 1) << " = " << rep.state_occupancy[s] << "\n";
}

void write_occupancy_csv(const SimulationReport& rep, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "state,count\n";
    for (int s = 0; s < 8; ++s) out << (s + 1) << ',' << rep.state_occupancy[s] << '\n';
}

}  // namespace mgrid::sim
