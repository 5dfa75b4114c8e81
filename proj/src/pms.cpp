#include "mgrid/pms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mgrid::pms {

void PmsConfig::validate() const {
    if (!(soc_margin > 0.0 && soc_margin < 0.5))
        throw std::invalid_argument("PmsConfig: soc_margin must be in (0, 0.5)");
    if (!(soc_lim >= 0.0 && soc_lim < 1.0 - 2.0 * soc_margin))
        throw std::invalid_argument("PmsConfig: soc_lim must be in [0, 1 - 2m)");
    if (!(t_ctrl_min > 0.0))
        throw std::invalid_argument("PmsConfig: t_ctrl must be positive");
    if (!(k_loss >= 0.0 && k_loss < 0.2))
        throw std::invalid_argument("PmsConfig: k_loss must be in [0, 0.2)");
    if (!(eta_ch > 0.0 && eta_ch <= 1.0 && eta_dis > 0.0 && eta_dis <= 1.0))
        throw std::invalid_argument("PmsConfig: efficiencies must be in (0, 1]");
    if (step_down_margin < 0.0)
        throw std::invalid_argument("PmsConfig: step_down_margin must be >= 0");
}

double DieselFleet::total_rating() const {
    double r = 0.0;
    for (const auto& u : units) r += u.rating_kw;
    return r;
}

DieselFleet default_fleet() {
    DieselFleet f;
    f.units = {
        {"G1", 1500.0, 0.30, 0.033 * 1500.0, 0.236},
        {"G2", 1500.0, 0.30, 0.033 * 1500.0, 0.236},
        {"G3", 2000.0, 0.30, 0.033 * 2000.0, 0.236},
    };
    return f;
}

double StateTable::capability(const DieselFleet& fleet, int state) const {
    const double boost = state == 8 ? 1.0 + fleet.boost_fraction : 1.0;
    double cap = 0.0;
    for (int u : committed.at(state - 1)) cap += fleet.units.at(u).rating_kw * boost;
    return cap;
}

double StateTable::min_commitment(const DieselFleet& fleet, int state) const {
    double p = 0.0;
    for (int u : committed.at(state - 1))
        p += fleet.units.at(u).rating_kw * fleet.units.at(u).min_load_fraction;
    return p;
}

StateTable StateTable::capability_ladder(const DieselFleet& fleet) {
    // Reconstructed ladder for a {G1, G2 = 1.5 MW; G3 = 2.0 MW} fleet:
    // 1: off, 2:{G1}, 3:{G3}, 4:{G1,G2}, 5:{G1,G3}, 6:{G2,G3}, 7: all,
    // 8: all boosted. States 5 and 6 tie in capability for this fleet; the
    // selection scan takes the lower index, so 5 is the working two-DG
    // state. The table is data, not logic: drop in a corrected one freely.
    StateTable t;
    const int n = static_cast<int>(fleet.units.size());
    if (n == 3) {
        t.committed = {{}, {0}, {2}, {0, 1}, {0, 2}, {1, 2}, {0, 1, 2}, {0, 1, 2}};
        return t;
    }
    // generic fallback: commit units one by one in listed order
    t.committed.assign(8, {});
    for (int k = 2; k <= 7; ++k) {
        const int count = std::min(n, k - 1);
        for (int u = 0; u < count; ++u) t.committed[k - 1].push_back(u);
    }
    for (int u = 0; u < n; ++u) t.committed[7].push_back(u);
    return t;
}

double DispatchCommand::dg_total() const {
    return std::accumulate(dg_setpoints_kw.begin(), dg_setpoints_kw.end(), 0.0);
}

std::pair<double, double> soc_thresholds(const PmsConfig& cfg) {
    return {cfg.soc_lim + cfg.soc_margin, 1.0 - cfg.soc_margin};
}

double derating_power(const PmsConfig& cfg, const BessState& bess, BessDirection dir) {
    const double eta = dir == BessDirection::Charge ? cfg.eta_ch : 1.0 / cfg.eta_dis;
    return cfg.soc_margin * bess.energy_kwh / (eta * cfg.t_ctrl_min / 60.0);
}

AvailabilityEnvelope availability(const PmsConfig& cfg, const BessState& bess) {
    const auto [soc_min, soc_max] = soc_thresholds(cfg);
    (void)soc_max;
    const double dt_h = cfg.t_ctrl_min / 60.0;
    AvailabilityEnvelope env;
    env.p_ch_kw = std::min(bess.power_kw,
                           (1.0 - bess.soc) * bess.energy_kwh / (cfg.eta_ch * dt_h));
    env.p_ch_kw = std::max(0.0, env.p_ch_kw);

    if (bess.soc <= soc_min) {
        env.p_dis_kw = 0.0;
    } else {
        const bool in_band = bess.soc <= soc_min + cfg.soc_margin;
        if (in_band && bess.delta_soc > 0.0) {
            env.p_dis_kw = 0.0;  // charging in progress, do not interrupt it
        } else {
            env.p_dis_kw = std::min(
                bess.power_kw, (bess.soc - soc_min) * bess.energy_kwh * cfg.eta_dis / dt_h);
        }
    }
    return env;
}

double control_variable(double p_load_kw, double p_pv_kw,
                        const AvailabilityEnvelope& env, const PmsConfig& cfg) {
    return p_load_kw * (1.0 + cfg.k_loss) - p_pv_kw - env.p_dis_kw;
}

namespace {

double subset_fuel_lph(const DieselFleet& fleet, const std::vector<int>& subset,
                       double fraction) {
    double lph = 0.0;
    for (int u : subset) {
        const auto& unit = fleet.units[u];
        lph += unit.fuel_intercept_lph + unit.fuel_slope_lpkwh * fraction * unit.rating_kw;
    }
    return lph;
}

struct SubsetWindow {
    std::vector<int> units;
    double rating = 0.0;
    double min_load = 0.0;  // equal-fraction floor: max(min_load_fraction) * rating
};

std::vector<SubsetWindow> subset_windows(const DieselFleet& fleet) {
    const int n = static_cast<int>(fleet.units.size());
    if (n > 16) throw std::invalid_argument("fleet_efficiency: fleet too large");
    std::vector<SubsetWindow> out;
    for (int mask = 1; mask < (1 << n); ++mask) {
        SubsetWindow w;
        double max_mlf = 0.0;
        for (int u = 0; u < n; ++u)
            if (mask & (1 << u)) {
                w.units.push_back(u);
                w.rating += fleet.units[u].rating_kw;
                max_mlf = std::max(max_mlf, fleet.units[u].min_load_fraction);
            }
        w.min_load = max_mlf * w.rating;
        out.push_back(std::move(w));
    }
    return out;
}

double subset_efficiency(const DieselFleet& fleet, const SubsetWindow& w, double p) {
    const double fraction = p / w.rating;
    return p / (kDieselKwhPerLiter * subset_fuel_lph(fleet, w.units, fraction));
}

}  // namespace

std::optional<double> fleet_efficiency(const DieselFleet& fleet, double p_total_kw) {
    if (!(p_total_kw > 0.0) || p_total_kw > fleet.total_rating() + 1e-9)
        throw std::out_of_range("fleet_efficiency: power outside (0, total rating]");
    double best = -1.0;
    for (const auto& w : subset_windows(fleet)) {
        if (p_total_kw < w.min_load - 1e-9 || p_total_kw > w.rating + 1e-9) continue;
        best = std::max(best, subset_efficiency(fleet, w, p_total_kw));
    }
    if (best < 0.0) return std::nullopt;
    return best;
}

double max_fleet_efficiency(const DieselFleet& fleet) {
    // each subset's curve is increasing in load, so the peak is at full load
    double best = 0.0;
    for (const auto& w : subset_windows(fleet))
        best = std::max(best, subset_efficiency(fleet, w, w.rating));
    return best;
}

double roundtrip_efficiency(const DieselFleet& fleet, double eta_ch, double eta_dis) {
    if (!(eta_ch > 0.0 && eta_ch <= 1.0 && eta_dis > 0.0 && eta_dis <= 1.0))
        throw std::invalid_argument("roundtrip_efficiency: efficiencies must be in (0,1]");
    return max_fleet_efficiency(fleet) * eta_ch * eta_dis;
}

double mcr_threshold(const DieselFleet& fleet, double eta_rt) {
    if (!(eta_rt > 0.0))
        throw std::runtime_error("mcr_threshold: degenerate round-trip efficiency");
    const auto windows = subset_windows(fleet);

    // breakpoints where the admissible subset set changes
    std::vector<double> pts;
    for (const auto& w : windows) {
        pts.push_back(w.min_load);
        pts.push_back(w.rating);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](double a, double b) { return std::abs(a - b) < 1e-9; }),
              pts.end());

    auto eff = [&](double p) -> double {
        const auto e = fleet_efficiency(fleet, p);
        return e ? *e : -1.0;
    };

    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        double lo = pts[i], hi = pts[i + 1];
        if (eff(hi) < 0.0) continue;  // gap between load windows
        // the max of increasing curves is increasing on each segment
        const double elo = eff(std::nextafter(lo, hi) > lo ? lo + 1e-9 * (hi - lo) : lo);
        if (elo >= eta_rt) return lo;
        if (eff(hi) < eta_rt) continue;
        while (hi - lo > 1e-7) {
            const double mid = 0.5 * (lo + hi);
            if (eff(mid) >= eta_rt)
                hi = mid;
            else
                lo = mid;
        }
        return hi;
    }
    throw std::runtime_error("mcr_threshold: efficiency curves never cross");
}

std::vector<double> dispatch_fleet(const DieselFleet& fleet,
                                   const std::vector<int>& committed, double p_req_kw,
                                   double boost) {
    double rating = 0.0, min_total = 0.0;
    for (int u : committed) {
        rating += fleet.units.at(u).rating_kw * (1.0 + boost);
        min_total += fleet.units.at(u).rating_kw * fleet.units.at(u).min_load_fraction;
    }
    if (p_req_kw < min_total - 1e-9 || p_req_kw > rating + 1e-9)
        throw std::runtime_error("infeasible-dispatch: requested power outside load window");

    std::vector<double> set(fleet.units.size(), 0.0);
    if (committed.empty()) return set;

    // proportional (equal per-unit fraction) split; units whose share falls
    // below minimum load are pinned there and the remainder re-split
    std::vector<int> active = committed;
    double remaining = p_req_kw;
    double active_rating = rating;
    bool changed = true;
    while (changed) {
        changed = false;
        const double fraction = remaining / active_rating;
        for (auto it = active.begin(); it != active.end();) {
            const auto& u = fleet.units[*it];
            if (fraction * u.rating_kw * (1.0 + boost) <
                u.min_load_fraction * u.rating_kw - 1e-12) {
                set[*it] = u.min_load_fraction * u.rating_kw;
                remaining -= set[*it];
                active_rating -= u.rating_kw * (1.0 + boost);
                it = active.erase(it);
                changed = true;
            } else {
                ++it;
            }
        }
        if (active.empty()) break;
    }
    if (!active.empty()) {
        const double fraction = remaining / active_rating;
        for (int u : active) set[u] = fraction * fleet.units[u].rating_kw * (1.0 + boost);
    }
    // exact conservation: absorb float residue into the largest active unit
    double sum = std::accumulate(set.begin(), set.end(), 0.0);
    if (!committed.empty() && sum != p_req_kw) {
        int big = committed.front();
        for (int u : committed)
            if (set[u] > set[big]) big = u;
        set[big] += p_req_kw - sum;
    }
    return set;
}

std::pair<int, DispatchCommand> pms_step(int state, const BessState& bess,
                                         double p_load_kw, double p_pv_kw,
                                         const DieselFleet& fleet, const StateTable& table,
                                         const PmsConfig& cfg) {
    const AvailabilityEnvelope env = availability(cfg, bess);
    const double p_ctrl = control_variable(p_load_kw, p_pv_kw, env, cfg);
    const double deficit = std::max(0.0, p_ctrl);

    auto lowest_covering = [&](double demand) {
        for (int k = 1; k <= 8; ++k)
            if (table.capability(fleet, k) >= demand - 1e-9) return k;
        return 8;
    };

    int next = lowest_covering(deficit);
    if (next < state) {
        // step-down hysteresis: only drop when the lower state still covers
        // the deficit with the configured margin
        const int down = lowest_covering((1.0 + cfg.step_down_margin) * deficit);
        next = std::min(state, std::max(next, down));
    }

    DispatchCommand cmd;
    cmd.state = next;
    cmd.dg_setpoints_kw.assign(fleet.units.size(), 0.0);
    cmd.curtailment_kw = 0.0;

    const auto& committed = table.committed.at(next - 1);
    const double boost = next == 8 ? fleet.boost_fraction : 0.0;
    double p_dg = 0.0;
    if (!committed.empty() && deficit > 0.0) {
        const double cap = table.capability(fleet, next);
        const double min_commit = table.min_commitment(fleet, next);
        p_dg = deficit;

        // below the round-trip threshold it is cheaper to run the committed
        // plant at MCR and park the surplus in the battery
        if (committed.size() == 1) {
            const double eta_rt = roundtrip_efficiency(fleet, cfg.eta_ch, cfg.eta_dis);
            double threshold = 0.0;
            try {
                threshold = mcr_threshold(fleet, eta_rt);
            } catch (const std::runtime_error&) {
                threshold = 0.0;
            }
            if (deficit < threshold) p_dg = cap;
        }
        p_dg = std::max(p_dg, min_commit);
        // cap the charging surplus by what the battery can actually absorb
        if (p_dg - deficit > env.p_ch_kw)
            p_dg = std::max(deficit + env.p_ch_kw, min_commit);
        p_dg = std::min(p_dg, cap);

        if (deficit > cap) {
            p_dg = cap;
            cmd.shed_kw = deficit - cap;  // beyond overload capability
        }
        cmd.dg_setpoints_kw = dispatch_fleet(fleet, committed, p_dg, boost);
    }

    cmd.bess_expected_kw = p_load_kw * (1.0 + cfg.k_loss) - p_pv_kw - cmd.dg_total();
    // surplus the battery cannot take is curtailed from the PV infeed
    if (-cmd.bess_expected_kw > env.p_ch_kw) {
        cmd.curtailment_kw = std::min(p_pv_kw, -cmd.bess_expected_kw - env.p_ch_kw);
        cmd.bess_expected_kw += cmd.curtailment_kw;
    }
    cmd.q_dg_kvar = cmd.dg_total() * std::tan(std::acos(cfg.cosphi_dg));
    cmd.q_pv_kvar = (p_pv_kw - cmd.curtailment_kw) * std::tan(std::acos(cfg.cosphi_pv));
    return {next, cmd};
}

}  // namespace mgrid::pms
