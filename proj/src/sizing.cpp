#include "mgrid/sizing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mgrid::sizing {

using milp::Model;
using milp::Relation;
using milp::Term;
using milp::VarKind;

void DeviceCatalog::validate() const {
    for (const auto& c : dg_classes) {
        if (!(c.rating_kw > 0.0))
            throw std::invalid_argument("DeviceCatalog: DG rating must be positive");
        if (!(c.min_load_fraction >= 0.0 && c.min_load_fraction < 1.0))
            throw std::invalid_argument("DeviceCatalog: min_load_fraction must be in [0,1)");
        if (c.max_units < 0)
            throw std::invalid_argument("DeviceCatalog: max_units must be >= 0");
    }
    if (!(bess.eta_ch > 0.0 && bess.eta_ch <= 1.0 && bess.eta_dis > 0.0 && bess.eta_dis <= 1.0))
        throw std::invalid_argument("DeviceCatalog: BESS efficiencies must be in (0,1]");
    if (!(bess.soc_lo < bess.soc_hi))
        throw std::invalid_argument("DeviceCatalog: soc_lo must be below soc_hi");
    if (bess.c_rates.empty())
        throw std::invalid_argument("DeviceCatalog: at least one C-rate required");
    pv.validate();
}

DeviceCatalog default_catalog() {
    DeviceCatalog c;
    c.dg_classes = {
        {"dg_1.9mva", 1.9, 1500.0, 0.30, 0.033 * 1500.0, 0.236, 5},
        {"dg_2.5mva", 2.5, 2000.0, 0.30, 0.033 * 2000.0, 0.236, 5},
        {"dg_3.0mva", 3.0, 2400.0, 0.30, 0.033 * 2400.0, 0.236, 5},
    };
    return c;
}

void CostModel::validate() const {
    if (c_dg_per_kw < 0.0 || c_bess_power_per_kw < 0.0 || c_bess_energy_per_kwh < 0.0 ||
        c_pv_per_kwp < 0.0 || fuel_price_per_l < 0.0)
        throw std::invalid_argument("CostModel: costs must be >= 0");
    if (!(payback_years > 0.0))
        throw std::invalid_argument("CostModel: payback_years must be positive");
}

// per-step block: P_g,s | k_s | P_ch | P_dis | SOC | P_curt
int VarLayout::pg(int t, int s) const { return t * (2 * num_classes + 4) + s; }
int VarLayout::k(int t, int s) const { return t * (2 * num_classes + 4) + num_classes + s; }
int VarLayout::pch(int t) const { return t * (2 * num_classes + 4) + 2 * num_classes; }
int VarLayout::pdis(int t) const { return t * (2 * num_classes + 4) + 2 * num_classes + 1; }
int VarLayout::soc(int t) const { return t * (2 * num_classes + 4) + 2 * num_classes + 2; }
int VarLayout::pcurt(int t) const { return t * (2 * num_classes + 4) + 2 * num_classes + 3; }
int VarLayout::n(int s) const { return num_steps * (2 * num_classes + 4) + s; }
int VarLayout::pv_size() const { return num_steps * (2 * num_classes + 4) + num_classes; }
int VarLayout::bess_size() const {
    return num_steps * (2 * num_classes + 4) + num_classes + 1;
}
int VarLayout::total() const { return num_steps * (2 * num_classes + 4) + num_classes + 2; }

VarLayout layout_for(int num_steps, int num_classes) {
    return VarLayout{num_steps, num_classes};
}

Model build_sizing_model(const TimeSeries& load, const TimeSeries& pv_perunit,
                         const DeviceCatalog& catalog, const CostModel& costs,
                         double c_rate, const SizingGrid& grid) {
    catalog.validate();
    costs.validate();
    if (!aligned(load, pv_perunit))
        throw std::invalid_argument("build_sizing_model: load and pv series not aligned");
    if (load.size() == 0)
        throw std::invalid_argument("build_sizing_model: empty horizon");
    if (catalog.dg_classes.empty())
        throw std::invalid_argument("build_sizing_model: catalog has no DG classes");
    bool known_rate = false;
    for (double c : catalog.bess.c_rates) known_rate |= std::abs(c - c_rate) < 1e-12;
    if (!known_rate)
        throw std::invalid_argument("build_sizing_model: c_rate not in catalog");

    const int T = static_cast<int>(load.size());
    const int S = static_cast<int>(catalog.dg_classes.size());
    const VarLayout L = layout_for(T, S);
    const double dt_h = load.step_hours();

    Model m(L.total());

    // variable bounds and kinds
    for (int s = 0; s < S; ++s) {
        const auto& cls = catalog.dg_classes[s];
        m.set_bounds(L.n(s), 0.0, cls.max_units);
        for (int t = 0; t < T; ++t) {
            m.set_bounds(L.pg(t, s), 0.0, cls.max_units * cls.rating_kw);
            m.set_bounds(L.k(t, s), 0.0, cls.max_units);
        }
    }
    // n_s and all per-step on-counts are integer unit counts
    for (int s = 0; s < S; ++s) {
        m.set_kind(L.n(s), VarKind::Integer);
        for (int t = 0; t < T; ++t) m.set_kind(L.k(t, s), VarKind::Integer);
    }
    for (int t = 0; t < T; ++t) {
        m.set_bounds(L.pch(t), 0.0, milp::kInf);
        m.set_bounds(L.pdis(t), 0.0, milp::kInf);
        m.set_bounds(L.soc(t), 0.0, milp::kInf);
        m.set_bounds(L.pcurt(t), 0.0, milp::kInf);
    }
    const bool pv_grid = grid.pv_step_kwp.has_value();
    const bool bess_grid = grid.bess_step_kwh.has_value();
    const double pv_unit = pv_grid ? *grid.pv_step_kwp : 1.0;  // kWp per grid count
    const double bess_unit = bess_grid ? *grid.bess_step_kwh : 1.0;
    m.set_bounds(L.pv_size(), 0.0,
                 pv_grid ? static_cast<double>(grid.pv_max_steps.value_or(
                               static_cast<int>(catalog.max_pv_kwp / pv_unit)))
                         : catalog.max_pv_kwp);
    m.set_bounds(L.bess_size(), 0.0,
                 bess_grid ? static_cast<double>(grid.bess_max_steps.value_or(
                                 static_cast<int>(catalog.bess.max_energy_kwh / bess_unit)))
                           : catalog.bess.max_energy_kwh);

    if (pv_grid) m.set_kind(L.pv_size(), VarKind::Integer);
    if (bess_grid) m.set_kind(L.bess_size(), VarKind::Integer);

    // objective: horizon-amortized capex plus fuel
    const double horizon_years = T * dt_h / 8760.0;
    const double amort = horizon_years / costs.payback_years;
    for (int s = 0; s < S; ++s)
        m.set_objective(L.n(s),
                        amort * costs.c_dg_per_kw * catalog.dg_classes[s].rating_kw);
    m.set_objective(L.pv_size(),
                    amort * costs.c_pv_per_kwp * (1.0 + costs.maintenance_surcharge_pv) *
                        pv_unit);
    m.set_objective(L.bess_size(),
                    amort *
                        (costs.c_bess_energy_per_kwh +
                         costs.c_bess_power_per_kw * c_rate) *
                        (1.0 + costs.maintenance_surcharge_bess) * bess_unit);
    for (int t = 0; t < T; ++t)
        for (int s = 0; s < S; ++s) {
            const auto& cls = catalog.dg_classes[s];
            m.set_objective(L.pg(t, s), costs.fuel_price_per_l * cls.fuel_slope_lpkwh * dt_h);
            m.set_objective(L.k(t, s), costs.fuel_price_per_l * cls.fuel_intercept_lph * dt_h);
        }

    for (int t = 0; t < T; ++t) {
        const std::string ts = std::to_string(t);
        // balance: sum_s P_g + P_dis - P_ch + pv_pu * PV - P_curt = load
        std::vector<Term> bal;
        for (int s = 0; s < S; ++s) bal.push_back({L.pg(t, s), 1.0});
        bal.push_back({L.pdis(t), 1.0});
        bal.push_back({L.pch(t), -1.0});
        if (pv_perunit.values[t] != 0.0)
            bal.push_back({L.pv_size(), pv_perunit.values[t] * pv_unit});
        bal.push_back({L.pcurt(t), -1.0});
        m.add_row(std::move(bal), Relation::EQ, load.values[t], "balance_t" + ts);

        for (int s = 0; s < S; ++s) {
            const auto& cls = catalog.dg_classes[s];
            m.add_row({{L.pg(t, s), 1.0},
                       {L.k(t, s), -cls.min_load_fraction * cls.rating_kw}},
                      Relation::GE, 0.0, "dg_min_t" + ts + "_s" + std::to_string(s));
            m.add_row({{L.pg(t, s), 1.0}, {L.k(t, s), -cls.rating_kw}}, Relation::LE, 0.0,
                      "dg_max_t" + ts + "_s" + std::to_string(s));
            m.add_row({{L.k(t, s), 1.0}, {L.n(s), -1.0}}, Relation::LE, 0.0,
                      "dg_count_t" + ts + "_s" + std::to_string(s));
        }

        // cyclic SOC recursion
        const int t_next = (t + 1) % T;
        m.add_row({{L.soc(t_next), 1.0},
                   {L.soc(t), -1.0},
                   {L.pch(t), -catalog.bess.eta_ch * dt_h},
                   {L.pdis(t), dt_h / catalog.bess.eta_dis}},
                  Relation::EQ, 0.0, "soc_t" + ts);
        m.add_row({{L.soc(t), 1.0}, {L.bess_size(), -catalog.bess.soc_lo * bess_unit}},
                  Relation::GE, 0.0, "soc_lo_t" + ts);
        m.add_row({{L.soc(t), 1.0}, {L.bess_size(), -catalog.bess.soc_hi * bess_unit}},
                  Relation::LE, 0.0, "soc_hi_t" + ts);

        m.add_row({{L.pch(t), 1.0}, {L.bess_size(), -c_rate * bess_unit}}, Relation::LE,
                  0.0, "pch_cap_t" + ts);
        m.add_row({{L.pdis(t), 1.0}, {L.bess_size(), -c_rate * bess_unit}}, Relation::LE,
                  0.0, "pdis_cap_t" + ts);
        m.add_row({{L.pcurt(t), 1.0}, {L.pv_size(), -pv_perunit.values[t] * pv_unit}},
                  Relation::LE, 0.0, "curt_cap_t" + ts);
    }
    return m;
}

SizingResult solve_sizing(const TimeSeries& load, const TimeSeries& pv_perunit,
                          const DeviceCatalog& catalog, const CostModel& costs,
                          const milp::SolveOptions& opts, const SizingGrid& grid) {
    const int T = static_cast<int>(load.size());
    const int S = static_cast<int>(catalog.dg_classes.size());
    const VarLayout L = layout_for(T, S);

    SizingResult best;
    best.status = milp::Status::Infeasible;
    bool have = false;
    bool limit_hit = false;

    for (double c_rate : catalog.bess.c_rates) {
        Model m = build_sizing_model(load, pv_perunit, catalog, costs, c_rate, grid);
        milp::Solution sol = milp::solve_milp(m, opts);
        if (sol.status == milp::Status::NodeLimit || sol.status == milp::Status::GapLimit)
            limit_hit = true;
        if (sol.status != milp::Status::Optimal) continue;
        if (have && sol.objective >= best.decision.total_cost) continue;
        have = true;

        SizingResult r;
        r.status = sol.status;
        const double pv_unit = grid.pv_step_kwp.value_or(1.0);
        const double bess_unit = grid.bess_step_kwh.value_or(1.0);

        SizingDecision& d = r.decision;
        d.c_rate = c_rate;
        d.pv_rated_kwp = sol.values[L.pv_size()] * pv_unit;
        d.bess_energy_kwh = sol.values[L.bess_size()] * bess_unit;
        d.bess_power_kw = c_rate * d.bess_energy_kwh;
        d.dg_counts.resize(S);
        for (int s = 0; s < S; ++s)
            d.dg_counts[s] = static_cast<int>(std::llround(sol.values[L.n(s)]));
        d.total_cost = sol.objective;
        double capex = 0.0;
        for (int s = 0; s < S; ++s) capex += m.objective(L.n(s)) * sol.values[L.n(s)];
        capex += m.objective(L.pv_size()) * sol.values[L.pv_size()];
        capex += m.objective(L.bess_size()) * sol.values[L.bess_size()];
        d.capex_cost = capex;
        d.fuel_cost = d.total_cost - capex;

        DispatchSchedule& sch = r.schedule;
        sch.step_min = load.step_min;
        sch.dg_power_kw.assign(S, std::vector<double>(T, 0.0));
        sch.dg_on_counts.assign(S, std::vector<int>(T, 0));
        sch.charge_kw.resize(T);
        sch.discharge_kw.resize(T);
        sch.soc_kwh.resize(T);
        sch.curtail_kw.resize(T);
        for (int t = 0; t < T; ++t) {
            for (int s = 0; s < S; ++s) {
                sch.dg_power_kw[s][t] = sol.values[L.pg(t, s)];
                sch.dg_on_counts[s][t] =
                    static_cast<int>(std::llround(sol.values[L.k(t, s)]));
            }
            double ch = sol.values[L.pch(t)], dis = sol.values[L.pdis(t)];
            // net out any degenerate simultaneous charge/discharge
            const double overlap = std::min(ch, dis);
            if (overlap > 0.0) {
                ch -= overlap;
                dis -= overlap;
            }
            sch.charge_kw[t] = ch;
            sch.discharge_kw[t] = dis;
            sch.soc_kwh[t] = sol.values[L.soc(t)];
            sch.curtail_kw[t] = sol.values[L.pcurt(t)];
        }
        best = std::move(r);
    }

    if (!have) {
        if (limit_hit) {
            best.status = milp::Status::NodeLimit;
            return best;
        }
        // name the first step whose demand cannot be met by any build-out
        double max_supply = 0.0;
        for (const auto& cls : catalog.dg_classes)
            max_supply += cls.max_units * cls.rating_kw;
        double max_crate = 0.0;
        for (double c : catalog.bess.c_rates) max_crate = std::max(max_crate, c);
        max_supply += max_crate * catalog.bess.max_energy_kwh;
        for (int t = 0; t < T; ++t) {
            const double pv_max = pv_perunit.values[t] * catalog.max_pv_kwp;
            if (load.values[t] > max_supply + pv_max + 1e-9)
                throw std::runtime_error(
                    "infeasible-scenario: balance cannot be met at step " +
                    std::to_string(t));
        }
        throw std::runtime_error("infeasible-scenario: no feasible sizing exists");
    }
    return best;
}

ValidationReport validate_schedule(const DispatchSchedule& sch, const TimeSeries& load,
                                   const TimeSeries& pv_perunit,
                                   const DeviceCatalog& catalog,
                                   const SizingDecision& decision, double feasibility_tol) {
    ValidationReport rep;
    const int T = static_cast<int>(load.size());
    const int S = static_cast<int>(catalog.dg_classes.size());
    for (int t = 0; t < T; ++t) {
        double supply = 0.0;
        for (int s = 0; s < S; ++s) supply += sch.dg_power_kw[s][t];
        supply += sch.discharge_kw[t] - sch.charge_kw[t];
        supply += pv_perunit.values[t] * decision.pv_rated_kwp - sch.curtail_kw[t];
        const double resid = std::abs(supply - load.values[t]);
        if (resid > rep.max_balance_residual_kw) {
            rep.max_balance_residual_kw = resid;
            rep.worst_balance_step = t;
        }
        const double soc = sch.soc_kwh[t];
        const double lo = catalog.bess.soc_lo * decision.bess_energy_kwh;
        const double hi = catalog.bess.soc_hi * decision.bess_energy_kwh;
        rep.max_soc_excursion_kwh =
            std::max({rep.max_soc_excursion_kwh, lo - soc, soc - hi});
        rep.max_curtail_violation_kw =
            std::max(rep.max_curtail_violation_kw,
                     sch.curtail_kw[t] - pv_perunit.values[t] * decision.pv_rated_kwp);
    }
    rep.max_soc_excursion_kwh = std::max(0.0, rep.max_soc_excursion_kwh);
    rep.max_curtail_violation_kw = std::max(0.0, rep.max_curtail_violation_kw);
    rep.pass = rep.max_balance_residual_kw <= feasibility_tol &&
               rep.max_soc_excursion_kwh <= feasibility_tol &&
               rep.max_curtail_violation_kw <= feasibility_tol;
    return rep;
}

}  // namespace mgrid::sizing
