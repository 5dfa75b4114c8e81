#pragma once

#include <optional>
#include <string>
#include <vector>

namespace mgrid::pms {

// Diesel energy content used by the efficiency curves, kWh per liter.
constexpr double kDieselKwhPerLiter = 9.94;

struct PmsConfig {
    double t_ctrl_min = 5.0;
    double soc_margin = 0.05;     // m
    double soc_lim = 0.20;
    double k_loss = 0.026;
    double cosphi_dg = 0.9;       // recorded on commands only
    double cosphi_pv = 1.0;
    double v_set_bess = 1.025;    // p.u., recorded only
    double step_down_margin = 0.10;  // rho
    double eta_ch = 0.87;
    double eta_dis = 0.86;

    void validate() const;
};

struct BessState {
    double soc = 0.5;            // per-unit of energy rating
    double delta_soc = 0.0;      // change over the previous control interval
    double energy_kwh = 5000.0;  // E^n
    double power_kw = 5000.0;    // P^n
};

struct AvailabilityEnvelope {
    double p_ch_kw = 0.0;   // max admissible charging power
    double p_dis_kw = 0.0;  // max admissible discharging power
};

struct DieselUnit {
    std::string id;
    double rating_kw = 1500.0;
    double min_load_fraction = 0.30;
    double fuel_intercept_lph = 49.5;  // liters/hour at zero output
    double fuel_slope_lpkwh = 0.236;   // liters per kWh produced
};

struct DieselFleet {
    std::vector<DieselUnit> units;
    double boost_fraction = 0.30;  // overload-state rating increase

    double total_rating() const;
};

// Two 1.9 MVA (1.5 MW) and one 2.5 MVA (2.0 MW) units with the default
// fuel curve intercept 0.033*rating L/h and slope 0.236 L/kWh.
DieselFleet default_fleet();

// Operating-state ladder. Each state carries the set of committed unit
// indices; state 8 commits the whole fleet at boosted ratings.
struct StateTable {
    std::vector<std::vector<int>> committed;  // committed[k-1], k = 1..8

    double capability(const DieselFleet& fleet, int state) const;
    double min_commitment(const DieselFleet& fleet, int state) const;
    static StateTable capability_ladder(const DieselFleet& fleet);
};

struct DispatchCommand {
    int state = 1;
    std::vector<double> dg_setpoints_kw;  // one per fleet unit, 0 when off
    double bess_expected_kw = 0.0;        // signed, + = discharge
    double curtailment_kw = 0.0;
    double shed_kw = 0.0;                 // unmet demand flag, 0 in normal operation
    double q_dg_kvar = 0.0;               // reporting only
    double q_pv_kvar = 0.0;

    double dg_total() const;
};

// soc_min = soc_lim + m, soc_max = 1 - m
std::pair<double, double> soc_thresholds(const PmsConfig& cfg);

enum class BessDirection { Charge, Discharge };

// Power that moves the SOC by exactly the margin m over one control
// interval, with the direction-dependent efficiency.
double derating_power(const PmsConfig& cfg, const BessState& bess,
                      BessDirection dir);

// SOC-dependent admissible powers. Discharge is locked out below
// soc_min; inside the band (soc_min, soc_min + m] it stays locked while
// delta_soc > 0 so a charging process is never interrupted.
AvailabilityEnvelope availability(const PmsConfig& cfg, const BessState& bess);

// P_ctrl = p_load*(1+k_loss) - p_pv - p_dis. Positive means a production
// deficit the diesel fleet must cover.
double control_variable(double p_load_kw, double p_pv_kw,
                        const AvailabilityEnvelope& env, const PmsConfig& cfg);

// Best achievable fleet efficiency at total output p_total: over every
// on/off subset whose load window admits p_total, units share the load at
// an equal per-unit fraction of rating. nullopt when no subset admits it.
std::optional<double> fleet_efficiency(const DieselFleet& fleet, double p_total_kw);

// Peak value of the fleet efficiency curve.
double max_fleet_efficiency(const DieselFleet& fleet);

// eta_RT = max fleet efficiency * eta_ch * eta_dis
double roundtrip_efficiency(const DieselFleet& fleet, double eta_ch, double eta_dis);

// Smallest power at which the fleet efficiency reaches eta_rt, found by
// bisection on each monotone segment of the curve. Below this power the
// committed unit runs at MCR and the surplus charges the battery.
// throws std::runtime_error when the curves never cross.
double mcr_threshold(const DieselFleet& fleet, double eta_rt);

// Equal per-unit loading across committed units; units pinned at their
// minimum load when the proportional share falls below it.
std::vector<double> dispatch_fleet(const DieselFleet& fleet,
                                   const std::vector<int>& committed,
                                   double p_req_kw, double boost = 0.0);

// One control-interval decision. Pure function: no hidden state.
std::pair<int, DispatchCommand> pms_step(int state, const BessState& bess,
                                         double p_load_kw, double p_pv_kw,
                                         const DieselFleet& fleet,
                                         const StateTable& table,
                                         const PmsConfig& cfg);

}  // namespace mgrid::pms
