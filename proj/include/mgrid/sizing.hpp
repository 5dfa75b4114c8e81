#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mgrid/milp.hpp"
#include "mgrid/profiles.hpp"
#include "mgrid/timeseries.hpp"

namespace mgrid::sizing {

struct DgClass {
    std::string name;
    double rating_mva = 1.9;
    double rating_kw = 1500.0;
    double min_load_fraction = 0.30;
    double fuel_intercept_lph = 49.5;
    double fuel_slope_lpkwh = 0.236;
    int max_units = 5;
};

struct BessSpec {
    double eta_ch = 0.87;
    double eta_dis = 0.86;
    double soc_lo = 0.30;
    double soc_hi = 0.90;
    std::vector<double> c_rates = {1.0, 0.5};
    double max_energy_kwh = 50000.0;  // search-space cap for E^n
};

struct DeviceCatalog {
    std::vector<DgClass> dg_classes;
    BessSpec bess;
    PvPlantModel pv;
    double max_pv_kwp = 50000.0;

    void validate() const;
};

// 1.9 MVA / 2.5 MVA / 3 MVA classes (1.5 / 2.0 / 2.4 MW).
DeviceCatalog default_catalog();

struct CostModel {
    double c_dg_per_kw = 500.0;
    double c_bess_power_per_kw = 150.0;
    double c_bess_energy_per_kwh = 300.0;
    double c_pv_per_kwp = 800.0;
    double fuel_price_per_l = 1.0;
    double payback_years = 8.0;
    double maintenance_surcharge_pv = 0.10;
    double maintenance_surcharge_bess = 0.10;

    void validate() const;
};

struct SizingDecision {
    std::vector<int> dg_counts;     // per catalog class
    double pv_rated_kwp = 0.0;
    double bess_energy_kwh = 0.0;
    double bess_power_kw = 0.0;
    double c_rate = 1.0;
    double total_cost = 0.0;
    double capex_cost = 0.0;        // amortized share charged to the horizon
    double fuel_cost = 0.0;
};

struct DispatchSchedule {
    double step_min = 0.0;
    std::vector<std::vector<double>> dg_power_kw;  // [class][step]
    std::vector<std::vector<int>> dg_on_counts;    // [class][step]
    std::vector<double> charge_kw;
    std::vector<double> discharge_kw;
    std::vector<double> soc_kwh;
    std::vector<double> curtail_kw;
};

// Optional restriction of the sizing variables to a discrete grid
// (size = step * integer count). Used by the enumeration-backed tests.
struct SizingGrid {
    std::optional<double> pv_step_kwp;
    std::optional<int> pv_max_steps;
    std::optional<double> bess_step_kwh;
    std::optional<int> bess_max_steps;
};

// Variable order per step t: P_g,s | k_s | P_ch | P_dis | SOC | P_curt,
// followed by the sizing block n_s | P_PV^n | E^n. SOC is cyclic
// (SOC(0) = SOC(T)) so the optimizer cannot mine free initial energy.
milp::Model build_sizing_model(const TimeSeries& load, const TimeSeries& pv_perunit,
                               const DeviceCatalog& catalog, const CostModel& costs,
                               double c_rate, const SizingGrid& grid = {});

struct VarLayout {
    int num_steps = 0;
    int num_classes = 0;
    int pg(int t, int s) const;
    int k(int t, int s) const;
    int pch(int t) const;
    int pdis(int t) const;
    int soc(int t) const;
    int pcurt(int t) const;
    int n(int s) const;
    int pv_size() const;
    int bess_size() const;
    int total() const;
};
VarLayout layout_for(int num_steps, int num_classes);

struct SizingResult {
    SizingDecision decision;
    DispatchSchedule schedule;
    milp::Status status = milp::Status::Infeasible;
};

// Solves one MILP per candidate C-rate and keeps the cheaper outcome.
// throws std::runtime_error naming the first unmeetable balance step when
// every candidate is infeasible.
SizingResult solve_sizing(const TimeSeries& load, const TimeSeries& pv_perunit,
                          const DeviceCatalog& catalog, const CostModel& costs,
                          const milp::SolveOptions& opts = {},
                          const SizingGrid& grid = {});

struct ValidationReport {
    double max_balance_residual_kw = 0.0;
    int worst_balance_step = -1;
    double max_soc_excursion_kwh = 0.0;
    double max_curtail_violation_kw = 0.0;
    bool pass = false;
};

ValidationReport validate_schedule(const DispatchSchedule& schedule,
                                   const TimeSeries& load, const TimeSeries& pv_perunit,
                                   const DeviceCatalog& catalog,
                                   const SizingDecision& decision,
                                   double feasibility_tol = 1e-6);

}  // namespace mgrid::sizing
