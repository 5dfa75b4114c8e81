#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mgrid/pms.hpp"
#include "mgrid/sizing.hpp"
#include "mgrid/timeseries.hpp"

namespace mgrid::sim {

struct StepRecord {
    std::int64_t timestamp = 0;
    int state = 1;
    double p_load_kw = 0.0;
    double p_pv_kw = 0.0;
    double p_curt_kw = 0.0;
    std::vector<double> dg_kw;
    double p_bess_kw = 0.0;  // signed, + = discharge
    double soc = 0.0;        // per-unit, end of step
    double fuel_l = 0.0;
    double shed_kw = 0.0;
};

struct SimulationReport {
    std::array<std::int64_t, 8> state_occupancy{};
    double total_fuel_l = 0.0;
    double pv_curtailed_kwh = 0.0;
    double bess_throughput_kwh = 0.0;
    double shed_kwh = 0.0;
    double min_soc = 1.0;
    double max_soc = 0.0;
    double load_energy_kwh = 0.0;
    double dg_energy_kwh = 0.0;
    double pv_energy_kwh = 0.0;
    std::int64_t steps = 0;
};

// SOC integration: charging (p <= 0) scales by eta_ch, discharging
// (p > 0) divides by eta_dis. throws std::runtime_error if the result
// leaves [0,1] beyond 1e-9 (the availability envelope must prevent that).
double soc_update(const pms::BessState& bess, double p_bess_kw, double dt_h,
                  double eta_ch, double eta_dis);

struct RunResult {
    SimulationReport report;
    std::vector<StepRecord> records;
};

// Quasi-dynamic year loop: pms_step per control interval, BESS as the
// slack closing the loss-inflated balance, envelope clamping (extra supply
// becomes curtailment, extra demand becomes shed), SOC integrated forward.
RunResult run(const TimeSeries& load, const TimeSeries& pv,
              const sizing::SizingDecision& decision, const pms::DieselFleet& fleet,
              const pms::PmsConfig& cfg, double soc0 = 0.5);

std::array<std::int64_t, 8> state_occupancy(const std::vector<StepRecord>& records);

void write_step_csv(const std::vector<StepRecord>& records,
                    const pms::DieselFleet& fleet, const std::string& path);
void write_report(const SimulationReport& report, const std::string& path);
void write_occupancy_csv(const SimulationReport& report, const std::string& path);

}  // namespace mgrid::sim
