#include <cmath>
#include <numeric>

#include "doctest.h"
#include "mgrid/profiles.hpp"
#include "mgrid/sim.hpp"

using namespace mgrid;
using namespace mgrid::sim;

namespace {

sizing::SizingDecision reference_decision() {
    sizing::SizingDecision d;
    d.pv_rated_kwp = 10000.0;
    d.bess_energy_kwh = 5000.0;
    d.bess_power_kw = 5000.0;
    d.c_rate = 1.0;
    d.dg_counts = {2, 1};
    return d;
}

TimeSeries constant_series(double value, std::size_t n, Unit unit) {
    TimeSeries ts;
    ts.step_min = 5.0;
    ts.unit = unit;
    ts.values.assign(n, value);
    return ts;
}

}  // namespace

TEST_CASE("soc update hand values") {
    pms::BessState bess;
    bess.soc = 0.5;
    bess.energy_kwh = 5000.0;
    // charging 5000 kW for 5 min at eta_ch 0.87: +0.0725
    CHECK(soc_update(bess, -5000.0, 1.0 / 12.0, 0.87, 0.86) == doctest::Approx(0.5725));
    // idle
    CHECK(soc_update(bess, 0.0, 1.0 / 12.0, 0.87, 0.86) == doctest::Approx(0.5));
    // discharging 4300 kW for 5 min at eta_dis 0.86: -0.0833
    CHECK(soc_update(bess, 4300.0, 1.0 / 12.0, 0.87, 0.86) ==
          doctest::Approx(0.5 - 4300.0 / 12.0 / (0.86 * 5000.0)).epsilon(1e-12));
    CHECK(soc_update(bess, 4300.0, 1.0 / 12.0, 0.87, 0.86) ==
          doctest::Approx(0.41667).epsilon(1e-4));
}

TEST_CASE("soc update faults outside [0,1]") {
    pms::BessState bess;
    bess.soc = 0.99;
    bess.energy_kwh = 1000.0;
    CHECK_THROWS_AS(soc_update(bess, -2000.0, 1.0 / 12.0, 0.87, 0.86), std::runtime_error);
    bess.soc = 0.01;
    CHECK_THROWS_AS(soc_update(bess, 2000.0, 1.0 / 12.0, 0.87, 0.86), std::runtime_error);
}

TEST_CASE("run: pv exactly covers the loss-inflated load") {
    // pv = load * (1 + k_loss): every interval is state 1 with zero fuel
    auto load = constant_series(1000.0, 288, Unit::kW);
    auto pv = constant_series(1026.0, 288, Unit::kW);
    auto fleet = pms::default_fleet();
    auto res = run(load, pv, reference_decision(), fleet, pms::PmsConfig{}, 0.5);
    CHECK(res.report.steps == 288);
    CHECK(res.report.state_occupancy[0] == 288);
    CHECK(res.report.total_fuel_l == doctest::Approx(0.0));
    CHECK(res.report.shed_kwh == doctest::Approx(0.0));
    for (const auto& r : res.records) {
        CHECK(r.state == 1);
        CHECK(std::abs(r.p_bess_kw) < 1e-9);
        CHECK(r.soc == doctest::Approx(0.5));
    }
}

TEST_CASE("run: per-step power balance closes") {
    LoadSpec ls = default_load_spec();
    ls.rated_peak_kw = 3200.0;
    ls.seed = 21;
    auto load = synth_load(ls, 3.0 * 24.0 * 60.0, 5.0);
    IrradianceSpec is;
    is.seed = 22;
    auto irr = synth_irradiance(is, 3.0 * 24.0 * 60.0, 5.0);
    auto pv = pv_power(irr, PvPlantModel{}, 10000.0);

    auto fleet = pms::default_fleet();
    pms::PmsConfig cfg;
    auto res = run(load, pv, reference_decision(), fleet, cfg, 0.5);
    REQUIRE(res.report.steps == static_cast<std::int64_t>(load.size()));
    for (const auto& r : res.records) {
        double dg = std::accumulate(r.dg_kw.begin(), r.dg_kw.end(), 0.0);
        double lhs = dg + (r.p_pv_kw - r.p_curt_kw) + r.p_bess_kw + r.shed_kw;
        double rhs = r.p_load_kw * (1.0 + cfg.k_loss);
        CHECK(std::abs(lhs - rhs) <= 1e-6);
    }
}

TEST_CASE("run: energy audit closes") {
    LoadSpec ls = default_load_spec();
    ls.rated_peak_kw = 3200.0;
    ls.seed = 31;
    auto load = synth_load(ls, 7.0 * 24.0 * 60.0, 5.0);
    IrradianceSpec is;
    is.seed = 32;
    auto irr = synth_irradiance(is, 7.0 * 24.0 * 60.0, 5.0);
    auto pv = pv_power(irr, PvPlantModel{}, 10000.0);
    auto fleet = pms::default_fleet();
    pms::PmsConfig cfg;
    double soc0 = 0.5;
    auto res = run(load, pv, reference_decision(), fleet, cfg, soc0);

    double dt = load.step_hours();
    double charge_kwh = 0.0, discharge_kwh = 0.0, shed_kwh = 0.0;
    double dg_kwh = 0.0, pv_kwh = 0.0, curt_kwh = 0.0, load_kwh = 0.0;
    for (const auto& r : res.records) {
        dg_kwh += std::accumulate(r.dg_kw.begin(), r.dg_kw.end(), 0.0) * dt;
        pv_kwh += r.p_pv_kw * dt;
        curt_kwh += r.p_curt_kw * dt;
        load_kwh += r.p_load_kw * dt;
        shed_kwh += r.shed_kw * dt;
        if (r.p_bess_kw > 0.0) discharge_kwh += r.p_bess_kw * dt;
        else charge_kwh += -r.p_bess_kw * dt;
    }
    double losses_kwh = cfg.k_loss * load_kwh;
    double supply = dg_kwh + pv_kwh - curt_kwh + (discharge_kwh - charge_kwh) + shed_kwh;
    CHECK(std::abs(supply - load_kwh - losses_kwh) <= 1e-4 * load_kwh);

    // stored-energy bookkeeping: net charge matches the soc excursion
    double E = reference_decision().bess_energy_kwh;
    double dsoc = res.records.back().soc - soc0;
    CHECK(std::abs(charge_kwh * cfg.eta_ch - discharge_kwh / cfg.eta_dis - dsoc * E) <=
          1e-6 * E);

    // report aggregates agree with the records
    CHECK(res.report.dg_energy_kwh == doctest::Approx(dg_kwh).epsilon(1e-9));
    CHECK(res.report.load_energy_kwh == doctest::Approx(load_kwh).epsilon(1e-9));
    CHECK(res.report.pv_curtailed_kwh == doctest::Approx(curt_kwh).epsilon(1e-9));
    CHECK(res.report.shed_kwh == doctest::Approx(shed_kwh).epsilon(1e-9));
    CHECK(res.report.bess_throughput_kwh ==
          doctest::Approx(charge_kwh + discharge_kwh).epsilon(1e-9));
}

TEST_CASE("run: fuel accounting uses the unit curves") {
    // constant deficit held by one unit: fuel = intercept + slope * P per hour
    auto load = constant_series(1200.0, 12, Unit::kW);  // one hour
    auto pv = constant_series(0.0, 12, Unit::kW);
    pms::DieselFleet fleet;
    fleet.units.push_back({"G1", 1500.0, 0.30, 49.5, 0.236});
    pms::PmsConfig cfg;
    cfg.k_loss = 0.0;
    sizing::SizingDecision d = reference_decision();
    d.bess_energy_kwh = 1000.0;
    d.bess_power_kw = 1000.0;
    // start at soc_min so the battery cannot help and the unit carries 1200
    auto res = run(load, pv, d, fleet, cfg, 0.25);
    // MCR may push the unit to 1500 with the excess charging; accept either
    // mode but check fuel = sum (a + b * P) * dt over the actual setpoints
    double expect = 0.0;
    for (const auto& r : res.records) expect += (49.5 + 0.236 * r.dg_kw[0]) / 12.0;
    CHECK(res.report.total_fuel_l == doctest::Approx(expect).epsilon(1e-9));
    CHECK(res.report.total_fuel_l > 0.0);
}

TEST_CASE("run: soc honors the envelope over a stress week") {
    LoadSpec ls = default_load_spec();
    ls.rated_peak_kw = 3200.0;
    ls.seed = 77;
    auto load = synth_load(ls, 7.0 * 24.0 * 60.0, 5.0);
    IrradianceSpec is;
    is.seed = 78;
    is.clearness_mean = 0.5;
    auto irr = synth_irradiance(is, 7.0 * 24.0 * 60.0, 5.0);
    auto pv = pv_power(irr, PvPlantModel{}, 10000.0);
    auto fleet = pms::default_fleet();
    pms::PmsConfig cfg;
    auto res = run(load, pv, reference_decision(), fleet, cfg, 0.5);
    for (const auto& r : res.records) {
        CHECK(r.soc >= cfg.soc_lim - 1e-9);
        CHECK(r.soc <= 1.0 + 1e-9);
    }
    CHECK(res.report.min_soc >= cfg.soc_lim - 1e-9);
    CHECK(res.report.max_soc <= 1.0 + 1e-9);
}

TEST_CASE("run: deterministic for identical inputs") {
    LoadSpec ls = default_load_spec();
    ls.rated_peak_kw = 3200.0;
    ls.seed = 9;
    auto load = synth_load(ls, 2.0 * 24.0 * 60.0, 5.0);
    IrradianceSpec is;
    is.seed = 10;
    auto irr = synth_irradiance(is, 2.0 * 24.0 * 60.0, 5.0);
    auto pv = pv_power(irr, PvPlantModel{}, 10000.0);
    auto fleet = pms::default_fleet();
    auto a = run(load, pv, reference_decision(), fleet, pms::PmsConfig{}, 0.5);
    auto b = run(load, pv, reference_decision(), fleet, pms::PmsConfig{}, 0.5);
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        CHECK(a.records[i].soc == b.records[i].soc);
        CHECK(a.records[i].state == b.records[i].state);
        CHECK(a.records[i].fuel_l == b.records[i].fuel_l);
        CHECK(a.records[i].p_bess_kw == b.records[i].p_bess_kw);
    }
}

TEST_CASE("run: input validation") {
    auto load = constant_series(1000.0, 100, Unit::kW);
    auto pv = constant_series(0.0, 99, Unit::kW);  // length mismatch
    auto fleet = pms::default_fleet();
    CHECK_THROWS_AS(run(load, pv, reference_decision(), fleet, pms::PmsConfig{}, 0.5),
                    std::invalid_argument);
    auto pv_ok = constant_series(0.0, 100, Unit::kW);
    CHECK_THROWS_AS(run(load, pv_ok, reference_decision(), fleet, pms::PmsConfig{}, 0.05),
                    std::invalid_argument);  // soc0 below soc_lim
    TimeSeries coarse = load;
    coarse.step_min = 15.0;  // disagrees with t_ctrl
    TimeSeries pv15 = pv_ok;
    pv15.step_min = 15.0;
    CHECK_THROWS_AS(run(coarse, pv15, reference_decision(), fleet, pms::PmsConfig{}, 0.5),
                    std::invalid_argument);
}

TEST_CASE("state occupancy helper") {
    std::vector<StepRecord> recs(10);
    for (auto& r : recs) r.state = 1;
    recs[3].state = 5;
    recs[4].state = 5;
    auto occ = state_occupancy(recs);
    CHECK(occ[0] == 8);
    CHECK(occ[4] == 2);
    CHECK(std::accumulate(occ.begin(), occ.end(), std::int64_t{0}) == 10);
    CHECK_THROWS(state_occupancy({}));
}
