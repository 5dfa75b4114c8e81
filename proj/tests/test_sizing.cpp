#include <cmath>
#include <vector>

#include "doctest.h"
#include "mgrid/milp.hpp"
#include "mgrid/sizing.hpp"

using namespace mgrid;
using namespace mgrid::sizing;

namespace {

TimeSeries series(std::vector<double> v, double step_min, Unit unit) {
    TimeSeries ts;
    ts.step_min = step_min;
    ts.unit = unit;
    ts.values = std::move(v);
    return ts;
}

// one DG class, zero fuel intercept and zero minimum load: the LP dispatch
// cost equals the MILP dispatch cost once the sizes are fixed, so plain grid
// enumeration with an LP per candidate is an exact oracle.
DeviceCatalog toy_catalog() {
    DeviceCatalog cat;
    DgClass g;
    g.name = "g1";
    g.rating_mva = 1.25;
    g.rating_kw = 1000.0;
    g.min_load_fraction = 0.0;
    g.fuel_intercept_lph = 0.0;
    g.fuel_slope_lpkwh = 0.25;
    g.max_units = 2;
    cat.dg_classes = {g};
    cat.bess.c_rates = {1.0, 0.5};
    cat.bess.max_energy_kwh = 2000.0;
    cat.max_pv_kwp = 1000.0;
    return cat;
}

SizingGrid toy_grid() {
    SizingGrid grid;
    grid.pv_step_kwp = 500.0;
    grid.pv_max_steps = 2;
    grid.bess_step_kwh = 1000.0;
    grid.bess_max_steps = 2;
    return grid;
}

// 24 hourly steps with an evening peak and a
// daylight window where pv produces
TimeSeries toy_load() {
    std::vector<double> v;
    for (int h = 0; h < 24; ++h) {
        double x = (h >= 19 && h <= 22) ? 800.0 : (h >= 7 && h <= 17 ? 500.0 : 350.0);
        v.push_back(x);
    }
    return series(std::move(v), 60.0, Unit::kW);
}

TimeSeries toy_pv_perunit() {
    std::vector<double> v(24, 0.0);
    for (int h = 8; h <= 16; ++h) v[h] = std::sin(3.14159265358979 * (h - 7) / 10.0);
    return series(std::move(v), 60.0, Unit::Dimensionless);
}

CostModel toy_costs() {
    CostModel c;
    c.c_dg_per_kw = 200.0;
    c.c_bess_power_per_kw = 100.0;
    c.c_bess_energy_per_kwh = 200.0;
    c.c_pv_per_kwp = 600.0;
    c.fuel_price_per_l = 2.0;
    c.payback_years = 8.0;
    return c;
}

// exhaustive candidate enumeration: fix (n, pv steps, bess steps, c-rate),
// relax integrality of the dispatch and take the LP cost
double enumerate_toy_optimum(const TimeSeries& load, const TimeSeries& pv_pu,
                             const DeviceCatalog& cat, const CostModel& costs,
                             const SizingGrid& grid) {
    double best = milp::kInf;
    int T = static_cast<int>(load.size());
    auto lay = layout_for(T, 1);
    for (double c_rate : cat.bess.c_rates) {
        for (int n = 0; n <= cat.dg_classes[0].max_units; ++n) {
            for (int pvs = 0; pvs <= *grid.pv_max_steps; ++pvs) {
                for (int bes = 0; bes <= *grid.bess_max_steps; ++bes) {
                    auto m = build_sizing_model(load, pv_pu, cat, costs, c_rate, grid);
                    m.set_bounds(lay.n(0), n, n);
                    m.set_bounds(lay.pv_size(), pvs, pvs);
                    m.set_bounds(lay.bess_size(), bes, bes);
                    auto sol = milp::solve_lp(m);
                    if (sol.status == milp::Status::Optimal)
                        best = std::min(best, sol.objective);
                }
            }
        }
    }
    return best;
}

}  // namespace

TEST_CASE("variable layout matches the documented block structure") {
    auto lay = layout_for(24, 3);
    CHECK(lay.total() == 24 * (2 * 3 + 4) + 3 + 2);
    CHECK(lay.total() == 245);
    // blocks do not overlap and cover the range exactly once
    std::vector<int> seen(lay.total(), 0);
    for (int t = 0; t < 24; ++t) {
        for (int s = 0; s < 3; ++s) {
            seen[lay.pg(t, s)]++;
            seen[lay.k(t, s)]++;
        }
        seen[lay.pch(t)]++;
        seen[lay.pdis(t)]++;
        seen[lay.soc(t)]++;
        seen[lay.pcurt(t)]++;
    }
    for (int s = 0; s < 3; ++s) seen[lay.n(s)]++;
    seen[lay.pv_size()]++;
    seen[lay.bess_size()]++;
    for (int c : seen) CHECK(c == 1);

    auto load = toy_load();
    auto pv = toy_pv_perunit();
    auto cat = default_catalog();
    auto m = build_sizing_model(load, pv, cat, CostModel{}, 1.0);
    CHECK(m.num_vars() == layout_for(24, 3).total());
}

TEST_CASE("zero load sizes nothing") {
    auto load = series(std::vector<double>(6, 0.0), 60.0, Unit::kW);
    auto pv = series(std::vector<double>(6, 0.5), 60.0, Unit::Dimensionless);
    auto res = solve_sizing(load, pv, toy_catalog(), toy_costs(), {}, toy_grid());
    REQUIRE(res.status == milp::Status::Optimal);
    CHECK(res.decision.total_cost == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(res.decision.dg_counts[0] == 0);
    CHECK(res.decision.pv_rated_kwp == doctest::Approx(0.0));
    CHECK(res.decision.bess_energy_kwh == doctest::Approx(0.0));
}

TEST_CASE("single unit carries a small constant load when its window allows") {
    auto load = series(std::vector<double>(6, 100.0), 60.0, Unit::kW);
    auto pv = series(std::vector<double>(6, 0.0), 60.0, Unit::Dimensionless);
    auto cat = toy_catalog();
    cat.dg_classes[0].min_load_fraction = 0.05;  // 50 kW floor, 100 kW is fine
    cat.bess.max_energy_kwh = 0.0;
    cat.max_pv_kwp = 0.0;
    SizingGrid grid;
    grid.pv_step_kwp = 1.0;
    grid.pv_max_steps = 0;
    grid.bess_step_kwh = 1.0;
    grid.bess_max_steps = 0;
    auto res = solve_sizing(load, pv, cat, toy_costs(), {}, grid);
    REQUIRE(res.status == milp::Status::Optimal);
    CHECK(res.decision.dg_counts[0] == 1);
    for (double p : res.schedule.dg_power_kw[0]) CHECK(p == doctest::Approx(100.0));
}

TEST_CASE("infeasible below the minimum-load window is reported") {
    auto load = series(std::vector<double>(6, 100.0), 60.0, Unit::kW);
    auto pv = series(std::vector<double>(6, 0.0), 60.0, Unit::Dimensionless);
    auto cat = toy_catalog();
    cat.dg_classes[0].min_load_fraction = 0.30;  // 300 kW floor > 100 kW load
    cat.bess.max_energy_kwh = 0.0;
    cat.max_pv_kwp = 0.0;
    SizingGrid grid;
    grid.pv_step_kwp = 1.0;
    grid.pv_max_steps = 0;
    grid.bess_step_kwh = 1.0;
    grid.bess_max_steps = 0;
    CHECK_THROWS_AS(solve_sizing(load, pv, cat, toy_costs(), {}, grid),
                    std::runtime_error);
}

TEST_CASE("toy sizing matches full grid enumeration") {
    auto load = toy_load();
    auto pv = toy_pv_perunit();
    auto cat = toy_catalog();
    auto costs = toy_costs();
    auto grid = toy_grid();
    milp::SolveOptions opts;
    opts.relative_gap = 1e-9;
    auto res = solve_sizing(load, pv, cat, costs, opts, grid);
    REQUIRE(res.status == milp::Status::Optimal);
    double oracle = enumerate_toy_optimum(load, pv, cat, costs, grid);
    CHECK(res.decision.total_cost == doctest::Approx(oracle).epsilon(1e-3));
    CHECK(res.decision.total_cost >= oracle - 1e-6);  // never better than exhaustive
    CHECK(res.decision.total_cost ==
          doctest::Approx(res.decision.capex_cost + res.decision.fuel_cost).epsilon(1e-9));
}

TEST_CASE("decoded schedule is internally consistent") {
    auto load = toy_load();
    auto pv = toy_pv_perunit();
    auto cat = toy_catalog();
    auto costs = toy_costs();
    auto res = solve_sizing(load, pv, cat, costs, {}, toy_grid());
    REQUIRE(res.status == milp::Status::Optimal);
    const auto& s = res.schedule;
    int T = static_cast<int>(load.size());
    double dt = load.step_hours();
    double E = res.decision.bess_energy_kwh;
    for (int t = 0; t < T; ++t) {
        // charge and discharge never overlap after decoding
        CHECK(s.charge_kw[t] * s.discharge_kw[t] == doctest::Approx(0.0));
        CHECK(s.charge_kw[t] >= -1e-9);
        CHECK(s.discharge_kw[t] >= -1e-9);
        if (E > 0.0) {
            CHECK(s.soc_kwh[t] >= cat.bess.soc_lo * E - 1e-6);
            CHECK(s.soc_kwh[t] <= cat.bess.soc_hi * E + 1e-6);
        }
        CHECK(s.curtail_kw[t] <= pv.values[t] * res.decision.pv_rated_kwp + 1e-6);
    }
    // cyclic storage: net charged energy over the horizon is zero
    double net = 0.0;
    for (int t = 0; t < T; ++t)
        net += (cat.bess.eta_ch * s.charge_kw[t] - s.discharge_kw[t] / cat.bess.eta_dis) * dt;
    CHECK(std::abs(net) <= 1e-5);

    auto rep = validate_schedule(s, load, pv, cat, res.decision);
    CHECK(rep.pass);
    CHECK(rep.max_balance_residual_kw <= 1e-6);
}

TEST_CASE("validate_schedule flags an injected imbalance") {
    auto load = toy_load();
    auto pv = toy_pv_perunit();
    auto cat = toy_catalog();
    auto res = solve_sizing(load, pv, cat, toy_costs(), {}, toy_grid());
    REQUIRE(res.status == milp::Status::Optimal);
    auto broken = res.schedule;
    broken.dg_power_kw[0][5] += 7.0;
    auto rep = validate_schedule(broken, load, pv, cat, res.decision);
    CHECK_FALSE(rep.pass);
    CHECK(rep.worst_balance_step == 5);
    CHECK(rep.max_balance_residual_kw == doctest::Approx(7.0).epsilon(1e-6));

    auto drained = res.schedule;
    if (res.decision.bess_energy_kwh > 0.0) {
        drained.soc_kwh[3] = 0.1 * res.decision.bess_energy_kwh;  // below soc_lo
        auto rep2 = validate_schedule(drained, load, pv, cat, res.decision);
        CHECK_FALSE(rep2.pass);
        CHECK(rep2.max_soc_excursion_kwh > 0.0);
    }
}

TEST_CASE("pricier plant buys less of it") {
    auto load = toy_load();
    auto pv = toy_pv_perunit();
    auto cat = toy_catalog();
    auto grid = toy_grid();
    auto cheap = toy_costs();
    auto dear = cheap;
    dear.c_pv_per_kwp *= 20.0;
    dear.c_bess_energy_per_kwh *= 20.0;
    dear.c_bess_power_per_kw *= 20.0;
    auto a = solve_sizing(load, pv, cat, cheap, {}, grid);
    auto b = solve_sizing(load, pv, cat, dear, {}, grid);
    REQUIRE(a.status == milp::Status::Optimal);
    REQUIRE(b.status == milp::Status::Optimal);
    CHECK(b.decision.pv_rated_kwp <= a.decision.pv_rated_kwp + 1e-9);
    CHECK(b.decision.bess_energy_kwh <= a.decision.bess_energy_kwh + 1e-9);
    CHECK(b.decision.total_cost >= a.decision.total_cost - 1e-6);
}

TEST_CASE("build_sizing_model rejects malformed input") {
    auto load = toy_load();
    auto pv = toy_pv_perunit();
    auto bad_pv = pv;
    bad_pv.values.pop_back();
    CHECK_THROWS_AS(build_sizing_model(load, bad_pv, toy_catalog(), toy_costs(), 1.0),
                    std::invalid_argument);
    CHECK_THROWS(build_sizing_model(load, pv, toy_catalog(), toy_costs(), -1.0));
    DeviceCatalog empty;
    CHECK_THROWS(build_sizing_model(load, pv, empty, toy_costs(), 1.0));
}

TEST_CASE("cost model validation") {
    CostModel bad;
    bad.payback_years = 0.0;
    CHECK_THROWS(bad.validate());
    CostModel bad2;
    bad2.fuel_price_per_l = -1.0;
    CHECK_THROWS(bad2.validate());
}
