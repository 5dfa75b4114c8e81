#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "mgrid/timeseries.hpp"

namespace mgrid {

// Synthetic load description. The deterministic envelope is
// rated_peak * daily_shape[hour] * seasonal_shape[month]; the shape tables
// must be normalized so their product peaks at exactly 1.
struct LoadSpec {
    double rated_peak_kw = 6000.0;
    std::array<double, 24> daily_shape{};
    std::array<double, 12> seasonal_shape{};
    double fluctuation_sigma = 0.05;  // per-unit std-dev of multiplicative noise
    std::uint64_t seed = 1;

    void validate() const;
};

// Two-mode resort curve (morning shoulder, evening peak) and a seasonal
// table peaking in the tourist season. Stand-ins, editable via config.
LoadSpec default_load_spec();

struct PvPlantModel {
    double eta_panel = 1.0;
    double eta_inverter = 1.0;
    double degradation_per_year = 0.0;  // per-unit per year
    double i_std_wm2 = 1000.0;

    void validate() const;
};

// Noise is multiplicative exp(z), z ~ N(0, sigma^2) clipped to +/-3 sigma.
// Normal deviates come from Box-Muller over mt19937_64 uniforms so the
// series is reproducible across platforms for a given seed.
TimeSeries synth_load(const LoadSpec& spec, double horizon_min, double step_min);

// P = I_g * rated * eta_pan * eta_inv * (1-d)^floor(years elapsed) / I_STD,
// degradation piecewise-constant per year from the series start.
TimeSeries pv_power(const TimeSeries& irradiance, const PvPlantModel& model,
                    double rated_kw);

// Synthetic clear-sky-like irradiance with a seeded daily clearness factor;
// fixture support for scenarios where no measurement CSV is available.
struct IrradianceSpec {
    double peak_wm2 = 950.0;
    double seasonal_swing = 0.15;      // per-unit reduction at the winter minimum
    double day_fraction = 0.5;         // daylight fraction of the 24 h cycle
    double clearness_mean = 0.75;      // mean of the per-day clearness factor
    double clearness_sigma = 0.18;
    std::uint64_t seed = 1;
};
TimeSeries synth_irradiance(const IrradianceSpec& spec, double horizon_min,
                            double step_min);

// CSV ingestion: header "timestamp,ghi_wm2", ISO-8601 UTC timestamps.
// Gaps up to 2 h are linearly interpolated; longer gaps throw.
TimeSeries read_irradiance_csv(const std::string& path);

// CSV output: header "timestamp,value,unit".
void write_timeseries_csv(const TimeSeries& ts, const std::string& path);
TimeSeries read_timeseries_csv(const std::string& path);

}  // namespace mgrid
