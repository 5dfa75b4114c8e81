#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mgrid {

enum class Unit { kW, Wm2, Dimensionless };

std::string unit_name(Unit u);
Unit unit_from_name(const std::string& s);

// Uniformly sampled profile. step_min is the sample spacing in minutes.
struct TimeSeries {
    std::int64_t start_epoch = 0;  // seconds since Unix epoch, UTC
    double step_min = 5.0;
    Unit unit = Unit::kW;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    double step_hours() const { return step_min / 60.0; }

    // throws std::invalid_argument on violated invariants
    void validate() const;
};

// true when start, step and length all coincide
bool aligned(const TimeSeries& a, const TimeSeries& b);

}  // namespace mgrid
