#include "mgrid/timeseries.hpp"

#include <cmath>

namespace mgrid {

std::string unit_name(Unit u) {
    switch (u) {
        case Unit::kW: return "kW";
        case Unit::Wm2: return "W/m2";
        case Unit::Dimensionless: return "pu";
    }
    return "?";
}

Unit unit_from_name(const std::string& s) {
    if (s == "kW") return Unit::kW;
    if (s == "W/m2" || s == "W/m^2") return Unit::Wm2;
    if (s == "pu" || s == "dimensionless") return Unit::Dimensionless;
    throw std::invalid_argument("unknown unit tag: " + s);
}

void TimeSeries::validate() const {
    if (!(step_min > 0.0))
        throw std::invalid_argument("TimeSeries: step must be positive");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i]))
            throw std::invalid_argument("TimeSeries: non-finite sample at index " +
                                        std::to_string(i));
    }
}

bool aligned(const TimeSeries& a, const TimeSeries& b) {
    return a.start_epoch == b.start_epoch && a.step_min == b.step_min &&
           a.values.size() == b.values.size();
}

}  // namespace mgrid
