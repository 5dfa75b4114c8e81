#include "mgrid/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

namespace mgrid {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr std::int64_t kSecPerDay = 86400;
constexpr int kDaysPerYear = 365;

// uniform in (0,1), 53-bit mantissa from the top bits of the generator
double uniform01(std::mt19937_64& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53;
}

// Box-Muller, cosine branch only; one deviate per two uniforms so the
// stream is well defined and platform independent.
double normal01(std::mt19937_64& rng) {
    const double u1 = uniform01(rng);
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

// days since 1970-01-01 -> civil date (Howard Hinnant's algorithm)
void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp < 10 ? mp + 3 : mp - 9);
    y = static_cast<int>(yy + (m <= 2));
}

std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m > 2 ? m - 3 : m + 9) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

std::string format_iso8601(std::int64_t epoch) {
    std::int64_t days = epoch / kSecPerDay;
    std::int64_t sod = epoch % kSecPerDay;
    if (sod < 0) {
        sod += kSecPerDay;
        days -= 1;
    }
    int y, m, d;
    civil_from_days(days, y, m, d);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02lld:%02lld:%02lldZ", y, m, d,
                  static_cast<long long>(sod / 3600),
                  static_cast<long long>((sod / 60) % 60),
                  static_cast<long long>(sod % 60));
    return buf;
}

std::int64_t parse_iso8601(const std::string& s) {
    int y, mo, d, h, mi, sec;
    if (std::sscanf(s.c_str(), "%d-%d-%dT%d:%d:%d", &y, &mo, &d, &h, &mi, &sec) != 6)
        throw std::invalid_argument("bad ISO-8601 timestamp: " + s);
    return days_from_civil(y, mo, d) * kSecPerDay + h * 3600 + mi * 60 + sec;
}

// hour-of-day value, linear between the hourly nodes with wraparound
double daily_value(const std::array<double, 24>& shape, double hour) {
    const int h0 = static_cast<int>(hour) % 24;
    const int h1 = (h0 + 1) % 24;
    const double f = hour - std::floor(hour);
    return shape[h0] * (1.0 - f) + shape[h1] * f;
}

int month_of_doy(int doy) {
    return std::min(11, doy * 12 / kDaysPerYear);
}

}  // namespace

void LoadSpec::validate() const {
    if (!(rated_peak_kw > 0.0))
        throw std::invalid_argument("LoadSpec: rated_peak must be positive");
    double dmax = 0.0, smax = 0.0;
    for (double c : daily_shape) {
        if (!(c > 0.0 && c <= 1.0))
            throw std::invalid_argument("LoadSpec: daily shape coefficients must be in (0,1]");
        dmax = std::max(dmax, c);
    }
    for (double c : seasonal_shape) {
        if (!(c > 0.0 && c <= 1.0))
            throw std::invalid_argument("LoadSpec: seasonal shape coefficients must be in (0,1]");
        smax = std::max(smax, c);
    }
    if (std::abs(dmax * smax - 1.0) > 1e-9)
        throw std::invalid_argument("LoadSpec: daily x seasonal product must peak at 1");
    if (fluctuation_sigma < 0.0)
        throw std::invalid_argument("LoadSpec: fluctuation_sigma must be >= 0");
}

LoadSpec default_load_spec() {
    LoadSpec s;
    s.rated_peak_kw = 6000.0;
    // resort stand-in: flat night base, morning shoulder, evening peak at 20:00
    s.daily_shape = {0.70, 0.68, 0.67, 0.66, 0.66, 0.67, 0.71, 0.76,
                     0.79, 0.77, 0.74, 0.73, 0.74, 0.72, 0.70, 0.71,
                     0.75, 0.82, 0.92, 0.98, 1.00, 0.96, 0.86, 0.76};
    // tourist season peaking mid-year
    s.seasonal_shape = {0.90, 0.90, 0.92, 0.94, 0.96, 0.99,
                        1.00, 1.00, 0.98, 0.95, 0.92, 0.90};
    s.fluctuation_sigma = 0.02;
    s.seed = 1;
    return s;
}

void PvPlantModel::validate() const {
    if (!(eta_panel > 0.0 && eta_panel <= 1.0) || !(eta_inverter > 0.0 && eta_inverter <= 1.0))
        throw std::invalid_argument("PvPlantModel: efficiencies must be in (0,1]");
    if (degradation_per_year < 0.0)
        throw std::invalid_argument("PvPlantModel: degradation must be >= 0");
    if (!(i_std_wm2 > 0.0))
        throw std::invalid_argument("PvPlantModel: i_std must be positive");
}

TimeSeries synth_load(const LoadSpec& spec, double horizon_min, double step_min) {
    spec.validate();
    if (!(horizon_min > 0.0) || !(step_min > 0.0))
        throw std::invalid_argument("synth_load: horizon and step must be positive");
    const double n_real = horizon_min / step_min;
    const auto n = static_cast<std::size_t>(std::llround(n_real));
    if (std::abs(n_real - static_cast<double>(n)) > 1e-9)
        throw std::invalid_argument("synth_load: horizon must be a multiple of step");

    TimeSeries ts;
    ts.start_epoch = 0;
    ts.step_min = step_min;
    ts.unit = Unit::kW;
    ts.values.resize(n);

    std::mt19937_64 rng(spec.seed);
    const double clip = 3.0 * spec.fluctuation_sigma;
    for (std::size_t i = 0; i < n; ++i) {
        const double t_min = static_cast<double>(i) * step_min;
        const double hour = std::fmod(t_min / 60.0, 24.0);
        const int doy = static_cast<int>(t_min / (24.0 * 60.0)) % kDaysPerYear;
        const double base = spec.rated_peak_kw * daily_value(spec.daily_shape, hour) *
                            spec.seasonal_shape[month_of_doy(doy)];
        double z = normal01(rng) * spec.fluctuation_sigma;
        z = std::clamp(z, -clip, clip);
        ts.values[i] = base * std::exp(z);
    }
    return ts;
}

TimeSeries pv_power(const TimeSeries& irradiance, const PvPlantModel& model,
                    double rated_kw) {
    model.validate();
    irradiance.validate();
    if (irradiance.unit != Unit::Wm2)
        throw std::invalid_argument("pv_power: irradiance series must be W/m2");
    if (rated_kw < 0.0)
        throw std::invalid_argument("pv_power: rated_kw must be >= 0");

    TimeSeries out;
    out.start_epoch = irradiance.start_epoch;
    out.step_min = irradiance.step_min;
    out.unit = Unit::kW;
    out.values.resize(irradiance.size());
    const double gain = rated_kw * model.eta_panel * model.eta_inverter / model.i_std_wm2;
    for (std::size_t i = 0; i < irradiance.size(); ++i) {
        const double ig = irradiance.values[i];
        if (ig < 0.0)
            throw std::invalid_argument("pv_power: negative irradiance at index " +
                                        std::to_string(i));
        const auto years = static_cast<int>(static_cast<double>(i) * irradiance.step_min /
                                            (60.0 * 8760.0));
        const double w_deg = std::pow(1.0 - model.degradation_per_year, years);
        out.values[i] = ig * gain * w_deg;
    }
    return out;
}

TimeSeries synth_irradiance(const IrradianceSpec& spec, double horizon_min,
                            double step_min) {
    if (!(horizon_min > 0.0) || !(step_min > 0.0))
        throw std::invalid_argument("synth_irradiance: horizon and step must be positive");
    const auto n = static_cast<std::size_t>(std::llround(horizon_min / step_min));

    TimeSeries ts;
    ts.start_epoch = 0;
    ts.step_min = step_min;
    ts.unit = Unit::Wm2;
    ts.values.resize(n);

    std::mt19937_64 rng(spec.seed);
    double clearness = spec.clearness_mean;
    int current_day = -1;
    const double day_len_h = 24.0 * spec.day_fraction;
    const double rise = 12.0 - day_len_h / 2.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double t_min = static_cast<double>(i) * step_min;
        const int day = static_cast<int>(t_min / (24.0 * 60.0));
        if (day != current_day) {
            current_day = day;
            clearness = std::clamp(spec.clearness_mean + spec.clearness_sigma * normal01(rng),
                                   0.05, 1.0);
        }
        const int doy = day % kDaysPerYear;
        const double seasonal =
            1.0 - spec.seasonal_swing * 0.5 *
                      (1.0 - std::cos(2.0 * kPi * (doy - 172) / kDaysPerYear));
        const double hour = std::fmod(t_min / 60.0, 24.0);
        double shape = 0.0;
        if (hour > rise && hour < rise + day_len_h)
            shape = std::sin(kPi * (hour - rise) / day_len_h);
        ts.values[i] = spec.peak_wm2 * seasonal * clearness * shape;
    }
    return ts;
}

TimeSeries read_irradiance_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open irradiance CSV: " + path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("timestamp,ghi_wm2", 0) != 0)
        throw std::invalid_argument(path + ": expected header 'timestamp,ghi_wm2'");

    std::vector<std::pair<std::int64_t, double>> rows;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": missing comma");
        rows.emplace_back(parse_iso8601(line.substr(0, comma)),
                          std::stod(line.substr(comma + 1)));
    }
    if (rows.size() < 2)
        throw std::invalid_argument(path + ": need at least two samples");

    std::int64_t step_s = rows[1].first - rows[0].first;
    for (std::size_t i = 1; i < rows.size(); ++i)
        step_s = std::min(step_s, rows[i].first - rows[i - 1].first);
    if (step_s <= 0)
        throw std::invalid_argument(path + ": timestamps must be strictly increasing");

    TimeSeries ts;
    ts.start_epoch = rows[0].first;
    ts.step_min = static_cast<double>(step_s) / 60.0;
    ts.unit = Unit::Wm2;
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        const std::int64_t gap = rows[i + 1].first - rows[i].first;
        if (gap % step_s != 0)
            throw std::invalid_argument(path + ": timestamp not on the sample grid near " +
                                        format_iso8601(rows[i + 1].first));
        if (gap > 2 * 3600)
            throw std::invalid_argument(path + ": gap longer than 2 h at " +
                                        format_iso8601(rows[i].first));
        const auto k = gap / step_s;
        for (std::int64_t j = 0; j < k; ++j) {
            const double f = static_cast<double>(j) / static_cast<double>(k);
            ts.values.push_back(rows[i].second * (1.0 - f) + rows[i + 1].second * f);
        }
    }
    ts.values.push_back(rows.back().second);
    return ts;
}

void write_timeseries_csv(const TimeSeries& ts, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write CSV: " + path);
    out << "timestamp,value,unit\n";
    char buf[64];
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const auto epoch =
            ts.start_epoch + static_cast<std::int64_t>(std::llround(ts.step_min * 60.0 *
                                                                    static_cast<double>(i)));
        std::snprintf(buf, sizeof(buf), "%.6f", ts.values[i]);
        out << format_iso8601(epoch) << ',' << buf << ',' << unit_name(ts.unit) << '\n';
    }
}

TimeSeries read_timeseries_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open CSV: " + path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("timestamp,value,unit", 0) != 0)
        throw std::invalid_argument(path + ": expected header 'timestamp,value,unit'");
    TimeSeries ts;
    std::vector<std::int64_t> stamps;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string stamp, value, unit;
        std::getline(ss, stamp, ',');
        std::getline(ss, value, ',');
        std::getline(ss, unit, ',');
        stamps.push_back(parse_iso8601(stamp));
        ts.values.push_back(std::stod(value));
        ts.unit = unit_from_name(unit);
    }
    if (stamps.empty()) throw std::invalid_argument(path + ": empty series");
    ts.start_epoch = stamps.front();
    ts.step_min = stamps.size() > 1
                      ? static_cast<double>(stamps[1] - stamps[0]) / 60.0
                      : 5.0;
    return ts;
}

}  // namespace mgrid
