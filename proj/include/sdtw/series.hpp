#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace sdtw {

// A time series is a finite sequence of real values, indexed 0..N-1.
using TimeSeries = std::vector<double>;

// Element-wise distance used inside the DTW recurrence.
enum class ElementDistance { absolute, squared };

inline double element_delta(ElementDistance kind, double a, double b) {
    const double d = a - b;
    return kind == ElementDistance::absolute ? std::fabs(d) : d * d;
}

ElementDistance parse_element_distance(const std::string& name);
std::string to_string(ElementDistance kind);

// Throws std::invalid_argument if the series is empty or holds NaN/Inf.
void validate_series(const TimeSeries& series);

// max(values) - min(values); 0 for a constant series.
double value_range(const TimeSeries& series);

// Nearest integer with halves rounded up. Band and cut placement depend on
// this being round-half-up, not banker's rounding.
inline long round_half_up(double x) {
    return static_cast<long>(std::floor(x + 0.5));
}

// Thrown when an internal invariant breaks; maps to a distinct CLI exit code.
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace sdtw
