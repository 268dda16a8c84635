#include "sdtw/series.hpp"

#include <algorithm>

namespace sdtw {

ElementDistance parse_element_distance(const std::string& name) {
    if (name == "absolute") return ElementDistance::absolute;
    if (name == "squared") return ElementDistance::squared;
    throw std::invalid_argument("unknown element distance: " + name);
}

std::string to_string(ElementDistance kind) {
    return kind == ElementDistance::absolute ? "absolute" : "squared";
}

void validate_series(const TimeSeries& series) {
    if (series.empty()) {
        throw std::invalid_argument("series must hold at least one value");
    }
    for (double v : series) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("series holds a non-finite value");
        }
    }
}

double value_range(const TimeSeries& series) {
    if (series.empty()) return 0.0;
    auto [lo, hi] = std::minmax_element(series.begin(), series.end());
    return *hi - *lo;
}

}  // namespace sdtw
