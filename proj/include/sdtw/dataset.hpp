#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sdtw/series.hpp"

namespace sdtw {

// Labeled time-series collection.
struct Dataset {
    std::string name;
    std::vector<int> labels;
    std::vector<TimeSeries> series;
    bool uniform_length = true;

    std::size_t size() const { return series.size(); }
};

// Thrown on unreadable, malformed or empty input data; maps to a distinct
// CLI exit code.
struct data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Text dataset reader: one series per non-empty line, the first field is the
// integer class label, the remaining fields the values. Fields separate on
// commas or whitespace. Throws data_error with the offending line number on
// parse failures or NaN values.
Dataset load_ucr(const std::string& path);

// Writes a dataset back in the same line format.
void save_ucr(const Dataset& dataset, const std::string& path);

struct SyntheticSpec {
    int classes = 3;
    int per_class = 20;
    int length = 256;
    double warp_strength = 0.4;  // in [0, 1): max local slope distortion
    double noise = 0.05;         // white-noise standard deviation
    std::uint64_t seed = 1;
};

// Per class: a random base shape (2-4 Gaussian bumps); each instance is the
// base shape resampled through a random smooth monotone time-warp plus white
// noise. Fully reproducible from the seed.
Dataset generate_synthetic(const SyntheticSpec& spec);

}  // namespace sdtw
