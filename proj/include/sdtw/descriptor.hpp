#pragma once

#include <cstdint>
#include <vector>

#include "sdtw/scale_space.hpp"
#include "sdtw/series.hpp"

namespace sdtw {

// A salient point together with its gradient descriptor and the mean
// smoothed amplitude over its scope.
struct SalientFeature {
    SalientPoint point;
    std::vector<double> descriptor;  // cell-major: [c0 up, c0 down, c1 up, ...]
    double amplitude = 0.0;
    int series_id = -1;
};

struct FeatureParams {
    int num_octaves = 0;        // <= 0 selects default_octaves(N)
    int levels = 2;             // s
    double epsilon = 0.0096;
    int descriptor_bins = 64;   // total descriptor length; multiple of 4
    double base_sigma = 1.6;
    double magnitude_floor = 1e-6;  // keypoint floor, fraction of value range
    bool unit_norm = true;          // L2-normalize descriptors
};

// Central differences for interior samples, one-sided at the two ends.
// Requires length >= 2.
TimeSeries compute_gradients(const TimeSeries& series);

// Gradient histogram around a salient point, sampled on the smoothed level
// the point was detected at. `cells` consecutive cells (one sample per cell
// at the octave's resolution) are centered on the point; each cell holds two
// bins, the Gaussian-weighted magnitudes of non-negative and of negative
// gradients. Samples outside the series contribute nothing.
std::vector<double> build_descriptor(const SalientPoint& point,
                                     const ScaleSpacePyramid& pyramid,
                                     int cells, bool unit_norm = true);

// Mean of the detection-level smoothed series over the point's scope.
double scope_amplitude(const SalientPoint& point,
                       const ScaleSpacePyramid& pyramid);

// Full extraction pipeline: pyramid -> keypoints -> descriptors.
// Requires series length >= 8. Features keep the keypoint order
// (ascending position, then sigma). series_id is left at -1.
std::vector<SalientFeature> extract_features(const TimeSeries& series,
                                             const FeatureParams& params);

// Stable fingerprint of every extraction parameter; used to invalidate
// feature caches when parameters change.
std::uint64_t params_fingerprint(const FeatureParams& params);

void validate_feature_params(const FeatureParams& params);

}  // namespace sdtw
