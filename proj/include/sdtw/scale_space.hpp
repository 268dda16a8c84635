#pragma once

#include <cstddef>
#include <vector>

#include "sdtw/series.hpp"

namespace sdtw {

// A salient point detected in the difference-of-Gaussians scale space.
// Positions, scales and scopes are expressed in original-series coordinates
// regardless of the octave the point was found in.
struct SalientPoint {
    double position = 0.0;     // sub-sample refined index
    double sigma = 0.0;        // time scale
    int octave = 0;
    int level = 0;             // difference-level index within the octave
    double dog_value = 0.0;    // difference response at the detected cell
    double scope_start = 0.0;  // position - 3*sigma, clamped to [0, N-1]
    double scope_end = 0.0;    // position + 3*sigma, clamped to [0, N-1]
};

struct Octave {
    // s + 2 smoothed levels; level k carries nominal scale base_sigma*kappa^k
    // (octave-local coordinates).
    std::vector<TimeSeries> smoothed;
    // s + 1 difference levels; difference[k] = smoothed[k+1] - smoothed[k].
    std::vector<TimeSeries> difference;
};

struct ScaleSpacePyramid {
    std::vector<Octave> octaves;
    double kappa = 0.0;       // 2^(1/s), so kappa^s = 2
    double base_sigma = 0.0;
    int levels = 0;           // s
    int requested_octaves = 0;  // octaves asked for before length truncation
    std::size_t input_length = 0;
    double input_range = 0.0;    // value range of the raw input series
    double input_abs_max = 0.0;  // largest |value| of the raw input series

    bool truncated() const {
        return static_cast<int>(octaves.size()) < requested_octaves;
    }
};

// Convolution with a normalized Gaussian kernel truncated at +/-3*sigma.
// Boundaries are mirror-reflected (index -k reads index k). sigma = 0 is the
// identity. Output length equals input length.
TimeSeries gaussian_smooth(const TimeSeries& series, double sigma);

// Default octave count for a series of length n: max(1, floor(log2 n) - 6).
int default_octaves(std::size_t n);

// Builds the Gaussian/difference-of-Gaussians pyramid. Each octave holds
// s + 2 smoothed levels computed by a single convolution from the octave
// base (scale additivity: sigma_total^2 = sigma_a^2 + sigma_b^2), and the
// next octave starts from the level whose scale doubled, downsampled by
// taking every second sample. Octaves that would fall below 4 samples are
// dropped; requested_octaves records the original request.
ScaleSpacePyramid build_pyramid(const TimeSeries& series, int num_octaves,
                                int s, double base_sigma = 1.6);

// Relaxed scale-space extremum detection: a cell qualifies when its
// difference response dominates all 8 neighbours (temporal neighbours on the
// same level plus the 3-cell neighbourhoods one level up and down) up to the
// factor (1 - epsilon), on matching sign, and its magnitude exceeds
// floor_factor * input range. Both maxima and minima are kept. Level
// boundary cells are excluded. Result is sorted by (position, sigma,
// octave, level).
std::vector<SalientPoint> detect_keypoints(const ScaleSpacePyramid& pyramid,
                                           double epsilon,
                                           double floor_factor = 1e-6);

}  // namespace sdtw
