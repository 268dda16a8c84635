#include "sdtw/descriptor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sdtw/text.hpp"

namespace sdtw {

TimeSeries compute_gradients(const TimeSeries& series) {
    validate_series(series);
    const std::size_t n = series.size();
    if (n < 2) {
        throw std::invalid_argument("gradients need at least 2 samples");
    }
    TimeSeries grad(n);
    grad[0] = series[1] - series[0];
    grad[n - 1] = series[n - 1] - series[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        grad[i] = (series[i + 1] - series[i - 1]) / 2.0;
    }
    return grad;
}

std::vector<double> build_descriptor(const SalientPoint& point,
                                     const ScaleSpacePyramid& pyramid,
                                     int cells, bool unit_norm) {
    if (cells < 2 || cells % 2 != 0) {
        throw std::invalid_argument("descriptor cell count must be even, >= 2");
    }
    if (point.octave < 0 ||
        point.octave >= static_cast<int>(pyramid.octaves.size())) {
        throw std::invalid_argument("salient point outside the pyramid");
    }
    const auto& level =
        pyramid.octaves[point.octave].smoothed[point.level];
    const TimeSeries grad = compute_gradients(level);

    const int half = cells / 2;  // Gaussian weighting std and window half-span
    const double stride = std::pow(2.0, point.octave);
    const double center = point.position / stride;  // octave coordinates
    const long anchor = round_half_up(center);

    std::vector<double> desc(2 * static_cast<std::size_t>(cells), 0.0);
    for (int c = 0; c < cells; ++c) {
        const long i = anchor - half + c;
        if (i < 0 || i >= static_cast<long>(grad.size())) continue;
        const double d = static_cast<double>(i) - center;
        const double w = std::exp(-(d * d) / (2.0 * half * half));
        const double g = grad[static_cast<std::size_t>(i)];
        if (g >= 0.0) {
            desc[2 * c] += w * g;
        } else {
            desc[2 * c + 1] += w * (-g);
        }
    }
    if (unit_norm) {
        double norm = 0.0;
        for (double v : desc) norm += v * v;
        norm = std::sqrt(norm);
        if (norm > 0.0) {
            for (double& v : desc) v /= norm;
        }
    }
    return desc;
}

double scope_amplitude(const SalientPoint& point,
                       const ScaleSpacePyramid& pyramid) {
    const auto& level =
        pyramid.octaves[point.octave].smoothed[point.level];
    const double stride = std::pow(2.0, point.octave);
    long first = static_cast<long>(std::ceil(point.scope_start / stride - 1e-9));
    long last = static_cast<long>(std::floor(point.scope_end / stride + 1e-9));
    first = std::clamp<long>(first, 0, static_cast<long>(level.size()) - 1);
    last = std::clamp<long>(last, 0, static_cast<long>(level.size()) - 1);
    if (last < first) first = last = round_half_up(point.position / stride);
    double sum = 0.0;
    for (long i = first; i <= last; ++i) {
        sum += level[static_cast<std::size_t>(i)];
    }
    return sum / static_cast<double>(last - first + 1);
}

void validate_feature_params(const FeatureParams& params) {
    if (params.levels < 1) throw std::invalid_argument("levels must be >= 1");
    if (params.epsilon < 0.0 || params.epsilon >= 1.0) {
        throw std::invalid_argument("epsilon must lie in [0, 1)");
    }
    if (params.descriptor_bins < 4 || params.descriptor_bins % 4 != 0) {
        throw std::invalid_argument(
            "descriptor_bins must be a positive multiple of 4");
    }
    if (!(params.base_sigma > 0.0)) {
        throw std::invalid_argument("base_sigma must be positive");
    }
    if (params.magnitude_floor < 0.0) {
        throw std::invalid_argument("magnitude_floor must be >= 0");
    }
}

std::vector<SalientFeature> extract_features(const TimeSeries& series,
                                             const FeatureParams& params) {
    validate_feature_params(params);
    validate_series(series);
    if (series.size() < 8) {
        throw std::invalid_argument("series too short for extraction (< 8)");
    }
    const int octaves = params.num_octaves > 0
                            ? params.num_octaves
                            : default_octaves(series.size());
    const ScaleSpacePyramid pyramid =
        build_pyramid(series, octaves, params.levels, params.base_sigma);
    const auto points =
        detect_keypoints(pyramid, params.epsilon, params.magnitude_floor);

    const int cells = params.descriptor_bins / 2;
    std::vector<SalientFeature> features;
    features.reserve(points.size());
    for (const auto& p : points) {
        SalientFeature f;
        f.point = p;
        f.descriptor = build_descriptor(p, pyramid, cells, params.unit_norm);
        f.amplitude = scope_amplitude(p, pyramid);
        features.push_back(std::move(f));
    }
    return features;
}

std::uint64_t params_fingerprint(const FeatureParams& params) {
    // FNV-1a over a canonical rendering of every parameter.
    const std::string text =
        std::to_string(params.num_octaves) + "|" +
        std::to_string(params.levels) + "|" + format_double(params.epsilon) +
        "|" + std::to_string(params.descriptor_bins) + "|" +
        format_double(params.base_sigma) + "|" +
        format_double(params.magnitude_floor) + "|" +
        (params.unit_norm ? "1" : "0");
    std::uint64_t hash = 1469598103934665603ull;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

}  // namespace sdtw
