#include "sdtw/scale_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sdtw {

namespace {

// Mirror reflection without repeating the edge sample: -1 -> 1, n -> n-2.
std::size_t reflect_index(long i, std::size_t n) {
    if (n == 1) return 0;
    const long period = 2 * (static_cast<long>(n) - 1);
    long j = i % period;
    if (j < 0) j += period;
    if (j >= static_cast<long>(n)) j = period - j;
    return static_cast<std::size_t>(j);
}

std::vector<double> gaussian_kernel(double sigma) {
    const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
    std::vector<double> kernel(2 * radius + 1);
    double sum = 0.0;
    for (int k = -radius; k <= radius; ++k) {
        const double w = std::exp(-(static_cast<double>(k) * k) /
                                  (2.0 * sigma * sigma));
        kernel[k + radius] = w;
        sum += w;
    }
    for (double& w : kernel) w /= sum;
    return kernel;
}

TimeSeries downsample(const TimeSeries& series) {
    TimeSeries out;
    out.reserve((series.size() + 1) / 2);
    for (std::size_t i = 0; i < series.size(); i += 2) out.push_back(series[i]);
    return out;
}

}  // namespace

TimeSeries gaussian_smooth(const TimeSeries& series, double sigma) {
    validate_series(series);
    if (!std::isfinite(sigma) || sigma < 0.0) {
        throw std::invalid_argument("sigma must be finite and non-negative");
    }
    if (sigma == 0.0) return series;

    const auto kernel = gaussian_kernel(sigma);
    const int radius = static_cast<int>(kernel.size() / 2);
    const std::size_t n = series.size();
    TimeSeries out(n);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int k = -radius; k <= radius; ++k) {
            const std::size_t j = reflect_index(static_cast<long>(i) + k, n);
            acc += kernel[k + radius] * series[j];
        }
        out[i] = acc;
    }
    return out;
}

int default_octaves(std::size_t n) {
    int o = static_cast<int>(std::floor(std::log2(static_cast<double>(n)))) - 6;
    return std::max(1, o);
}

ScaleSpacePyramid build_pyramid(const TimeSeries& series, int num_octaves,
                                int s, double base_sigma) {
    validate_series(series);
    if (num_octaves < 1) throw std::invalid_argument("need at least 1 octave");
    if (s < 1) throw std::invalid_argument("need at least 1 level per octave");
    if (series.size() < 8) {
        throw std::invalid_argument("series too short for a pyramid (< 8)");
    }
    if (!(base_sigma > 0.0) || !std::isfinite(base_sigma)) {
        throw std::invalid_argument("base_sigma must be positive");
    }

    ScaleSpacePyramid pyramid;
    pyramid.kappa = std::pow(2.0, 1.0 / s);
    pyramid.base_sigma = base_sigma;
    pyramid.levels = s;
    pyramid.requested_octaves = num_octaves;
    pyramid.input_length = series.size();
    pyramid.input_range = value_range(series);
    for (double v : series) {
        pyramid.input_abs_max = std::max(pyramid.input_abs_max, std::fabs(v));
    }

    constexpr std::size_t kMinOctaveLength = 4;
    TimeSeries base = gaussian_smooth(series, base_sigma);
    for (int t = 0; t < num_octaves; ++t) {
        if (base.size() < kMinOctaveLength) break;
        Octave octave;
        octave.smoothed.reserve(s + 2);
        octave.smoothed.push_back(base);
        for (int k = 1; k <= s + 1; ++k) {
            // One convolution from the octave base per level; the relative
            // scale follows sigma_total^2 = sigma_base^2 + sigma_rel^2.
            const double rel =
                base_sigma * std::sqrt(std::pow(pyramid.kappa, 2.0 * k) - 1.0);
            octave.smoothed.push_back(gaussian_smooth(base, rel));
        }
        octave.difference.reserve(s + 1);
        for (int k = 0; k <= s; ++k) {
            TimeSeries diff(base.size());
            for (std::size_t i = 0; i < base.size(); ++i) {
                diff[i] = octave.smoothed[k + 1][i] - octave.smoothed[k][i];
            }
            octave.difference.push_back(std::move(diff));
        }
        // The next octave starts where the scale doubled (level s).
        base = downsample(octave.smoothed[s]);
        pyramid.octaves.push_back(std::move(octave));
    }
    return pyramid;
}

std::vector<SalientPoint> detect_keypoints(const ScaleSpacePyramid& pyramid,
                                           double epsilon,
                                           double floor_factor) {
    if (!(epsilon >= 0.0) || epsilon >= 1.0) {
        throw std::invalid_argument("epsilon must lie in [0, 1)");
    }
    const double relax = 1.0 - epsilon;
    // The absolute term absorbs convolution rounding noise, which would
    // otherwise promote flat regions to extrema (a smoothed constant is only
    // constant up to ulps).
    const double floor =
        std::max(floor_factor * pyramid.input_range,
                 64.0 * std::numeric_limits<double>::epsilon() *
                     pyramid.input_abs_max);
    const double n_max = static_cast<double>(pyramid.input_length) - 1.0;

    std::vector<SalientPoint> points;
    for (std::size_t t = 0; t < pyramid.octaves.size(); ++t) {
        const auto& diffs = pyramid.octaves[t].difference;
        const double stride = std::pow(2.0, static_cast<double>(t));
        const int top = static_cast<int>(diffs.size()) - 1;
        for (int k = 1; k < top; ++k) {
            const auto& below = diffs[k - 1];
            const auto& level = diffs[k];
            const auto& above = diffs[k + 1];
            const std::size_t len = level.size();
            for (std::size_t i = 1; i + 1 < len; ++i) {
                const double v = level[i];
                if (!(std::fabs(v) > floor)) continue;

                // Positive cells must dominate as maxima, negative ones as
                // minima; on matching sign this is |v| >= (1-eps)*|neighbor|.
                const double neighbors[8] = {
                    level[i - 1], level[i + 1],  below[i - 1], below[i],
                    below[i + 1], above[i - 1],  above[i],     above[i + 1]};
                bool dominant = true;
                for (double nb : neighbors) {
                    if (v > 0.0 ? v < relax * nb : v > relax * nb) {
                        dominant = false;
                        break;
                    }
                }
                if (!dominant) continue;

                // Quadratic sub-sample refinement along time.
                double offset = 0.0;
                const double denom =
                    level[i - 1] - 2.0 * level[i] + level[i + 1];
                if (std::fabs(denom) > 1e-12) {
                    offset = 0.5 * (level[i - 1] - level[i + 1]) / denom;
                    offset = std::clamp(offset, -0.5, 0.5);
                }

                SalientPoint p;
                p.octave = static_cast<int>(t);
                p.level = k;
                p.dog_value = v;
                p.position = (static_cast<double>(i) + offset) * stride;
                p.sigma = pyramid.base_sigma * std::pow(pyramid.kappa, k) *
                          stride;
                p.scope_start = std::clamp(p.position - 3.0 * p.sigma, 0.0,
                                           n_max);
                p.scope_end = std::clamp(p.position + 3.0 * p.sigma, 0.0,
                                         n_max);
                points.push_back(p);
            }
        }
    }
    std::sort(points.begin(), points.end(),
              [](const SalientPoint& a, const SalientPoint& b) {
                  if (a.position != b.position) return a.position < b.position;
                  if (a.sigma != b.sigma) return a.sigma < b.sigma;
                  if (a.octave != b.octave) return a.octave < b.octave;
                  return a.level < b.level;
              });
    return points;
}

}  // namespace sdtw
