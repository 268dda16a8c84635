#include "sdtw/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

#include "sdtw/text.hpp"

namespace sdtw {

Dataset load_ucr(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open dataset: " + path);

    Dataset dataset;
    dataset.name = path;
    const auto slash = path.find_last_of('/');
    if (slash != std::string::npos) dataset.name = path.substr(slash + 1);

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto fields = split_fields(trim(line), ", \t");
        if (fields.empty()) continue;
        if (fields.size() < 2) {
            throw data_error(path + ":" + std::to_string(line_no) +
                             ": need a label and at least one value");
        }
        double label_value;
        try {
            label_value = parse_double(fields[0]);
        } catch (const std::invalid_argument&) {
            throw data_error(path + ":" + std::to_string(line_no) +
                             ": unparsable label");
        }
        if (std::fabs(label_value - std::nearbyint(label_value)) > 1e-9) {
            throw data_error(path + ":" + std::to_string(line_no) +
                             ": label is not an integer");
        }
        TimeSeries series;
        series.reserve(fields.size() - 1);
        for (std::size_t f = 1; f < fields.size(); ++f) {
            double v;
            try {
                v = parse_double(fields[f]);
            } catch (const std::invalid_argument&) {
                throw data_error(path + ":" + std::to_string(line_no) +
                                 ": unparsable value");
            }
            if (!std::isfinite(v)) {
                throw data_error(path + ":" + std::to_string(line_no) +
                                 ": non-finite value");
            }
            series.push_back(v);
        }
        dataset.labels.push_back(static_cast<int>(std::lround(label_value)));
        dataset.series.push_back(std::move(series));
    }
    if (dataset.series.empty()) {
        throw data_error(path + ": dataset holds no series");
    }
    dataset.uniform_length =
        std::all_of(dataset.series.begin(), dataset.series.end(),
                    [&](const TimeSeries& s) {
                        return s.size() == dataset.series.front().size();
                    });
    return dataset;
}

void save_ucr(const Dataset& dataset, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw data_error("cannot write dataset: " + path);
    for (std::size_t i = 0; i < dataset.series.size(); ++i) {
        out << dataset.labels[i];
        for (double v : dataset.series[i]) out << ' ' << format_double(v);
        out << '\n';
    }
    if (!out) throw data_error("write failed: " + path);
}

namespace {

struct Bump {
    double center;
    double width;
    double amplitude;
};

// Smooth random field in [-1, 1] from a handful of sine terms.
std::vector<double> smooth_field(int length, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> amp(0.3, 1.0);
    std::uniform_int_distribution<int> waves(2, 4);
    const int terms = waves(rng);
    std::vector<double> field(length, 0.0);
    double peak = 0.0;
    for (int t = 0; t < terms; ++t) {
        const double freq = (t + 1) * M_PI / length;
        const double ph = phase(rng);
        const double a = amp(rng);
        for (int i = 0; i < length; ++i) field[i] += a * std::sin(freq * i + ph);
    }
    for (double v : field) peak = std::max(peak, std::fabs(v));
    if (peak > 0.0) {
        for (double& v : field) v /= peak;
    }
    return field;
}

double interpolate(const std::vector<double>& values, double pos) {
    const int n = static_cast<int>(values.size());
    if (pos <= 0.0) return values.front();
    if (pos >= n - 1) return values.back();
    const int i = static_cast<int>(pos);
    const double frac = pos - i;
    return values[i] * (1.0 - frac) + values[i + 1] * frac;
}

}  // namespace

Dataset generate_synthetic(const SyntheticSpec& spec) {
    if (spec.classes < 1 || spec.per_class < 1 || spec.length < 8) {
        throw std::invalid_argument("synthetic dataset too small");
    }
    if (spec.warp_strength < 0.0 || spec.warp_strength >= 1.0) {
        throw std::invalid_argument("warp_strength must lie in [0, 1)");
    }
    if (spec.noise < 0.0) throw std::invalid_argument("noise must be >= 0");

    std::mt19937_64 rng(spec.seed);
    const int length = spec.length;

    Dataset dataset;
    dataset.name = "synthetic";
    std::uniform_int_distribution<int> bump_count(2, 4);
    std::uniform_real_distribution<double> center_dist(0.1 * length,
                                                       0.9 * length);
    std::uniform_real_distribution<double> width_dist(length / 64.0,
                                                      length / 10.0);
    std::uniform_real_distribution<double> amp_dist(0.5, 1.5);
    std::bernoulli_distribution sign_dist(0.5);
    std::normal_distribution<double> gauss(0.0, 1.0);

    for (int c = 0; c < spec.classes; ++c) {
        std::vector<Bump> bumps(bump_count(rng));
        for (auto& b : bumps) {
            b.center = center_dist(rng);
            b.width = width_dist(rng);
            b.amplitude = amp_dist(rng) * (sign_dist(rng) ? 1.0 : -1.0);
        }
        std::vector<double> base(length, 0.0);
        for (int i = 0; i < length; ++i) {
            for (const auto& b : bumps) {
                const double d = (i - b.center) / b.width;
                base[i] += b.amplitude * std::exp(-0.5 * d * d);
            }
        }

        for (int inst = 0; inst < spec.per_class; ++inst) {
            TimeSeries series(length);
            if (spec.warp_strength > 0.0) {
                // Monotone warp: integrate a slope field in
                // [1 - w, 1 + w], then rescale onto [0, length-1].
                const auto field = smooth_field(length, rng);
                std::vector<double> warped(length);
                double acc = 0.0;
                for (int i = 0; i < length; ++i) {
                    warped[i] = acc;
                    acc += 1.0 + spec.warp_strength * field[i];
                }
                const double scale =
                    (length - 1.0) / std::max(warped.back(), 1e-12);
                for (int i = 0; i < length; ++i) {
                    series[i] = interpolate(base, warped[i] * scale);
                }
            } else {
                std::copy(base.begin(), base.end(), series.begin());
            }
            if (spec.noise > 0.0) {
                for (double& v : series) v += spec.noise * gauss(rng);
            }
            dataset.labels.push_back(c);
            dataset.series.push_back(std::move(series));
        }
    }
    dataset.uniform_length = true;
    return dataset;
}

}  // namespace sdtw
