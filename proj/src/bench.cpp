#include "sdtw/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "sdtw/text.hpp"

namespace sdtw {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start)
        .count();
}

}  // namespace

Approach parse_approach(const std::string& text, double width_lower_bound,
                        int neighbor_radius) {
    Approach approach;
    approach.name = text;
    if (text == "dtw") {
        approach.is_full = true;
        return approach;
    }
    approach.is_full = false;

    std::string head = text;
    std::string width;
    if (const auto at = text.find('@'); at != std::string::npos) {
        head = text.substr(0, at);
        width = text.substr(at + 1);
    }

    BandSpec& spec = approach.spec;
    spec.width_lower_bound_fraction = width_lower_bound;
    spec.neighbor_radius = neighbor_radius;
    if (head == "fc.fw") {
        spec.mode = BandMode::fc_fw;
    } else if (head == "ac.fw") {
        spec.mode = BandMode::ac_fw;
    } else if (head == "fc.aw") {
        spec.mode = BandMode::fc_aw;
    } else if (head == "ac.aw") {
        spec.mode = BandMode::ac_aw;
    } else if (head == "ac2.aw") {
        spec.mode = BandMode::ac2_aw;
    } else {
        throw std::invalid_argument("unknown approach: " + text);
    }

    const bool fixed_width =
        spec.mode == BandMode::fc_fw || spec.mode == BandMode::ac_fw;
    if (fixed_width) {
        if (width.empty()) {
            throw std::invalid_argument("approach " + text +
                                        " needs a width, e.g. " + head +
                                        "@10%");
        }
        double fraction;
        if (width.back() == '%') {
            fraction = parse_double(width.substr(0, width.size() - 1)) / 100.0;
        } else {
            fraction = parse_double(width);
        }
        if (!(fraction > 0.0) || fraction > 1.0) {
            throw std::invalid_argument("width of " + text +
                                        " must lie in (0, 1]");
        }
        spec.width_fraction = fraction;
    } else if (!width.empty()) {
        throw std::invalid_argument("approach " + head +
                                    " does not take a width");
    }
    return approach;
}

namespace {

bool parse_bool(const std::string& value, const std::string& key) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw data_error("config key '" + key + "' wants a boolean, got '" +
                     value + "'");
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> items;
    for (const auto field : split_fields(value, ", ")) {
        items.emplace_back(field);
    }
    return items;
}

}  // namespace

BenchConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open config: " + path);

    BenchConfig config;
    bool saw_dataset = false;
    bool saw_approaches = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string_view::npos) {
            throw data_error(path + ":" + std::to_string(line_no) +
                             ": expected key=value");
        }
        const std::string key{trim(stripped.substr(0, eq))};
        const std::string value{trim(stripped.substr(eq + 1))};
        try {
            if (key == "dataset") {
                config.dataset = value;
                saw_dataset = true;
            } else if (key == "approaches") {
                config.approaches = split_list(value);
                saw_approaches = true;
            } else if (key == "k") {
                config.k_values.clear();
                for (const auto& item : split_list(value)) {
                    config.k_values.push_back(
                        static_cast<int>(parse_long(item)));
                }
            } else if (key == "octaves") {
                config.features.num_octaves =
                    static_cast<int>(parse_long(value));
            } else if (key == "levels") {
                config.features.levels = static_cast<int>(parse_long(value));
            } else if (key == "epsilon") {
                config.features.epsilon = parse_double(value);
            } else if (key == "bins") {
                config.features.descriptor_bins =
                    static_cast<int>(parse_long(value));
            } else if (key == "base_sigma") {
                config.features.base_sigma = parse_double(value);
            } else if (key == "magnitude_floor") {
                config.features.magnitude_floor = parse_double(value);
            } else if (key == "unit_norm") {
                config.features.unit_norm = parse_bool(value, key);
            } else if (key == "tau_a_fraction") {
                config.match.tau_a_fraction = parse_double(value);
            } else if (key == "tau_s") {
                config.match.tau_s = parse_double(value);
            } else if (key == "tau_d") {
                config.match.tau_d = parse_double(value);
            } else if (key == "width_lower_bound") {
                config.width_lower_bound = parse_double(value);
            } else if (key == "neighbor_radius") {
                config.neighbor_radius = static_cast<int>(parse_long(value));
            } else if (key == "symmetric") {
                config.symmetric = parse_bool(value, key);
            } else if (key == "delta") {
                config.delta = parse_element_distance(value);
            } else if (key == "seed") {
                config.seed = static_cast<std::uint64_t>(parse_long(value));
            } else if (key == "outdir") {
                config.outdir = value;
            } else if (key == "cache") {
                config.cache = value;
            } else {
                throw data_error(path + ":" + std::to_string(line_no) +
                                 ": unknown config key '" + key + "'");
            }
        } catch (const std::invalid_argument& e) {
            throw data_error(path + ":" + std::to_string(line_no) + ": " +
                             e.what());
        }
    }
    if (!saw_dataset) throw data_error(path + ": missing 'dataset'");
    if (!saw_approaches || config.approaches.empty()) {
        throw data_error(path + ": missing 'approaches'");
    }
    return config;
}

Dataset load_bench_dataset(const BenchConfig& config) {
    constexpr std::string_view kPrefix = "synthetic:";
    if (config.dataset.rfind(kPrefix, 0) != 0) {
        return load_ucr(config.dataset);
    }
    SyntheticSpec spec;
    spec.seed = config.seed;
    const std::string args = config.dataset.substr(kPrefix.size());
    for (const auto field : split_fields(args, ",")) {
        const auto eq = field.find('=');
        if (eq == std::string_view::npos) {
            throw data_error("bad synthetic spec fragment: " +
                             std::string(field));
        }
        const auto key = field.substr(0, eq);
        const auto value = field.substr(eq + 1);
        try {
            if (key == "classes") {
                spec.classes = static_cast<int>(parse_long(value));
            } else if (key == "per_class") {
                spec.per_class = static_cast<int>(parse_long(value));
            } else if (key == "length") {
                spec.length = static_cast<int>(parse_long(value));
            } else if (key == "warp") {
                spec.warp_strength = parse_double(value);
            } else if (key == "noise") {
                spec.noise = parse_double(value);
            } else {
                throw data_error("unknown synthetic key: " + std::string(key));
            }
        } catch (const std::invalid_argument& e) {
            throw data_error(std::string("bad synthetic spec: ") + e.what());
        }
    }
    return generate_synthetic(spec);
}

void save_feature_cache(const std::string& path,
                        const std::vector<std::vector<SalientFeature>>& feats,
                        const FeatureParams& params) {
    std::ofstream out(path);
    if (!out) throw data_error("cannot write feature cache: " + path);
    out << "sdtw-cache 1 " << std::hex << params_fingerprint(params)
        << std::dec << ' ' << feats.size() << '\n';
    for (std::size_t s = 0; s < feats.size(); ++s) {
        for (const auto& f : feats[s]) {
            out << s << ' ' << f.point.octave << ' ' << f.point.level << ' '
                << format_double(f.point.position) << ' '
                << format_double(f.point.sigma) << ' '
                << format_double(f.point.dog_value) << ' '
                << format_double(f.point.scope_start) << ' '
                << format_double(f.point.scope_end) << ' '
                << format_double(f.amplitude);
            for (double v : f.descriptor) out << ' ' << format_double(v);
            out << '\n';
        }
    }
    if (!out) throw data_error("write failed: " + path);
}

std::optional<std::vector<std::vector<SalientFeature>>> load_feature_cache(
    const std::string& path, const FeatureParams& params) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::string line;
    if (!std::getline(in, line)) return std::nullopt;
    {
        std::istringstream header(line);
        std::string magic;
        int version = 0;
        std::uint64_t fingerprint = 0;
        std::size_t count = 0;
        header >> magic >> version >> std::hex >> fingerprint >> std::dec >>
            count;
        if (!header || magic != "sdtw-cache" || version != 1 ||
            fingerprint != params_fingerprint(params)) {
            return std::nullopt;
        }
        std::vector<std::vector<SalientFeature>> feats(count);
        const std::size_t desc_len =
            static_cast<std::size_t>(params.descriptor_bins);
        while (std::getline(in, line)) {
            const auto fields = split_fields(trim(line), " \t");
            if (fields.empty()) continue;
            if (fields.size() != 9 + desc_len) return std::nullopt;
            try {
                SalientFeature f;
                const long id = parse_long(fields[0]);
                if (id < 0 || id >= static_cast<long>(count)) {
                    return std::nullopt;
                }
                f.series_id = static_cast<int>(id);
                f.point.octave = static_cast<int>(parse_long(fields[1]));
                f.point.level = static_cast<int>(parse_long(fields[2]));
                f.point.position = parse_double(fields[3]);
                f.point.sigma = parse_double(fields[4]);
                f.point.dog_value = parse_double(fields[5]);
                f.point.scope_start = parse_double(fields[6]);
                f.point.scope_end = parse_double(fields[7]);
                f.amplitude = parse_double(fields[8]);
                f.descriptor.reserve(desc_len);
                for (std::size_t d = 0; d < desc_len; ++d) {
                    f.descriptor.push_back(parse_double(fields[9 + d]));
                }
                feats[static_cast<std::size_t>(id)].push_back(std::move(f));
            } catch (const std::invalid_argument&) {
                return std::nullopt;
            }
        }
        return feats;
    }
}

std::vector<std::vector<SalientFeature>> extract_dataset_features(
    const Dataset& dataset, const FeatureParams& params,
    const std::string& cache_path, std::ostream* log) {
    if (!cache_path.empty()) {
        if (auto cached = load_feature_cache(cache_path, params)) {
            if (cached->size() == dataset.size()) return std::move(*cached);
            if (log) {
                *log << "feature cache " << cache_path
                     << " holds a different series count; rebuilding\n";
            }
        } else if (std::filesystem::exists(cache_path) && log) {
            *log << "feature cache " << cache_path
                 << " is stale or unreadable; rebuilding\n";
        }
    }
    std::vector<std::vector<SalientFeature>> feats(dataset.size());
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        feats[i] = extract_features(dataset.series[i], params);
        for (auto& f : feats[i]) f.series_id = static_cast<int>(i);
    }
    if (!cache_path.empty()) save_feature_cache(cache_path, feats, params);
    return feats;
}

namespace {

struct ApproachOutcome {
    Approach approach;
    DistanceMatrix dist;
    double match_ms_total = 0.0;
    double dp_ms_total = 0.0;
    double cells_total = 0.0;
    std::int64_t computed_pairs = 0;

    double mean_match_ms() const {
        return computed_pairs ? match_ms_total / computed_pairs : 0.0;
    }
    double mean_dp_ms() const {
        return computed_pairs ? dp_ms_total / computed_pairs : 0.0;
    }
    double mean_cells() const {
        return computed_pairs ? cells_total / computed_pairs : 0.0;
    }
};

}  // namespace

BenchReport run_benchmark(const BenchConfig& config, std::ostream* log) {
    const Dataset dataset = load_bench_dataset(config);
    const int n = static_cast<int>(dataset.size());
    if (n < 2) throw data_error("benchmark needs at least 2 series");

    std::vector<Approach> approaches;
    approaches.reserve(config.approaches.size());
    for (const auto& name : config.approaches) {
        approaches.push_back(parse_approach(name, config.width_lower_bound,
                                            config.neighbor_radius));
    }
    for (int k : config.k_values) {
        if (k < 1 || k > n - 1) {
            throw std::invalid_argument("k=" + std::to_string(k) +
                                        " is out of range for " +
                                        std::to_string(n) + " series");
        }
    }

    const bool needs_features = std::any_of(
        approaches.begin(), approaches.end(), [](const Approach& a) {
            return !a.is_full && a.spec.mode != BandMode::fc_fw;
        });
    std::vector<std::vector<SalientFeature>> feats(dataset.size());
    if (needs_features) {
        feats = extract_dataset_features(dataset, config.features,
                                         config.cache, log);
    }

    // Full-grid baseline, shared by every metric.
    ApproachOutcome baseline;
    baseline.dist.assign(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const auto start = Clock::now();
            const double d = full_dtw_distance(dataset.series[i],
                                               dataset.series[j],
                                               config.delta);
            baseline.dp_ms_total += ms_since(start);
            baseline.cells_total += static_cast<double>(
                dataset.series[i].size() * dataset.series[j].size());
            ++baseline.computed_pairs;
            baseline.dist[i][j] = d;
            baseline.dist[j][i] = d;
        }
    }
    if (log) *log << "full DTW baseline done (" << baseline.computed_pairs
                  << " pairs)\n";

    std::vector<ApproachOutcome> outcomes;
    outcomes.reserve(approaches.size());
    for (const auto& approach : approaches) {
        ApproachOutcome out;
        out.approach = approach;
        if (approach.is_full) {
            out.dist = baseline.dist;
            out.dp_ms_total = baseline.dp_ms_total;
            out.cells_total = baseline.cells_total;
            out.computed_pairs = baseline.computed_pairs;
            outcomes.push_back(std::move(out));
            continue;
        }
        out.dist.assign(n, std::vector<double>(n, 0.0));
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                if (config.symmetric && j < i) continue;
                const auto t0 = Clock::now();
                const BandMask band = build_sdtw_band(
                    dataset.series[i], dataset.series[j], feats[i], feats[j],
                    approach.spec, config.symmetric, config.match);
                const auto t1 = Clock::now();
                const double d = banded_dtw_distance(
                    dataset.series[i], dataset.series[j], band, config.delta);
                out.match_ms_total +=
                    std::chrono::duration<double, std::milli>(t1 - t0).count();
                out.dp_ms_total += ms_since(t1);
                out.cells_total += static_cast<double>(band.cell_count());
                ++out.computed_pairs;
                out.dist[i][j] = d;
                if (config.symmetric) out.dist[j][i] = d;
            }
        }
        if (log) *log << approach.name << " done (" << out.computed_pairs
                      << " pairs)\n";
        outcomes.push_back(std::move(out));
    }

    // Distance error over unordered distinct pairs (query = lower index).
    std::vector<double> full_flat;
    full_flat.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) full_flat.push_back(baseline.dist[i][j]);
    }

    BenchReport report;
    const double baseline_pair_ms =
        baseline.dp_ms_total / baseline.computed_pairs;
    for (const auto& out : outcomes) {
        std::vector<double> flat;
        flat.reserve(full_flat.size());
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) flat.push_back(out.dist[i][j]);
        }
        int excluded = 0;
        const double err = metric_err_dist(full_flat, flat, &excluded);
        if (excluded > 0 && log) {
            *log << out.approach.name << ": " << excluded
                 << " zero-distance pairs excluded from err_dist\n";
        }
        const double pair_ms = out.mean_match_ms() + out.mean_dp_ms();
        const double timegain =
            out.approach.is_full
                ? 0.0
                : metric_timegain(baseline_pair_ms, pair_ms);
        for (int k : config.k_values) {
            BenchRow row;
            row.approach = out.approach.name;
            row.k = k;
            row.acc_ret = metric_acc_ret(k, baseline.dist, out.dist);
            row.err_dist = err;
            row.acc_cls =
                metric_acc_cls(k, baseline.dist, out.dist, dataset.labels);
            row.timegain = timegain;
            row.mean_cells_filled = out.mean_cells();
            row.match_ms = out.mean_match_ms();
            row.dp_ms = out.mean_dp_ms();
            report.rows.push_back(std::move(row));
        }
    }

    if (!config.outdir.empty()) {
        namespace fs = std::filesystem;
        fs::create_directories(config.outdir);
        const fs::path outdir(config.outdir);
        {
            std::ofstream csv(outdir / "report.csv");
            if (!csv) throw data_error("cannot write report.csv");
            write_report_csv(report, csv);
        }
        for (int k : config.k_values) {
            std::ofstream plot(outdir /
                               ("acc_vs_timegain_k" + std::to_string(k) +
                                ".tsv"));
            plot << "approach\ttimegain\tacc_ret\tacc_cls\n";
            for (const auto& row : report.rows) {
                if (row.k != k) continue;
                plot << row.approach << '\t' << format_double(row.timegain)
                     << '\t' << format_double(row.acc_ret) << '\t'
                     << format_double(row.acc_cls) << '\n';
            }
        }
        {
            std::ofstream plot(outdir / "err_dist_vs_timegain.tsv");
            plot << "approach\ttimegain\terr_dist\n";
            const int first_k = config.k_values.front();
            for (const auto& row : report.rows) {
                if (row.k != first_k) continue;
                plot << row.approach << '\t' << format_double(row.timegain)
                     << '\t' << format_double(row.err_dist) << '\n';
            }
        }
        {
            std::ofstream plot(outdir / "time_decomposition.tsv");
            plot << "approach\tmatch_ms\tdp_ms\n";
            const int first_k = config.k_values.front();
            for (const auto& row : report.rows) {
                if (row.k != first_k) continue;
                plot << row.approach << '\t' << format_double(row.match_ms)
                     << '\t' << format_double(row.dp_ms) << '\n';
            }
        }
    }
    return report;
}

void write_report_csv(const BenchReport& report, std::ostream& out) {
    out << "approach,k,acc_ret,err_dist,acc_cls,timegain,mean_cells_filled,"
           "match_ms,dp_ms\n";
    for (const auto& row : report.rows) {
        out << row.approach << ',' << row.k << ','
            << format_double(row.acc_ret) << ',' << format_double(row.err_dist)
            << ',' << format_double(row.acc_cls) << ','
            << format_double(row.timegain) << ','
            << format_double(row.mean_cells_filled) << ','
            << format_double(row.match_ms) << ',' << format_double(row.dp_ms)
            << '\n';
    }
}

BenchReport read_report_csv(std::istream& in) {
    BenchReport report;
    std::string line;
    if (!std::getline(in, line)) throw data_error("empty report");
    while (std::getline(in, line)) {
        const auto stripped = trim(line);
        if (stripped.empty()) continue;
        const auto fields = split_fields(stripped, ",");
        if (fields.size() != 9) throw data_error("malformed report row");
        BenchRow row;
        row.approach = std::string(fields[0]);
        row.k = static_cast<int>(parse_long(fields[1]));
        row.acc_ret = parse_double(fields[2]);
        row.err_dist = parse_double(fields[3]);
        row.acc_cls = parse_double(fields[4]);
        row.timegain = parse_double(fields[5]);
        row.mean_cells_filled = parse_double(fields[6]);
        row.match_ms = parse_double(fields[7]);
        row.dp_ms = parse_double(fields[8]);
        report.rows.push_back(std::move(row));
    }
    return report;
}

}  // namespace sdtw
