#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sdtw/banding.hpp"
#include "sdtw/dataset.hpp"
#include "sdtw/descriptor.hpp"
#include "sdtw/dtw.hpp"
#include "sdtw/metrics.hpp"

namespace sdtw {

// One entry of the benchmark roster: full DTW or a banded variant.
struct Approach {
    std::string name;     // e.g. "dtw", "fc.fw@10%", "ac.aw"
    bool is_full = true;  // full-grid DTW when set; `spec` is unused then
    BandSpec spec;
};

// Parses "dtw", "fc.fw@W", "ac.fw@W", "fc.aw", "ac.aw", "ac2.aw" where W is
// a percentage ("10%") or a fraction ("0.1"). Fixed-width modes require the
// @W suffix; adaptive-width modes reject it. Throws std::invalid_argument.
Approach parse_approach(const std::string& text, double width_lower_bound,
                        int neighbor_radius);

struct BenchConfig {
    std::string dataset;  // path, or "synthetic:classes=..,per_class=..,
                          // length=..,warp=..,noise=.." seeded from `seed`
    std::vector<std::string> approaches;
    std::vector<int> k_values{5, 10};
    FeatureParams features;
    MatchParams match;
    double width_lower_bound = 0.20;
    int neighbor_radius = 1;
    bool symmetric = false;
    ElementDistance delta = ElementDistance::absolute;
    std::uint64_t seed = 1;
    std::string outdir = "bench_out";
    std::string cache;  // optional feature-cache path
};

// Flat key=value config file; '#' starts a comment. Unknown keys are errors.
BenchConfig parse_config(const std::string& path);

// One report row per (approach, k).
struct BenchRow {
    std::string approach;
    int k = 0;
    double acc_ret = 0.0;
    double err_dist = 0.0;
    double acc_cls = 0.0;
    double timegain = 0.0;
    double mean_cells_filled = 0.0;
    double match_ms = 0.0;
    double dp_ms = 0.0;
};

struct BenchReport {
    std::vector<BenchRow> rows;
};

void write_report_csv(const BenchReport& report, std::ostream& out);
BenchReport read_report_csv(std::istream& in);

// Runs the full benchmark: loads the dataset, extracts (or loads cached)
// features once per series, computes all-pairs distances per approach with
// matching and DP times accounted separately, and derives every metric
// against the full-DTW baseline. When outdir is non-empty the report CSV and
// tab-separated plot data files are written there. `log`, when non-null,
// receives progress and warning lines.
BenchReport run_benchmark(const BenchConfig& config,
                          std::ostream* log = nullptr);

// Versioned line-oriented feature cache. The header carries the parameter
// fingerprint and series count; loading with a stale fingerprint returns
// std::nullopt so callers can rebuild.
void save_feature_cache(const std::string& path,
                        const std::vector<std::vector<SalientFeature>>& feats,
                        const FeatureParams& params);
std::optional<std::vector<std::vector<SalientFeature>>> load_feature_cache(
    const std::string& path, const FeatureParams& params);

// Extracts features for every series of the dataset (series_id = index),
// consulting the cache file when given.
std::vector<std::vector<SalientFeature>> extract_dataset_features(
    const Dataset& dataset, const FeatureParams& params,
    const std::string& cache_path = "", std::ostream* log = nullptr);

// Resolves the dataset field of a config: plain path -> load_ucr, or a
// "synthetic:" spec (seeded from config.seed).
Dataset load_bench_dataset(const BenchConfig& config);

}  // namespace sdtw
