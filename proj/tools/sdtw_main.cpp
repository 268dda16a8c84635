// Command-line front end: feature extraction, pairwise distances, kNN,
// benchmark runs, band inspection and synthetic dataset generation.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sdtw/bench.hpp"

namespace {

struct CommonOpts {
    sdtw::FeatureParams features;
    sdtw::MatchParams match;
    double width_lower_bound = 0.20;
    int neighbor_radius = 1;
    std::string delta = "absolute";
    bool symmetric = false;
};

void add_feature_flags(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--octaves", opts.features.num_octaves,
                    "pyramid octaves (0 = auto from series length)");
    cmd->add_option("--levels", opts.features.levels, "scale levels per octave");
    cmd->add_option("--epsilon", opts.features.epsilon,
                    "keypoint relaxation factor");
    cmd->add_option("--bins", opts.features.descriptor_bins,
                    "descriptor length (multiple of 4)");
    cmd->add_option("--base-sigma", opts.features.base_sigma,
                    "scale-space prior smoothing");
    cmd->add_option("--magnitude-floor", opts.features.magnitude_floor,
                    "keypoint magnitude floor (fraction of value range)");
    cmd->add_flag("--no-unit-norm",
                  [&opts](std::int64_t) { opts.features.unit_norm = false; },
                  "keep raw descriptor magnitudes");
}

void add_match_flags(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--tau-a-fraction", opts.match.tau_a_fraction,
                    "amplitude gate as a fraction of the query value range");
    cmd->add_option("--tau-s", opts.match.tau_s, "max matched scale ratio");
    cmd->add_option("--tau-d", opts.match.tau_d, "descriptor distance ratio gate");
    cmd->add_option("--width-lower-bound", opts.width_lower_bound,
                    "adaptive width floor (fraction of M)");
    cmd->add_option("--neighbor-radius", opts.neighbor_radius,
                    "interval averaging radius for ac2.aw");
    cmd->add_option("--delta", opts.delta, "element distance: absolute|squared");
    cmd->add_flag("--symmetric", opts.symmetric,
                  "combine with the role-swapped band");
}

void warn_if_truncated(const sdtw::Dataset& dataset,
                       const sdtw::FeatureParams& params) {
    if (dataset.series.empty()) return;
    const auto& first = dataset.series.front();
    const int octaves = params.num_octaves > 0
                            ? params.num_octaves
                            : sdtw::default_octaves(first.size());
    const auto pyramid =
        sdtw::build_pyramid(first, octaves, params.levels, params.base_sigma);
    if (pyramid.truncated()) {
        std::cerr << "warning: octave count truncated to "
                  << pyramid.octaves.size() << " (deeper octaves would fall "
                  << "below 4 samples)\n";
    }
}

sdtw::BandMask band_for(const sdtw::Dataset& dataset,
                        const std::vector<std::vector<sdtw::SalientFeature>>&
                            feats,
                        int i, int j, const sdtw::Approach& approach,
                        const CommonOpts& opts) {
    if (approach.is_full) {
        return sdtw::full_band(static_cast<int>(dataset.series[i].size()),
                               static_cast<int>(dataset.series[j].size()));
    }
    return sdtw::build_sdtw_band(dataset.series[i], dataset.series[j],
                                 feats[i], feats[j], approach.spec,
                                 opts.symmetric, opts.match);
}

void check_index(const sdtw::Dataset& dataset, int idx) {
    if (idx < 0 || idx >= static_cast<int>(dataset.size())) {
        throw std::invalid_argument("series index " + std::to_string(idx) +
                                    " out of range (dataset holds " +
                                    std::to_string(dataset.size()) + ")");
    }
}

std::vector<std::vector<sdtw::SalientFeature>> features_if_needed(
    const sdtw::Dataset& dataset, const sdtw::Approach& approach,
    const CommonOpts& opts) {
    std::vector<std::vector<sdtw::SalientFeature>> feats(dataset.size());
    if (!approach.is_full && approach.spec.mode != sdtw::BandMode::fc_fw) {
        feats = sdtw::extract_dataset_features(dataset, opts.features);
    }
    return feats;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Feature-guided banded DTW toolkit"};
    app.require_subcommand(1);

    CommonOpts opts;

    // extract
    auto* extract = app.add_subcommand(
        "extract", "Extract salient features from every series of a dataset");
    std::string extract_dataset;
    std::string extract_cache;
    extract->add_option("dataset", extract_dataset, "dataset file")->required();
    extract->add_option("--cache", extract_cache, "feature cache file");
    add_feature_flags(extract, opts);

    // dist
    auto* dist = app.add_subcommand(
        "dist", "Distance between two series of a dataset");
    std::string dist_dataset;
    int dist_i = 0, dist_j = 0;
    std::string dist_approach = "dtw";
    dist->add_option("dataset", dist_dataset, "dataset file")->required();
    dist->add_option("i", dist_i, "first series index")->required();
    dist->add_option("j", dist_j, "second series index")->required();
    dist->add_option("--approach", dist_approach,
                     "dtw | fc.fw@W | ac.fw@W | fc.aw | ac.aw | ac2.aw");
    add_feature_flags(dist, opts);
    add_match_flags(dist, opts);

    // knn
    auto* knn = app.add_subcommand(
        "knn", "k-nearest-neighbour label sets for every series");
    std::string knn_dataset;
    int knn_k = 1;
    std::string knn_approach = "dtw";
    knn->add_option("dataset", knn_dataset, "dataset file")->required();
    knn->add_option("-k", knn_k, "neighbour count")->required();
    knn->add_option("--approach", knn_approach, "distance approach");
    add_feature_flags(knn, opts);
    add_match_flags(knn, opts);

    // bench
    auto* bench = app.add_subcommand("bench", "Run the benchmark harness");
    std::string bench_config;
    bench->add_option("--config", bench_config, "key=value config file")
        ->required();

    // band-dump
    auto* band_dump = app.add_subcommand(
        "band-dump", "Print the band of a pair as 'i lo hi' lines");
    std::string bd_dataset;
    int bd_i = 0, bd_j = 0;
    std::string bd_approach = "ac.aw";
    std::string bd_out;
    band_dump->add_option("dataset", bd_dataset, "dataset file")->required();
    band_dump->add_option("i", bd_i, "first series index")->required();
    band_dump->add_option("j", bd_j, "second series index")->required();
    band_dump->add_option("--approach", bd_approach, "distance approach");
    band_dump->add_option("-o,--output", bd_out, "write to a file");
    add_feature_flags(band_dump, opts);
    add_match_flags(band_dump, opts);

    // synth
    auto* synth = app.add_subcommand(
        "synth", "Generate a synthetic labeled dataset");
    sdtw::SyntheticSpec synth_spec;
    std::string synth_out;
    synth->add_option("--classes", synth_spec.classes, "class count");
    synth->add_option("--per-class", synth_spec.per_class,
                      "instances per class");
    synth->add_option("--length", synth_spec.length, "series length");
    synth->add_option("--warp", synth_spec.warp_strength,
                      "time-warp strength in [0,1)");
    synth->add_option("--noise", synth_spec.noise, "white noise std");
    synth->add_option("--seed", synth_spec.seed, "random seed");
    synth->add_option("-o,--output", synth_out, "output file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (*extract) {
            const auto dataset = sdtw::load_ucr(extract_dataset);
            warn_if_truncated(dataset, opts.features);
            const auto feats = sdtw::extract_dataset_features(
                dataset, opts.features, extract_cache, &std::cerr);
            std::size_t total = 0;
            for (const auto& f : feats) total += f.size();
            for (std::size_t i = 0; i < feats.size(); ++i) {
                std::cout << i << ' ' << feats[i].size() << '\n';
            }
            std::cout << "total " << total << " mean "
                      << (dataset.size()
                              ? static_cast<double>(total) / dataset.size()
                              : 0.0)
                      << '\n';
            if (!extract_cache.empty()) {
                std::cerr << "features cached to " << extract_cache << '\n';
            }
        } else if (*dist) {
            const auto dataset = sdtw::load_ucr(dist_dataset);
            check_index(dataset, dist_i);
            check_index(dataset, dist_j);
            const auto approach = sdtw::parse_approach(
                dist_approach, opts.width_lower_bound, opts.neighbor_radius);
            const auto delta = sdtw::parse_element_distance(opts.delta);
            const auto feats = features_if_needed(dataset, approach, opts);
            const auto band =
                band_for(dataset, feats, dist_i, dist_j, approach, opts);
            const auto result = sdtw::banded_dtw(
                dataset.series[dist_i], dataset.series[dist_j], band, delta);
            std::cout << "approach " << approach.name << " distance "
                      << result.distance << " cells_filled "
                      << result.cells_filled << " path_length "
                      << result.path.size() << '\n';
        } else if (*knn) {
            const auto dataset = sdtw::load_ucr(knn_dataset);
            const auto approach = sdtw::parse_approach(
                knn_approach, opts.width_lower_bound, opts.neighbor_radius);
            const auto delta = sdtw::parse_element_distance(opts.delta);
            const auto feats = features_if_needed(dataset, approach, opts);
            const int n = static_cast<int>(dataset.size());
            if (knn_k < 1 || knn_k > n - 1) {
                throw std::invalid_argument("k out of range");
            }
            sdtw::DistanceMatrix matrix(n, std::vector<double>(n, 0.0));
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    if (i == j) continue;
                    if (approach.is_full && j < i) {
                        matrix[i][j] = matrix[j][i];
                        continue;
                    }
                    const auto band =
                        band_for(dataset, feats, i, j, approach, opts);
                    matrix[i][j] = sdtw::banded_dtw_distance(
                        dataset.series[i], dataset.series[j], band, delta);
                }
            }
            int hits = 0;
            for (int q = 0; q < n; ++q) {
                const auto ranked = sdtw::rank_neighbors(matrix[q], q);
                const auto labels =
                    sdtw::knn_label_set(ranked, dataset.labels, knn_k);
                std::cout << q << " true " << dataset.labels[q] << " predicted";
                for (int label : labels) std::cout << ' ' << label;
                std::cout << '\n';
                for (int label : labels) {
                    if (label == dataset.labels[q]) {
                        ++hits;
                        break;
                    }
                }
            }
            std::cout << "label-set contains true label: " << hits << '/' << n
                      << '\n';
        } else if (*bench) {
            const auto config = sdtw::parse_config(bench_config);
            const auto report = sdtw::run_benchmark(config, &std::cerr);
            sdtw::write_report_csv(report, std::cout);
            if (!config.outdir.empty()) {
                std::cerr << "report written to " << config.outdir << '\n';
            }
        } else if (*band_dump) {
            const auto dataset = sdtw::load_ucr(bd_dataset);
            check_index(dataset, bd_i);
            check_index(dataset, bd_j);
            const auto approach = sdtw::parse_approach(
                bd_approach, opts.width_lower_bound, opts.neighbor_radius);
            const auto feats = features_if_needed(dataset, approach, opts);
            const auto band =
                band_for(dataset, feats, bd_i, bd_j, approach, opts);
            const auto text = sdtw::band_to_text(band);
            if (bd_out.empty()) {
                std::cout << text;
            } else {
                std::ofstream out(bd_out);
                if (!out) throw sdtw::data_error("cannot write " + bd_out);
                out << text;
            }
        } else if (*synth) {
            const auto dataset = sdtw::generate_synthetic(synth_spec);
            sdtw::save_ucr(dataset, synth_out);
            std::cout << "wrote " << dataset.size() << " series of length "
                      << synth_spec.length << " to " << synth_out << '\n';
        }
    } catch (const sdtw::internal_error& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    } catch (const std::logic_error& e) {
        // invalid_argument and friends signal caller/usage mistakes
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const sdtw::data_error& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
