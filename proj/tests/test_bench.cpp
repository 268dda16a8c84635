#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "sdtw/bench.hpp"

using namespace sdtw;

namespace {

struct TempPath {
    std::string path;
    explicit TempPath(const std::string& stem) {
        path = (std::filesystem::temp_directory_path() /
                (stem + "_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter++)))
                   .string();
    }
    ~TempPath() { std::filesystem::remove_all(path); }
    static inline int counter = 0;
};

Dataset small_synthetic(int classes = 3, int per_class = 4, int length = 64,
                        std::uint64_t seed = 17) {
    SyntheticSpec spec;
    spec.classes = classes;
    spec.per_class = per_class;
    spec.length = length;
    spec.warp_strength = 0.25;
    spec.noise = 0.02;
    spec.seed = seed;
    return generate_synthetic(spec);
}

}  // namespace

TEST_CASE("approach strings parse to band specs") {
    const auto full = parse_approach("dtw", 0.2, 1);
    CHECK(full.is_full);

    const auto fc = parse_approach("fc.fw@10%", 0.2, 1);
    CHECK(!fc.is_full);
    CHECK(fc.spec.mode == BandMode::fc_fw);
    CHECK(fc.spec.width_fraction == doctest::Approx(0.10));

    const auto ac = parse_approach("ac.fw@0.06", 0.2, 1);
    CHECK(ac.spec.mode == BandMode::ac_fw);
    CHECK(ac.spec.width_fraction == doctest::Approx(0.06));

    const auto aw = parse_approach("ac.aw", 0.35, 2);
    CHECK(aw.spec.mode == BandMode::ac_aw);
    CHECK(aw.spec.width_lower_bound_fraction == doctest::Approx(0.35));

    const auto ac2 = parse_approach("ac2.aw", 0.2, 2);
    CHECK(ac2.spec.mode == BandMode::ac2_aw);
    CHECK(ac2.spec.neighbor_radius == 2);

    CHECK_THROWS_AS(parse_approach("fc.fw", 0.2, 1), std::invalid_argument);
    CHECK_THROWS_AS(parse_approach("ac.aw@10%", 0.2, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_approach("banana", 0.2, 1), std::invalid_argument);
    CHECK_THROWS_AS(parse_approach("fc.fw@0%", 0.2, 1), std::invalid_argument);
    CHECK_THROWS_AS(parse_approach("fc.fw@150%", 0.2, 1),
                    std::invalid_argument);
}

TEST_CASE("feature cache round-trips bitwise") {
    const auto dataset = small_synthetic();
    FeatureParams params;
    params.num_octaves = 3;
    const auto feats = extract_dataset_features(dataset, params);

    TempPath cache("sdtw_cache");
    save_feature_cache(cache.path, feats, params);
    const auto loaded = load_feature_cache(cache.path, params);
    REQUIRE(loaded.has_value());
    REQUIRE(loaded->size() == feats.size());
    for (std::size_t s = 0; s < feats.size(); ++s) {
        REQUIRE((*loaded)[s].size() == feats[s].size());
        for (std::size_t i = 0; i < feats[s].size(); ++i) {
            const auto& a = feats[s][i];
            const auto& b = (*loaded)[s][i];
            CHECK(a.point.position == b.point.position);
            CHECK(a.point.sigma == b.point.sigma);
            CHECK(a.point.octave == b.point.octave);
            CHECK(a.point.level == b.point.level);
            CHECK(a.point.dog_value == b.point.dog_value);
            CHECK(a.point.scope_start == b.point.scope_start);
            CHECK(a.point.scope_end == b.point.scope_end);
            CHECK(a.amplitude == b.amplitude);
            CHECK(a.series_id == b.series_id);
            CHECK(a.descriptor == b.descriptor);
        }
    }
}

TEST_CASE("stale cache fingerprints invalidate") {
    const auto dataset = small_synthetic(2, 2, 64);
    FeatureParams params;
    params.num_octaves = 2;
    const auto feats = extract_dataset_features(dataset, params);
    TempPath cache("sdtw_cache_stale");
    save_feature_cache(cache.path, feats, params);

    FeatureParams other = params;
    other.epsilon = 0.5;
    CHECK(!load_feature_cache(cache.path, other).has_value());

    // extract_dataset_features falls back to re-extraction and rewrites.
    std::ostringstream log;
    const auto rebuilt =
        extract_dataset_features(dataset, other, cache.path, &log);
    CHECK(log.str().find("rebuilding") != std::string::npos);
    CHECK(load_feature_cache(cache.path, other).has_value());
    CHECK(rebuilt.size() == dataset.size());
}

TEST_CASE("config files parse and reject unknown keys") {
    TempPath dir("sdtw_cfg");
    std::filesystem::create_directories(dir.path);
    const auto cfg_path = dir.path + "/bench.cfg";
    {
        std::ofstream cfg(cfg_path);
        cfg << "# comment\n"
            << "dataset=synthetic:classes=2,per_class=3,length=64\n"
            << "approaches=dtw, fc.fw@10%, ac.aw\n"
            << "k=1,3\n"
            << "octaves=3\n"
            << "levels=2\n"
            << "epsilon=0.0096\n"
            << "bins=64\n"
            << "tau_a_fraction=0.25\n"
            << "tau_s=4\n"
            << "tau_d=1.5\n"
            << "width_lower_bound=0.2\n"
            << "neighbor_radius=1\n"
            << "symmetric=false\n"
            << "delta=absolute\n"
            << "seed=5\n"
            << "outdir=\n";
    }
    const auto config = parse_config(cfg_path);
    CHECK(config.approaches ==
          std::vector<std::string>{"dtw", "fc.fw@10%", "ac.aw"});
    CHECK(config.k_values == std::vector<int>{1, 3});
    CHECK(config.features.num_octaves == 3);
    CHECK(config.seed == 5);
    CHECK(config.outdir.empty());

    {
        std::ofstream cfg(cfg_path, std::ios::app);
        cfg << "mystery_knob=1\n";
    }
    CHECK_THROWS_AS(parse_config(cfg_path), data_error);
}

TEST_CASE("dtw-only benchmark reports zero error and zero timegain") {
    BenchConfig config;
    config.dataset = "synthetic:classes=2,per_class=3,length=48";
    config.approaches = {"dtw"};
    config.k_values = {1};
    config.seed = 23;
    config.outdir.clear();
    const auto report = run_benchmark(config);
    REQUIRE(report.rows.size() == 1);
    CHECK(report.rows[0].err_dist == 0.0);
    CHECK(report.rows[0].timegain == 0.0);
    CHECK(report.rows[0].acc_ret == 1.0);
    CHECK(report.rows[0].acc_cls == 1.0);
    CHECK(report.rows[0].match_ms == 0.0);
}

TEST_CASE("a 100% fixed band reproduces the dtw rows") {
    BenchConfig config;
    config.dataset = "synthetic:classes=2,per_class=3,length=48";
    config.approaches = {"dtw", "fc.fw@100%"};
    config.k_values = {2};
    config.seed = 29;
    config.outdir.clear();
    const auto report = run_benchmark(config);
    REQUIRE(report.rows.size() == 2);
    const auto& dtw_row = report.rows[0];
    const auto& full_row = report.rows[1];
    CHECK(full_row.err_dist == 0.0);
    CHECK(full_row.acc_ret == dtw_row.acc_ret);
    CHECK(full_row.acc_cls == dtw_row.acc_cls);
    CHECK(full_row.mean_cells_filled == dtw_row.mean_cells_filled);
}

TEST_CASE("constrained distances never undershoot in the report") {
    BenchConfig config;
    config.dataset = "synthetic:classes=2,per_class=4,length=80,warp=0.3";
    config.approaches = {"fc.fw@6%", "fc.aw", "ac.fw@10%", "ac.aw", "ac2.aw"};
    config.k_values = {1};
    config.features.num_octaves = 3;
    config.seed = 31;
    config.outdir.clear();
    const auto report = run_benchmark(config);
    for (const auto& row : report.rows) {
        CHECK(row.err_dist >= 0.0);
        CHECK(row.mean_cells_filled <= 80.0 * 80.0);
    }
}

TEST_CASE("mean filled cells grow with the fixed width") {
    BenchConfig config;
    config.dataset = "synthetic:classes=2,per_class=4,length=96";
    config.approaches = {"fc.fw@6%", "fc.fw@10%", "fc.fw@20%"};
    config.k_values = {1};
    config.seed = 47;
    config.outdir.clear();
    const auto report = run_benchmark(config);
    REQUIRE(report.rows.size() == 3);
    CHECK(report.rows[0].mean_cells_filled <= report.rows[1].mean_cells_filled);
    CHECK(report.rows[1].mean_cells_filled <= report.rows[2].mean_cells_filled);
    CHECK(report.rows[2].mean_cells_filled <= 96.0 * 96.0);
}

TEST_CASE("report CSV round-trips exactly") {
    BenchConfig config;
    config.dataset = "synthetic:classes=2,per_class=3,length=48";
    config.approaches = {"dtw", "ac.aw"};
    config.k_values = {1, 2};
    config.features.num_octaves = 2;
    config.seed = 37;
    config.outdir.clear();
    const auto report = run_benchmark(config);

    std::stringstream buffer;
    write_report_csv(report, buffer);
    const auto back = read_report_csv(buffer);
    REQUIRE(back.rows.size() == report.rows.size());
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const auto& a = report.rows[i];
        const auto& b = back.rows[i];
        CHECK(a.approach == b.approach);
        CHECK(a.k == b.k);
        CHECK(a.acc_ret == b.acc_ret);
        CHECK(a.err_dist == b.err_dist);
        CHECK(a.acc_cls == b.acc_cls);
        CHECK(a.timegain == b.timegain);
        CHECK(a.mean_cells_filled == b.mean_cells_filled);
        CHECK(a.match_ms == b.match_ms);
        CHECK(a.dp_ms == b.dp_ms);
    }
}

TEST_CASE("benchmark runs are deterministic apart from timings") {
    BenchConfig config;
    config.dataset = "synthetic:classes=2,per_class=3,length=64,warp=0.3";
    config.approaches = {"dtw", "fc.fw@10%", "ac.aw"};
    config.k_values = {1, 2};
    config.features.num_octaves = 3;
    config.seed = 41;
    config.outdir.clear();
    const auto a = run_benchmark(config);
    const auto b = run_benchmark(config);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].approach == b.rows[i].approach);
        CHECK(a.rows[i].k == b.rows[i].k);
        CHECK(a.rows[i].acc_ret == b.rows[i].acc_ret);
        CHECK(a.rows[i].err_dist == b.rows[i].err_dist);
        CHECK(a.rows[i].acc_cls == b.rows[i].acc_cls);
        CHECK(a.rows[i].mean_cells_filled == b.rows[i].mean_cells_filled);
    }
}

TEST_CASE("benchmark writes report and plot files") {
    TempPath outdir("sdtw_out");
    BenchConfig config;
    config.dataset = "synthetic:classes=2,per_class=3,length=48";
    config.approaches = {"dtw", "ac.aw"};
    config.k_values = {2};
    config.features.num_octaves = 2;
    config.seed = 43;
    config.outdir = outdir.path;
    run_benchmark(config);
    CHECK(std::filesystem::exists(outdir.path + "/report.csv"));
    CHECK(std::filesystem::exists(outdir.path + "/acc_vs_timegain_k2.tsv"));
    CHECK(std::filesystem::exists(outdir.path + "/err_dist_vs_timegain.tsv"));
    CHECK(std::filesystem::exists(outdir.path + "/time_decomposition.tsv"));

    std::ifstream csv(outdir.path + "/report.csv");
    const auto parsed = read_report_csv(csv);
    CHECK(parsed.rows.size() == 2);
}

TEST_CASE("bad synthetic specs and out-of-range k are rejected") {
    BenchConfig config;
    config.dataset = "synthetic:classes=2,per_class=2,length=48,zzz=1";
    config.approaches = {"dtw"};
    CHECK_THROWS_AS(load_bench_dataset(config), data_error);

    config.dataset = "synthetic:classes=2,per_class=2,length=48";
    config.k_values = {10};
    config.outdir.clear();
    CHECK_THROWS_AS(run_benchmark(config), std::invalid_argument);
}
