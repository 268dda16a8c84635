// Acceptance suite: one pass/fail line per criterion, non-zero exit when
// any criterion fails. Criteria marked optional are skipped with a notice
// when their external data is absent.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "sdtw/bench.hpp"
#include "sdtw/text.hpp"

using namespace sdtw;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    bool skipped = false;
    std::string detail;

    void fail(const std::string& why) {
        pass = false;
        if (!detail.empty()) detail += "; ";
        detail += why;
    }
    void note(const std::string& what) {
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// Grid sizes <= 12 per side, capped so plain path enumeration stays fast.
std::pair<int, int> oracle_grid_size(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> first(1, 12);
    const int n = first(rng);
    std::uniform_int_distribution<int> second(1, std::min(12, 18 - n));
    return {n, second(rng)};
}

// ---------------------------------------------------------------- 1 ----
Outcome criterion_full_oracle() {
    Outcome out;
    const auto start = Clock::now();
    std::mt19937_64 rng(20240101);
    const int trials = 220;
    for (int t = 0; t < trials; ++t) {
        const auto [n, m] = oracle_grid_size(rng);
        const auto x = oracle::random_series(rng, n);
        const auto y = oracle::random_series(rng, m);
        const auto delta = t % 2 == 0 ? ElementDistance::absolute
                                      : ElementDistance::squared;
        const auto got = full_dtw(x, y, delta).distance;
        const auto want = oracle::enumerate_dtw(x, y, delta);
        if (std::fabs(got - want) > 1e-9) {
            out.fail("pair " + std::to_string(t) + ": " +
                     std::to_string(got) + " vs " + std::to_string(want));
            break;
        }
    }
    const double elapsed = seconds_since(start);
    if (elapsed >= 10.0) out.fail("runtime " + std::to_string(elapsed) + "s");
    out.note(std::to_string(trials) + " pairs in " +
             std::to_string(elapsed).substr(0, 4) + "s");
    return out;
}

// ---------------------------------------------------------------- 2 ----
Outcome criterion_banded_oracle() {
    Outcome out;
    std::mt19937_64 rng(20240202);
    const int trials = 220;
    for (int t = 0; t < trials; ++t) {
        const auto [n, m] = oracle_grid_size(rng);
        const auto x = oracle::random_series(rng, n);
        const auto y = oracle::random_series(rng, m);
        const auto band = oracle::random_band(rng, n, m);
        const auto delta = t % 2 == 0 ? ElementDistance::absolute
                                      : ElementDistance::squared;
        const auto got = banded_dtw(x, y, band, delta).distance;
        const auto want = oracle::enumerate_dtw(x, y, delta, &band);
        if (std::fabs(got - want) > 1e-9) {
            out.fail("instance " + std::to_string(t));
            break;
        }
    }
    out.note(std::to_string(trials) + " banded instances");
    return out;
}

constexpr const char* kSyntheticSpec =
    "synthetic:classes=3,per_class=20,length=256,warp=0.4,noise=0.05";
constexpr std::uint64_t kSyntheticSeed = 1;

FeatureParams acceptance_features() {
    FeatureParams params;
    params.num_octaves = 4;  // scale ladder covering the synthetic bumps
    return params;
}

const std::vector<std::string>& constrained_roster() {
    static const std::vector<std::string> roster{
        "fc.fw@6%",  "fc.fw@10%", "fc.fw@20%", "fc.aw",  "ac.fw@6%",
        "ac.fw@10%", "ac.fw@20%", "ac.aw",     "ac2.aw"};
    return roster;
}

// ---------------------------------------------------------------- 3 ----
Outcome criterion_subset_law() {
    Outcome out;
    BenchConfig config;
    config.dataset = kSyntheticSpec;
    config.seed = kSyntheticSeed;
    const auto dataset = load_bench_dataset(config);
    const auto params = acceptance_features();
    const auto feats = extract_dataset_features(dataset, params);
    const int n = static_cast<int>(dataset.size());

    std::vector<std::vector<double>> full(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            full[i][j] = full_dtw_distance(dataset.series[i],
                                           dataset.series[j]);
        }
    }

    long violations = 0;
    long checked = 0;
    for (const auto& name : constrained_roster()) {
        const auto approach = parse_approach(name, 0.20, 1);
        for (int i = 0; i < n && violations == 0; ++i) {
            for (int j = i + 1; j < n; ++j) {
                const auto band = build_sdtw_band(
                    dataset.series[i], dataset.series[j], feats[i], feats[j],
                    approach.spec, false);
                const double d = banded_dtw_distance(
                    dataset.series[i], dataset.series[j], band);
                ++checked;
                if (d < full[i][j]) {
                    ++violations;
                    out.fail(name + " pair (" + std::to_string(i) + "," +
                             std::to_string(j) + ")");
                    break;
                }
            }
        }
    }
    out.note(std::to_string(checked) + " approach-pairs, " +
             std::to_string(violations) + " violations");
    return out;
}

// ---------------------------------------------------------------- 4 ----
Outcome criterion_full_band_identity() {
    Outcome out;
    std::mt19937_64 rng(20240404);
    std::uniform_int_distribution<int> len(30, 120);
    const auto approach = parse_approach("fc.fw@100%", 0.20, 1);
    for (int t = 0; t < 50; ++t) {
        const int n = len(rng);
        const int m = len(rng);
        const auto x = oracle::random_series(rng, n);
        const auto y = oracle::random_series(rng, m);
        const auto band =
            build_sdtw_band(x, y, {}, {}, approach.spec, false);
        const auto banded = banded_dtw(x, y, band);
        const auto full = full_dtw(x, y);
        if (banded.distance != full.distance || banded.path != full.path ||
            banded.cells_filled != static_cast<std::int64_t>(n) * m) {
            out.fail("pair " + std::to_string(t));
            break;
        }
    }
    out.note("50 pairs, exact distance/path/cells");
    return out;
}

// ---------------------------------------------------------------- 5 ----
Outcome criterion_bump_detection() {
    Outcome out;
    const int length = 512;
    const std::vector<double> centers{96.0, 256.0, 416.0};
    const std::vector<double> widths{2.0, 4.0, 8.0};
    TimeSeries series(length, 0.0);
    for (std::size_t b = 0; b < centers.size(); ++b) {
        for (int i = 0; i < length; ++i) {
            const double d = (i - centers[b]) / widths[b];
            series[i] += std::exp(-0.5 * d * d);
        }
    }
    const auto detect_run = [&] {
        const auto pyramid =
            build_pyramid(series, default_octaves(length), 2);
        return detect_keypoints(pyramid, 0.0096);
    };
    const auto points = detect_run();
    if (points.size() < 3) out.fail("fewer than 3 keypoints");

    std::vector<double> sigmas;
    for (std::size_t b = 0; b < centers.size(); ++b) {
        const SalientPoint* best = nullptr;
        for (const auto& p : points) {
            if (std::fabs(p.position - centers[b]) > 2.0) continue;
            if (!best || std::fabs(p.dog_value) > std::fabs(best->dog_value)) {
                best = &p;
            }
        }
        if (!best) {
            out.fail("no keypoint within 2 samples of center " +
                     std::to_string(centers[b]));
            continue;
        }
        sigmas.push_back(best->sigma);
    }
    if (sigmas.size() == 3 && !(sigmas[0] <= sigmas[1] && sigmas[1] <= sigmas[2])) {
        out.fail("detected scales not monotone in bump width");
    }

    const auto again = detect_run();
    bool same = again.size() == points.size();
    for (std::size_t i = 0; same && i < points.size(); ++i) {
        same = again[i].position == points[i].position &&
               again[i].sigma == points[i].sigma;
    }
    if (!same) out.fail("detection not deterministic");
    if (sigmas.size() == 3) {
        std::ostringstream s;
        s << "scales " << sigmas[0] << " / " << sigmas[1] << " / "
          << sigmas[2];
        out.note(s.str());
    }
    return out;
}

// ---------------------------------------------------------------- 6 ----
Outcome criterion_shift_equivariance() {
    Outcome out;
    std::mt19937_64 rng(20240606);
    const int shift = 10;
    const int length = 220;
    const double margin = 40.0;
    int total_interior = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const auto base = oracle::bumpy_series(rng, length + shift, 10);
        const TimeSeries x(base.begin(), base.begin() + length);
        const TimeSeries y(base.begin() + shift, base.end());
        // Two octaves: the shift stays sample-exact after downsampling while
        // the wider bumps become detectable too.
        const auto px = detect_keypoints(build_pyramid(x, 2, 2), 0.0096);
        const auto py = detect_keypoints(build_pyramid(y, 2, 2), 0.0096);
        for (const auto& p : px) {
            if (p.position < margin || p.position > length - margin) continue;
            ++total_interior;
            bool matched = false;
            for (const auto& q : py) {
                if (std::fabs(q.position - (p.position - shift)) <= 1.0) {
                    matched = true;
                    break;
                }
            }
            if (!matched) {
                out.fail("trial " + std::to_string(trial) + " keypoint at " +
                         std::to_string(p.position) + " not matched");
                break;
            }
        }
        if (!out.pass) break;
    }
    if (total_interior == 0) out.fail("no interior keypoints generated");
    out.note(std::to_string(total_interior) + " interior keypoints checked");
    return out;
}

// ---------------------------------------------------------------- 7 ----
Outcome criterion_pruning_consistency() {
    Outcome out;
    std::mt19937_64 rng(20240707);
    std::uniform_real_distribution<double> pos(0.0, 100.0);
    std::uniform_real_distribution<double> len(1.0, 25.0);
    std::uniform_real_distribution<double> score(0.0, 1.0);
    std::uniform_int_distribution<int> count(2, 30);
    std::bernoulli_distribution snap(0.5);

    long violations = 0;
    long committed_total = 0;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<MatchPair> pairs(count(rng));
        const bool integral = snap(rng);
        for (auto& p : pairs) {
            double s1 = pos(rng), s2 = pos(rng);
            double l1 = len(rng), l2 = len(rng);
            if (integral) {
                s1 = std::round(s1);
                s2 = std::round(s2);
                l1 = std::round(l1);
                l2 = std::round(l2);
            }
            p.f1 = oracle::make_feature(s1, s1 + l1);
            p.f2 = oracle::make_feature(s2, s2 + l2);
            p.mu_comb = score(rng);
        }
        const auto kept = prune_inconsistent(pairs).pairs;
        committed_total += static_cast<long>(kept.size());
        for (std::size_t a = 0; a < kept.size(); ++a) {
            for (std::size_t b = a + 1; b < kept.size(); ++b) {
                const auto& pa = kept[a];
                const auto& pb = kept[b];
                const bool cross_starts =
                    (pa.f1.point.scope_start < pb.f1.point.scope_start &&
                     pa.f2.point.scope_start > pb.f2.point.scope_start) ||
                    (pa.f1.point.scope_start > pb.f1.point.scope_start &&
                     pa.f2.point.scope_start < pb.f2.point.scope_start);
                const bool cross_ends =
                    (pa.f1.point.scope_end < pb.f1.point.scope_end &&
                     pa.f2.point.scope_end > pb.f2.point.scope_end) ||
                    (pa.f1.point.scope_end > pb.f1.point.scope_end &&
                     pa.f2.point.scope_end < pb.f2.point.scope_end);
                if (cross_starts || cross_ends) ++violations;
            }
        }
    }
    if (violations > 0) {
        out.fail(std::to_string(violations) + " crossings");
    }
    out.note("100 match sets, " + std::to_string(committed_total) +
             " committed pairs, 0 crossings expected");
    return out;
}

// ---------------------------------------------------------------- 8 ----
Outcome criterion_trend() {
    Outcome out;
    const auto start = Clock::now();

    BenchConfig config;
    config.dataset = kSyntheticSpec;
    config.seed = kSyntheticSeed;
    config.approaches = {"dtw", "fc.fw@6%", "ac.fw@10%", "ac.aw"};
    config.k_values = {5, 10};
    config.features = acceptance_features();
    config.outdir.clear();
    const auto report = run_benchmark(config);

    const auto row = [&](const std::string& name, int k) -> const BenchRow& {
        for (const auto& r : report.rows) {
            if (r.approach == name && r.k == k) return r;
        }
        throw internal_error("missing report row " + name);
    };

    const double ret_acaw = row("ac.aw", 10).acc_ret;
    const double ret_acfw = row("ac.fw@10%", 10).acc_ret;
    const double ret_fcfw = row("fc.fw@6%", 10).acc_ret;
    if (!(ret_acaw >= ret_acfw && ret_acfw >= ret_fcfw)) {
        out.fail("acc_ret(10) ordering: ac.aw=" + std::to_string(ret_acaw) +
                 " ac.fw@10%=" + std::to_string(ret_acfw) + " fc.fw@6%=" +
                 std::to_string(ret_fcfw));
    }
    const double cls_acaw = row("ac.aw", 5).acc_cls;
    const double cls_acfw = row("ac.fw@10%", 5).acc_cls;
    const double cls_fcfw = row("fc.fw@6%", 5).acc_cls;
    if (!(cls_acaw >= cls_acfw && cls_acfw >= cls_fcfw)) {
        out.fail("acc_cls(5) ordering: ac.aw=" + std::to_string(cls_acaw) +
                 " ac.fw@10%=" + std::to_string(cls_acfw) + " fc.fw@6%=" +
                 std::to_string(cls_fcfw));
    }
    const double err_acaw = row("ac.aw", 5).err_dist;
    const double err_fcfw = row("fc.fw@6%", 5).err_dist;
    if (!(err_acaw <= err_fcfw)) {
        out.fail("err_dist: ac.aw=" + std::to_string(err_acaw) +
                 " > fc.fw@6%=" + std::to_string(err_fcfw));
    }

    const double elapsed = seconds_since(start);
    if (elapsed >= 120.0) {
        out.fail("runtime " + std::to_string(elapsed) + "s");
    }
    std::ostringstream s;
    s.precision(3);
    s << "acc_ret(10) " << ret_acaw << ">=" << ret_acfw << ">=" << ret_fcfw
      << ", acc_cls(5) " << cls_acaw << ">=" << cls_acfw << ">=" << cls_fcfw
      << ", err " << err_acaw << "<=" << err_fcfw << ", " << elapsed << "s";
    out.note(s.str());
    return out;
}

// ---------------------------------------------------------------- 9 ----
Outcome criterion_time_accounting() {
    Outcome out;
    SyntheticSpec spec;
    spec.classes = 2;
    spec.per_class = 4;
    spec.length = 1024;
    spec.warp_strength = 0.3;
    spec.noise = 0.03;
    spec.seed = 9;
    const auto dataset = generate_synthetic(spec);
    const auto params = acceptance_features();
    const auto feats = extract_dataset_features(dataset, params);
    const int n = static_cast<int>(dataset.size());

    double full_ms = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const auto t0 = Clock::now();
            full_dtw_distance(dataset.series[i], dataset.series[j]);
            full_ms += seconds_since(t0) * 1e3;
        }
    }

    std::ostringstream summary;
    for (const auto& name : constrained_roster()) {
        const auto approach = parse_approach(name, 0.20, 1);
        double match_ms = 0.0;
        double dp_ms = 0.0;
        bool cells_ok = true;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                const auto t0 = Clock::now();
                const auto band = build_sdtw_band(
                    dataset.series[i], dataset.series[j], feats[i], feats[j],
                    approach.spec, false);
                const auto t1 = Clock::now();
                banded_dtw_distance(dataset.series[i], dataset.series[j],
                                    band);
                match_ms += std::chrono::duration<double, std::milli>(
                                t1 - t0)
                                .count();
                dp_ms += seconds_since(t1) * 1e3;
                if (band.cell_count() >=
                    static_cast<std::int64_t>(spec.length) * spec.length) {
                    cells_ok = false;
                }
            }
        }
        if (!cells_ok) out.fail(name + ": a pair filled the whole grid");
        const double gain = (full_ms - (match_ms + dp_ms)) / full_ms;
        if (!(gain > 0.0)) {
            out.fail(name + ": timegain " + std::to_string(gain));
        }
        const bool adaptive =
            approach.spec.adaptive_core() || approach.spec.adaptive_width();
        if (adaptive && !(match_ms < 0.5 * (match_ms + dp_ms))) {
            out.fail(name + ": matching " + std::to_string(match_ms) +
                     "ms dominates dp " + std::to_string(dp_ms) + "ms");
        }
    }
    out.note("8 series of length 1024, full mean " +
             std::to_string(full_ms / 28.0) + " ms/pair");
    return out;
}

// --------------------------------------------------------------- 10 ----
struct UcrExpectation {
    const char* name;
    std::size_t length;
    std::size_t count;
    int classes;
    double mean_features;
};

Outcome criterion_ucr_tables() {
    Outcome out;
    const char* env = std::getenv("SDTW_UCR_DIR");
    const std::string dir = env ? env : "data/ucr";
    const UcrExpectation expectations[] = {
        {"Gun", 150, 50, 2, 445.5},
        {"Trace", 275, 100, 4, 308.7},
        {"50Words", 270, 450, 50, 311.3},
    };
    bool any_present = false;
    for (const auto& exp : expectations) {
        const std::string path = dir + "/" + exp.name;
        if (!std::filesystem::exists(path)) continue;
        any_present = true;
        const auto dataset = load_ucr(path);
        if (dataset.size() != exp.count ||
            dataset.series.front().size() != exp.length) {
            out.fail(std::string(exp.name) + ": size/length mismatch");
            continue;
        }
        std::vector<int> labels = dataset.labels;
        std::sort(labels.begin(), labels.end());
        labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
        if (static_cast<int>(labels.size()) != exp.classes) {
            out.fail(std::string(exp.name) + ": class count mismatch");
            continue;
        }
        const auto feats = extract_dataset_features(dataset, FeatureParams{});
        double total = 0.0;
        for (const auto& f : feats) total += static_cast<double>(f.size());
        const double mean = total / static_cast<double>(dataset.size());
        if (mean < 0.7 * exp.mean_features || mean > 1.3 * exp.mean_features) {
            out.fail(std::string(exp.name) + ": mean feature count " +
                     std::to_string(mean) + " outside +/-30% of " +
                     std::to_string(exp.mean_features));
        }
    }
    if (!any_present) {
        out.skipped = true;
        out.note("no UCR files under " + dir +
                 " (set SDTW_UCR_DIR); skipped");
    }
    return out;
}

// --------------------------------------------------------------- 11 ----
Outcome criterion_benchmark_determinism() {
    Outcome out;
    BenchConfig config;
    config.dataset = "synthetic:classes=3,per_class=5,length=128,warp=0.35,"
                     "noise=0.04";
    config.seed = 11;
    config.approaches = {"dtw"};
    for (const auto& name : constrained_roster()) {
        config.approaches.push_back(name);
    }
    config.k_values = {3, 5};
    config.features = acceptance_features();
    config.outdir.clear();

    const auto a = run_benchmark(config);
    const auto b = run_benchmark(config);
    std::ostringstream csv_a, csv_b;
    write_report_csv(a, csv_a);
    write_report_csv(b, csv_b);

    // Compare CSVs column-wise, ignoring the timing-derived fields
    // (timegain, match_ms, dp_ms).
    std::istringstream in_a(csv_a.str()), in_b(csv_b.str());
    std::string line_a, line_b;
    int line_no = 0;
    while (true) {
        const bool got_a = static_cast<bool>(std::getline(in_a, line_a));
        const bool got_b = static_cast<bool>(std::getline(in_b, line_b));
        if (got_a != got_b) {
            out.fail("row counts differ");
            break;
        }
        if (!got_a) break;
        ++line_no;
        if (line_no == 1) {
            if (line_a != line_b) out.fail("headers differ");
            continue;
        }
        const auto fa = split_fields(line_a, ",");
        const auto fb = split_fields(line_b, ",");
        if (fa.size() != fb.size()) {
            out.fail("column counts differ on row " + std::to_string(line_no));
            break;
        }
        // columns: 0 approach, 1 k, 2 acc_ret, 3 err_dist, 4 acc_cls,
        // 5 timegain, 6 mean_cells_filled, 7 match_ms, 8 dp_ms
        for (std::size_t c = 0; c < fa.size(); ++c) {
            if (c == 5 || c == 7 || c == 8) continue;
            if (fa[c] != fb[c]) {
                out.fail("row " + std::to_string(line_no) + " column " +
                         std::to_string(c) + ": " + std::string(fa[c]) +
                         " vs " + std::string(fb[c]));
            }
        }
        if (!out.pass) break;
    }
    out.note(std::to_string(a.rows.size()) + " report rows compared");
    return out;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* title;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "full DTW equals exhaustive path enumeration",
         criterion_full_oracle},
        {2, "banded DTW equals in-band enumeration", criterion_banded_oracle},
        {3, "constrained distances never undercut full DTW",
         criterion_subset_law},
        {4, "fc.fw@100% reproduces full DTW exactly",
         criterion_full_band_identity},
        {5, "bumps of growing width detected at growing scale",
         criterion_bump_detection},
        {6, "keypoints shift with the series (10 +/- 1)",
         criterion_shift_equivariance},
        {7, "committed match pairs never cross", criterion_pruning_consistency},
        {8, "adaptive approaches beat narrow fixed bands on the synthetic set",
         criterion_trend},
        {9, "banded runs fill fewer cells and save time",
         criterion_time_accounting},
        {10, "UCR tables reproduce (optional external data)",
         criterion_ucr_tables},
        {11, "benchmark CSV deterministic apart from timings",
         criterion_benchmark_determinism},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        Outcome outcome;
        try {
            outcome = criterion.run();
        } catch (const std::exception& e) {
            outcome.fail(std::string("exception: ") + e.what());
        }
        const char* verdict =
            outcome.skipped ? "SKIP" : (outcome.pass ? "PASS" : "FAIL");
        if (!outcome.pass) ++failures;
        std::cout << verdict << " " << criterion.id << " " << criterion.title;
        if (!outcome.detail.empty()) std::cout << " [" << outcome.detail << "]";
        std::cout << std::endl;
    }
    if (failures > 0) {
        std::cout << failures << " criteria failed" << std::endl;
        return 1;
    }
    return 0;
}
