#include "sdtw/dtw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sdtw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Shared fill/backtrack over band-shaped storage. The full grid is a band
// with lo = 0, hi = M-1, so both entry points produce bit-identical results
// on identical search spaces (same operations in the same order, diagonal
// preferred on backtrack ties, then vertical, then horizontal).
WarpResult banded_fill(const TimeSeries& x, const TimeSeries& y,
                       const BandMask& band, ElementDistance delta) {
    const int n = band.rows;
    const int m = band.cols;

    std::vector<std::size_t> offset(n + 1, 0);
    for (int i = 0; i < n; ++i) {
        offset[i + 1] = offset[i] +
                        static_cast<std::size_t>(band.hi[i] - band.lo[i] + 1);
    }
    std::vector<double> cost(offset[n], kInf);
    const auto at = [&](int i, int j) -> double {
        if (i < 0 || j < 0 || !band.contains(i, j)) return kInf;
        return cost[offset[i] + static_cast<std::size_t>(j - band.lo[i])];
    };

    for (int i = 0; i < n; ++i) {
        for (int j = band.lo[i]; j <= band.hi[i]; ++j) {
            const double d = element_delta(delta, x[i], y[j]);
            double value;
            if (i == 0 && j == 0) {
                value = d;
            } else {
                double best = at(i - 1, j - 1);
                const double vert = at(i - 1, j);
                if (vert < best) best = vert;
                const double horz = at(i, j - 1);
                if (horz < best) best = horz;
                value = d + best;
            }
            cost[offset[i] + static_cast<std::size_t>(j - band.lo[i])] = value;
        }
    }

    WarpResult result;
    result.cells_filled = static_cast<std::int64_t>(cost.size());
    result.distance = at(n - 1, m - 1);

    int i = n - 1;
    int j = m - 1;
    result.path.emplace_back(i, j);
    while (i > 0 || j > 0) {
        const double diag = at(i - 1, j - 1);
        const double vert = at(i - 1, j);
        const double horz = at(i, j - 1);
        double best = diag;
        int di = -1, dj = -1;
        if (vert < best) {
            best = vert;
            di = -1;
            dj = 0;
        }
        if (horz < best) {
            di = 0;
            dj = -1;
        }
        i += di;
        j += dj;
        result.path.emplace_back(i, j);
    }
    std::reverse(result.path.begin(), result.path.end());
    return result;
}

// Distance-only fill with two rolling rows over the band extents.
double banded_fill_distance(const TimeSeries& x, const TimeSeries& y,
                            const BandMask& band, ElementDistance delta) {
    const int n = band.rows;
    const int m = band.cols;
    std::vector<double> prev;
    std::vector<double> curr;
    int prev_lo = 0;

    for (int i = 0; i < n; ++i) {
        const int lo = band.lo[i];
        const int hi = band.hi[i];
        curr.assign(static_cast<std::size_t>(hi - lo + 1), kInf);
        const auto prev_at = [&](int j) -> double {
            if (i == 0 || j < prev_lo ||
                j > prev_lo + static_cast<int>(prev.size()) - 1) {
                return kInf;
            }
            return prev[static_cast<std::size_t>(j - prev_lo)];
        };
        for (int j = lo; j <= hi; ++j) {
            const double d = element_delta(delta, x[i], y[j]);
            double value;
            if (i == 0 && j == 0) {
                value = d;
            } else {
                double best = prev_at(j - 1);
                const double vert = prev_at(j);
                if (vert < best) best = vert;
                const double horz =
                    j > lo ? curr[static_cast<std::size_t>(j - 1 - lo)] : kInf;
                if (horz < best) best = horz;
                value = d + best;
            }
            curr[static_cast<std::size_t>(j - lo)] = value;
        }
        prev.swap(curr);
        prev_lo = lo;
    }
    return prev[static_cast<std::size_t>(m - 1 - prev_lo)];
}

void check_inputs(const TimeSeries& x, const TimeSeries& y) {
    validate_series(x);
    validate_series(y);
}

void check_band(const TimeSeries& x, const TimeSeries& y,
                const BandMask& band) {
    if (band.rows != static_cast<int>(x.size()) ||
        band.cols != static_cast<int>(y.size())) {
        throw std::invalid_argument("band dimensions do not match the series");
    }
    if (!band.is_valid()) {
        throw std::invalid_argument(
            "band violates its invariants; bridge gaps first");
    }
}

}  // namespace

WarpResult full_dtw(const TimeSeries& x, const TimeSeries& y,
                    ElementDistance delta) {
    check_inputs(x, y);
    return banded_fill(x, y,
                       full_band(static_cast<int>(x.size()),
                                 static_cast<int>(y.size())),
                       delta);
}

WarpResult banded_dtw(const TimeSeries& x, const TimeSeries& y,
                      const BandMask& band, ElementDistance delta) {
    check_inputs(x, y);
    check_band(x, y, band);
    return banded_fill(x, y, band, delta);
}

double full_dtw_distance(const TimeSeries& x, const TimeSeries& y,
                         ElementDistance delta) {
    check_inputs(x, y);
    return banded_fill_distance(
        x, y,
        full_band(static_cast<int>(x.size()), static_cast<int>(y.size())),
        delta);
}

double banded_dtw_distance(const TimeSeries& x, const TimeSeries& y,
                           const BandMask& band, ElementDistance delta) {
    check_inputs(x, y);
    check_band(x, y, band);
    return banded_fill_distance(x, y, band, delta);
}

namespace {

BandMask one_directional_band(const TimeSeries& x, const TimeSeries& y,
                              const std::vector<SalientFeature>& feats_x,
                              const std::vector<SalientFeature>& feats_y,
                              const BandSpec& spec, const MatchParams& match) {
    const int n = static_cast<int>(x.size());
    const int m = static_cast<int>(y.size());

    if (spec.mode == BandMode::fc_fw) {
        // Fixed core and width never consult the alignment.
        ConsistentAlignment empty;
        return build_band(derive_partition(empty, n, m), spec, n, m);
    }

    const double range = value_range(x);
    const double tau_a =
        std::max(match.tau_a_fraction * range,
                 std::numeric_limits<double>::min());
    auto pairs = find_dominant_pairs(feats_x, feats_y, tau_a, match.tau_s,
                                     match.tau_d);
    score_pairs(pairs);
    const ConsistentAlignment alignment = prune_inconsistent(std::move(pairs));
    return build_band(derive_partition(alignment, n, m), spec, n, m);
}

}  // namespace

BandMask build_sdtw_band(const TimeSeries& x, const TimeSeries& y,
                         const std::vector<SalientFeature>& feats_x,
                         const std::vector<SalientFeature>& feats_y,
                         const BandSpec& spec, bool symmetric,
                         const MatchParams& match) {
    check_inputs(x, y);
    BandMask band = one_directional_band(x, y, feats_x, feats_y, spec, match);
    if (!symmetric) return band;
    const BandMask swapped =
        one_directional_band(y, x, feats_y, feats_x, spec, match);
    return symmetrize(band, swapped);
}

WarpResult sdtw_distance(const TimeSeries& x, const TimeSeries& y,
                         const std::vector<SalientFeature>& feats_x,
                         const std::vector<SalientFeature>& feats_y,
                         const BandSpec& spec, bool symmetric,
                         ElementDistance delta, const MatchParams& match) {
    const BandMask band =
        build_sdtw_band(x, y, feats_x, feats_y, spec, symmetric, match);
    return banded_dtw(x, y, band, delta);
}

}  // namespace sdtw
