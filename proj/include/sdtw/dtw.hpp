#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sdtw/banding.hpp"
#include "sdtw/series.hpp"

namespace sdtw {

// Outcome of a warp-path search. The path runs from (0,0) to (N-1,M-1) in
// steps of (1,0), (0,1) or (1,1); distance is the sum of element distances
// over the path cells; cells_filled counts the grid cells the dynamic
// program evaluated.
struct WarpResult {
    double distance = 0.0;
    std::vector<std::pair<int, int>> path;
    std::int64_t cells_filled = 0;
};

// Optimal DTW over the complete grid. Backtracking prefers the diagonal
// predecessor, then vertical, then horizontal on cost ties.
WarpResult full_dtw(const TimeSeries& x, const TimeSeries& y,
                    ElementDistance delta = ElementDistance::absolute);

// Same recurrence restricted to the admissible cells of a valid band; cells
// outside the band act as infinite-cost predecessors. Throws
// std::invalid_argument when the band is invalid or mis-sized (bridge gaps
// first).
WarpResult banded_dtw(const TimeSeries& x, const TimeSeries& y,
                      const BandMask& band,
                      ElementDistance delta = ElementDistance::absolute);

// Distance-only variants using two rolling rows (no path storage).
double full_dtw_distance(const TimeSeries& x, const TimeSeries& y,
                         ElementDistance delta = ElementDistance::absolute);
double banded_dtw_distance(const TimeSeries& x, const TimeSeries& y,
                           const BandMask& band,
                           ElementDistance delta = ElementDistance::absolute);

// Band construction pipeline: match features of X against Y, prune
// inconsistent pairs, derive the interval partition and build the band.
// Fixed-core/fixed-width bands skip matching entirely. With `symmetric` the
// role-swapped band is built as well and the two are combined.
BandMask build_sdtw_band(const TimeSeries& x, const TimeSeries& y,
                         const std::vector<SalientFeature>& feats_x,
                         const std::vector<SalientFeature>& feats_y,
                         const BandSpec& spec, bool symmetric,
                         const MatchParams& match = {});

// Feature-constrained DTW: build_sdtw_band followed by banded_dtw.
WarpResult sdtw_distance(const TimeSeries& x, const TimeSeries& y,
                         const std::vector<SalientFeature>& feats_x,
                         const std::vector<SalientFeature>& feats_y,
                         const BandSpec& spec, bool symmetric,
                         ElementDistance delta = ElementDistance::absolute,
                         const MatchParams& match = {});

}  // namespace sdtw
