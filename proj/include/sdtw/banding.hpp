#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sdtw/matching.hpp"

namespace sdtw {

// Corresponding interval boundaries on two series: cuts_x and cuts_y have
// equal length, are strictly increasing, start at 0 and end at N resp. M.
// Interval k on X is [cuts_x[k], cuts_x[k+1]] and corresponds to interval k
// on Y.
struct IntervalPartition {
    std::vector<int> cuts_x;
    std::vector<int> cuts_y;

    int interval_count() const { return static_cast<int>(cuts_x.size()) - 1; }
    int n() const { return cuts_x.back(); }
    int m() const { return cuts_y.back(); }
};

// Per-row admissible column ranges of the N x M DTW grid.
// Valid masks satisfy: lo[i] <= hi[i]; lo and hi non-decreasing;
// lo[0] = 0 and hi[N-1] = M-1; lo[i+1] <= hi[i] + 1.
struct BandMask {
    int rows = 0;
    int cols = 0;
    std::vector<int> lo;
    std::vector<int> hi;

    bool contains(int i, int j) const { return j >= lo[i] && j <= hi[i]; }
    std::int64_t cell_count() const;
    bool is_valid() const;
    // True when every row of *this lies within the same row of other.
    bool subset_of(const BandMask& other) const;
};

BandMask full_band(int rows, int cols);

enum class BandMode { fc_fw, fc_aw, ac_fw, ac_aw, ac2_aw };

struct BandSpec {
    BandMode mode = BandMode::fc_fw;
    // Fixed-width modes: band width as a fraction of M. Fractions >= 1 give
    // the full grid.
    double width_fraction = 0.10;
    // Adaptive-width modes: minimum interval width as a fraction of M
    // (fc_aw / ac_aw; 0 disables).
    double width_lower_bound_fraction = 0.20;
    // ac2_aw: the width averages the 2r+1 intervals around the current one.
    int neighbor_radius = 1;

    bool adaptive_core() const {
        return mode == BandMode::ac_fw || mode == BandMode::ac_aw ||
               mode == BandMode::ac2_aw;
    }
    bool adaptive_width() const {
        return mode == BandMode::fc_aw || mode == BandMode::ac_aw ||
               mode == BandMode::ac2_aw;
    }
};

// Turns committed boundary lists into an integer partition of [0,N] x [0,M].
// Boundaries are rounded to the nearest sample; a boundary whose rounded
// position collides with the previous cut on either series is dropped on
// both series, keeping the cut counts equal. An empty alignment yields the
// single interval [0,N] <-> [0,M].
IntervalPartition derive_partition(const ConsistentAlignment& alignment,
                                   int n, int m);

// Proportional mapping of row i into column space through the partition's
// interval containing i. Degenerate Y intervals map to their start;
// degenerate X intervals map to the Y interval midpoint. Result clamped to
// [0, M-1].
int candidate_point(int i, const IntervalPartition& partition);

// Builds the band for one of the five modes. Fixed cores follow the
// stretched diagonal; adaptive cores follow candidate_point. Fixed widths
// use half-width floor(w/2) with w = width_fraction * M (the full grid when
// width_fraction >= 1); adaptive widths use half-width ceil(w/2) with w the
// width of the Y interval containing the core (mean of the 2r+1 surrounding
// intervals for ac2_aw), floored at width_lower_bound_fraction * M for
// fc_aw/ac_aw. The result is closed with bridge_gaps.
BandMask build_band(const IntervalPartition& partition, const BandSpec& spec,
                    int n, int m);

// Minimal enlargement of per-row intervals into a valid band: admit both
// corners, make lo/hi non-decreasing, and widen rows so a monotone path can
// always advance (the narrower row grows toward the gap; ties widen the
// later row). Idempotent; the output contains the input.
BandMask bridge_gaps(BandMask band);

// Rows and columns swapped; requires a valid band.
BandMask transpose_band(const BandMask& band);

// Per-row hull of band_xy and the transpose of band_yx, re-closed with
// bridge_gaps. band_yx must have swapped dimensions.
BandMask symmetrize(const BandMask& band_xy, const BandMask& band_yx);

// Debug text format, one row per line: "i lo hi".
std::string band_to_text(const BandMask& band);

}  // namespace sdtw
