#include "sdtw/banding.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sdtw {

std::int64_t BandMask::cell_count() const {
    std::int64_t total = 0;
    for (int i = 0; i < rows; ++i) total += hi[i] - lo[i] + 1;
    return total;
}

bool BandMask::is_valid() const {
    if (rows <= 0 || cols <= 0) return false;
    if (static_cast<int>(lo.size()) != rows ||
        static_cast<int>(hi.size()) != rows) {
        return false;
    }
    if (lo[0] != 0 || hi[rows - 1] != cols - 1) return false;
    for (int i = 0; i < rows; ++i) {
        if (lo[i] > hi[i] || lo[i] < 0 || hi[i] >= cols) return false;
        if (i > 0 && (lo[i] < lo[i - 1] || hi[i] < hi[i - 1])) return false;
        if (i > 0 && lo[i] > hi[i - 1] + 1) return false;
    }
    return true;
}

bool BandMask::subset_of(const BandMask& other) const {
    if (rows != other.rows || cols != other.cols) return false;
    for (int i = 0; i < rows; ++i) {
        if (lo[i] < other.lo[i] || hi[i] > other.hi[i]) return false;
    }
    return true;
}

BandMask full_band(int rows, int cols) {
    BandMask band;
    band.rows = rows;
    band.cols = cols;
    band.lo.assign(rows, 0);
    band.hi.assign(rows, cols - 1);
    return band;
}

IntervalPartition derive_partition(const ConsistentAlignment& alignment,
                                   int n, int m) {
    if (n < 1 || m < 1) throw std::invalid_argument("empty grid");
    IntervalPartition part;
    part.cuts_x.push_back(0);
    part.cuts_y.push_back(0);
    // Boundary lists are rank-aligned, so the k-th entries correspond.
    const std::size_t count = alignment.boundary_list_1.size();
    for (std::size_t k = 0; k < count; ++k) {
        const int cx = static_cast<int>(
            round_half_up(alignment.boundary_list_1[k]));
        const int cy = static_cast<int>(
            round_half_up(alignment.boundary_list_2[k]));
        // A collision on either series drops the cut on both, keeping the
        // cut counts equal.
        if (cx <= part.cuts_x.back() || cy <= part.cuts_y.back()) continue;
        if (cx >= n || cy >= m) continue;
        part.cuts_x.push_back(cx);
        part.cuts_y.push_back(cy);
    }
    part.cuts_x.push_back(n);
    part.cuts_y.push_back(m);
    return part;
}

namespace {

// Index of the interval containing position v (intervals indexed from 0).
int interval_index(const std::vector<int>& cuts, int v) {
    // cuts.front() = 0 <= v < cuts.back()
    const auto it = std::upper_bound(cuts.begin(), cuts.end(), v);
    return static_cast<int>(it - cuts.begin()) - 1;
}

}  // namespace

int candidate_point(int i, const IntervalPartition& partition) {
    const int n = partition.n();
    const int m = partition.m();
    if (i < 0 || i >= n) {
        throw std::invalid_argument("row index outside the series");
    }
    const int e = interval_index(partition.cuts_x, i);
    const int st_x = partition.cuts_x[e];
    const int end_x = partition.cuts_x[e + 1];
    const int st_y = partition.cuts_y[e];
    const int end_y = partition.cuts_y[e + 1];

    int j;
    if (end_y == st_y) {
        j = st_y;
    } else if (end_x == st_x) {
        j = st_y + static_cast<int>(round_half_up((end_y - st_y) / 2.0));
    } else {
        j = st_y + static_cast<int>(round_half_up(
                       static_cast<double>(i - st_x) * (end_y - st_y) /
                       (end_x - st_x)));
    }
    return std::clamp(j, 0, m - 1);
}

BandMask build_band(const IntervalPartition& partition, const BandSpec& spec,
                    int n, int m) {
    if (n < 1 || m < 1) throw std::invalid_argument("empty grid");
    if (partition.n() != n || partition.m() != m) {
        throw std::invalid_argument("partition does not match the grid");
    }
    const bool fixed_width = !spec.adaptive_width();
    if (fixed_width && !(spec.width_fraction > 0.0)) {
        throw std::invalid_argument("width_fraction must be positive");
    }
    if (fixed_width && spec.width_fraction >= 1.0) {
        return full_band(n, m);  // a window of >= M points is the whole row
    }

    const int p = partition.interval_count();
    const double width_floor =
        spec.adaptive_width() && spec.mode != BandMode::ac2_aw
            ? spec.width_lower_bound_fraction * m
            : 0.0;

    BandMask band;
    band.rows = n;
    band.cols = m;
    band.lo.resize(n);
    band.hi.resize(n);
    for (int i = 0; i < n; ++i) {
        int core;
        if (spec.adaptive_core()) {
            core = candidate_point(i, partition);
        } else {
            core = n > 1 ? static_cast<int>(round_half_up(
                               static_cast<double>(i) * (m - 1) / (n - 1)))
                         : 0;
        }

        int half;
        if (fixed_width) {
            half = static_cast<int>(std::floor(spec.width_fraction * m / 2.0));
        } else {
            const int f = interval_index(partition.cuts_y, core);
            double w;
            if (spec.mode == BandMode::ac2_aw) {
                const int r = std::max(0, spec.neighbor_radius);
                const int first = std::max(0, f - r);
                const int last = std::min(p - 1, f + r);
                double sum = 0.0;
                for (int q = first; q <= last; ++q) {
                    sum += partition.cuts_y[q + 1] - partition.cuts_y[q];
                }
                w = sum / static_cast<double>(last - first + 1);
            } else {
                w = partition.cuts_y[f + 1] - partition.cuts_y[f];
                w = std::max(w, width_floor);
            }
            half = static_cast<int>(std::ceil(w / 2.0));
        }

        band.lo[i] = std::max(0, core - half);
        band.hi[i] = std::min(m - 1, core + half);
    }
    return bridge_gaps(std::move(band));
}

BandMask bridge_gaps(BandMask band) {
    const int n = band.rows;
    const int m = band.cols;
    if (n < 1 || m < 1 || static_cast<int>(band.lo.size()) != n ||
        static_cast<int>(band.hi.size()) != n) {
        throw std::invalid_argument("malformed band");
    }
    for (int i = 0; i < n; ++i) {
        if (band.lo[i] > band.hi[i] || band.lo[i] < 0 || band.hi[i] >= m) {
            throw std::invalid_argument("band row without a valid interval");
        }
    }

    // Admit the corners.
    band.lo[0] = 0;
    band.hi[n - 1] = m - 1;
    // Monotone envelopes, enlarging only: lower earlier lo's, raise later
    // hi's.
    for (int i = n - 2; i >= 0; --i) {
        band.lo[i] = std::min(band.lo[i], band.lo[i + 1]);
    }
    for (int i = 1; i < n; ++i) {
        band.hi[i] = std::max(band.hi[i], band.hi[i - 1]);
    }
    // Re-connect rows so a monotone path can always advance; the narrower
    // row grows toward the gap, ties widen the later row.
    for (int i = 0; i + 1 < n; ++i) {
        if (band.lo[i + 1] > band.hi[i] + 1) {
            const int width_here = band.hi[i] - band.lo[i] + 1;
            const int width_next = band.hi[i + 1] - band.lo[i + 1] + 1;
            if (width_next <= width_here) {
                band.lo[i + 1] = band.hi[i] + 1;
            } else {
                band.hi[i] = band.lo[i + 1] - 1;
            }
        }
    }
    return band;
}

BandMask transpose_band(const BandMask& band) {
    if (!band.is_valid()) {
        throw std::invalid_argument("cannot transpose an invalid band");
    }
    BandMask out;
    out.rows = band.cols;
    out.cols = band.rows;
    out.lo.assign(band.cols, band.rows);
    out.hi.assign(band.cols, -1);
    for (int i = 0; i < band.rows; ++i) {
        for (int j = band.lo[i]; j <= band.hi[i]; ++j) {
            out.lo[j] = std::min(out.lo[j], i);
            out.hi[j] = std::max(out.hi[j], i);
        }
    }
    return out;
}

BandMask symmetrize(const BandMask& band_xy, const BandMask& band_yx) {
    if (band_yx.rows != band_xy.cols || band_yx.cols != band_xy.rows) {
        throw std::invalid_argument("role-swapped band has wrong dimensions");
    }
    const BandMask swapped = transpose_band(band_yx);
    BandMask merged = band_xy;
    for (int i = 0; i < merged.rows; ++i) {
        merged.lo[i] = std::min(merged.lo[i], swapped.lo[i]);
        merged.hi[i] = std::max(merged.hi[i], swapped.hi[i]);
    }
    return bridge_gaps(std::move(merged));
}

std::string band_to_text(const BandMask& band) {
    std::ostringstream out;
    for (int i = 0; i < band.rows; ++i) {
        out << i << ' ' << band.lo[i] << ' ' << band.hi[i] << '\n';
    }
    return out.str();
}

}  // namespace sdtw
