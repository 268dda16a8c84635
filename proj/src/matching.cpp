#include "sdtw/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sdtw {

namespace {

double descriptor_distance(const std::vector<double>& a,
                           const std::vector<double>& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("descriptor lengths differ");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

double scope_length(const SalientFeature& f) {
    return f.point.scope_end - f.point.scope_start;
}

// Elements of `sorted` strictly below v, counting the extra value when it is
// also below. Equal time values share a rank.
int rank_among(const std::vector<double>& sorted, double v, double extra) {
    const auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
    int rank = static_cast<int>(it - sorted.begin());
    if (extra < v) ++rank;
    return rank;
}

void sorted_insert(std::vector<double>& sorted, double v) {
    sorted.insert(std::upper_bound(sorted.begin(), sorted.end(), v), v);
}

}  // namespace

std::vector<MatchPair> find_dominant_pairs(
    const std::vector<SalientFeature>& feats_x,
    const std::vector<SalientFeature>& feats_y, double tau_a, double tau_s,
    double tau_d) {
    if (!(tau_a > 0.0)) throw std::invalid_argument("tau_a must be > 0");
    if (!(tau_s >= 1.0)) throw std::invalid_argument("tau_s must be >= 1");
    if (!(tau_d > 1.0)) throw std::invalid_argument("tau_d must be > 1");

    std::vector<MatchPair> pairs;
    std::vector<double> dist;
    std::vector<std::size_t> eligible;
    for (const auto& f : feats_x) {
        dist.clear();
        eligible.clear();
        for (std::size_t j = 0; j < feats_y.size(); ++j) {
            const auto& g = feats_y[j];
            if (std::fabs(f.amplitude - g.amplitude) > tau_a) continue;
            const double ratio =
                std::max(f.point.sigma / g.point.sigma,
                         g.point.sigma / f.point.sigma);
            if (ratio > tau_s) continue;
            eligible.push_back(j);
            dist.push_back(descriptor_distance(f.descriptor,
                                               feats_y[j].descriptor));
        }
        if (eligible.empty()) continue;

        std::size_t best = 0;
        for (std::size_t c = 1; c < eligible.size(); ++c) {
            if (dist[c] < dist[best]) best = c;
        }
        bool dominant = true;
        for (std::size_t c = 0; c < eligible.size(); ++c) {
            if (c == best) continue;
            if (dist[best] * tau_d > dist[c]) {
                dominant = false;
                break;
            }
        }
        if (!dominant) continue;

        MatchPair pair;
        pair.f1 = f;
        pair.f2 = feats_y[eligible[best]];
        pair.desc_distance = dist[best];
        pairs.push_back(std::move(pair));
    }
    return pairs;
}

void score_pairs(std::vector<MatchPair>& pairs) {
    if (pairs.empty()) return;
    constexpr double kEpsDiv = 1e-12;

    double mu_desc_min = std::numeric_limits<double>::infinity();
    for (const auto& p : pairs) {
        mu_desc_min = std::min(mu_desc_min, 1.0 / (1.0 + p.desc_distance));
    }

    double max_align = 0.0;
    double max_sim = 0.0;
    for (auto& p : pairs) {
        const double mean_scope = (scope_length(p.f1) + scope_length(p.f2)) / 2.0;
        const double shift = std::fabs(p.f1.point.position - p.f2.point.position);
        p.mu_align = mean_scope / (1.0 + shift);

        const double mu_desc = 1.0 / (1.0 + p.desc_distance);
        const double denom = std::max(
            {std::fabs(p.f1.amplitude), std::fabs(p.f2.amplitude), kEpsDiv});
        const double amp_diff = std::clamp(
            std::fabs(p.f1.amplitude - p.f2.amplitude) / denom, 0.0, 1.0);
        p.mu_sim = (mu_desc / mu_desc_min) * (1.0 - amp_diff);

        max_align = std::max(max_align, p.mu_align);
        max_sim = std::max(max_sim, p.mu_sim);
    }

    for (auto& p : pairs) {
        const double ns_align = max_align > 0.0 ? p.mu_align / max_align : 0.0;
        const double ns_sim = max_sim > 0.0 ? p.mu_sim / max_sim : 0.0;
        const double sum = ns_align + ns_sim;
        p.mu_comb = sum > 0.0 ? 2.0 * ns_align * ns_sim / sum : 0.0;
    }
}

ConsistentAlignment prune_inconsistent(std::vector<MatchPair> pairs) {
    std::stable_sort(
        pairs.begin(), pairs.end(),
        [](const MatchPair& a, const MatchPair& b) {
            if (a.mu_comb != b.mu_comb) return a.mu_comb > b.mu_comb;
            if (a.f1.point.position != b.f1.point.position) {
                return a.f1.point.position < b.f1.point.position;
            }
            if (a.f2.point.position != b.f2.point.position) {
                return a.f2.point.position < b.f2.point.position;
            }
            if (a.f1.point.sigma != b.f1.point.sigma) {
                return a.f1.point.sigma < b.f1.point.sigma;
            }
            return a.f2.point.sigma < b.f2.point.sigma;
        });

    ConsistentAlignment out;
    auto& list1 = out.boundary_list_1;
    auto& list2 = out.boundary_list_2;
    for (auto& p : pairs) {
        const double st1 = p.f1.point.scope_start;
        const double end1 = p.f1.point.scope_end;
        const double st2 = p.f2.point.scope_start;
        const double end2 = p.f2.point.scope_end;

        // Ranks in the tentative lists holding both new boundaries.
        const int r_st1 = rank_among(list1, st1, end1);
        const int r_end1 = rank_among(list1, end1, st1);
        const int r_st2 = rank_among(list2, st2, end2);
        const int r_end2 = rank_among(list2, end2, st2);
        if (r_st1 != r_st2 || r_end1 != r_end2) continue;

        sorted_insert(list1, st1);
        sorted_insert(list1, end1);
        sorted_insert(list2, st2);
        sorted_insert(list2, end2);
        out.pairs.push_back(std::move(p));
    }
    return out;
}

}  // namespace sdtw
