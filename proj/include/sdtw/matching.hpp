#pragma once

#include <vector>

#include "sdtw/descriptor.hpp"

namespace sdtw {

// A matched feature pair across two series with its scores. Scores are
// filled by score_pairs; they are normalized against the whole candidate
// set, so a pair's scores are only meaningful within the set they were
// computed for.
struct MatchPair {
    SalientFeature f1;  // from series X
    SalientFeature f2;  // from series Y
    double desc_distance = 0.0;  // Euclidean distance between descriptors
    double mu_align = 0.0;
    double mu_sim = 0.0;
    double mu_comb = 0.0;
};

// Pairs surviving inconsistency pruning, plus the committed scope-boundary
// lists. The lists are sorted in time and rank-aligned: the k-th boundary on
// X corresponds to the k-th boundary on Y.
struct ConsistentAlignment {
    std::vector<MatchPair> pairs;
    std::vector<double> boundary_list_1;
    std::vector<double> boundary_list_2;
};

struct MatchParams {
    double tau_a_fraction = 0.25;  // amplitude gate, fraction of the query
                                   // series' value range
    double tau_s = 4.0;            // max scale ratio between matched points
    double tau_d = 1.5;            // distance ratio gate, > 1
};

// Nearest-descriptor matching with amplitude, scale-ratio and distance-ratio
// gates. For each feature of X the closest eligible feature of Y is kept
// only when no other eligible candidate comes within factor tau_d of its
// descriptor distance. Each X feature yields at most one pair; Y features
// may repeat.
std::vector<MatchPair> find_dominant_pairs(
    const std::vector<SalientFeature>& feats_x,
    const std::vector<SalientFeature>& feats_y, double tau_a, double tau_s,
    double tau_d);

// Fills mu_align, mu_sim and mu_comb for every pair. mu_comb is the harmonic
// mean of the two scores after normalizing each by its maximum over the set.
void score_pairs(std::vector<MatchPair>& pairs);

// Greedy consistency pruning: pairs are committed in descending mu_comb
// order, and a pair is kept only when the ranks of its scope start/end agree
// between the two committed boundary lists (equal time values share a rank).
// Rejected pairs leave the committed lists untouched.
ConsistentAlignment prune_inconsistent(std::vector<MatchPair> pairs);

}  // namespace sdtw
