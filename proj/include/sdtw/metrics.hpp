#pragma once

#include <vector>

#include "sdtw/series.hpp"

namespace sdtw {

// Square matrix of pairwise distances, row = query.
using DistanceMatrix = std::vector<std::vector<double>>;

// Indices of all items except `self`, ordered by ascending distance with
// ties broken by ascending index.
std::vector<int> rank_neighbors(const std::vector<double>& distances,
                                int self);

// Mean over queries of |top-k(reference) ∩ top-k(candidate)| / k, where the
// rankings exclude the query itself. Throws std::invalid_argument when k
// exceeds corpus size - 1.
double metric_acc_ret(int k, const DistanceMatrix& reference,
                      const DistanceMatrix& candidate);

// Mean relative excess (candidate - reference) / reference over the given
// pairs. Pairs with reference distance 0 are excluded; their count is
// reported through excluded_pairs if non-null. Throws std::invalid_argument
// when every pair is excluded.
double metric_err_dist(const std::vector<double>& reference,
                       const std::vector<double>& candidate,
                       int* excluded_pairs = nullptr);

// Majority label set of the k nearest neighbours: every label attaining the
// maximum count is included. `ranked` comes from rank_neighbors.
std::vector<int> knn_label_set(const std::vector<int>& ranked,
                               const std::vector<int>& labels, int k);

// Mean Jaccard overlap of the majority-label sets produced by the two
// distance matrices.
double metric_acc_cls(int k, const DistanceMatrix& reference,
                      const DistanceMatrix& candidate,
                      const std::vector<int>& labels);

// (time_reference - time_candidate) / time_reference; requires
// time_reference > 0.
double metric_timegain(double time_reference, double time_candidate);

}  // namespace sdtw
