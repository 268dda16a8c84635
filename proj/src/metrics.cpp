#include "sdtw/metrics.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace sdtw {

std::vector<int> rank_neighbors(const std::vector<double>& distances,
                                int self) {
    std::vector<int> order;
    order.reserve(distances.size() > 0 ? distances.size() - 1 : 0);
    for (int i = 0; i < static_cast<int>(distances.size()); ++i) {
        if (i != self) order.push_back(i);
    }
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (distances[a] != distances[b]) return distances[a] < distances[b];
        return a < b;
    });
    return order;
}

double metric_acc_ret(int k, const DistanceMatrix& reference,
                      const DistanceMatrix& candidate) {
    const int n = static_cast<int>(reference.size());
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (candidate.size() != reference.size()) {
        throw std::invalid_argument("rankings cover different query sets");
    }
    if (k > n - 1) {
        throw std::invalid_argument("k exceeds corpus size - 1");
    }
    double total = 0.0;
    for (int q = 0; q < n; ++q) {
        const auto top_ref = rank_neighbors(reference[q], q);
        const auto top_cand = rank_neighbors(candidate[q], q);
        std::set<int> ref_set(top_ref.begin(), top_ref.begin() + k);
        int shared = 0;
        for (int i = 0; i < k; ++i) shared += ref_set.count(top_cand[i]);
        total += static_cast<double>(shared) / k;
    }
    return total / n;
}

double metric_err_dist(const std::vector<double>& reference,
                       const std::vector<double>& candidate,
                       int* excluded_pairs) {
    if (reference.size() != candidate.size()) {
        throw std::invalid_argument("distance lists differ in length");
    }
    double total = 0.0;
    int used = 0;
    int excluded = 0;
    for (std::size_t i = 0; i < reference.size(); ++i) {
        if (reference[i] == 0.0) {
            ++excluded;
            continue;
        }
        total += (candidate[i] - reference[i]) / reference[i];
        ++used;
    }
    if (excluded_pairs) *excluded_pairs = excluded;
    if (used == 0) {
        throw std::invalid_argument("no valid pairs for distance error");
    }
    return total / used;
}

std::vector<int> knn_label_set(const std::vector<int>& ranked,
                               const std::vector<int>& labels, int k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (k > static_cast<int>(ranked.size())) {
        throw std::invalid_argument("k exceeds the neighbour list");
    }
    std::map<int, int> counts;
    for (int i = 0; i < k; ++i) ++counts[labels[ranked[i]]];
    int best = 0;
    for (const auto& [label, count] : counts) best = std::max(best, count);
    std::vector<int> majority;
    for (const auto& [label, count] : counts) {
        if (count == best) majority.push_back(label);
    }
    return majority;  // std::map keeps it sorted
}

namespace {

double jaccard(const std::vector<int>& a, const std::vector<int>& b) {
    std::set<int> inter;
    std::set<int> uni(a.begin(), a.end());
    for (int v : b) {
        if (uni.count(v)) inter.insert(v);
        uni.insert(v);
    }
    if (uni.empty()) return 1.0;
    return static_cast<double>(inter.size()) / static_cast<double>(uni.size());
}

}  // namespace

double metric_acc_cls(int k, const DistanceMatrix& reference,
                      const DistanceMatrix& candidate,
                      const std::vector<int>& labels) {
    const int n = static_cast<int>(reference.size());
    if (candidate.size() != reference.size() ||
        labels.size() != reference.size()) {
        throw std::invalid_argument("mismatched inputs");
    }
    double total = 0.0;
    for (int q = 0; q < n; ++q) {
        const auto set_ref =
            knn_label_set(rank_neighbors(reference[q], q), labels, k);
        const auto set_cand =
            knn_label_set(rank_neighbors(candidate[q], q), labels, k);
        total += jaccard(set_ref, set_cand);
    }
    return total / n;
}

double metric_timegain(double time_reference, double time_candidate) {
    if (!(time_reference > 0.0)) {
        throw std::invalid_argument("reference time must be positive");
    }
    return (time_reference - time_candidate) / time_reference;
}

}  // namespace sdtw
