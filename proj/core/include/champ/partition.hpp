#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <variant>
#include <vector>

#include "champ/network.hpp"

namespace champ {

// Heuristic call that produced a partition.
struct RunRecord {
    double gamma = 0.0;
    std::optional<double> omega;
    std::uint64_t seed = 0;
    int run_index = -1;
};

// Community label per node (or per node-layer). Canonical form renumbers
// labels 0,1,2,... in first-appearance order; two partitions are equal iff
// their canonical label vectors are equal.
struct Partition {
    std::vector<int> labels;

    Partition() = default;
    explicit Partition(std::vector<int> l) : labels(std::move(l)) {}

    int size() const { return static_cast<int>(labels.size()); }
    void canonicalize();
    Partition canonical() const;
    bool is_canonical() const;
    int community_count() const;
    // Communities with at least min_size members.
    int community_count_at_least(int min_size) const;
};

inline bool operator==(const Partition& a, const Partition& b) {
    return a.labels == b.labels;
}

// Scalar reduction of a partition: Q(gamma, omega) = a_hat - gamma*p_hat + omega*c_hat.
struct CoefficientTriple {
    double a_hat = 0.0;
    double p_hat = 0.0;
    double c_hat = 0.0;
    int partition_id = -1;
    int n_communities = 0;
    int n_communities_ge5 = 0;
};

// Componentwise tolerance under which two triples describe the same line/plane.
inline constexpr double kTripleEqualTol = 1e-12;

bool coefficients_equal(const CoefficientTriple& a, const CoefficientTriple& b,
                        double tol = kTripleEqualTol);

// Within-community adjacency and null-model sums over ordered node pairs;
// c_hat is 0 for single-layer networks. O(M + N).
CoefficientTriple coefficients(const Network& net, const Partition& p);

// Multilayer variant: per-layer configuration null and the interlayer
// coupling sum c_hat. Layers with zero intralayer weight contribute nothing.
CoefficientTriple coefficients(const MultilayerNetwork& net, const Partition& p);

double modularity_at(const CoefficientTriple& t, double gamma, double omega = 0.0);

// Unique canonical partitions with provenance and coefficients. The network
// must outlive the ensemble.
class Ensemble {
public:
    explicit Ensemble(const Network* net) : net_(net) {}
    explicit Ensemble(const MultilayerNetwork* net) : net_(net) {}

    enum class AddOutcome { inserted, merged_provenance };
    struct AddResult {
        AddOutcome outcome;
        int partition_id;
    };

    AddResult add(const Partition& p, const RunRecord& rec);

    int size() const { return static_cast<int>(partitions_.size()); }
    int expected_length() const;
    const Partition& partition(int id) const { return partitions_[id]; }
    const CoefficientTriple& triple(int id) const { return triples_[id]; }
    const std::vector<RunRecord>& provenance(int id) const { return provenance_[id]; }
    const std::vector<Partition>& partitions() const { return partitions_; }
    const std::vector<CoefficientTriple>& triples() const { return triples_; }

    // Permutation sorting canonical label vectors lexicographically; applying
    // it yields an order independent of insertion history.
    std::vector<int> canonical_order() const;
    // Rewrites ids so partition k is the k-th in canonical order.
    void sort_canonically();

    bool is_multilayer() const { return std::holds_alternative<const MultilayerNetwork*>(net_); }
    const Network* single_layer_network() const;
    const MultilayerNetwork* multilayer_network() const;

private:
    std::variant<const Network*, const MultilayerNetwork*> net_;
    std::vector<Partition> partitions_;
    std::vector<CoefficientTriple> triples_;
    std::vector<std::vector<RunRecord>> provenance_;
    std::unordered_map<std::uint64_t, std::vector<int>> index_;  // label-vector hash -> ids
};

}  // namespace champ
