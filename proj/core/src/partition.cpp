#include "champ/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "champ/errors.hpp"

namespace champ {

void Partition::canonicalize() {
    std::unordered_map<int, int> remap;
    int next = 0;
    for (int& l : labels) {
        auto [it, inserted] = remap.try_emplace(l, next);
        if (inserted) {
            ++next;
        }
        l = it->second;
    }
}

Partition Partition::canonical() const {
    Partition p = *this;
    p.canonicalize();
    return p;
}

bool Partition::is_canonical() const {
    int next = 0;
    for (int l : labels) {
        if (l > next) {
            return false;
        }
        if (l == next) {
            ++next;
        }
        if (l < 0) {
            return false;
        }
    }
    return true;
}

int Partition::community_count() const {
    std::unordered_map<int, int> seen;
    for (int l : labels) {
        seen.try_emplace(l, 0);
    }
    return static_cast<int>(seen.size());
}

int Partition::community_count_at_least(int min_size) const {
    std::unordered_map<int, int> sizes;
    for (int l : labels) {
        ++sizes[l];
    }
    int n = 0;
    for (const auto& [l, s] : sizes) {
        if (s >= min_size) {
            ++n;
        }
    }
    return n;
}

bool coefficients_equal(const CoefficientTriple& a, const CoefficientTriple& b, double tol) {
    return std::abs(a.a_hat - b.a_hat) < tol && std::abs(a.p_hat - b.p_hat) < tol &&
           std::abs(a.c_hat - b.c_hat) < tol;
}

namespace {

void fill_counts(const Partition& p, CoefficientTriple& t) {
    t.n_communities = p.community_count();
    t.n_communities_ge5 = p.community_count_at_least(5);
}

}  // namespace

CoefficientTriple coefficients(const Network& net, const Partition& p) {
    if (p.size() != net.node_count) {
        throw validation_error("partition length does not match node count");
    }
    if (net.degenerate()) {
        throw degenerate_error("network has zero total weight");
    }
    CoefficientTriple t;
    for (const Edge& e : net.edges) {
        if (p.labels[e.i] == p.labels[e.j]) {
            t.a_hat += 2.0 * e.w;
        }
    }
    // p_hat from community strength sums: sum_c S_c^2 / (2m).
    std::unordered_map<int, double> comm_strength;
    for (int i = 0; i < net.node_count; ++i) {
        comm_strength[p.labels[i]] += net.strength[i];
    }
    double p_hat = 0.0;
    for (const auto& [c, s] : comm_strength) {
        p_hat += s * s;
    }
    t.p_hat = p_hat / (2.0 * net.total_weight);
    t.c_hat = 0.0;
    fill_counts(p, t);
    return t;
}

CoefficientTriple coefficients(const MultilayerNetwork& net, const Partition& p) {
    if (p.size() != net.nodelayer_count) {
        throw validation_error("partition length does not match node-layer count");
    }
    bool any_weight = false;
    for (double m : net.layer_weight) {
        if (m > 0.0) {
            any_weight = true;
        }
    }
    if (!any_weight && net.interlayer_edges.empty()) {
        throw degenerate_error("multilayer network has zero total weight");
    }
    CoefficientTriple t;
    for (const Edge& e : net.intralayer_edges) {
        if (p.labels[e.i] == p.labels[e.j]) {
            t.a_hat += 2.0 * e.w;
        }
    }
    for (const Edge& e : net.interlayer_edges) {
        if (p.labels[e.i] == p.labels[e.j]) {
            t.c_hat += 2.0 * e.w;
        }
    }
    // Per-layer null: sum_s sum_c S_{c,s}^2 / (2 m_s), zero-weight layers skipped.
    std::unordered_map<std::int64_t, double> comm_layer_strength;
    for (int i = 0; i < net.nodelayer_count; ++i) {
        std::int64_t key =
            static_cast<std::int64_t>(p.labels[i]) * net.layer_count + net.layer_of[i];
        comm_layer_strength[key] += net.strength[i];
    }
    double p_hat = 0.0;
    for (const auto& [key, s] : comm_layer_strength) {
        int layer = static_cast<int>(key % net.layer_count);
        double m_s = net.layer_weight[layer];
        if (m_s > 0.0) {
            p_hat += s * s / (2.0 * m_s);
        }
    }
    t.p_hat = p_hat;
    fill_counts(p, t);
    return t;
}

double modularity_at(const CoefficientTriple& t, double gamma, double omega) {
    return t.a_hat - gamma * t.p_hat + omega * t.c_hat;
}

namespace {

std::uint64_t label_hash(const std::vector<int>& labels) {
    // FNV-1a over the label words; collisions resolved by exact comparison.
    std::uint64_t h = 1469598103934665603ull;
    for (int l : labels) {
        h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(l));
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace

int Ensemble::expected_length() const {
    if (auto* net = std::get_if<const Network*>(&net_)) {
        return (*net)->node_count;
    }
    return std::get<const MultilayerNetwork*>(net_)->nodelayer_count;
}

const Network* Ensemble::single_layer_network() const {
    auto* net = std::get_if<const Network*>(&net_);
    return net ? *net : nullptr;
}

const MultilayerNetwork* Ensemble::multilayer_network() const {
    auto* net = std::get_if<const MultilayerNetwork*>(&net_);
    return net ? *net : nullptr;
}

Ensemble::AddResult Ensemble::add(const Partition& p, const RunRecord& rec) {
    if (p.size() != expected_length()) {
        throw validation_error("partition length does not match ensemble network");
    }
    Partition canon = p.canonical();
    std::uint64_t h = label_hash(canon.labels);
    auto it = index_.find(h);
    if (it != index_.end()) {
        for (int id : it->second) {
            if (partitions_[id] == canon) {
                provenance_[id].push_back(rec);
                return {AddOutcome::merged_provenance, id};
            }
        }
    }
    int id = static_cast<int>(partitions_.size());
    CoefficientTriple t;
    if (auto* net = std::get_if<const Network*>(&net_)) {
        t = coefficients(**net, canon);
    } else {
        t = coefficients(*std::get<const MultilayerNetwork*>(net_), canon);
    }
    t.partition_id = id;
    partitions_.push_back(std::move(canon));
    triples_.push_back(t);
    provenance_.push_back({rec});
    index_[h].push_back(id);
    return {AddOutcome::inserted, id};
}

std::vector<int> Ensemble::canonical_order() const {
    std::vector<int> order(partitions_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return partitions_[a].labels < partitions_[b].labels;
    });
    return order;
}

void Ensemble::sort_canonically() {
    std::vector<int> order = canonical_order();
    std::vector<Partition> parts(partitions_.size());
    std::vector<CoefficientTriple> trips(triples_.size());
    std::vector<std::vector<RunRecord>> provs(provenance_.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        parts[k] = std::move(partitions_[order[k]]);
        trips[k] = triples_[order[k]];
        trips[k].partition_id = static_cast<int>(k);
        provs[k] = std::move(provenance_[order[k]]);
        std::sort(provs[k].begin(), provs[k].end(),
                  [](const RunRecord& a, const RunRecord& b) { return a.run_index < b.run_index; });
    }
    partitions_ = std::move(parts);
    triples_ = std::move(trips);
    provenance_ = std::move(provs);
    index_.clear();
    for (std::size_t k = 0; k < partitions_.size(); ++k) {
        index_[label_hash(partitions_[k].labels)].push_back(static_cast<int>(k));
    }
}

}  // namespace champ
