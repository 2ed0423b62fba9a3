#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace champ {

struct Edge {
    int i = 0;
    int j = 0;
    double w = 0.0;
};

// Undirected weighted network. Each edge is stored once. Modularity sums run
// over ordered node pairs, so a stored edge (i, j, w) contributes 2w to any
// within-community adjacency sum; a self-loop likewise contributes 2w to its
// endpoint's strength.
struct Network {
    int node_count = 0;
    std::vector<Edge> edges;
    std::vector<double> strength;            // k_i = sum of incident weights
    double total_weight = 0.0;               // m = (1/2) sum_i k_i
    std::vector<std::string> node_names;     // original ids, first-appearance order
    std::vector<std::string> metadata_labels;  // optional categorical label per node

    bool degenerate() const { return total_weight <= 0.0; }
};

struct NamedEdge {
    std::string src;
    std::string dst;
    double w = 1.0;
};

// String ids are mapped to dense integers in first-appearance order.
// Duplicate (i, j) entries are summed. Negative weights and an empty edge
// list are rejected.
Network build_network(const std::vector<NamedEdge>& edge_list);

// Integer-id convenience builder; ids must be >= 0 and index a node set
// 0..max_id (isolated nodes below max_id are kept).
Network build_network(const std::vector<Edge>& edge_list);

// Labels each node with its connected component, components numbered in
// order of their smallest node id.
std::vector<int> connected_components(const Network& net);

// One node-layer per (actor, layer) pair seen in any edge, indexed
// layer-major. Intralayer self-loops are dropped at build time.
struct MultilayerNetwork {
    int nodelayer_count = 0;
    int layer_count = 0;
    int actor_count = 0;
    std::vector<int> layer_of;               // node-layer -> dense layer index
    std::vector<int> actor_of;               // node-layer -> dense actor index
    std::vector<Edge> intralayer_edges;      // endpoints share a layer
    std::vector<Edge> interlayer_edges;      // endpoints in distinct layers
    std::vector<double> strength;            // intralayer strength per node-layer
    std::vector<double> layer_weight;        // m_s per layer
    std::vector<std::string> actor_names;    // first-appearance order
    std::vector<std::int64_t> layer_ids;     // original layer tags, ascending
    std::vector<std::string> metadata_labels;  // optional, per node-layer

    // -1 when the actor never appears in the layer.
    int nodelayer_index(int actor, int layer) const {
        return lookup_[static_cast<std::size_t>(actor) * layer_count + layer];
    }
    // Layers with zero intralayer weight contribute nothing to the null model.
    std::vector<int> zero_weight_layers() const;

    std::vector<int> lookup_;  // actor-major (actor, layer) -> node-layer
};

struct MultilayerEdgeInput {
    std::string actor_i;
    std::int64_t layer_i = 0;
    std::string actor_j;
    std::int64_t layer_j = 0;
    double w = 1.0;
};

MultilayerNetwork build_multilayer(const std::vector<MultilayerEdgeInput>& intralayer,
                                   const std::vector<MultilayerEdgeInput>& interlayer);

}  // namespace champ
