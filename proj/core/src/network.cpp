#include "champ/network.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "champ/errors.hpp"

namespace champ {

namespace {

void check_weight(double w) {
    if (!std::isfinite(w)) {
        throw validation_error("edge weight is not finite");
    }
    if (w < 0.0) {
        throw validation_error("negative edge weight");
    }
}

// Sums duplicate entries; key is the unordered endpoint pair.
std::vector<Edge> merge_duplicates(std::vector<Edge> edges) {
    std::map<std::pair<int, int>, double> acc;
    for (const Edge& e : edges) {
        auto key = std::minmax(e.i, e.j);
        acc[{key.first, key.second}] += e.w;
    }
    std::vector<Edge> out;
    out.reserve(acc.size());
    for (const auto& [key, w] : acc) {
        out.push_back({key.first, key.second, w});
    }
    return out;
}

Network finalize_network(int node_count, std::vector<Edge> edges) {
    Network net;
    net.node_count = node_count;
    net.edges = merge_duplicates(std::move(edges));
    net.strength.assign(node_count, 0.0);
    for (const Edge& e : net.edges) {
        net.strength[e.i] += e.w;
        net.strength[e.j] += e.w;  // self-loop: both increments hit e.i
    }
    double sum = 0.0;
    for (double k : net.strength) {
        sum += k;
    }
    net.total_weight = 0.5 * sum;
    return net;
}

}  // namespace

Network build_network(const std::vector<NamedEdge>& edge_list) {
    if (edge_list.empty()) {
        throw validation_error("empty edge list");
    }
    std::unordered_map<std::string, int> ids;
    std::vector<std::string> names;
    auto intern = [&](const std::string& name) {
        auto [it, inserted] = ids.try_emplace(name, static_cast<int>(names.size()));
        if (inserted) {
            names.push_back(name);
        }
        return it->second;
    };
    std::vector<Edge> edges;
    edges.reserve(edge_list.size());
    for (const NamedEdge& e : edge_list) {
        check_weight(e.w);
        int i = intern(e.src);
        int j = intern(e.dst);
        edges.push_back({i, j, e.w});
    }
    Network net = finalize_network(static_cast<int>(names.size()), std::move(edges));
    net.node_names = std::move(names);
    return net;
}

Network build_network(const std::vector<Edge>& edge_list) {
    if (edge_list.empty()) {
        throw validation_error("empty edge list");
    }
    int max_id = -1;
    for (const Edge& e : edge_list) {
        if (e.i < 0 || e.j < 0) {
            throw validation_error("negative node id");
        }
        check_weight(e.w);
        max_id = std::max({max_id, e.i, e.j});
    }
    return finalize_network(max_id + 1, edge_list);
}

std::vector<int> connected_components(const Network& net) {
    std::vector<std::vector<int>> adj(net.node_count);
    for (const Edge& e : net.edges) {
        if (e.i != e.j) {
            adj[e.i].push_back(e.j);
            adj[e.j].push_back(e.i);
        }
    }
    std::vector<int> comp(net.node_count, -1);
    std::vector<int> stack;
    int next = 0;
    for (int start = 0; start < net.node_count; ++start) {
        if (comp[start] >= 0) {
            continue;
        }
        comp[start] = next;
        stack.push_back(start);
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v : adj[u]) {
                if (comp[v] < 0) {
                    comp[v] = next;
                    stack.push_back(v);
                }
            }
        }
        ++next;
    }
    return comp;
}

std::vector<int> MultilayerNetwork::zero_weight_layers() const {
    std::vector<int> out;
    for (int s = 0; s < layer_count; ++s) {
        if (layer_weight[s] <= 0.0) {
            out.push_back(s);
        }
    }
    return out;
}

MultilayerNetwork build_multilayer(const std::vector<MultilayerEdgeInput>& intralayer,
                                   const std::vector<MultilayerEdgeInput>& interlayer) {
    if (intralayer.empty() && interlayer.empty()) {
        throw validation_error("empty multilayer edge list");
    }
    for (const MultilayerEdgeInput& e : intralayer) {
        if (e.layer_i != e.layer_j) {
            throw validation_error("intralayer edge crosses layers");
        }
        check_weight(e.w);
    }
    for (const MultilayerEdgeInput& e : interlayer) {
        if (e.layer_i == e.layer_j) {
            throw validation_error("interlayer edge stays within one layer");
        }
        check_weight(e.w);
    }

    MultilayerNetwork net;
    std::unordered_map<std::string, int> actor_ids;
    auto intern_actor = [&](const std::string& name) {
        auto [it, inserted] = actor_ids.try_emplace(name, static_cast<int>(net.actor_names.size()));
        if (inserted) {
            net.actor_names.push_back(name);
        }
        return it->second;
    };
    std::vector<std::int64_t> layer_tags;
    for (const auto* list : {&intralayer, &interlayer}) {
        for (const MultilayerEdgeInput& e : *list) {
            intern_actor(e.actor_i);
            intern_actor(e.actor_j);
            layer_tags.push_back(e.layer_i);
            layer_tags.push_back(e.layer_j);
        }
    }
    std::sort(layer_tags.begin(), layer_tags.end());
    layer_tags.erase(std::unique(layer_tags.begin(), layer_tags.end()), layer_tags.end());
    net.layer_ids = layer_tags;
    net.layer_count = static_cast<int>(layer_tags.size());
    net.actor_count = static_cast<int>(net.actor_names.size());
    auto layer_index = [&](std::int64_t tag) {
        return static_cast<int>(std::lower_bound(layer_tags.begin(), layer_tags.end(), tag) -
                                layer_tags.begin());
    };

    // Node-layers indexed layer-major, actors in first-appearance order.
    std::vector<std::vector<char>> present(net.layer_count,
                                           std::vector<char>(net.actor_count, 0));
    for (const auto* list : {&intralayer, &interlayer}) {
        for (const MultilayerEdgeInput& e : *list) {
            present[layer_index(e.layer_i)][actor_ids[e.actor_i]] = 1;
            present[layer_index(e.layer_j)][actor_ids[e.actor_j]] = 1;
        }
    }
    net.lookup_.assign(static_cast<std::size_t>(net.actor_count) * net.layer_count, -1);
    for (int s = 0; s < net.layer_count; ++s) {
        for (int a = 0; a < net.actor_count; ++a) {
            if (present[s][a]) {
                net.lookup_[static_cast<std::size_t>(a) * net.layer_count + s] =
                    net.nodelayer_count;
                net.layer_of.push_back(s);
                net.actor_of.push_back(a);
                ++net.nodelayer_count;
            }
        }
    }

    auto node_of = [&](const std::string& actor, std::int64_t layer) {
        return net.nodelayer_index(actor_ids[actor], layer_index(layer));
    };
    std::vector<Edge> intra;
    intra.reserve(intralayer.size());
    for (const MultilayerEdgeInput& e : intralayer) {
        int i = node_of(e.actor_i, e.layer_i);
        int j = node_of(e.actor_j, e.layer_j);
        if (i == j) {
            continue;  // within-layer self-similarity is zeroed out
        }
        intra.push_back({i, j, e.w});
    }
    std::vector<Edge> inter;
    inter.reserve(interlayer.size());
    for (const MultilayerEdgeInput& e : interlayer) {
        inter.push_back({node_of(e.actor_i, e.layer_i), node_of(e.actor_j, e.layer_j), e.w});
    }

    // Duplicate merge keeps coefficient sums independent of input repetition.
    {
        std::map<std::pair<int, int>, double> acc;
        for (const Edge& e : intra) {
            auto key = std::minmax(e.i, e.j);
            acc[{key.first, key.second}] += e.w;
        }
        intra.clear();
        for (const auto& [key, w] : acc) {
            intra.push_back({key.first, key.second, w});
        }
    }
    {
        std::map<std::pair<int, int>, double> acc;
        for (const Edge& e : inter) {
            auto key = std::minmax(e.i, e.j);
            acc[{key.first, key.second}] += e.w;
        }
        inter.clear();
        for (const auto& [key, w] : acc) {
            inter.push_back({key.first, key.second, w});
        }
    }
    net.intralayer_edges = std::move(intra);
    net.interlayer_edges = std::move(inter);

    net.strength.assign(net.nodelayer_count, 0.0);
    net.layer_weight.assign(net.layer_count, 0.0);
    for (const Edge& e : net.intralayer_edges) {
        net.strength[e.i] += e.w;
        net.strength[e.j] += e.w;
        net.layer_weight[net.layer_of[e.i]] += e.w;
    }
    return net;
}

}  // namespace champ
