#include "champ/louvain.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "champ/errors.hpp"
#include "champ/parallel.hpp"

namespace champ {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Deterministic across platforms; std::shuffle's draw sequence is not.
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        state = splitmix64(state);
        return state;
    }
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(next() >> 11) * 0x1.0p-53);
    }
    void shuffle(std::vector<int>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[next() % i]);
        }
    }
};

// Flattened move graph shared by the single-layer and multilayer heuristics.
// Arcs are stored in both directions without self-loops; self weights are
// carried separately (they follow their node into any community).
struct MoveGraph {
    struct Arc {
        int to;
        double a_w;
        double c_w;
    };
    struct LayerStrength {
        int layer;
        double k;
    };

    int n = 0;
    int layers = 0;
    std::vector<int> offset;  // CSR, size n + 1
    std::vector<Arc> arcs;
    std::vector<std::vector<LayerStrength>> strength;
    std::vector<double> inv_two_m;  // 0 for zero-weight layers
    double gain_eps = 1e-12;

    void finish(std::vector<std::vector<Arc>> adj) {
        offset.assign(n + 1, 0);
        for (int u = 0; u < n; ++u) {
            std::sort(adj[u].begin(), adj[u].end(),
                      [](const Arc& x, const Arc& y) { return x.to < y.to; });
            offset[u + 1] = offset[u] + static_cast<int>(adj[u].size());
        }
        arcs.clear();
        arcs.reserve(offset[n]);
        for (int u = 0; u < n; ++u) {
            arcs.insert(arcs.end(), adj[u].begin(), adj[u].end());
        }
    }
};

MoveGraph move_graph(const Network& net) {
    MoveGraph g;
    g.n = net.node_count;
    g.layers = 1;
    std::vector<std::vector<MoveGraph::Arc>> adj(g.n);
    for (const Edge& e : net.edges) {
        if (e.i == e.j) {
            continue;
        }
        adj[e.i].push_back({e.j, e.w, 0.0});
        adj[e.j].push_back({e.i, e.w, 0.0});
    }
    g.finish(std::move(adj));
    g.strength.resize(g.n);
    for (int u = 0; u < g.n; ++u) {
        if (net.strength[u] != 0.0) {
            g.strength[u] = {{0, net.strength[u]}};
        }
    }
    g.inv_two_m = {1.0 / (2.0 * net.total_weight)};
    g.gain_eps = 1e-12 * (1.0 + 2.0 * net.total_weight);
    return g;
}

MoveGraph move_graph(const MultilayerNetwork& net, double omega) {
    MoveGraph g;
    g.n = net.nodelayer_count;
    g.layers = net.layer_count;
    std::vector<std::vector<MoveGraph::Arc>> adj(g.n);
    double total = 0.0;
    for (const Edge& e : net.intralayer_edges) {
        adj[e.i].push_back({e.j, e.w, 0.0});
        adj[e.j].push_back({e.i, e.w, 0.0});
        total += e.w;
    }
    for (const Edge& e : net.interlayer_edges) {
        adj[e.i].push_back({e.j, 0.0, e.w});
        adj[e.j].push_back({e.i, 0.0, e.w});
        total += std::abs(omega) * e.w;
    }
    g.finish(std::move(adj));
    g.strength.resize(g.n);
    for (int u = 0; u < g.n; ++u) {
        if (net.strength[u] != 0.0) {
            g.strength[u] = {{net.layer_of[u], net.strength[u]}};
        }
    }
    g.inv_two_m.resize(g.layers);
    for (int s = 0; s < g.layers; ++s) {
        g.inv_two_m[s] = net.layer_weight[s] > 0.0 ? 1.0 / (2.0 * net.layer_weight[s]) : 0.0;
    }
    g.gain_eps = 1e-12 * (1.0 + 2.0 * total);
    return g;
}

// Community strength sums per layer, dense (community id x layer).
class CommunitySums {
public:
    CommunitySums(const MoveGraph& g, const std::vector<int>& comm) : layers_(g.layers) {
        int cap = g.n;
        sums_.assign(static_cast<std::size_t>(cap) * layers_, 0.0);
        for (int u = 0; u < g.n; ++u) {
            add(comm[u], g.strength[u], 1.0);
        }
    }
    void add(int c, const std::vector<MoveGraph::LayerStrength>& ks, double sign) {
        for (const auto& [layer, k] : ks) {
            sums_[static_cast<std::size_t>(c) * layers_ + layer] += sign * k;
        }
    }
    double at(int c, int layer) const {
        return sums_[static_cast<std::size_t>(c) * layers_ + layer];
    }

private:
    int layers_;
    std::vector<double> sums_;
};

// Sweeps until a full pass moves nothing. Returns whether any move happened.
bool phase1(const MoveGraph& g, std::vector<int>& comm, double gamma, double omega, Rng& rng) {
    std::vector<int> order(g.n);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);

    CommunitySums sums(g, comm);
    std::vector<int> comm_size(g.n, 0);
    for (int c : comm) {
        ++comm_size[c];
    }
    std::vector<int> free_ids;
    for (int c = g.n - 1; c >= 0; --c) {
        if (comm_size[c] == 0) {
            free_ids.push_back(c);  // descending, so back() is the lowest
        }
    }

    std::vector<double> w_to(g.n, 0.0);
    std::vector<int> touched;
    bool any_move = false;
    bool moved_this_pass = true;
    while (moved_this_pass) {
        moved_this_pass = false;
        for (int u : order) {
            int c = comm[u];
            touched.clear();
            for (int a = g.offset[u]; a < g.offset[u + 1]; ++a) {
                const MoveGraph::Arc& arc = g.arcs[a];
                int d = comm[arc.to];
                if (w_to[d] == 0.0) {
                    touched.push_back(d);
                }
                w_to[d] += arc.a_w + omega * arc.c_w;
            }
            // Detach u, then score candidate communities.
            sums.add(c, g.strength[u], -1.0);
            auto null_term = [&](int d) {
                double t = 0.0;
                for (const auto& [layer, k] : g.strength[u]) {
                    t += k * sums.at(d, layer) * g.inv_two_m[layer];
                }
                return gamma * t;
            };
            double stay = w_to[c] - null_term(c);
            int best = c;
            double best_val = stay;
            for (int d : touched) {
                if (d == c) {
                    continue;
                }
                double val = w_to[d] - null_term(d);
                if (val > best_val + g.gain_eps ||
                    (val > best_val - g.gain_eps && d < best)) {
                    best = d;
                    best_val = val;
                }
            }
            // Empty community: value 0.
            if (comm_size[c] > 1 && !free_ids.empty()) {
                double val = 0.0;
                int d = free_ids.back();
                if (val > best_val + g.gain_eps ||
                    (val > best_val - g.gain_eps && d < best)) {
                    best = d;
                    best_val = val;
                }
            }
            if (best != c && best_val > stay + g.gain_eps) {
                if (comm_size[best] == 0) {
                    free_ids.pop_back();
                }
                --comm_size[c];
                ++comm_size[best];
                if (comm_size[c] == 0) {
                    free_ids.push_back(c);
                    std::sort(free_ids.begin(), free_ids.end(), std::greater<int>());
                }
                comm[u] = best;
                sums.add(best, g.strength[u], 1.0);
                moved_this_pass = true;
                any_move = true;
            } else {
                sums.add(c, g.strength[u], 1.0);
            }
            for (int d : touched) {
                w_to[d] = 0.0;
            }
        }
    }
    return any_move;
}

std::vector<int> dense_relabel(const std::vector<int>& labels, int& n_out) {
    std::vector<int> out(labels.size());
    std::map<int, int> remap;
    for (int l : labels) {
        remap.try_emplace(l, 0);
    }
    int next = 0;
    for (auto& [l, id] : remap) {
        id = next++;
    }
    for (std::size_t k = 0; k < labels.size(); ++k) {
        out[k] = remap[labels[k]];
    }
    n_out = next;
    return out;
}

MoveGraph aggregate(const MoveGraph& g, const std::vector<int>& dense_comm, int n_comm) {
    MoveGraph out;
    out.n = n_comm;
    out.layers = g.layers;
    out.inv_two_m = g.inv_two_m;
    out.gain_eps = g.gain_eps;

    std::vector<std::map<int, std::pair<double, double>>> acc(n_comm);
    for (int u = 0; u < g.n; ++u) {
        int cu = dense_comm[u];
        for (int a = g.offset[u]; a < g.offset[u + 1]; ++a) {
            const MoveGraph::Arc& arc = g.arcs[a];
            int cv = dense_comm[arc.to];
            if (cu == cv) {
                continue;  // internal weight is constant for every refinement above
            }
            auto& cell = acc[cu][cv];
            cell.first += arc.a_w;
            cell.second += arc.c_w;
        }
    }
    std::vector<std::vector<MoveGraph::Arc>> adj(n_comm);
    for (int cu = 0; cu < n_comm; ++cu) {
        for (const auto& [cv, w] : acc[cu]) {
            adj[cu].push_back({cv, w.first, w.second});
        }
    }
    out.finish(std::move(adj));

    std::vector<std::vector<double>> dense_strength(n_comm, std::vector<double>(g.layers, 0.0));
    for (int u = 0; u < g.n; ++u) {
        for (const auto& [layer, k] : g.strength[u]) {
            dense_strength[dense_comm[u]][layer] += k;
        }
    }
    out.strength.resize(n_comm);
    for (int c = 0; c < n_comm; ++c) {
        for (int s = 0; s < g.layers; ++s) {
            if (dense_strength[c][s] != 0.0) {
                out.strength[c].push_back({s, dense_strength[c][s]});
            }
        }
    }
    return out;
}

Partition run_louvain(const MoveGraph& g0, double gamma, double omega, std::uint64_t seed) {
    Rng rng(splitmix64(seed ^ 0xc0ffee5ull));
    std::vector<int> labels(g0.n);
    std::iota(labels.begin(), labels.end(), 0);

    while (true) {
        bool changed = phase1(g0, labels, gamma, omega, rng);
        // Hierarchical rounds on the aggregated graph, composed back.
        int n_comm = 0;
        std::vector<int> dense = dense_relabel(labels, n_comm);
        MoveGraph g = aggregate(g0, dense, n_comm);
        while (true) {
            std::vector<int> sub(g.n);
            std::iota(sub.begin(), sub.end(), 0);
            if (!phase1(g, sub, gamma, omega, rng)) {
                break;
            }
            for (int u = 0; u < g0.n; ++u) {
                dense[u] = sub[dense[u]];
            }
            int m = 0;
            dense = dense_relabel(dense, m);
            g = aggregate(g0, dense, m);
            changed = true;
        }
        labels = dense;
        if (!changed) {
            break;
        }
    }
    Partition p(std::move(labels));
    p.canonicalize();
    return p;
}

}  // namespace

std::uint64_t run_seed(std::uint64_t master_seed, int run_index) {
    return splitmix64(master_seed ^
                      (0x9e3779b97f4a7c15ull * (static_cast<std::uint64_t>(run_index) + 1)));
}

Partition louvain(const Network& net, double gamma, std::uint64_t seed) {
    if (net.degenerate()) {
        throw degenerate_error("network has zero total weight");
    }
    return run_louvain(move_graph(net), gamma, 0.0, seed);
}

Partition genlouvain(const MultilayerNetwork& net, double gamma, double omega,
                     std::uint64_t seed) {
    bool any_weight = !net.interlayer_edges.empty();
    for (double m : net.layer_weight) {
        if (m > 0.0) {
            any_weight = true;
        }
    }
    if (!any_weight) {
        throw degenerate_error("multilayer network has zero total weight");
    }
    return run_louvain(move_graph(net, omega), gamma, omega, seed);
}

namespace {

void validate_spec(const SweepSpec& spec, bool multilayer) {
    if (spec.runs < 1) {
        throw validation_error("runs must be >= 1");
    }
    if (!(spec.gamma_lo <= spec.gamma_hi)) {
        throw validation_error("gamma range is not well-ordered");
    }
    if (multilayer && !spec.omega_range) {
        throw validation_error("omega range required for multilayer sweeps");
    }
    if (spec.omega_range && !(spec.omega_range->first <= spec.omega_range->second)) {
        throw validation_error("omega range is not well-ordered");
    }
    if (spec.grid && (spec.grid->first < 1 || spec.grid->second < 1)) {
        throw validation_error("grid dimensions must be >= 1");
    }
}

std::pair<double, double> run_params(const SweepSpec& spec, bool multilayer, int r,
                                     std::uint64_t seed) {
    double gamma = spec.gamma_lo;
    double omega = 0.0;
    auto lerp = [](double lo, double hi, int i, int n) {
        return n <= 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (n - 1);
    };
    if (spec.grid) {
        int ng = spec.grid->first;
        int no = multilayer ? spec.grid->second : 1;
        int q = r % (ng * no);
        gamma = lerp(spec.gamma_lo, spec.gamma_hi, q % ng, ng);
        if (multilayer) {
            omega = lerp(spec.omega_range->first, spec.omega_range->second, q / ng, no);
        }
    } else {
        Rng rng(splitmix64(seed ^ 0x9a7a11e1ull));
        gamma = rng.uniform(spec.gamma_lo, spec.gamma_hi);
        if (multilayer) {
            omega = rng.uniform(spec.omega_range->first, spec.omega_range->second);
        }
    }
    return {gamma, omega};
}

template <typename Net, typename RunFn>
Ensemble sweep_impl(const Net& net, const SweepSpec& spec, bool multilayer, RunFn run) {
    validate_spec(spec, multilayer);
    std::vector<Partition> results(spec.runs);
    std::vector<RunRecord> records(spec.runs);
    parallel_for(static_cast<std::size_t>(spec.runs), [&](std::size_t r) {
        int run_index = static_cast<int>(r);
        std::uint64_t seed = run_seed(spec.master_seed, run_index);
        auto [gamma, omega] = run_params(spec, multilayer, run_index, seed);
        results[r] = run(gamma, omega, seed);
        RunRecord rec;
        rec.gamma = gamma;
        if (multilayer) {
            rec.omega = omega;
        }
        rec.seed = seed;
        rec.run_index = run_index;
        records[r] = rec;
    });
    Ensemble ens(&net);
    for (int r = 0; r < spec.runs; ++r) {
        ens.add(results[r], records[r]);
    }
    return ens;
}

}  // namespace

Ensemble ensemble_sweep(const Network& net, const SweepSpec& spec) {
    return sweep_impl(net, spec, false, [&](double gamma, double, std::uint64_t seed) {
        return louvain(net, gamma, seed);
    });
}

Ensemble ensemble_sweep(const MultilayerNetwork& net, const SweepSpec& spec) {
    return sweep_impl(net, spec, true, [&](double gamma, double omega, std::uint64_t seed) {
        return genlouvain(net, gamma, omega, seed);
    });
}

}  // namespace champ
