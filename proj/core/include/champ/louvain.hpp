#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "champ/network.hpp"
#include "champ/partition.hpp"

namespace champ {

// Parameter sweep: heuristic runs placed on a uniform grid when `grid` is
// set, i.i.d. uniform samples over the ranges otherwise. Per-run seeds are
// derived from master_seed and the run index.
struct SweepSpec {
    double gamma_lo = 0.0;
    double gamma_hi = 1.0;
    std::optional<std::pair<double, double>> omega_range;
    std::optional<std::pair<int, int>> grid;  // (n_gamma, n_omega); n_omega ignored single-layer
    int runs = 1;
    std::uint64_t master_seed = 0;
};

std::uint64_t run_seed(std::uint64_t master_seed, int run_index);

// Two-phase local-move heuristic. Node visitation order is a seed-determined
// permutation; moves require strict gain, ties broken by lowest community id.
// The returned partition is canonical and stable under every single-node
// move. Identical (network, gamma, seed) inputs reproduce identical labels.
Partition louvain(const Network& net, double gamma, std::uint64_t seed);

// Multilayer generalization over node-layer moves of
// Q = a_hat - gamma*p_hat + omega*c_hat; interlayer edges enter move gains
// like intralayer edges scaled by omega.
Partition genlouvain(const MultilayerNetwork& net, double gamma, double omega,
                     std::uint64_t seed);

// Runs the heuristic across the spec's parameter placement and de-duplicates
// the results. The unique set and provenance are independent of worker
// interleaving.
Ensemble ensemble_sweep(const Network& net, const SweepSpec& spec);
Ensemble ensemble_sweep(const MultilayerNetwork& net, const SweepSpec& spec);

}  // namespace champ
