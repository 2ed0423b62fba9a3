#pragma once

// Test-only reference implementations, kept independent of the library's
// computation paths: dense double-loop coefficient sums, exhaustive set
// partition enumeration, per-point argmax evaluation, and exact expected
// mutual information by full contingency-table enumeration.

#include <cstdint>
#include <vector>

#include "champ/envelope.hpp"
#include "champ/network.hpp"
#include "champ/partition.hpp"

namespace champ::oracle {

// Ordered double loop over dense adjacency and null matrices.
CoefficientTriple coefficients_dense(const Network& net, const Partition& p);
CoefficientTriple coefficients_dense(const MultilayerNetwork& net, const Partition& p);

// All set partitions of {0..n-1} as restricted growth strings (canonical).
std::vector<std::vector<int>> all_partitions(int n);

// Erdos-Renyi G(n, p); weighted draws uniform weights in [0.5, 1.5].
Network random_graph(int n, double edge_prob, std::uint64_t seed, bool weighted);

// argmax ids of a - gamma*p + omega*c, ties within tol of the max.
std::vector<int> argmax_at(const std::vector<CoefficientTriple>& triples, double gamma,
                           double omega, double tol);

// Exact EMI over all tables with the given marginals under the
// hypergeometric model. check_total, when given, receives the accumulated
// table probability (should be 1).
double emi_enumeration(const std::vector<long long>& row_sums,
                       const std::vector<long long>& col_sums, double* check_total = nullptr);

// Integer partitions of n in weakly decreasing order.
std::vector<std::vector<long long>> integer_partitions(int n);

// Signed distance from a point to the nearest polygon edge (positive inside).
double convex_polygon_signed_distance(const std::vector<Point2>& poly, const Point2& pt);

// True when no single-node move to a neighboring or empty community raises
// a_hat - gamma*p_hat + omega*c_hat; works on the coefficients() path.
bool is_locally_optimal(const Network& net, const Partition& p, double gamma);
bool is_locally_optimal(const MultilayerNetwork& net, const Partition& p, double gamma,
                        double omega);

}  // namespace champ::oracle
