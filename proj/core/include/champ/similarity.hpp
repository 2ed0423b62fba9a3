#pragma once

#include <optional>
#include <vector>

#include "champ/envelope.hpp"
#include "champ/network.hpp"
#include "champ/partition.hpp"

namespace champ {

// Shared polygon borders shorter than this are point contacts, not adjacency.
inline constexpr double kBorderMinLength = 1e-9;

// Co-occurrence counts between the labels of two equal-length partitions.
struct ContingencyTable {
    std::vector<std::vector<long long>> counts;  // row: X label, col: Y label
    std::vector<long long> row_sums;
    std::vector<long long> col_sums;
    long long n = 0;

    ContingencyTable(const Partition& x, const Partition& y);
    ContingencyTable(std::vector<std::vector<long long>> cells);
};

// Entropy of the community-size distribution, in nats.
double entropy(const Partition& p);

double mutual_information(const ContingencyTable& t);

// Exact expectation of MI over random tables with the given marginals,
// hypergeometric model, via log-factorial tables.
double expected_mutual_information(const ContingencyTable& t);

// AMI = (MI - EMI) / (max(H(X), H(Y)) - EMI). Identical partitions (up to
// relabeling) return exactly 1. A vanishing denominator with MI = EMI is 0;
// with MI != EMI the adjustment is undefined and throws.
double ami(const Partition& x, const Partition& y);

// Symmetric with unit diagonal; pairs computed in parallel.
std::vector<std::vector<double>> ami_matrix(const std::vector<Partition>& partitions);

// Border-length-weighted mean AMI of each domain against its neighbors.
// partitions_by_id[d.partition_id] must be the domain's partition. A domain
// with no neighbor (or a single domain) yields an empty optional.
std::vector<std::optional<double>> neighbor_weighted_ami(
    const std::vector<Domain2D>& domains, const std::vector<Partition>& partitions_by_id);

// Total shared border length between two convex polygons.
double shared_border_length(const std::vector<Point2>& a, const std::vector<Point2>& b);

struct LayerAveragedAmi {
    double value = 0.0;
    int layers_used = 0;
    int layers_skipped = 0;   // fewer than 2 node-layers
    bool degenerate = false;  // some layer compared two single-community labelings
};

// Mean over layers of the within-layer AMI between partition labels and
// metadata labels (one metadata label per node-layer).
LayerAveragedAmi layer_averaged_ami(const MultilayerNetwork& net, const Partition& p,
                                    const std::vector<int>& metadata);

}  // namespace champ
