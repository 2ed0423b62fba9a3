#pragma once

#include <optional>
#include <string>
#include <vector>

#include "champ/envelope.hpp"
#include "champ/network.hpp"
#include "champ/partition.hpp"

namespace champ {

// Whitespace-delimited `src dst [weight]`, default weight 1.0, `#` comments.
Network read_network_file(const std::string& path);

// Whitespace-delimited `i_actor i_layer j_actor j_layer weight kind`,
// kind in {intra, inter}.
MultilayerNetwork read_multilayer_file(const std::string& path);

// Two-column `node label`; order-free, missing nodes keep an empty label.
void attach_metadata(Network& net, const std::string& path);

// `actor label` (broadcast across layers) or `actor layer label`.
void attach_metadata(MultilayerNetwork& net, const std::string& path);

// Metadata labels as dense integer codes in first-appearance order; an empty
// label is a category of its own.
std::vector<int> metadata_codes(const std::vector<std::string>& labels);

// One JSON object per heuristic run:
// {"gamma": number, "omega": number|null, "seed": integer, "labels": [ints]}.
// Lines are ordered by run index.
void write_ensemble_jsonl(const Ensemble& ens, const std::string& path);

// Reads runs back into an ensemble over `net`; run index = line number.
Ensemble read_ensemble_jsonl(const Network& net, const std::string& path);
Ensemble read_ensemble_jsonl(const MultilayerNetwork& net, const std::string& path);

// header: partition_id,a_hat,p_hat,c_hat,n_communities,n_communities_ge5
void write_coefficients_csv(const std::vector<CoefficientTriple>& triples,
                            const std::string& path);

struct DomainAnnotations {
    std::vector<std::optional<double>> neighbor_ami;  // aligned with domains
    std::vector<std::optional<double>> metadata_ami;
};

struct DomainDocument {
    std::string mode;  // "1d" | "2d"
    std::vector<double> box;
    std::vector<Domain1D> domains_1d;
    std::vector<Domain2D> domains_2d;
    std::vector<OutsideBoxEntry> outside_box;
    EnvelopeSummary summary;
    DomainAnnotations annotations;
};

void write_domains_json(const DomainDocument& doc, const std::string& path);
DomainDocument read_domains_json(const std::string& path);

// Square matrix with partition ids as header row and column.
void write_ami_matrix_csv(const std::vector<int>& partition_ids,
                          const std::vector<std::vector<double>>& matrix,
                          const std::string& path);

// Per-run scatter data: run_index,gamma,omega,q_at_run,n_communities,n_communities_ge5.
void write_scatter_csv(const Ensemble& ens, const std::string& path);

}  // namespace champ
