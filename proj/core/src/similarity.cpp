#include "champ/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "champ/errors.hpp"
#include "champ/parallel.hpp"

namespace champ {

namespace {

std::vector<int> dense_codes(const std::vector<int>& labels, int& n_codes) {
    std::unordered_map<int, int> remap;
    std::vector<int> codes(labels.size());
    for (std::size_t k = 0; k < labels.size(); ++k) {
        auto [it, inserted] = remap.try_emplace(labels[k], static_cast<int>(remap.size()));
        codes[k] = it->second;
    }
    n_codes = static_cast<int>(remap.size());
    return codes;
}

// log(k!) for k = 0..n.
std::vector<double> log_factorials(long long n) {
    std::vector<double> lf(static_cast<std::size_t>(n) + 1, 0.0);
    for (long long k = 1; k <= n; ++k) {
        lf[k] = lf[k - 1] + std::log(static_cast<double>(k));
    }
    return lf;
}

double entropy_of_sums(const std::vector<long long>& sums, long long n) {
    double h = 0.0;
    for (long long s : sums) {
        if (s > 0) {
            double p = static_cast<double>(s) / static_cast<double>(n);
            h -= p * std::log(p);
        }
    }
    return h;
}

}  // namespace

ContingencyTable::ContingencyTable(const Partition& x, const Partition& y) {
    if (x.size() != y.size()) {
        throw validation_error("partition lengths differ");
    }
    if (x.labels.empty()) {
        throw validation_error("empty partitions");
    }
    int r = 0;
    int c = 0;
    std::vector<int> xs = dense_codes(x.labels, r);
    std::vector<int> ys = dense_codes(y.labels, c);
    counts.assign(r, std::vector<long long>(c, 0));
    for (std::size_t k = 0; k < xs.size(); ++k) {
        ++counts[xs[k]][ys[k]];
    }
    row_sums.assign(r, 0);
    col_sums.assign(c, 0);
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < c; ++j) {
            row_sums[i] += counts[i][j];
            col_sums[j] += counts[i][j];
        }
    }
    n = static_cast<long long>(xs.size());
}

ContingencyTable::ContingencyTable(std::vector<std::vector<long long>> cells)
    : counts(std::move(cells)) {
    if (counts.empty() || counts[0].empty()) {
        throw validation_error("empty contingency table");
    }
    row_sums.assign(counts.size(), 0);
    col_sums.assign(counts[0].size(), 0);
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i].size() != counts[0].size()) {
            throw validation_error("ragged contingency table");
        }
        for (std::size_t j = 0; j < counts[i].size(); ++j) {
            if (counts[i][j] < 0) {
                throw validation_error("negative contingency count");
            }
            row_sums[i] += counts[i][j];
            col_sums[j] += counts[i][j];
            n += counts[i][j];
        }
    }
}

double entropy(const Partition& p) {
    if (p.labels.empty()) {
        throw validation_error("empty partition");
    }
    std::unordered_map<int, long long> sizes;
    for (int l : p.labels) {
        ++sizes[l];
    }
    std::vector<long long> sums;
    sums.reserve(sizes.size());
    for (const auto& [l, s] : sizes) {
        sums.push_back(s);
    }
    return entropy_of_sums(sums, p.size());
}

double mutual_information(const ContingencyTable& t) {
    double mi = 0.0;
    double nd = static_cast<double>(t.n);
    for (std::size_t i = 0; i < t.counts.size(); ++i) {
        for (std::size_t j = 0; j < t.counts[i].size(); ++j) {
            long long nij = t.counts[i][j];
            if (nij > 0) {
                mi += (nij / nd) *
                      std::log(nd * static_cast<double>(nij) /
                               (static_cast<double>(t.row_sums[i]) *
                                static_cast<double>(t.col_sums[j])));
            }
        }
    }
    return mi;
}

double expected_mutual_information(const ContingencyTable& t) {
    const long long n = t.n;
    std::vector<double> lf = log_factorials(n);
    double emi = 0.0;
    double nd = static_cast<double>(n);
    for (long long a : t.row_sums) {
        for (long long b : t.col_sums) {
            if (a == 0 || b == 0) {
                continue;
            }
            long long lo = std::max<long long>(1, a + b - n);
            long long hi = std::min(a, b);
            for (long long nij = lo; nij <= hi; ++nij) {
                // Hypergeometric P(n_ij) with marginals a, b.
                double logp = lf[a] + lf[b] + lf[n - a] + lf[n - b] - lf[n] - lf[nij] -
                              lf[a - nij] - lf[b - nij] - lf[n - a - b + nij];
                double term = (static_cast<double>(nij) / nd) *
                              std::log(nd * static_cast<double>(nij) /
                                       (static_cast<double>(a) * static_cast<double>(b)));
                emi += std::exp(logp) * term;
            }
        }
    }
    return emi;
}

double ami(const Partition& x, const Partition& y) {
    if (x.size() != y.size()) {
        throw validation_error("partition lengths differ");
    }
    if (x.canonical() == y.canonical()) {
        return 1.0;
    }
    ContingencyTable t(x, y);
    double hx = entropy_of_sums(t.row_sums, t.n);
    double hy = entropy_of_sums(t.col_sums, t.n);
    double mi = mutual_information(t);
    double emi = expected_mutual_information(t);
    double denom = std::max(hx, hy) - emi;
    if (std::abs(denom) < 1e-12) {
        if (std::abs(mi - emi) < 1e-12) {
            return 0.0;
        }
        throw degenerate_error("undefined adjustment: zero AMI denominator");
    }
    return (mi - emi) / denom;
}

std::vector<std::vector<double>> ami_matrix(const std::vector<Partition>& partitions) {
    if (partitions.empty()) {
        throw validation_error("empty partition set");
    }
    int n = static_cast<int>(partitions.size());
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 1.0));
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            pairs.emplace_back(i, j);
        }
    }
    parallel_for(pairs.size(), [&](std::size_t k) {
        auto [i, j] = pairs[k];
        double v = ami(partitions[i], partitions[j]);
        m[i][j] = v;
        m[j][i] = v;
    });
    return m;
}

namespace {

struct Segment {
    Point2 a;
    Point2 b;
};

// Overlap length of two collinear-within-tolerance segments.
double collinear_overlap(const Segment& s, const Segment& t) {
    double dx = s.b.gamma - s.a.gamma;
    double dy = s.b.omega - s.a.omega;
    double len = std::hypot(dx, dy);
    if (len < kBorderMinLength) {
        return 0.0;
    }
    double ux = dx / len;
    double uy = dy / len;
    // t's endpoints must lie on s's supporting line.
    for (const Point2& p : {t.a, t.b}) {
        double off = (p.gamma - s.a.gamma) * uy - (p.omega - s.a.omega) * ux;
        if (std::abs(off) > 1e-9) {
            return 0.0;
        }
    }
    auto proj = [&](const Point2& p) {
        return (p.gamma - s.a.gamma) * ux + (p.omega - s.a.omega) * uy;
    };
    double t0 = proj(t.a);
    double t1 = proj(t.b);
    if (t0 > t1) {
        std::swap(t0, t1);
    }
    double lo = std::max(0.0, t0);
    double hi = std::min(len, t1);
    return std::max(0.0, hi - lo);
}

std::vector<Segment> polygon_edges(const std::vector<Point2>& poly) {
    std::vector<Segment> edges;
    int n = static_cast<int>(poly.size());
    for (int k = 0; k < n; ++k) {
        edges.push_back({poly[k], poly[(k + 1) % n]});
    }
    return edges;
}

}  // namespace

double shared_border_length(const std::vector<Point2>& a, const std::vector<Point2>& b) {
    double total = 0.0;
    for (const Segment& sa : polygon_edges(a)) {
        for (const Segment& sb : polygon_edges(b)) {
            total += collinear_overlap(sa, sb);
        }
    }
    return total;
}

std::vector<std::optional<double>> neighbor_weighted_ami(
    const std::vector<Domain2D>& domains, const std::vector<Partition>& partitions_by_id) {
    int n = static_cast<int>(domains.size());
    std::vector<std::optional<double>> out(n);
    if (n < 2) {
        return out;
    }
    std::vector<std::vector<double>> border(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double len = shared_border_length(domains[i].polygon, domains[j].polygon);
            if (len > kBorderMinLength) {
                border[i][j] = len;
                border[j][i] = len;
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        double weight = 0.0;
        double acc = 0.0;
        for (int j = 0; j < n; ++j) {
            if (border[i][j] > 0.0) {
                acc += border[i][j] * ami(partitions_by_id.at(domains[i].partition_id),
                                          partitions_by_id.at(domains[j].partition_id));
                weight += border[i][j];
            }
        }
        if (weight > 0.0) {
            out[i] = acc / weight;
        }
    }
    return out;
}

LayerAveragedAmi layer_averaged_ami(const MultilayerNetwork& net, const Partition& p,
                                    const std::vector<int>& metadata) {
    if (p.size() != net.nodelayer_count ||
        static_cast<int>(metadata.size()) != net.nodelayer_count) {
        throw validation_error("labels must cover every node-layer");
    }
    LayerAveragedAmi result;
    double sum = 0.0;
    for (int s = 0; s < net.layer_count; ++s) {
        std::vector<int> part_labels;
        std::vector<int> meta_labels;
        for (int i = 0; i < net.nodelayer_count; ++i) {
            if (net.layer_of[i] == s) {
                part_labels.push_back(p.labels[i]);
                meta_labels.push_back(metadata[i]);
            }
        }
        if (part_labels.size() < 2) {
            ++result.layers_skipped;
            continue;
        }
        Partition px(std::move(part_labels));
        Partition py(std::move(meta_labels));
        if (px.community_count() == 1 && py.community_count() == 1) {
            result.degenerate = true;
        }
        sum += ami(px, py);
        ++result.layers_used;
    }
    if (result.layers_used == 0) {
        throw degenerate_error("no layer large enough to compare");
    }
    result.value = sum / result.layers_used;
    return result;
}

}  // namespace champ
