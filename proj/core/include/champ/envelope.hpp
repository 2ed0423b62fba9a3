#pragma once

#include <vector>

#include "champ/partition.hpp"

namespace champ {

// Two lines/planes count as identical when coefficients agree within
// kTripleEqualTol componentwise; an intersection candidate must exceed the
// current transition by kGammaStep to open a new domain.
inline constexpr double kGammaStep = 1e-12;
// 2D facets whose clipped area falls below kSliverAreaRel * box area are
// dropped and reported as measure-zero.
inline constexpr double kSliverAreaRel = 1e-12;

struct Intersection {
    enum class Kind { crossing, parallel, coplanar };
    Kind kind = Kind::crossing;
    double gamma = 0.0;  // meaningful only for crossing
};

// Crossing point of two single-layer modularity lines:
// gamma = (a1 - a2) / (p1 - p2). Equal slopes with distinct intercepts are
// parallel; equal lines are coplanar.
Intersection intersection_gamma(const CoefficientTriple& t1, const CoefficientTriple& t2);

// Half-open interval of optimality [gamma_lo, gamma_hi).
struct Domain1D {
    int partition_id = -1;
    double gamma_lo = 0.0;
    double gamma_hi = 0.0;
    CoefficientTriple triple;
    std::vector<int> aliases;  // coplanar co-optimal partition ids
};

struct Point2 {
    double gamma = 0.0;
    double omega = 0.0;
};

struct Box2 {
    double gamma_min = 0.0;
    double gamma_max = 0.0;
    double omega_min = 0.0;
    double omega_max = 0.0;

    double width() const { return gamma_max - gamma_min; }
    double height() const { return omega_max - omega_min; }
    double area() const { return width() * height(); }
};

// Convex polygon of optimality, vertices counterclockwise.
struct Domain2D {
    int partition_id = -1;
    std::vector<Point2> polygon;
    CoefficientTriple triple;
    std::vector<int> aliases;
};

struct OutsideBoxEntry {
    int partition_id = -1;
    bool measure_zero = false;  // dropped sliver rather than fully outside
    std::vector<int> aliases;
};

struct Prune2DResult {
    std::vector<Domain2D> domains;
    std::vector<OutsideBoxEntry> outside_box;
};

// Iterative upper-envelope sweep over [gamma_min, gamma_max). Starts from the
// Q-argmax at gamma_min (smallest p_hat on ties, then smallest c_hat, then
// lowest id) and walks the smallest intersection beyond each transition.
// Deterministic and independent of input order.
std::vector<Domain1D> prune_1d(const std::vector<CoefficientTriple>& triples, double gamma_min,
                               double gamma_max);

// Intersection of the upper half-spaces above the partition planes, clipped
// to the box: dual transform about an interior point, 3D convex hull of the
// dual points, then per-plane facet polygons. Admissible partitions whose
// region lies entirely outside the box land in outside_box.
Prune2DResult prune_2d(const std::vector<CoefficientTriple>& triples, const Box2& box);

// Per-point argmax of Q over the input triples; ties within a relative
// tolerance of 1e-9 are reported as sets.
std::vector<std::vector<int>> brute_force_envelope(const std::vector<CoefficientTriple>& triples,
                                                   const std::vector<double>& gammas);
std::vector<std::vector<int>> brute_force_envelope(const std::vector<CoefficientTriple>& triples,
                                                   const std::vector<Point2>& points);

struct DomainSummary {
    int partition_id = -1;
    double extent = 0.0;  // interval width (1d) or polygon area (2d)
    int n_communities = 0;
    int n_communities_ge5 = 0;
    std::string label;  // "X.Y": X = communities with >= 5 members, Y = extent rank within X
};

struct EnvelopeSummary {
    std::vector<DomainSummary> domains;
    std::vector<double> transitions;  // interior 1d boundaries; empty for 2d
};

EnvelopeSummary summarize_envelope(const std::vector<Domain1D>& domains);
EnvelopeSummary summarize_envelope(const std::vector<Domain2D>& domains);

double polygon_area(const std::vector<Point2>& polygon);

}  // namespace champ
