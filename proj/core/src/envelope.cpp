#include "champ/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "champ/errors.hpp"
#include "hull3d.hpp"

namespace champ {

Intersection intersection_gamma(const CoefficientTriple& t1, const CoefficientTriple& t2) {
    double da = t1.a_hat - t2.a_hat;
    double dp = t1.p_hat - t2.p_hat;
    if (std::abs(dp) < kTripleEqualTol) {
        if (std::abs(da) < kTripleEqualTol) {
            return {Intersection::Kind::coplanar, 0.0};
        }
        return {Intersection::Kind::parallel, 0.0};
    }
    return {Intersection::Kind::crossing, da / dp};
}

namespace {

// Coplanar groups keyed by the lowest partition id; members sorted by id.
struct PlaneGroup {
    CoefficientTriple rep;
    std::vector<int> aliases;
};

std::vector<PlaneGroup> dedupe_coplanar(std::vector<CoefficientTriple> triples) {
    std::sort(triples.begin(), triples.end(),
              [](const CoefficientTriple& a, const CoefficientTriple& b) {
                  if (a.a_hat != b.a_hat) return a.a_hat < b.a_hat;
                  if (a.p_hat != b.p_hat) return a.p_hat < b.p_hat;
                  if (a.c_hat != b.c_hat) return a.c_hat < b.c_hat;
                  return a.partition_id < b.partition_id;
              });
    std::vector<PlaneGroup> groups;
    for (const CoefficientTriple& t : triples) {
        if (!groups.empty() && coefficients_equal(groups.back().rep, t)) {
            PlaneGroup& g = groups.back();
            if (t.partition_id < g.rep.partition_id) {
                g.aliases.push_back(g.rep.partition_id);
                g.rep = t;
            } else {
                g.aliases.push_back(t.partition_id);
            }
        } else {
            groups.push_back({t, {}});
        }
    }
    for (PlaneGroup& g : groups) {
        std::sort(g.aliases.begin(), g.aliases.end());
    }
    return groups;
}

// argmax of Q at a point; ties by smallest p_hat, then c_hat, then id.
int select_start(const std::vector<PlaneGroup>& groups, double gamma, double omega) {
    double best_q = -std::numeric_limits<double>::infinity();
    for (const PlaneGroup& g : groups) {
        best_q = std::max(best_q, modularity_at(g.rep, gamma, omega));
    }
    double tol = 1e-12 * (1.0 + std::abs(best_q));
    int best = -1;
    for (int k = 0; k < static_cast<int>(groups.size()); ++k) {
        if (modularity_at(groups[k].rep, gamma, omega) < best_q - tol) {
            continue;
        }
        if (best < 0) {
            best = k;
            continue;
        }
        const CoefficientTriple &a = groups[k].rep, &b = groups[best].rep;
        if (a.p_hat < b.p_hat - kTripleEqualTol) {
            best = k;
        } else if (std::abs(a.p_hat - b.p_hat) <= kTripleEqualTol &&
                   (a.c_hat < b.c_hat - kTripleEqualTol ||
                    (std::abs(a.c_hat - b.c_hat) <= kTripleEqualTol &&
                     a.partition_id < b.partition_id))) {
            best = k;
        }
    }
    return best;
}

}  // namespace

std::vector<Domain1D> prune_1d(const std::vector<CoefficientTriple>& triples, double gamma_min,
                               double gamma_max) {
    if (triples.empty()) {
        throw validation_error("no coefficient triples to prune");
    }
    if (gamma_min < 0.0 || !(gamma_min < gamma_max)) {
        throw validation_error("gamma range must satisfy 0 <= gamma_min < gamma_max");
    }
    std::vector<PlaneGroup> groups = dedupe_coplanar(triples);
    int cur = select_start(groups, gamma_min, 0.0);

    std::vector<Domain1D> domains;
    double gamma_p = gamma_min;
    while (true) {
        const CoefficientTriple& c = groups[cur].rep;
        double gamma_next = gamma_max;
        int next = -1;
        for (int k = 0; k < static_cast<int>(groups.size()); ++k) {
            const CoefficientTriple& t = groups[k].rep;
            if (!(t.p_hat < c.p_hat)) {
                continue;  // only smaller slopes can overtake
            }
            double x = (c.a_hat - t.a_hat) / (c.p_hat - t.p_hat);
            if (x <= gamma_p + kGammaStep || x >= gamma_next + kGammaStep) {
                continue;
            }
            if (next < 0 || x < gamma_next - kGammaStep) {
                gamma_next = x;
                next = k;
                continue;
            }
            // x within the tie window of gamma_next
            const CoefficientTriple& b = groups[next].rep;
            if (t.p_hat < b.p_hat - kTripleEqualTol ||
                (std::abs(t.p_hat - b.p_hat) <= kTripleEqualTol &&
                 (t.c_hat < b.c_hat - kTripleEqualTol ||
                  (std::abs(t.c_hat - b.c_hat) <= kTripleEqualTol &&
                   t.partition_id < b.partition_id)))) {
                gamma_next = std::min(gamma_next, x);
                next = k;
            }
        }
        if (next < 0 || gamma_next >= gamma_max) {
            domains.push_back({c.partition_id, gamma_p, gamma_max, c, groups[cur].aliases});
            break;
        }
        domains.push_back({c.partition_id, gamma_p, gamma_next, c, groups[cur].aliases});
        gamma_p = gamma_next;
        cur = next;
    }
    return domains;
}

std::vector<std::vector<int>> brute_force_envelope(const std::vector<CoefficientTriple>& triples,
                                                   const std::vector<double>& gammas) {
    std::vector<Point2> pts(gammas.size());
    for (std::size_t k = 0; k < gammas.size(); ++k) {
        pts[k] = {gammas[k], 0.0};
    }
    return brute_force_envelope(triples, pts);
}

std::vector<std::vector<int>> brute_force_envelope(const std::vector<CoefficientTriple>& triples,
                                                   const std::vector<Point2>& points) {
    if (triples.empty()) {
        throw validation_error("no coefficient triples");
    }
    std::vector<std::vector<int>> out(points.size());
    for (std::size_t k = 0; k < points.size(); ++k) {
        double best = -std::numeric_limits<double>::infinity();
        for (const CoefficientTriple& t : triples) {
            best = std::max(best, modularity_at(t, points[k].gamma, points[k].omega));
        }
        double tol = 1e-9 * std::max(1.0, std::abs(best));
        std::vector<int> ids;
        for (const CoefficientTriple& t : triples) {
            if (modularity_at(t, points[k].gamma, points[k].omega) >= best - tol) {
                ids.push_back(t.partition_id);
            }
        }
        std::sort(ids.begin(), ids.end());
        out[k] = std::move(ids);
    }
    return out;
}

double polygon_area(const std::vector<Point2>& polygon) {
    double twice = 0.0;
    int n = static_cast<int>(polygon.size());
    for (int k = 0; k < n; ++k) {
        const Point2 &a = polygon[k], &b = polygon[(k + 1) % n];
        twice += a.gamma * b.omega - b.gamma * a.omega;
    }
    return 0.5 * twice;
}

namespace {

std::vector<Point2> box_polygon(double g0, double g1, double o0, double o1) {
    return {{g0, o0}, {g1, o0}, {g1, o1}, {g0, o1}};
}

// Keeps h(p) = h0 + hg*gamma + ho*omega >= 0; input and output are convex CCW.
std::vector<Point2> clip_halfplane(const std::vector<Point2>& poly, double h0, double hg,
                                   double ho, double geom_tol) {
    double len = std::hypot(hg, ho);
    if (len < 1e-300) {
        return h0 >= 0.0 ? poly : std::vector<Point2>{};
    }
    h0 /= len;
    hg /= len;
    ho /= len;
    std::vector<Point2> out;
    int n = static_cast<int>(poly.size());
    for (int k = 0; k < n; ++k) {
        const Point2 &a = poly[k], &b = poly[(k + 1) % n];
        double da = h0 + hg * a.gamma + ho * a.omega;
        double db = h0 + hg * b.gamma + ho * b.omega;
        if (da >= -geom_tol) {
            out.push_back(a);
        }
        if ((da > geom_tol && db < -geom_tol) || (da < -geom_tol && db > geom_tol)) {
            double t = da / (da - db);
            out.push_back({a.gamma + t * (b.gamma - a.gamma), a.omega + t * (b.omega - a.omega)});
        }
    }
    return out;
}

void canonicalize_polygon(std::vector<Point2>& poly, double geom_tol) {
    if (poly.size() >= 3 && polygon_area(poly) < 0.0) {
        std::reverse(poly.begin(), poly.end());
    }
    std::vector<Point2> cleaned;
    for (const Point2& p : poly) {
        if (cleaned.empty() || std::hypot(p.gamma - cleaned.back().gamma,
                                          p.omega - cleaned.back().omega) > geom_tol) {
            cleaned.push_back(p);
        }
    }
    while (cleaned.size() >= 2 &&
           std::hypot(cleaned.front().gamma - cleaned.back().gamma,
                      cleaned.front().omega - cleaned.back().omega) <= geom_tol) {
        cleaned.pop_back();
    }
    if (cleaned.size() < 3) {
        poly.clear();
        return;
    }
    std::size_t start = 0;
    for (std::size_t k = 1; k < cleaned.size(); ++k) {
        if (cleaned[k].gamma < cleaned[start].gamma ||
            (cleaned[k].gamma == cleaned[start].gamma && cleaned[k].omega < cleaned[start].omega)) {
            start = k;
        }
    }
    std::rotate(cleaned.begin(), cleaned.begin() + static_cast<std::ptrdiff_t>(start),
                cleaned.end());
    poly = std::move(cleaned);
}

// Region of the box where plane `self` dominates every plane in `others`.
std::vector<Point2> dominance_polygon(const CoefficientTriple& self,
                                      const std::vector<const CoefficientTriple*>& others,
                                      double g0, double g1, double o0, double o1,
                                      double geom_tol) {
    std::vector<Point2> poly = box_polygon(g0, g1, o0, o1);
    for (const CoefficientTriple* t : others) {
        // Q_self - Q_t >= 0
        poly = clip_halfplane(poly, self.a_hat - t->a_hat, -(self.p_hat - t->p_hat),
                              self.c_hat - t->c_hat, geom_tol);
        if (poly.size() < 3) {
            return {};
        }
    }
    return poly;
}

}  // namespace

Prune2DResult prune_2d(const std::vector<CoefficientTriple>& triples, const Box2& box) {
    if (triples.empty()) {
        throw validation_error("no coefficient triples to prune");
    }
    if (!(box.gamma_min < box.gamma_max) || !(box.omega_min < box.omega_max)) {
        throw validation_error("degenerate box");
    }
    if (box.gamma_min < 0.0 || box.omega_min < 0.0) {
        throw validation_error("box must lie in gamma >= 0, omega >= 0");
    }
    std::vector<PlaneGroup> groups = dedupe_coplanar(triples);
    const int n_groups = static_cast<int>(groups.size());

    // Enlarged box for classifying admissible-but-outside domains.
    double margin = 10.0 * std::max(box.width(), box.height());
    double eg0 = std::max(0.0, box.gamma_min - margin);
    double eg1 = box.gamma_max + margin;
    double eo0 = std::max(0.0, box.omega_min - margin);
    double eo1 = box.omega_max + margin;

    // Candidate admissible set via the dual convex hull.
    std::vector<int> candidates;
    {
        double gc = 0.5 * (eg0 + eg1);
        double oc = 0.5 * (eo0 + eo1);
        double max_abs = 0.0;
        double env_center = -std::numeric_limits<double>::infinity();
        double env_corners = -std::numeric_limits<double>::infinity();
        for (const PlaneGroup& g : groups) {
            max_abs = std::max({max_abs, std::abs(g.rep.a_hat), std::abs(g.rep.p_hat),
                                std::abs(g.rep.c_hat)});
            env_center = std::max(env_center, modularity_at(g.rep, gc, oc));
            for (double gg : {eg0, eg1}) {
                for (double oo : {eo0, eo1}) {
                    env_corners = std::max(env_corners, modularity_at(g.rep, gg, oo));
                }
            }
        }
        double qc = env_center + 1.0 + max_abs;
        double q_top = env_corners + 2.0 * (1.0 + max_abs);

        // Halfspace n.x <= c with x = (gamma, omega, Q); dual point n / (c - n.x0).
        std::vector<detail::Vec3> dual;
        dual.reserve(groups.size() + 5);
        auto push = [&](double nx, double ny, double nz, double c) {
            double denom = c - (nx * gc + ny * oc + nz * qc);
            dual.push_back({nx / denom, ny / denom, nz / denom});
        };
        for (const PlaneGroup& g : groups) {
            push(-g.rep.p_hat, g.rep.c_hat, -1.0, -g.rep.a_hat);
        }
        push(-1.0, 0.0, 0.0, -eg0);
        push(1.0, 0.0, 0.0, eg1);
        push(0.0, -1.0, 0.0, -eo0);
        push(0.0, 1.0, 0.0, eo1);
        push(0.0, 0.0, 1.0, q_top);

        for (int v : detail::convex_hull_vertices(dual)) {
            if (v < n_groups) {
                candidates.push_back(v);
            }
        }
        std::sort(candidates.begin(), candidates.end());
    }

    double geom_tol = 1e-12 * (1.0 + std::abs(eg1) + std::abs(eo1));
    double sliver = kSliverAreaRel * box.area();

    auto build = [&](const std::vector<int>& cand) {
        Prune2DResult res;
        std::vector<const CoefficientTriple*> others;
        for (int k : cand) {
            others.clear();
            for (int other : cand) {
                if (other != k) {
                    others.push_back(&groups[other].rep);
                }
            }
            std::vector<Point2> wide = dominance_polygon(groups[k].rep, others, eg0, eg1, eo0,
                                                         eo1, geom_tol);
            canonicalize_polygon(wide, geom_tol);
            if (wide.empty() || polygon_area(wide) <= sliver) {
                continue;  // redundant plane admitted by hull tolerance
            }
            std::vector<Point2> poly = dominance_polygon(
                groups[k].rep, others, box.gamma_min, box.gamma_max, box.omega_min,
                box.omega_max, geom_tol);
            canonicalize_polygon(poly, geom_tol);
            double area = poly.empty() ? 0.0 : polygon_area(poly);
            if (area > sliver) {
                res.domains.push_back(
                    {groups[k].rep.partition_id, std::move(poly), groups[k].rep,
                     groups[k].aliases});
            } else {
                res.outside_box.push_back(
                    {groups[k].rep.partition_id, !poly.empty(), groups[k].aliases});
            }
        }
        return res;
    };

    Prune2DResult result = build(candidates);
    double covered = 0.0;
    for (const Domain2D& d : result.domains) {
        covered += polygon_area(d.polygon);
    }
    if (std::abs(covered - box.area()) > 1e-9 * box.area() &&
        candidates.size() < groups.size()) {
        // Hull tolerance dropped a needed plane; redo against every plane.
        std::vector<int> all(groups.size());
        std::iota(all.begin(), all.end(), 0);
        result = build(all);
    }
    std::sort(result.domains.begin(), result.domains.end(),
              [](const Domain2D& a, const Domain2D& b) { return a.partition_id < b.partition_id; });
    std::sort(result.outside_box.begin(), result.outside_box.end(),
              [](const OutsideBoxEntry& a, const OutsideBoxEntry& b) {
                  return a.partition_id < b.partition_id;
              });
    return result;
}

namespace {

template <typename Domain>
EnvelopeSummary summarize(const std::vector<Domain>& domains,
                          const std::vector<double>& extents, std::vector<double> transitions) {
    EnvelopeSummary summary;
    summary.transitions = std::move(transitions);
    summary.domains.resize(domains.size());
    for (std::size_t k = 0; k < domains.size(); ++k) {
        DomainSummary& s = summary.domains[k];
        s.partition_id = domains[k].partition_id;
        s.extent = extents[k];
        s.n_communities = domains[k].triple.n_communities;
        s.n_communities_ge5 = domains[k].triple.n_communities_ge5;
    }
    // "X.Y" labels: Y ranks extent (descending) among domains sharing X.
    std::vector<std::size_t> order(domains.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (summary.domains[a].n_communities_ge5 != summary.domains[b].n_communities_ge5) {
            return summary.domains[a].n_communities_ge5 < summary.domains[b].n_communities_ge5;
        }
        if (summary.domains[a].extent != summary.domains[b].extent) {
            return summary.domains[a].extent > summary.domains[b].extent;
        }
        return summary.domains[a].partition_id < summary.domains[b].partition_id;
    });
    int prev_x = -1;
    int rank = 0;
    for (std::size_t idx : order) {
        DomainSummary& s = summary.domains[idx];
        rank = (s.n_communities_ge5 == prev_x) ? rank + 1 : 1;
        prev_x = s.n_communities_ge5;
        s.label = std::to_string(s.n_communities_ge5) + "." + std::to_string(rank);
    }
    return summary;
}

}  // namespace

EnvelopeSummary summarize_envelope(const std::vector<Domain1D>& domains) {
    std::vector<double> extents;
    std::vector<double> transitions;
    extents.reserve(domains.size());
    for (std::size_t k = 0; k < domains.size(); ++k) {
        extents.push_back(domains[k].gamma_hi - domains[k].gamma_lo);
        if (k > 0) {
            transitions.push_back(domains[k].gamma_lo);
        }
    }
    return summarize(domains, extents, std::move(transitions));
}

EnvelopeSummary summarize_envelope(const std::vector<Domain2D>& domains) {
    std::vector<double> extents;
    extents.reserve(domains.size());
    for (const Domain2D& d : domains) {
        extents.push_back(polygon_area(d.polygon));
    }
    return summarize(domains, extents, {});
}

}  // namespace champ
