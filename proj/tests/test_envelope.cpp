#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "champ/envelope.hpp"
#include "champ/errors.hpp"
#include "oracles.hpp"

using namespace champ;

namespace {

CoefficientTriple triple(double a, double p, double c, int id) {
    CoefficientTriple t;
    t.a_hat = a;
    t.p_hat = p;
    t.c_hat = c;
    t.partition_id = id;
    return t;
}

// triangle partitions: all-in-one, three 2|1 splits, singletons
std::vector<CoefficientTriple> triangle_triples() {
    return {triple(6, 6, 0, 0), triple(2, 10.0 / 3.0, 0, 1), triple(2, 10.0 / 3.0, 0, 2),
            triple(2, 10.0 / 3.0, 0, 3), triple(0, 2, 0, 4)};
}

// path 0-1-2: all-in-one, {01}{2}, {0}{12}, {02}{1}, singletons
std::vector<CoefficientTriple> path_triples() {
    return {triple(4, 4, 0, 0), triple(2, 2.5, 0, 1), triple(2, 2.5, 0, 2),
            triple(0, 2, 0, 3), triple(0, 1.5, 0, 4)};
}

std::vector<CoefficientTriple> random_triples(int n, std::uint64_t seed, bool with_c) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ua(0.0, 20.0);
    std::uniform_real_distribution<double> up(0.0, 10.0);
    std::uniform_real_distribution<double> uc(0.0, 5.0);
    std::vector<CoefficientTriple> out;
    for (int k = 0; k < n; ++k) {
        out.push_back(triple(ua(rng), up(rng), with_c ? uc(rng) : 0.0, k));
    }
    return out;
}

void check_same_domains(const std::vector<Domain1D>& a, const std::vector<Domain1D>& b) {
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(a[k].partition_id == b[k].partition_id);
        CHECK(a[k].gamma_lo == doctest::Approx(b[k].gamma_lo).epsilon(1e-12));
        CHECK(a[k].gamma_hi == doctest::Approx(b[k].gamma_hi).epsilon(1e-12));
    }
}

}  // namespace

TEST_CASE("intersection_gamma cases") {
    Intersection x = intersection_gamma(triple(6, 6, 0, 0), triple(0, 2, 0, 1));
    CHECK(x.kind == Intersection::Kind::crossing);
    CHECK(x.gamma == doctest::Approx(1.5));

    CHECK(intersection_gamma(triple(5, 3, 0, 0), triple(2, 3, 0, 1)).kind ==
          Intersection::Kind::parallel);
    CHECK(intersection_gamma(triple(2, 2.5, 0, 0), triple(2, 2.5, 0, 1)).kind ==
          Intersection::Kind::coplanar);
}

TEST_CASE("triangle prune_1d: middle partition pruned at the triple tie") {
    std::vector<Domain1D> domains = prune_1d(triangle_triples(), 0.0, 6.0);
    REQUIRE(domains.size() == 2);
    CHECK(domains[0].partition_id == 0);
    CHECK(domains[0].gamma_lo == doctest::Approx(0.0));
    CHECK(domains[0].gamma_hi == doctest::Approx(1.5));
    CHECK(domains[1].partition_id == 4);
    CHECK(domains[1].gamma_hi == doctest::Approx(6.0));
}

TEST_CASE("path prune_1d keeps a coplanar alias") {
    std::vector<Domain1D> domains = prune_1d(path_triples(), 0.0, 6.0);
    REQUIRE(domains.size() == 3);
    CHECK(domains[0].partition_id == 0);
    CHECK(domains[0].gamma_hi == doctest::Approx(4.0 / 3.0));
    CHECK(domains[1].partition_id == 1);
    CHECK(domains[1].aliases == std::vector<int>{2});
    CHECK(domains[1].gamma_hi == doctest::Approx(2.0));
    CHECK(domains[2].partition_id == 4);
}

TEST_CASE("single triple owns the whole range") {
    std::vector<Domain1D> domains = prune_1d({triple(3, 1, 0, 9)}, 0.5, 4.0);
    REQUIRE(domains.size() == 1);
    CHECK(domains[0].partition_id == 9);
    CHECK(domains[0].gamma_lo == doctest::Approx(0.5));
    CHECK(domains[0].gamma_hi == doctest::Approx(4.0));
}

TEST_CASE("start above zero uses the argmax at gamma_min") {
    std::vector<Domain1D> domains = prune_1d(triangle_triples(), 2.0, 6.0);
    REQUIRE(domains.size() == 1);
    CHECK(domains[0].partition_id == 4);
}

TEST_CASE("prune_1d validation") {
    CHECK_THROWS_AS(prune_1d({}, 0.0, 1.0), validation_error);
    CHECK_THROWS_AS(prune_1d(triangle_triples(), -1.0, 1.0), validation_error);
    CHECK_THROWS_AS(prune_1d(triangle_triples(), 2.0, 2.0), validation_error);
}

TEST_CASE("1d domains tile the range and match the point oracle") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        std::vector<CoefficientTriple> triples = random_triples(80, seed, false);
        std::vector<Domain1D> domains = prune_1d(triples, 0.0, 5.0);

        CHECK(domains.front().gamma_lo == doctest::Approx(0.0));
        CHECK(domains.back().gamma_hi == doctest::Approx(5.0));
        for (std::size_t k = 1; k < domains.size(); ++k) {
            CHECK(domains[k].gamma_lo == doctest::Approx(domains[k - 1].gamma_hi));
            CHECK(domains[k].gamma_lo < domains[k].gamma_hi);
        }
        for (int s = 0; s < 500; ++s) {
            double g = 5.0 * (s + 0.5) / 500.0;
            const Domain1D* owner = nullptr;
            for (const Domain1D& d : domains) {
                if (g >= d.gamma_lo && g < d.gamma_hi) {
                    owner = &d;
                }
            }
            REQUIRE(owner != nullptr);
            std::vector<int> best = oracle::argmax_at(triples, g, 0.0, 1e-9);
            bool near_border = std::abs(g - owner->gamma_lo) < 1e-6 ||
                               std::abs(g - owner->gamma_hi) < 1e-6;
            if (!near_border) {
                CHECK(std::find(best.begin(), best.end(), owner->partition_id) != best.end());
            }
        }
    }
}

TEST_CASE("1d output is independent of input order and of dominated insertions") {
    std::vector<CoefficientTriple> triples = random_triples(50, 77, false);
    std::vector<Domain1D> base = prune_1d(triples, 0.0, 4.0);

    std::vector<CoefficientTriple> shuffled = triples;
    std::mt19937_64 rng(123);
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    check_same_domains(base, prune_1d(shuffled, 0.0, 4.0));

    CoefficientTriple below = base[0].triple;
    below.a_hat -= 1.0;
    below.partition_id = 999;
    std::vector<CoefficientTriple> extended = triples;
    extended.push_back(below);
    check_same_domains(base, prune_1d(extended, 0.0, 4.0));
}

TEST_CASE("exhaustive small-graph envelopes match the sampled argmax") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        int n = 5 + static_cast<int>(seed % 2);
        Network net = oracle::random_graph(n, 0.55, seed, seed % 2 == 0);
        std::vector<CoefficientTriple> triples;
        std::vector<std::vector<int>> parts = oracle::all_partitions(n);
        for (std::size_t k = 0; k < parts.size(); ++k) {
            CoefficientTriple t = coefficients(net, Partition(parts[k]));
            t.partition_id = static_cast<int>(k);
            triples.push_back(t);
        }
        std::vector<Domain1D> domains = prune_1d(triples, 0.0, 4.0);
        for (int s = 0; s < 200; ++s) {
            double g = 4.0 * (s + 0.5) / 200.0;
            const Domain1D* owner = nullptr;
            for (const Domain1D& d : domains) {
                if (g >= d.gamma_lo && g < d.gamma_hi) {
                    owner = &d;
                }
            }
            REQUIRE(owner != nullptr);
            if (std::abs(g - owner->gamma_lo) < 1e-6 || std::abs(g - owner->gamma_hi) < 1e-6) {
                continue;
            }
            std::vector<int> best = oracle::argmax_at(triples, g, 0.0, 1e-9);
            CHECK(std::find(best.begin(), best.end(), owner->partition_id) != best.end());
        }
    }
}

TEST_CASE("2d three-plane toy: exact borders and areas") {
    std::vector<CoefficientTriple> triples = {triple(10, 10, 0, 0), triple(6, 2, 0, 1),
                                              triple(8, 6, 4, 2)};
    Prune2DResult res = prune_2d(triples, {0.0, 2.0, 0.0, 2.0});
    REQUIRE(res.domains.size() == 3);
    CHECK(res.outside_box.empty());

    const Domain2D& d0 = res.domains[0];
    REQUIRE(d0.partition_id == 0);
    REQUIRE(d0.polygon.size() == 3);
    CHECK(d0.polygon[0].gamma == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(d0.polygon[0].omega == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(polygon_area(d0.polygon) == doctest::Approx(0.125).epsilon(1e-9));

    CHECK(polygon_area(res.domains[1].polygon) == doctest::Approx(1.125).epsilon(1e-9));
    CHECK(res.domains[1].polygon.size() == 3);

    const Domain2D& d2 = res.domains[2];
    CHECK(polygon_area(d2.polygon) == doctest::Approx(2.75).epsilon(1e-9));
    REQUIRE(d2.polygon.size() == 5);
    CHECK(d2.polygon[0].gamma == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(d2.polygon[0].omega == doctest::Approx(0.5).epsilon(1e-9));

    double total = 0.0;
    for (const Domain2D& d : res.domains) {
        total += polygon_area(d.polygon);
    }
    CHECK(total == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("single plane owns the whole box") {
    Prune2DResult res = prune_2d({triple(1, 1, 1, 3)}, {0.0, 1.0, 0.0, 2.0});
    REQUIRE(res.domains.size() == 1);
    CHECK(res.domains[0].partition_id == 3);
    CHECK(polygon_area(res.domains[0].polygon) == doctest::Approx(2.0));
}

TEST_CASE("prune_2d validation") {
    CHECK_THROWS_AS(prune_2d({}, {0, 1, 0, 1}), validation_error);
    CHECK_THROWS_AS(prune_2d({triple(1, 1, 0, 0)}, {0, 0, 0, 1}), validation_error);
    CHECK_THROWS_AS(prune_2d({triple(1, 1, 0, 0)}, {0, 1, -0.5, 1}), validation_error);
}

TEST_CASE("planes without coupling reduce to 1d strips") {
    for (std::uint64_t seed = 2; seed <= 5; ++seed) {
        std::vector<CoefficientTriple> triples = random_triples(40, seed, false);
        std::vector<Domain1D> lines = prune_1d(triples, 0.2, 3.0);
        Prune2DResult planes = prune_2d(triples, {0.2, 3.0, 0.0, 1.5});
        REQUIRE(planes.domains.size() == lines.size());
        // strip boundaries equal the 1d transitions
        std::sort(planes.domains.begin(), planes.domains.end(),
                  [](const Domain2D& a, const Domain2D& b) {
                      return a.polygon[0].gamma < b.polygon[0].gamma;
                  });
        for (std::size_t k = 0; k < lines.size(); ++k) {
            CHECK(planes.domains[k].partition_id == lines[k].partition_id);
            double lo = 1e300;
            double hi = -1e300;
            for (const Point2& p : planes.domains[k].polygon) {
                lo = std::min(lo, p.gamma);
                hi = std::max(hi, p.gamma);
            }
            CHECK(lo == doctest::Approx(lines[k].gamma_lo).epsilon(1e-9));
            CHECK(hi == doctest::Approx(lines[k].gamma_hi).epsilon(1e-9));
        }
    }
}

TEST_CASE("2d domains match the grid argmax away from borders") {
    for (std::uint64_t seed = 10; seed < 15; ++seed) {
        std::vector<CoefficientTriple> triples = random_triples(60, seed, true);
        Box2 box{0.0, 3.0, 0.0, 2.0};
        Prune2DResult res = prune_2d(triples, box);

        double covered = 0.0;
        for (const Domain2D& d : res.domains) {
            covered += polygon_area(d.polygon);
        }
        CHECK(covered == doctest::Approx(box.area()).epsilon(1e-6));

        const int grid = 60;
        for (int gi = 0; gi < grid; ++gi) {
            for (int oi = 0; oi < grid; ++oi) {
                Point2 pt{box.gamma_min + box.width() * (gi + 0.5) / grid,
                          box.omega_min + box.height() * (oi + 0.5) / grid};
                const Domain2D* owner = nullptr;
                double dist = 0.0;
                for (const Domain2D& d : res.domains) {
                    double sd = oracle::convex_polygon_signed_distance(d.polygon, pt);
                    if (sd > dist) {
                        dist = sd;
                        owner = &d;
                    }
                }
                if (owner == nullptr || dist <= 1e-6) {
                    continue;  // border zone
                }
                std::vector<int> best = oracle::argmax_at(triples, pt.gamma, pt.omega, 1e-9);
                CHECK(std::find(best.begin(), best.end(), owner->partition_id) != best.end());
            }
        }
    }
}

TEST_CASE("2d output is independent of input order") {
    std::vector<CoefficientTriple> triples = random_triples(45, 31, true);
    Prune2DResult base = prune_2d(triples, {0.0, 2.0, 0.0, 2.0});
    std::vector<CoefficientTriple> shuffled = triples;
    std::mt19937_64 rng(5);
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    Prune2DResult other = prune_2d(shuffled, {0.0, 2.0, 0.0, 2.0});
    REQUIRE(base.domains.size() == other.domains.size());
    for (std::size_t k = 0; k < base.domains.size(); ++k) {
        CHECK(base.domains[k].partition_id == other.domains[k].partition_id);
        REQUIRE(base.domains[k].polygon.size() == other.domains[k].polygon.size());
        for (std::size_t v = 0; v < base.domains[k].polygon.size(); ++v) {
            CHECK(base.domains[k].polygon[v].gamma ==
                  doctest::Approx(other.domains[k].polygon[v].gamma).epsilon(1e-12));
        }
    }
}

TEST_CASE("admissible plane outside the box is reported") {
    // Third plane wins only for gamma > 4, outside the box.
    std::vector<CoefficientTriple> triples = {triple(10, 2, 0, 0), triple(6, 1, 0, 1),
                                              triple(2, 0, 0, 2)};
    Prune2DResult res = prune_2d(triples, {0.0, 2.0, 0.0, 1.0});
    REQUIRE(res.domains.size() == 1);
    CHECK(res.domains[0].partition_id == 0);
    REQUIRE(res.outside_box.size() >= 1);
    bool found = false;
    for (const OutsideBoxEntry& e : res.outside_box) {
        if (e.partition_id == 2) {
            found = true;
            CHECK_FALSE(e.measure_zero);
        }
    }
    CHECK(found);
}

TEST_CASE("brute force envelope examples") {
    std::vector<CoefficientTriple> triples = triangle_triples();
    std::vector<std::vector<int>> at1 = brute_force_envelope(triples, std::vector<double>{1.0});
    CHECK(at1[0] == std::vector<int>{0});
    std::vector<std::vector<int>> at15 =
        brute_force_envelope(triples, std::vector<double>{1.5});
    CHECK(at15[0] == std::vector<int>{0, 1, 2, 3, 4});  // threefold line tie at 1.5

    // any domain centroid reports its owner
    std::vector<Domain1D> domains = prune_1d(triples, 0.0, 6.0);
    for (const Domain1D& d : domains) {
        double mid = 0.5 * (d.gamma_lo + d.gamma_hi);
        std::vector<std::vector<int>> got =
            brute_force_envelope(triples, std::vector<double>{mid});
        CHECK(std::find(got[0].begin(), got[0].end(), d.partition_id) != got[0].end());
    }
}

TEST_CASE("summaries carry transitions, widths, areas, and ranked labels") {
    std::vector<Domain1D> tri = prune_1d(triangle_triples(), 0.0, 6.0);
    EnvelopeSummary s1 = summarize_envelope(tri);
    REQUIRE(s1.transitions.size() == 1);
    CHECK(s1.transitions[0] == doctest::Approx(1.5));
    CHECK(s1.domains[0].extent == doctest::Approx(1.5));
    CHECK(s1.domains[1].extent == doctest::Approx(4.5));
    CHECK(s1.domains[1].label == "0.1");  // widest among X=0
    CHECK(s1.domains[0].label == "0.2");

    std::vector<CoefficientTriple> toy = {triple(10, 10, 0, 0), triple(6, 2, 0, 1),
                                          triple(8, 6, 4, 2)};
    EnvelopeSummary s2 = summarize_envelope(prune_2d(toy, {0, 2, 0, 2}).domains);
    double total = 0.0;
    for (const DomainSummary& d : s2.domains) {
        total += d.extent;
    }
    CHECK(total == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(s2.transitions.empty());

    EnvelopeSummary s3 = summarize_envelope(prune_1d({triple(3, 1, 0, 0)}, 0.0, 2.0));
    CHECK(s3.domains.size() == 1);
    CHECK(s3.transitions.empty());
}
