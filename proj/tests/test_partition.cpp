#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "champ/errors.hpp"
#include "champ/partition.hpp"
#include "oracles.hpp"

using namespace champ;

namespace {

Network triangle() {
    return build_network(std::vector<Edge>{{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}});
}

MultilayerNetwork two_layer_two_actor_toy() {
    std::vector<MultilayerEdgeInput> intra = {{"a0", 0, "a1", 0, 1.0}, {"a0", 1, "a1", 1, 1.0}};
    std::vector<MultilayerEdgeInput> inter = {{"a0", 0, "a0", 1, 1.0}, {"a1", 0, "a1", 1, 1.0}};
    return build_multilayer(intra, inter);
}

}  // namespace

TEST_CASE("canonical form renumbers by first appearance") {
    Partition p({7, 7, 3, 7, 3, 9});
    CHECK(p.canonical().labels == std::vector<int>{0, 0, 1, 0, 1, 2});
    CHECK(Partition({0, 0, 1}).is_canonical());
    CHECK_FALSE(Partition({1, 1, 0}).is_canonical());
}

TEST_CASE("triangle coefficient examples") {
    Network net = triangle();
    CoefficientTriple all = coefficients(net, Partition({0, 0, 0}));
    CHECK(all.a_hat == doctest::Approx(6.0));
    CHECK(all.p_hat == doctest::Approx(6.0));
    CHECK(all.c_hat == 0.0);

    CoefficientTriple singles = coefficients(net, Partition({0, 1, 2}));
    CHECK(singles.a_hat == doctest::Approx(0.0));
    CHECK(singles.p_hat == doctest::Approx(2.0));

    CoefficientTriple pair = coefficients(net, Partition({0, 0, 1}));
    CHECK(pair.a_hat == doctest::Approx(2.0));
    CHECK(pair.p_hat == doctest::Approx(10.0 / 3.0));
}

TEST_CASE("coefficient errors") {
    Network net = triangle();
    CHECK_THROWS_AS(coefficients(net, Partition({0, 0})), validation_error);
    Network zero = build_network(std::vector<Edge>{{0, 1, 0.0}});
    CHECK_THROWS_AS(coefficients(zero, Partition({0, 0})), degenerate_error);
}

TEST_CASE("multilayer toy coefficient examples") {
    MultilayerNetwork net = two_layer_two_actor_toy();
    // index order is layer-major: (a0,l0) (a1,l0) (a0,l1) (a1,l1)
    CoefficientTriple all = coefficients(net, Partition({0, 0, 0, 0}));
    CHECK(all.a_hat == doctest::Approx(4.0));
    CHECK(all.p_hat == doctest::Approx(4.0));
    CHECK(all.c_hat == doctest::Approx(4.0));

    CoefficientTriple by_layer = coefficients(net, Partition({0, 0, 1, 1}));
    CHECK(by_layer.a_hat == doctest::Approx(4.0));
    CHECK(by_layer.p_hat == doctest::Approx(4.0));
    CHECK(by_layer.c_hat == doctest::Approx(0.0));

    CoefficientTriple by_actor = coefficients(net, Partition({0, 1, 0, 1}));
    CHECK(by_actor.a_hat == doctest::Approx(0.0));
    CHECK(by_actor.p_hat == doctest::Approx(2.0));
    CHECK(by_actor.c_hat == doctest::Approx(4.0));
}

TEST_CASE("modularity_at examples") {
    CHECK(modularity_at({6, 6, 0}, 1.0) == doctest::Approx(0.0));
    CHECK(modularity_at({4, 4, 4}, 1.0, 0.5) == doctest::Approx(2.0));
    CHECK(modularity_at({0, 2, 0}, 1.5) == doctest::Approx(-3.0));
}

TEST_CASE("relabeling leaves coefficients unchanged") {
    Network net = oracle::random_graph(10, 0.4, 42, true);
    Partition p({0, 1, 2, 0, 1, 2, 3, 3, 0, 1});
    Partition renamed({5, 9, 2, 5, 9, 2, 7, 7, 5, 9});
    CoefficientTriple a = coefficients(net, p);
    CoefficientTriple b = coefficients(net, renamed);
    CHECK(a.a_hat == doctest::Approx(b.a_hat).epsilon(1e-12));
    CHECK(a.p_hat == doctest::Approx(b.p_hat).epsilon(1e-12));
}

TEST_CASE("all-in-one identity: Q(1) = 0") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Network net = oracle::random_graph(9, 0.5, seed, seed % 2 == 1);
        CoefficientTriple t = coefficients(net, Partition(std::vector<int>(9, 0)));
        CHECK(t.a_hat == doctest::Approx(2.0 * net.total_weight).epsilon(1e-12));
        CHECK(t.p_hat == doctest::Approx(2.0 * net.total_weight).epsilon(1e-12));
        CHECK(modularity_at(t, 1.0) == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("strength-sum coefficients equal the dense double loop") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        int n = 4 + static_cast<int>(seed % 5);
        Network net = oracle::random_graph(n, 0.5, seed, true);
        for (const std::vector<int>& labels : oracle::all_partitions(n)) {
            Partition p(labels);
            CoefficientTriple fast = coefficients(net, p);
            CoefficientTriple slow = oracle::coefficients_dense(net, p);
            CHECK(fast.a_hat == doctest::Approx(slow.a_hat).epsilon(1e-12));
            CHECK(fast.p_hat == doctest::Approx(slow.p_hat).epsilon(1e-12));
        }
    }
}

TEST_CASE("multilayer coefficients equal the dense double loop") {
    MultilayerNetwork net = two_layer_two_actor_toy();
    for (const std::vector<int>& labels : oracle::all_partitions(4)) {
        Partition p(labels);
        CoefficientTriple fast = coefficients(net, p);
        CoefficientTriple slow = oracle::coefficients_dense(net, p);
        CHECK(fast.a_hat == doctest::Approx(slow.a_hat).epsilon(1e-12));
        CHECK(fast.p_hat == doctest::Approx(slow.p_hat).epsilon(1e-12));
        CHECK(fast.c_hat == doctest::Approx(slow.c_hat).epsilon(1e-12));
    }
}

TEST_CASE("merging two communities never lowers a_hat or p_hat") {
    Network net = oracle::random_graph(8, 0.45, 7, true);
    for (const std::vector<int>& labels : oracle::all_partitions(6)) {
        Partition p(labels);
        p.labels.push_back(0);
        p.labels.push_back(1);
        CoefficientTriple before = coefficients(net, p);
        Partition merged = p;
        for (int& l : merged.labels) {
            if (l == 1) {
                l = 0;
            }
        }
        CoefficientTriple after = coefficients(net, merged);
        CHECK(after.a_hat >= before.a_hat - 1e-12);
        CHECK(after.p_hat >= before.p_hat - 1e-12);
    }
}

TEST_CASE("ensemble unifies canonical duplicates") {
    Network net = triangle();
    Ensemble ens(&net);

    auto r1 = ens.add(Partition({0, 0, 1}), {0.5, std::nullopt, 1, 0});
    CHECK(r1.outcome == Ensemble::AddOutcome::inserted);
    auto r2 = ens.add(Partition({1, 1, 0}), {0.6, std::nullopt, 2, 1});
    CHECK(r2.outcome == Ensemble::AddOutcome::merged_provenance);
    CHECK(r2.partition_id == r1.partition_id);
    CHECK(ens.size() == 1);
    CHECK(ens.provenance(0).size() == 2);

    auto r3 = ens.add(Partition({0, 1, 1}), {0.7, std::nullopt, 3, 2});
    CHECK(r3.outcome == Ensemble::AddOutcome::inserted);
    CHECK(ens.size() == 2);

    CHECK_THROWS_AS(ens.add(Partition({0, 1}), {}), validation_error);
}

TEST_CASE("canonical ordering is insertion-order independent") {
    Network net = triangle();
    std::vector<Partition> parts = {Partition({0, 0, 0}), Partition({0, 1, 2}),
                                    Partition({0, 0, 1}), Partition({0, 1, 1})};
    Ensemble fwd(&net);
    Ensemble rev(&net);
    for (std::size_t k = 0; k < parts.size(); ++k) {
        fwd.add(parts[k], {0.0, std::nullopt, 0, static_cast<int>(k)});
        rev.add(parts[parts.size() - 1 - k], {0.0, std::nullopt, 0, static_cast<int>(k)});
    }
    fwd.sort_canonically();
    rev.sort_canonically();
    REQUIRE(fwd.size() == rev.size());
    for (int id = 0; id < fwd.size(); ++id) {
        CHECK(fwd.partition(id) == rev.partition(id));
        CHECK(fwd.triple(id).partition_id == id);
    }
}
