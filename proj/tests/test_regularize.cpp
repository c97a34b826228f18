#include <doctest.h>

#include <algorithm>

#include "mmgeo/regularize.hpp"
#include "mmgeo/rng.hpp"

using namespace mmgeo;

namespace {

Graph triangle() {
    Graph g(3);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(0, 2);
    g.finalize();
    return g;
}

Graph single_edge() {
    Graph g(2);
    g.add_edge(0, 1);
    g.finalize();
    return g;
}

Graph petersen() {
    Graph g(10);
    for (PointId i = 0; i < 5; ++i) {
        g.add_edge(i, (i + 1) % 5);          // outer cycle
        g.add_edge(i + 5, ((i + 2) % 5) + 5);  // inner pentagram
        g.add_edge(i, i + 5);                // spokes
    }
    g.finalize();
    return g;
}

Graph random_graph(PointId n, PointId max_degree, std::uint64_t seed) {
    Rng rng(seed);
    Graph g(n);
    std::vector<PointId> deg(static_cast<std::size_t>(n), 0);
    for (int tries = 0; tries < 2000; ++tries) {
        PointId u = static_cast<PointId>(rng.uniform(static_cast<std::uint64_t>(n)));
        PointId v = static_cast<PointId>(rng.uniform(static_cast<std::uint64_t>(n)));
        if (u == v) continue;
        if (deg[static_cast<std::size_t>(u)] >= max_degree ||
            deg[static_cast<std::size_t>(v)] >= max_degree)
            continue;
        if (g.has_edge(u, v)) continue;
        g.add_edge(u, v);
        g.finalize();  // keep has_edge usable
        ++deg[static_cast<std::size_t>(u)];
        ++deg[static_cast<std::size_t>(v)];
    }
    return g;
}

void check_edge_conservation(const RegularizationResult& r) {
    std::int64_t spike_sum = 0;
    for (auto e : r.spiked.spike_edge_count) spike_sum += e;
    CHECK(r.spiked.unioned.n_edges() ==
          r.spiked.base.n_edges() + spike_sum +
              static_cast<std::int64_t>(r.pairing_edges.size()));
    // handshake
    std::int64_t degree_sum = 0;
    for (PointId v = 0; v < r.spiked.unioned.n_vertices(); ++v)
        degree_sum += r.spiked.unioned.degree(v);
    CHECK(degree_sum == 2 * r.spiked.unioned.n_edges());
}

}  // namespace

TEST_CASE("circulant_regular: 6-cycle and 4-regular on 6 vertices") {
    Graph c2 = circulant_regular(6, 2);
    CHECK(c2.n_vertices() == 6);
    CHECK(c2.n_edges() == 6);
    for (PointId v = 0; v < 6; ++v) CHECK(c2.degree(v) == 2);
    CHECK(is_connected(c2));

    Graph c4 = circulant_regular(6, 4);
    for (PointId v = 0; v < 6; ++v) CHECK(c4.degree(v) == 4);
    CHECK(is_connected(c4));
    CHECK(c4.n_edges() == 12);
}

TEST_CASE("circulant_regular: hypothesis violations are rejected") {
    CHECK_THROWS_AS(circulant_regular(6, 3), std::invalid_argument);   // odd r
    CHECK_THROWS_AS(circulant_regular(5, 2), std::invalid_argument);   // odd s
    CHECK_THROWS_AS(circulant_regular(6, 6), std::invalid_argument);   // r > s-2
    CHECK_THROWS_AS(circulant_regular(2, 2), std::invalid_argument);   // s < 4
    CHECK_THROWS_AS(circulant_regular(8, 0), std::invalid_argument);   // r < 2
}

TEST_CASE("spike_union: trivial gadgets reproduce the base") {
    Graph base = triangle();
    std::vector<SpikeSpec> spikes(3);
    for (auto& s : spikes) {
        s.graph = Graph(1);
        s.graph.finalize();
    }
    SpikedGraph sg = spike_union(base, spikes);
    CHECK(sg.unioned.n_vertices() == 3);
    CHECK(sg.unioned.edge_list() == base.edge_list());
    for (PointId v = 0; v < 3; ++v) CHECK(sg.base_projection[v] == v);
}

TEST_CASE("spike_union: single vertex with a K4 gadget is K4") {
    Graph base(1);
    base.finalize();
    SpikeSpec spike;
    spike.graph = Graph(4);
    for (PointId i = 0; i < 4; ++i)
        for (PointId j = i + 1; j < 4; ++j) spike.graph.add_edge(i, j);
    spike.graph.finalize();
    SpikedGraph sg = spike_union(base, {spike});
    CHECK(sg.unioned.n_vertices() == 4);
    CHECK(sg.unioned.n_edges() == 6);
    for (PointId v = 0; v < 4; ++v) CHECK(sg.base_projection[v] == 0);
}

TEST_CASE("spike_union: path base with triangle gadgets") {
    Graph base(2);
    base.add_edge(0, 1);
    base.finalize();
    std::vector<SpikeSpec> spikes(2);
    for (auto& s : spikes) {
        s.graph = Graph(3);
        s.graph.add_edge(0, 1);
        s.graph.add_edge(1, 2);
        s.graph.add_edge(0, 2);
        s.graph.finalize();
    }
    SpikedGraph sg = spike_union(base, spikes);
    CHECK(sg.unioned.n_vertices() == 6);
    CHECK(sg.unioned.n_edges() == 7);  // 1 base + 3 + 3 spike edges
}

TEST_CASE("regularize_degrees: K3 with k=5 (even s) is 6-regular on 24 vertices") {
    RegularizationResult r = regularize_degrees(triangle(), 5);
    CHECK(r.target_degree == 6);
    CHECK(r.spiked.unioned.n_vertices() == 24);  // 3 gadgets of size k+3 = 8
    CHECK(r.parity_fixes.empty());
    for (auto size : r.gadget_sizes) CHECK(size == 8);
    for (PointId v = 0; v < 24; ++v) CHECK(r.spiked.unioned.degree(v) == 6);
    CHECK(verify_regularization(r).all_ok());
    check_edge_conservation(r);
}

TEST_CASE("regularize_degrees: single edge with k=5 uses the parity gadget") {
    RegularizationResult r = regularize_degrees(single_edge(), 5);
    CHECK(r.spiked.unioned.n_vertices() == 18);  // two gadgets of size k+4 = 9
    CHECK(r.parity_fixes == std::vector<PointId>{0, 1});
    CHECK(r.pairing_edges.size() == 1);
    for (auto size : r.gadget_sizes) CHECK(size == 9);
    for (PointId v = 0; v < 18; ++v) CHECK(r.spiked.unioned.degree(v) == 6);
    CHECK(verify_regularization(r).all_ok());
    check_edge_conservation(r);
}

TEST_CASE("regularize_degrees: 3-regular base with k = maxdeg + 4") {
    // all degrees odd: every vertex takes the parity gadget
    Graph base = petersen();
    int k = default_regularization_k(base);
    CHECK(k == 7);
    RegularizationResult r = regularize_degrees(base, k);
    CHECK(r.parity_fixes.size() == 10);
    CHECK(r.pairing_edges.size() == 5);
    for (PointId v = 0; v < r.spiked.unioned.n_vertices(); ++v)
        CHECK(r.spiked.unioned.degree(v) == 8);
    CHECK(verify_regularization(r).all_ok());
    check_edge_conservation(r);
}

TEST_CASE("regularize_degrees: parameter validation") {
    CHECK_THROWS_AS(regularize_degrees(triangle(), 4), std::invalid_argument);  // even
    CHECK_THROWS_AS(regularize_degrees(triangle(), 3), std::invalid_argument);  // small
    CHECK_NOTHROW(regularize_degrees(triangle(), 7));
}

TEST_CASE("regularize_degrees: random graphs across seeds stay regular") {
    for (std::uint64_t seed : {11ULL, 12ULL, 13ULL}) {
        Graph base = random_graph(50, 6, seed);
        int k = default_regularization_k(base);
        RegularizationResult r = regularize_degrees(base, k);
        for (PointId v = 0; v < r.spiked.unioned.n_vertices(); ++v)
            REQUIRE(r.spiked.unioned.degree(v) == k + 1);
        REQUIRE(verify_regularization(r).all_ok());
        check_edge_conservation(r);
        // parity gadget used exactly at odd-degree vertices
        std::size_t odd = 0;
        for (PointId v = 0; v < base.n_vertices(); ++v)
            if (base.degree(v) % 2 == 1) ++odd;
        REQUIRE(r.parity_fixes.size() == odd);
        REQUIRE(r.pairing_edges.size() == odd / 2);
    }
}

TEST_CASE("regularize_degrees: dangling-edge accounting in the even gadget") {
    // A contributes s*(k+2-s) half-edges, B contributes (k+2-s)*s; the
    // construction matches them through the complete bipartite join, so each
    // A vertex sees exactly |B| cross edges and vice versa.
    RegularizationResult r = regularize_degrees(triangle(), 9);
    // gadget of a degree-2 vertex at k=9: s=8, |B|=3, size k+3=12
    for (auto size : r.gadget_sizes) CHECK(size == 12);
    const Graph& u = r.spiked.unioned;
    for (PointId base_v = 0; base_v < 3; ++base_v) {
        // A vertices are the gadget neighbors of the base vertex
        std::vector<PointId> a_side;
        for (PointId w : u.neighbors(base_v))
            if (w >= 3 && r.spiked.base_projection[static_cast<std::size_t>(w)] == base_v)
                a_side.push_back(w);
        CHECK(a_side.size() == 8);  // s = k+1-deg = 8
        for (PointId a : a_side) {
            int cross = 0;
            for (PointId w : u.neighbors(a))
                if (w != base_v && std::find(a_side.begin(), a_side.end(), w) == a_side.end())
                    ++cross;
            CHECK(cross == 3);  // k+2-s = |B|
        }
    }
}

TEST_CASE("verify_regularization: mutations are caught with witnesses") {
    RegularizationResult good = regularize_degrees(triangle(), 5);
    REQUIRE(verify_regularization(good).all_ok());

    SUBCASE("dropped edge breaks the degree scan") {
        RegularizationResult r = good;
        auto edges = r.spiked.unioned.edge_list();
        Graph broken(r.spiked.unioned.n_vertices());
        for (std::size_t i = 1; i < edges.size(); ++i)
            broken.add_edge(edges[i].first, edges[i].second);
        broken.finalize();
        r.spiked.unioned = broken;
        RegularizationCheck check = verify_regularization(r);
        CHECK_FALSE(check.degree_ok);
        CHECK(check.witness >= 0);
    }

    SUBCASE("a path gadget violates the distance-2 bound") {
        // base = single vertex, gadget = path of length 3 hanging off it;
        // degrees are wrong too, but the distance check must flag the far end
        Graph base(1);
        base.finalize();
        SpikeSpec spike;
        spike.graph = Graph(4);
        spike.graph.add_edge(0, 1);
        spike.graph.add_edge(1, 2);
        spike.graph.add_edge(2, 3);
        spike.graph.finalize();
        RegularizationResult r;
        r.k = 1;
        r.target_degree = 2;
        r.spiked = spike_union(base, {spike});
        RegularizationCheck check = verify_regularization(r);
        CHECK_FALSE(check.distance2_ok);
    }

    SUBCASE("disconnected gadget is flagged") {
        Graph base(1);
        base.finalize();
        SpikeSpec spike;
        spike.graph = Graph(3);
        spike.graph.add_edge(1, 2);  // island not touching the base vertex
        spike.graph.finalize();
        RegularizationResult r;
        r.k = 1;
        r.target_degree = 2;
        r.spiked = spike_union(base, {spike});
        RegularizationCheck check = verify_regularization(r);
        CHECK_FALSE(check.spikes_connected);
    }
}

TEST_CASE("regularization serialization round trip") {
    RegularizationResult r = regularize_degrees(single_edge(), 5);
    std::string text = regularization_to_string(r);
    RegularizationResult back = regularization_from_string(text);
    CHECK(back.k == r.k);
    CHECK(back.spiked.unioned.edge_list() == r.spiked.unioned.edge_list());
    CHECK(back.spiked.base_projection == r.spiked.base_projection);
    CHECK(back.parity_fixes == r.parity_fixes);
    CHECK(back.pairing_edges == r.pairing_edges);
    CHECK(verify_regularization(back).all_ok());
    CHECK(regularization_to_string(back) == text);
}
