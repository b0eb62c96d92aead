#include <doctest.h>

#include "plumb/curve.hpp"
#include "test_curves.hpp"

using namespace plumb;

TEST_CASE("validation accepts the reference geometries") {
    CHECK(validate(testgeo::tot_deg(1)).empty());
    CHECK(validate(testgeo::tot_deg(2)).empty());
    CHECK(validate(testgeo::tot_deg(3)).empty());
    CHECK(validate(testgeo::banana()).empty());
    CHECK(validate(testgeo::theta()).empty());
}

TEST_CASE("validation flags broken geometries") {
    // overlapping chart disks
    StableCurve c = testgeo::tot_deg(1);
    c.edges[0].q_to = cx(0.5);
    auto bad = validate(c);
    REQUIRE(!bad.empty());
    CHECK(bad[0].find("overlap") != std::string::npos);

    // marked point inside a chart disk
    c = testgeo::tot_deg(1);
    c.marked[0].point = cx(1.5);
    bad = validate(c);
    REQUIRE(!bad.empty());
    CHECK(bad[0].find("marked point") != std::string::npos);

    // too few special points
    c = testgeo::tot_deg(1);
    c.marked.clear();
    bad = validate(c);
    REQUIRE(!bad.empty());
    CHECK(bad[0].find("special points") != std::string::npos);

    // disconnected graph
    c = testgeo::banana();
    c.vertex_names.push_back("stray");
    bad = validate(c);
    REQUIRE(!bad.empty());
    CHECK(bad[0].find("disconnected") != std::string::npos);
}

TEST_CASE("oriented edge conventions") {
    StableCurve c = testgeo::banana();
    CHECK(c.vertex_of(1) == 0);
    CHECK(c.vertex_of(-1) == 1);
    CHECK(c.node_point(2) == cx(-2.0));
    CHECK(c.node_point(-2) == cx(-2.0));
    CHECK(c.edge_index("n2") == 2);
    CHECK(c.edge_index("-n2") == -2);
    auto at_a = c.edges_at(0);
    CHECK(at_a == std::vector<int>{1, 2});
    auto at_b = c.edges_at(1);
    CHECK(at_b == std::vector<int>{-1, -2});
}

TEST_CASE("first betti number") {
    CHECK(betti(testgeo::tot_deg(1)) == 1);
    CHECK(betti(testgeo::tot_deg(3)) == 3);
    CHECK(betti(testgeo::banana()) == 1);
    CHECK(betti(testgeo::theta()) == 2);
}

TEST_CASE("homology basis: irreducible curve") {
    auto b = symplectic_basis(testgeo::tot_deg(2));
    REQUIRE(b.a_edges.size() == 2);
    CHECK(b.a_edges == std::vector<int>{1, 2});
    for (size_t k = 0; k < 2; ++k) {
        CHECK(b.b_cycles[k] == CyclePath{int(k + 1)});
        CHECK(cycle_is_closed(testgeo::tot_deg(2), b.b_cycles[k]));
    }
    CHECK(b.intersection[0][0] == 1);
    CHECK(b.intersection[1][1] == 1);
    CHECK(b.intersection[0][1] == 0);
}

TEST_CASE("homology basis: banana") {
    StableCurve c = testgeo::banana();
    auto b = symplectic_basis(c);
    REQUIRE(b.a_edges.size() == 1);
    CHECK(b.a_edges[0] == 2);
    CHECK(b.b_cycles[0] == CyclePath{2, -1});
    CHECK(cycle_is_closed(c, b.b_cycles[0]));
    CHECK(b.intersection[1][0] == 1);   // the handle edge itself
    CHECK(b.intersection[0][0] == -1);  // tree edge crossed backwards
}

TEST_CASE("homology basis: theta graph shares the tree edge") {
    StableCurve c = testgeo::theta();
    auto b = symplectic_basis(c);
    REQUIRE(b.a_edges.size() == 2);
    CHECK(b.a_edges == std::vector<int>{2, 3});
    CHECK(b.b_cycles[0] == CyclePath{2, -1});
    CHECK(b.b_cycles[1] == CyclePath{3, -1});
    for (const auto& cyc : b.b_cycles) CHECK(cycle_is_closed(c, cyc));
    // both handles run back through the same tree edge, so the b-cycles pass
    // a common node
    CHECK(b.intersection[0][0] == -1);
    CHECK(b.intersection[0][1] == -1);
}
