#include <doctest.h>

#include <cmath>

#include "plumb/twisted.hpp"
#include "test_curves.hpp"

using namespace plumb;

namespace {

/// Two-level genus-2 configuration: components a1, a2 at the top joined by two
/// horizontal nodes, and a bottom component b hanging off a1 through two
/// nodes with double poles. The bottom leading coefficients are matched to the
/// top values through the gluing (s = t carries -rho_u rho_w Xi_a1(q) onto the
/// double pole), so the rescaled family restricts back to Xi_b in the limit.
/// The bottom differential has simple zeros at +-3/sqrt(14), which carry the
/// marked orders (1, 1).
struct TwoLevel {
    StableCurve c;
    TwistedData d;
    std::vector<RatDiff> omega;
};

TwoLevel two_level() {
    TwoLevel t;
    t.c.vertex_names = {"a1", "a2", "b"};
    t.c.edges.push_back({"h1", 0, 1, cx(3.0), cx(2.0), 1.0, 1.0});
    t.c.edges.push_back({"h2", 0, 1, cx(-3.0), cx(-2.0), 1.0, 1.0});
    t.c.edges.push_back({"d1", 0, 2, cx(0.0, 3.0), cx(1.5), 1.0, 0.5});
    t.c.edges.push_back({"d2", 0, 2, cx(0.0, -3.0), cx(-1.5), 1.0, 0.5});
    double z0 = 3.0 / std::sqrt(14.0);
    t.c.marked.push_back({2, cx(z0), 1});
    t.c.marked.push_back({2, cx(-z0), 1});
    t.c.marked.push_back({1, cx(0.0), 0});

    t.d.level = {0, 0, -1};
    t.d.xi.resize(3);
    t.d.xi[0] = RatDiff::third_kind(cx(3.0), cx(-3.0));
    t.d.xi[1] = RatDiff::third_kind(cx(-2.0), cx(2.0));
    // Xi_a1(+-3i) = -1/3, so the matched double-pole coefficient is
    // -rho_u rho_w (-1/3) = 1/6 on both bottom nodes
    t.d.xi[2].add_term(cx(1.5), 2, cx(1.0 / 6.0));
    t.d.xi[2].add_term(cx(1.5), 1, cx(0.2));
    t.d.xi[2].add_term(cx(-1.5), 2, cx(1.0 / 6.0));
    t.d.xi[2].add_term(cx(-1.5), 1, cx(-0.2));

    t.omega = {t.d.xi[0], t.d.xi[1], RatDiff()};
    return t;
}

}  // namespace

TEST_CASE("local orders") {
    TwoLevel t = two_level();
    CHECK(local_order(t.d.xi[0], cx(3.0)) == -1);
    CHECK(local_order(t.d.xi[0], cx(0.0, 3.0)) == 0);
    CHECK(local_order(t.d.xi[2], cx(1.5)) == -2);
    CHECK(local_order(t.d.xi[2], cx(3.0 / std::sqrt(14.0))) == 1);
    RatDiff dbl = RatDiff::third_kind(cx(1.0), cx(-1.0));  // zero of order 2 at infinity pattern
    CHECK(local_order(dbl, cx(3.0)) == 0);
}

TEST_CASE("compatibility: clean configuration passes everything") {
    TwoLevel t = two_level();
    CHECK(validate(t.c).empty());
    CompatReport rep = check_compatibility(t.c, t.d, t.omega);
    for (const auto& item : rep.items) {
        INFO(item.condition, item.detail);
        CHECK(item.pass);
    }
    CHECK(rep.clean());
}

TEST_CASE("compatibility: planted faults are caught") {
    SUBCASE("marked order") {
        TwoLevel t = two_level();
        t.c.marked[0].point = cx(0.9);
        CompatReport r = check_compatibility(t.c, t.d, t.omega);
        CHECK(!r.passed("order_at_marked"));
        CHECK(r.passed("poles_at_nodes"));
        CHECK(r.passed("global_residue"));
    }
    SUBCASE("stray pole") {
        TwoLevel t = two_level();
        t.d.xi[0].add_term(cx(0.5), 2, cx(0.3));
        t.omega[0] = t.d.xi[0];
        CompatReport r = check_compatibility(t.c, t.d, t.omega);
        CHECK(!r.passed("poles_at_nodes"));
        CHECK(r.passed("order_at_marked"));
        CHECK(r.passed("node_order_sum"));
    }
    SUBCASE("node order sum") {
        TwoLevel t = two_level();
        t.d.xi[2].add_term(cx(1.5), 3, cx(1.0));
        CompatReport r = check_compatibility(t.c, t.d, t.omega);
        CHECK(!r.passed("node_order_sum"));
        CHECK(r.passed("level_order"));
    }
    SUBCASE("residue mismatch at a horizontal node") {
        TwoLevel t = two_level();
        t.d.xi[1] = RatDiff();
        t.d.xi[1].add_term(cx(-2.0), 1, cx(1.0));
        t.d.xi[1].add_term(cx(2.0), 1, cx(-2.0));
        t.omega[1] = t.d.xi[1];
        CompatReport r = check_compatibility(t.c, t.d, t.omega);
        CHECK(!r.passed("matching_residues"));
        CHECK(r.passed("node_order_sum"));
        CHECK(r.passed("global_residue"));
    }
    SUBCASE("level order") {
        TwoLevel t = two_level();
        t.d.level[1] = -1;
        t.omega[1] = RatDiff();
        CompatReport r = check_compatibility(t.c, t.d, t.omega);
        CHECK(!r.passed("level_order"));
        CHECK(r.passed("matching_residues"));
        CHECK(r.passed("global_residue"));
        CHECK(r.passed("maxima"));
    }
    SUBCASE("global residue condition") {
        // reroute the second bottom node to hang off a2: each top vertex now
        // sees a single down-going node with a nonzero lower residue
        TwoLevel t = two_level();
        t.c.edges[3] = {"d2", 1, 2, cx(0.0, -2.0), cx(-1.5), 1.0, 0.5};
        CompatReport r = check_compatibility(t.c, t.d, t.omega);
        CHECK(!r.passed("global_residue"));
        CHECK(r.passed("order_at_marked"));
        CHECK(r.passed("node_order_sum"));
        CHECK(r.passed("level_order"));
    }
    SUBCASE("maxima") {
        TwoLevel t = two_level();
        t.omega[2] = t.d.xi[2];
        CompatReport r = check_compatibility(t.c, t.d, t.omega);
        CHECK(!r.passed("maxima"));
        CHECK(r.passed("global_residue"));
    }
}

TEST_CASE("modification differential matches the lower residues") {
    TwoLevel t = two_level();
    RatDiff phi = modification_differential(t.c, t.d, 0, -1);
    CHECK(std::abs(phi.residue(cx(0.0, 3.0)) + 0.2) < 1e-15);
    CHECK(std::abs(phi.residue(cx(0.0, -3.0)) - 0.2) < 1e-15);
    CHECK(std::abs(phi.residue_sum()) < 1e-15);

    // inconsistent residue data is rejected
    TwoLevel bad = two_level();
    bad.c.edges[3] = {"d2", 1, 2, cx(0.0, -2.0), cx(-1.5), 1.0, 0.5};
    CHECK_THROWS_AS(modification_differential(bad.c, bad.d, 0, -1), std::invalid_argument);
}

TEST_CASE("scaling parameters induce consistent plumbing parameters") {
    TwoLevel t = two_level();
    ScalingParams sp;
    sp.t = {cx(1e-2, 3e-3)};
    CHECK(std::abs(sp.from_top(-1) - sp.t[0]) < 1e-18);
    PlumbingParams p = scaling_to_plumbing(t.c, t.d, sp);
    CHECK(std::abs(p.at(3) - sp.t[0]) < 1e-16);  // order-0 zeros: s = t directly
    CHECK(std::abs(p.at(4) - sp.t[0]) < 1e-16);
    // horizontal default: geometric mean of the down-edge magnitudes
    CHECK(std::abs(p.at(1) - cx(std::abs(sp.t[0]))) < 1e-16);
    std::map<int, cx> over = {{1, cx(2e-2)}};
    CHECK(std::abs(scaling_to_plumbing(t.c, t.d, sp, over).at(1) - cx(2e-2)) < 1e-18);

    // parallel edges with zero orders 0 and 1: s and sqrt(s), equal products
    StableCurve pc;
    pc.vertex_names = {"u", "w"};
    pc.edges.push_back({"e1", 0, 1, cx(5.0), cx(5.0), 1.0, 1.0});
    pc.edges.push_back({"e2", 0, 1, cx(-5.0), cx(-5.0), 1.0, 1.0});
    TwistedData pd;
    pd.level = {0, -1};
    pd.xi.resize(2);
    pd.xi[0].add_term(cx(20.0), 1, cx(0.625));    // (z+5)/((z-20)(z+20)):
    pd.xi[0].add_term(cx(-20.0), 1, cx(0.375));   // order 0 at 5, order 1 at -5
    pd.xi[1].add_term(cx(5.0), 2, cx(1.0));
    pd.xi[1].add_term(cx(-5.0), 3, cx(1.0));
    ScalingParams spc;
    spc.t = {cx(4e-4, 1e-4)};
    PlumbingParams pp = scaling_to_plumbing(pc, pd, spc);
    CHECK(std::abs(pp.at(1) - spc.t[0]) < 1e-18);
    CHECK(std::abs(pp.at(2) * pp.at(2) - spc.t[0]) < 1e-18);
    CHECK(std::abs(pp.at(1) - pp.at(2) * pp.at(2)) < 1e-18);  // path products agree
}

TEST_CASE("twisted family glues and degenerates to the twisted differential") {
    TwoLevel t = two_level();
    REQUIRE(check_compatibility(t.c, t.d, t.omega).clean());

    ScalingParams sp;
    sp.t = {cx(1e-3)};
    TwistedFamily fam = build_twisted_family(t.c, t.d, sp);
    CHECK(jump_residual(fam.sol) < 1e-10);
    CHECK(a_norm_residual(fam.sol) < 1e-12);
    CHECK(std::abs(fam.scale[2] - sp.t[0]) < 1e-18);

    // the modification differential shows up on a1 with weight t
    CHECK(std::abs(fam.xihat[0].residue(cx(0.0, 3.0)) + 0.2 * sp.t[0]) < 1e-16);

    // rescaled restrictions approach the twisted differentials monotonically
    std::vector<cx> pts_a1 = {cx(0.0), cx(1.0, 1.0), cx(-1.2, -0.8)};
    std::vector<cx> pts_b = {cx(0.0, 0.4), cx(0.0, -0.5), cx(0.3, 0.3)};
    double prev_a = 1e300, prev_b = 1e300;
    for (double tv : {1e-2, 1e-3, 1e-4, 1e-5}) {
        ScalingParams s2;
        s2.t = {cx(tv)};
        TwistedFamily f2 = build_twisted_family(t.c, t.d, s2);
        double ea = restriction_error(f2, t.d.xi, 0, pts_a1);
        double eb = restriction_error(f2, t.d.xi, 2, pts_b);
        CHECK(ea < prev_a);
        CHECK(eb < prev_b);
        prev_a = ea;
        prev_b = eb;
    }
    CHECK(prev_a < 1e-5);  // first-order term ~ 0.2 t from the modification
    CHECK(prev_b < 1e-6);

    // initial data stays bounded as t -> 0 (no negative powers of t)
    auto xi0_norm = [&](double tv) {
        ScalingParams s2;
        s2.t = {cx(tv)};
        TwistedFamily f2 = build_twisted_family(t.c, t.d, s2);
        std::map<int, RatDiff> x0;
        for (int e : t.c.oriented_edges()) x0[e] = f2.sol.xi.at(e)[0];
        return seam_norm(t.c, f2.params, x0);
    };
    CHECK(xi0_norm(1e-5) < 1.05 * xi0_norm(1e-2));
}

TEST_CASE("zero clusters carry the marked multiplicities") {
    TwoLevel t = two_level();
    ScalingParams sp;
    sp.t = {cx(1e-4)};
    TwistedFamily fam = build_twisted_family(t.c, t.d, sp);
    RatDiff on_b = fam.sol.glued(2);
    double z0 = 3.0 / std::sqrt(14.0);
    CHECK(zero_count(on_b, cx(z0), 0.25) == 1);
    CHECK(zero_count(on_b, cx(-z0), 0.25) == 1);
    // the unmarked reference point on a2 attracts no zero
    CHECK(zero_count(fam.sol.glued(1), cx(0.0), 0.3) == 0);
}
