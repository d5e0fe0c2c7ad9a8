#include "doctest.h"

#include "bmlab/matroid.hpp"
#include "oracles.hpp"

using namespace bmlab;

namespace {

// Small graphs with every bias class, used as a miniature catalog.
std::vector<MultiGraph> small_graphs() {
    MultiGraph u2(2);
    u2.add_edge(0, 0, "f1");
    u2.add_edge(1, 1, "f2");
    u2.add_edge(0, 1, "e3");
    u2.add_edge(0, 1, "e4");
    MultiGraph joints(3);
    joints.add_edge(0, 1);
    joints.add_edge(1, 2);
    joints.add_edge(2, 0);
    joints.add_edge(0, 0);
    joints.add_edge(2, 2);
    return {complete_graph(4), double_triangle(), tube_graph(), u2, joints};
}

std::vector<BiasedGraph> small_catalog() {
    std::vector<BiasedGraph> out;
    for (const auto& g : small_graphs())
        for (const auto& b : oracle::all_biases(g)) out.emplace_back(g, b);
    return out;
}

const std::vector<BiasedGraph>& catalog() {
    static const auto c = small_catalog();
    return c;
}

bool brute_balanced(const BiasedGraph& bg, EdgeSet x) {
    for (EdgeSet c : bg.unbalanced_cycles())
        if (subset_of(c, x)) return false;
    return true;
}

BiasedGraph u2() {
    auto g = small_graphs()[3];
    return BiasedGraph(g, {});
}

BiasedGraph u3() {
    MultiGraph g(2);
    g.add_edge(0, 1, "e1");
    g.add_edge(0, 1, "e2");
    g.add_edge(0, 1, "e3");
    g.add_edge(0, 0, "f");
    return BiasedGraph(g, {});
}

}  // namespace

TEST_CASE("rank formulas") {
    auto c3 = cycle_graph(3);
    CHECK(frame_rank(BiasedGraph(c3, {c3.all_edges()}), c3.all_edges()) == 2);
    CHECK(frame_rank(BiasedGraph(c3, {}), c3.all_edges()) == 3);
    auto k4 = complete_graph(4);
    CHECK(frame_rank(BiasedGraph(k4, {}), k4.all_edges()) == 4);

    auto tube = BiasedGraph(tube_graph(), {});
    const auto& t = tube.graph();
    CHECK(lift_rank(tube, t.edge_set({"e1", "e2", "e5", "e6"})) == 3);
    CHECK(lift_rank(tube, t.edge_set({"e1", "e3"})) == 2);
    CHECK(lift_rank(tube, t.all_edges()) == 4);

    auto l0 = complete_lift(tube);
    CHECK(l0.size() == 7);
    CHECK(l0.rank() == 4);
    auto bal = BiasedGraph(t, oracle::cycles(t));
    CHECK(complete_lift(bal).rank() == graphic_matroid(t).rank() + 1);
    CHECK_THROWS_AS(frame_rank(tube, bit(20)), UnknownEdge);
}

TEST_CASE("fundamental-cycle balance test agrees with brute force") {
    for (const auto& bg : catalog()) {
        bool ok = true;
        for (EdgeSet x = 0; x <= bg.graph().all_edges(); ++x) ok &= is_balanced_subgraph(bg, x) == brute_balanced(bg, x);
        CHECK(ok);
    }
}

TEST_CASE("rank axioms") {
    for (const auto& bg : catalog()) {
        CHECK_FALSE(check_rank_axioms(frame_matroid(bg)).has_value());
        CHECK_FALSE(check_rank_axioms(lift_matroid(bg)).has_value());
        CHECK_FALSE(check_rank_axioms(complete_lift(bg)).has_value());
    }
    auto bad = Matroid::from_table({"a"}, {0, 2});
    CHECK(check_rank_axioms(bad).has_value());
}

TEST_CASE("complete lift identities") {
    for (const auto& bg : catalog()) {
        auto l0 = complete_lift(bg);
        ElementSet e0 = bit(l0.size() - 1);
        CHECK(matroids_equal(l0.minor(0, e0), lift_matroid(bg)));
        CHECK(matroids_equal(l0.minor(e0, 0), graphic_matroid(bg.graph())));
    }
}

TEST_CASE("circuits match the graphical characterization") {
    for (const auto& bg : catalog()) {
        for (auto kind : {MatroidKind::Frame, MatroidKind::Lift}) {
            auto m = biased_matroid(bg, kind);
            auto cs = circuits(m);
            std::vector<ElementSet> shaped;
            for (EdgeSet x = 1; x <= bg.graph().all_edges(); ++x) {
                auto s = kind == MatroidKind::Frame ? frame_circuit_shape(bg, x) : lift_circuit_shape(bg, x);
                if (s) shaped.push_back(x);
            }
            CHECK(cs == shaped);
        }
    }
    auto u = u2();
    const auto& g = u.graph();
    auto loose = g.edge_set({"f1", "e3", "f2"});
    CHECK(frame_matroid(u).is_circuit(loose));
    CHECK(frame_circuit_shape(u, loose) == CircuitShape::LooseHandcuff);
    auto pair = g.edge_set({"f1", "f2"});
    CHECK(lift_matroid(u).is_circuit(pair));
    CHECK(lift_circuit_shape(u, pair) == CircuitShape::DisjointPair);
    auto c3 = cycle_graph(3);
    auto bal = BiasedGraph(c3, {c3.all_edges()});
    CHECK(frame_matroid(bal).is_circuit(c3.all_edges()));
    CHECK(lift_matroid(bal).is_circuit(c3.all_edges()));
}

TEST_CASE("matroid equality and isomorphism") {
    auto fu2 = frame_matroid(u2());
    CHECK(matroids_equal(fu2, Matroid::uniform(2, fu2.labels())));
    auto u24 = Matroid::uniform(2, {"a", "b", "c", "d"});
    CHECK(matroid_isomorphism(frame_matroid(u3()), u24).has_value());
    CHECK(matroid_isomorphism(fu2, u24).has_value());
    CHECK_FALSE(matroid_isomorphism(lift_matroid(u2()), u24).has_value());

    auto tube = BiasedGraph(tube_graph(), {});
    auto diff = matroid_difference(frame_matroid(tube), lift_matroid(tube));
    REQUIRE(diff.has_value());
    CHECK(diff->subset == tube_graph().edge_set({"e1", "e2", "e5", "e6"}));
    CHECK(diff->rank1 == 4);
    CHECK(diff->rank2 == 3);

    auto k4 = BiasedGraph(complete_graph(4), {});
    CHECK(matroids_equal(frame_matroid(k4), lift_matroid(k4)));
    CHECK_THROWS_AS(matroid_difference(frame_matroid(k4), frame_matroid(u2())), GroundSetMismatch);

    // Frame and lift agree exactly when no two unbalanced cycles are disjoint.
    for (const auto& bg : catalog())
        CHECK(matroids_equal(frame_matroid(bg), lift_matroid(bg)) == !disjoint_unbalanced_pair(bg).has_value());
}

TEST_CASE("minor commutation") {
    for (const auto& bg : catalog()) {
        auto f = frame_matroid(bg);
        auto l0 = complete_lift(bg);
        const auto& g = bg.graph();
        for (int e = 0; e < g.num_edges(); ++e) {
            auto del = biased_minor(bg, 0, bit(e)).result;
            auto con = biased_minor(bg, bit(e), 0).result;
            CHECK(matroids_equal(f.minor(0, bit(e)), frame_matroid(del)));
            CHECK(matroids_equal(f.minor(bit(e), 0), frame_matroid(con)));
            CHECK(matroids_equal(l0.minor(0, bit(e)), complete_lift(del)));
            bool joint = g.edge(e).is_loop() && !bg.is_balanced_cycle(bit(e));
            if (!joint) CHECK(matroids_equal(l0.minor(bit(e), 0), complete_lift(con)));
        }
    }
}

TEST_CASE("Delta-Y commutes with the frame and complete lift matroids") {
    int triads = 0;
    for (const auto& bg : catalog()) {
        const auto& g = bg.graph();
        for (EdgeSet x : bg.balanced()) {
            if (!is_triangle(g, x)) continue;
            auto y = delta_y(bg, x);
            CHECK(matroids_equal(frame_matroid(y), delta_y_matroid(frame_matroid(bg), x)));
            CHECK(matroids_equal(complete_lift(y), delta_y_matroid(complete_lift(bg), x)));
            // The claw is a triad of the matroid only in some cases.
            for (auto kind : {MatroidKind::Frame, MatroidKind::CompleteLift}) {
                auto m = biased_matroid(y, kind);
                if (!m.dual().is_circuit(x)) continue;
                CHECK(matroids_equal(biased_matroid(y_delta(y, x), kind), y_delta_matroid(m, x)));
                ++triads;
            }
        }
    }
    CHECK(triads > 0);
    auto k4 = complete_graph(4);
    EdgeSet tri = k4.edge_set({"e1", "e2", "e4"});
    CHECK(matroids_equal(graphic_matroid(delta_y_graph(k4, tri)), delta_y_matroid(graphic_matroid(k4), tri)));
    CHECK_THROWS_AS(delta_y_matroid(graphic_matroid(k4), k4.edge_set({"e1", "e2", "e3"})), NotTriangle);
    CHECK_THROWS_AS(y_delta_matroid(graphic_matroid(k4), tri), NotTriad);
}

TEST_CASE("roll-ups preserve the frame matroid") {
    int checked = 0;
    for (const auto& bg : catalog()) {
        auto f = frame_matroid(bg);
        auto cls = classify_balance(bg);
        for_each_bit(cls.balancing_vertices, [&](int u) {
            if (cls.tag != BalanceTag::AlmostBalanced) return;
            auto part = unbalancing_classes(bg, u);
            for (EdgeSet c : part.classes) {
                if (c & bg.joints()) continue;
                if (part.joints_away) {
                    CHECK_THROWS_AS(roll_up(bg, u, c), StructureMissing);
                    continue;
                }
                auto r = roll_up(bg, u, c);
                CHECK(matroids_equal(f, frame_matroid(r)));
                CHECK(matroids_equal(f, frame_matroid(unroll(r, u))));
                ++checked;
            }
        });
    }
    CHECK(checked > 0);

    // Balanced 2C3 minus an edge, rolled at a vertex.
    auto g = double_triangle();
    auto h = restrict_edges(BiasedGraph(g, oracle::cycles(g)), g.all_edges() & ~bit(5));
    auto part = unbalancing_classes(h, 0);
    auto r = roll_up(h, 0, part.classes.front());
    CHECK(matroids_equal(frame_matroid(h), frame_matroid(r)));

    // Double roll-up on a three-page fat theta.
    MultiGraph ft(5);
    std::vector<EdgeSet> b;
    for (int i = 0; i < 3; ++i) {
        int e1 = ft.add_edge(0, 2 + i);
        int e2 = ft.add_edge(0, 2 + i);
        ft.add_edge(2 + i, 1);
        b.push_back(bit(e1) | bit(e2));
    }
    BiasedGraph fat(ft, b);
    CHECK(matroids_equal(frame_matroid(fat), frame_matroid(double_roll_up(fat, 0, 1))));
    CHECK(matroids_equal(frame_matroid(fat), frame_matroid(double_roll_up(fat, 2, 0))));
}
