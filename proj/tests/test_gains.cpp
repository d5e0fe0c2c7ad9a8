#include "doctest.h"

#include <map>
#include <random>
#include <set>

#include "bmlab/gains.hpp"
#include "oracles.hpp"

using namespace bmlab;

namespace {

GainGraph random_gains(const MultiGraph& g, const GainGroup& grp, std::mt19937& rng) {
    auto el = grp.elements();
    std::uniform_int_distribution<size_t> pick(0, el.size() - 1);
    std::vector<int> gains;
    for (int e = 0; e < g.num_edges(); ++e) gains.push_back(el[pick(rng)]);
    return GainGraph(g, grp, gains);
}

SwitchingFunction random_eta(const MultiGraph& g, const GainGroup& grp, std::mt19937& rng) {
    auto el = grp.elements();
    std::uniform_int_distribution<size_t> pick(0, el.size() - 1);
    SwitchingFunction eta;
    for (int v = 0; v < g.num_vertices(); ++v) eta.push_back(el[pick(rng)]);
    return eta;
}

// Calls f on every switching function (all vertex tuples of group elements).
template <class F>
void for_each_eta(int n, const GainGroup& grp, F&& f) {
    auto el = grp.elements();
    std::vector<size_t> idx(n, 0);
    while (true) {
        SwitchingFunction eta;
        for (size_t i : idx) eta.push_back(el[i]);
        f(eta);
        int k = 0;
        while (k < n && ++idx[k] == el.size()) idx[k++] = 0;
        if (k == n) return;
    }
}

bool brute_switching_equivalent(const GainGraph& a, const GainGraph& b) {
    bool found = false;
    for_each_eta(a.graph.num_vertices(), a.group, [&](const SwitchingFunction& eta) {
        if (!found && switching(a, eta).gain == b.gain) found = true;
    });
    return found;
}

// Gains on 2C3 in the additive normal form: e1=0, e2=1, e3=0, e4=a, e5=b, e6=c.
GainGraph additive_normal(int a, int b, int c) {
    return GainGraph(double_triangle(), GainGroup::add(5), {0, 1, 0, a, b, c});
}

std::vector<GainGroup> all_groups() {
    std::vector<GainGroup> out;
    for (int q : GF::supported_orders()) {
        out.push_back(GainGroup::mul(q));
        out.push_back(GainGroup::add(q));
    }
    for (int n : {1, 2, 3, 4, 6, 7, 12, 257 - 1}) out.push_back(GainGroup::zn(n));
    return out;
}

}  // namespace

TEST_CASE("group axioms hold exhaustively") {
    for (const GainGroup& grp : all_groups()) {
        CAPTURE(grp.describe());
        auto el = grp.elements();
        REQUIRE(static_cast<int>(el.size()) == grp.order());
        const int id = grp.identity();
        bool ok = true;
        for (int a : el) {
            ok &= grp.compose(a, id) == a;
            ok &= grp.compose(a, grp.inverse(a)) == id;
            for (int b : el) {
                int ab = grp.compose(a, b);
                ok &= grp.contains(ab);
                ok &= ab == grp.compose(b, a);
                for (int c : el) ok &= grp.compose(ab, c) == grp.compose(a, grp.compose(b, c));
            }
        }
        CHECK(ok);
        if (grp.has_scaling()) {
            // x -> s*x is an automorphism of the additive group for s != 0.
            bool aut = true;
            for (int s = 1; s < grp.param(); ++s) {
                std::set<int> image;
                for (int x : el) {
                    image.insert(grp.scale(s, x));
                    for (int y : el) aut &= grp.scale(s, grp.compose(x, y)) == grp.compose(grp.scale(s, x), grp.scale(s, y));
                }
                aut &= static_cast<int>(image.size()) == grp.order();
            }
            CHECK(aut);
        }
    }
    CHECK(GainGroup::mul(5).smallest_non_identity() == 2);
    CHECK(GainGroup::add(4).smallest_non_identity() == 1);
    CHECK_THROWS_AS(GainGroup::zn(1).smallest_non_identity(), InvalidArgument);
}

TEST_CASE("walk gains") {
    auto g = double_triangle();
    GainGraph gg(g, GainGroup::mul(5), {1, 2, 1, 2, 3, 4});
    CHECK(walk_gain(gg, {{1, false}}) == 2);
    CHECK(walk_gain(gg, {{1, true}}) == 3);
    Walk tri{{0, false}, {2, false}, {4, false}};
    CHECK(walk_gain(gg, tri) == 3);
    Walk back{{4, true}, {2, true}, {0, true}};
    CHECK(walk_gain(gg, back) == 2);
    CHECK_THROWS_AS(walk_gain(gg, {{0, false}, {4, false}}), NotAWalk);
    GainGraph id(g, GainGroup::mul(5), std::vector<int>(6, 1));
    CHECK(walk_gain(id, tri) == 1);
}

TEST_CASE("induced bias examples") {
    auto g = double_triangle();
    auto signed_gains = GainGraph(g, GainGroup::zn(2), {0, 1, 0, 1, 0, 1});
    auto b = induced_bias(signed_gains);
    CHECK(b.balanced().size() == 4);
    for (EdgeSet c : b.balanced()) CHECK(popcount(c) == 3);

    auto frame = induced_bias(GainGraph(g, GainGroup::mul(5), {1, 2, 1, 2, 3, 4}));
    for (EdgeSet c : frame.balanced()) CHECK(popcount(c) != 2);

    auto id = GainGraph(g, GainGroup::add(3), std::vector<int>(6, 0));
    CHECK(induced_bias(id).is_balanced());
    CHECK(is_realization(id, BiasedGraph(g, oracle::cycles(g))));
    CHECK_FALSE(is_realization(id, BiasedGraph(g, {})));
    CHECK(is_realization(signed_gains, b));
}

TEST_CASE("switching") {
    std::mt19937 rng(7);
    auto g = tube_graph();
    g.add_edge(2, 2, "loop");
    const std::vector<GainGroup> groups{GainGroup::mul(7), GainGroup::add(8), GainGroup::zn(6)};
    for (int trial = 0; trial < 200; ++trial) {
        const auto& grp = groups[trial % groups.size()];
        auto gg = random_gains(g, grp, rng);
        auto eta = random_eta(g, grp, rng);
        auto sw = switching(gg, eta);
        CHECK(induced_bias(sw).balanced() == induced_bias(gg).balanced());
        CHECK(sw.gain.back() == gg.gain.back());
        SwitchingFunction inv;
        for (int x : eta) inv.push_back(grp.inverse(x));
        CHECK(switching(sw, inv).gain == gg.gain);
        auto eta2 = random_eta(g, grp, rng);
        CHECK(switching(sw, eta2).gain == switching(gg, compose_switching(grp, eta, eta2)).gain);
    }
    auto gg = random_gains(g, GainGroup::zn(5), rng);
    CHECK(switching(gg, SwitchingFunction(g.num_vertices(), 0)).gain == gg.gain);
}

TEST_CASE("normalization") {
    std::mt19937 rng(11);
    auto p = path_graph(3);
    GainGraph path(p, GainGroup::mul(7), {3, 5});
    auto n = normalize(path, p.all_edges());
    CHECK(n.gains.gain == std::vector<int>{1, 1});
    CHECK(n.eta[0] == 1);

    auto g = complete_graph(4);
    EdgeSet f = g.edge_set({"e1", "e2", "e3"});
    for (int trial = 0; trial < 50; ++trial) {
        auto gg = random_gains(g, GainGroup::add(9), rng);
        auto once = normalize(gg, f);
        for (int e : bits_of(f)) CHECK(once.gains.gain[e] == 0);
        CHECK(switching(gg, once.eta).gain == once.gains.gain);
        CHECK(normalize(once.gains, f).gains.gain == once.gains.gain);
        CHECK(once.eta[0] == 0);
    }
    CHECK_THROWS_AS(normalize(GainGraph(g, GainGroup::zn(2), std::vector<int>(6, 0)), bit(0)), NotMaximalForest);

    // The frame figure labeling: normalize on {e1, e3}.
    auto t = double_triangle();
    auto gg = random_gains(t, GainGroup::mul(5), rng);
    auto fig = normalize(gg, t.edge_set({"e1", "e3"}));
    CHECK(fig.gains.gain[0] == 1);
    CHECK(fig.gains.gain[2] == 1);
}

TEST_CASE("switching equivalence agrees with brute force") {
    std::mt19937 rng(3);
    MultiGraph loopy(3);
    loopy.add_edge(0, 1);
    loopy.add_edge(1, 2);
    loopy.add_edge(0, 1);
    loopy.add_edge(2, 2);
    const std::vector<MultiGraph> graphs{complete_graph(4), double_triangle(), tube_graph(), loopy};
    const std::vector<GainGroup> groups{GainGroup::zn(2), GainGroup::zn(3), GainGroup::mul(5), GainGroup::add(4),
                                        GainGroup::add(5)};
    for (const auto& g : graphs)
        for (const auto& grp : groups)
            for (int trial = 0; trial < 20; ++trial) {
                auto a = random_gains(g, grp, rng);
                auto b = trial % 2 ? switching(a, random_eta(g, grp, rng)) : random_gains(g, grp, rng);
                auto w = switching_equivalent(a, b);
                CHECK(w.has_value() == brute_switching_equivalent(a, b));
                if (w) CHECK(switching(a, *w).gain == b.gain);
            }
    auto g = complete_graph(4);
    CHECK_THROWS_AS(switching_equivalent(GainGraph(g, GainGroup::zn(2), std::vector<int>(6, 0)),
                                         GainGraph(g, GainGroup::zn(3), std::vector<int>(6, 0))),
                    GroupMismatch);
    CHECK_THROWS_AS(switching_equivalent(GainGraph(g, GainGroup::zn(2), std::vector<int>(6, 0)),
                                         GainGraph(double_triangle(), GainGroup::zn(2), std::vector<int>(6, 0))),
                    GraphMismatch);
}

TEST_CASE("switching classes of contrabalanced 2C3 over GF(5)") {
    auto g = double_triangle();
    auto grp = GainGroup::mul(5);
    BiasedGraph contra(g, {});
    // Brute force: all 4^6 gain functions, grouped by exhaustive switching.
    std::set<std::vector<int>> seen;
    int classes = 0;
    std::vector<int> gains(6, 1);
    for (int code = 0; code < 4096; ++code) {
        for (int e = 0, c = code; e < 6; ++e, c /= 4) gains[e] = 1 + c % 4;
        GainGraph gg(g, grp, gains);
        if (seen.count(gains) || !is_realization(gg, contra)) continue;
        ++classes;
        for_each_eta(3, grp, [&](const SwitchingFunction& eta) { seen.insert(switching(gg, eta).gain); });
    }
    auto normal = normalized_realizations(contra, grp, g.edge_set({"e1", "e3"}));
    CHECK(static_cast<int>(normal.size()) == classes);
    // a, b != 1, c != d, and every triangle unbalanced.
    CHECK(classes == 2);
}

TEST_CASE("switching and scaling") {
    std::mt19937 rng(5);
    auto g = double_triangle();
    auto grp = GainGroup::add(5);
    auto phi = random_gains(g, grp, rng);
    auto w = switching_scaling_equivalent(phi, scale_gains(phi, 3));
    REQUIRE(w.has_value());
    CHECK(w->scalar == 3);
    CHECK(w->eta == SwitchingFunction(3, 0));

    auto p = path_graph(2);
    p.add_edge(0, 1);
    p.add_edge(0, 1);
    GainGraph x(p, grp, {0, 1, 1});
    GainGraph y(p, grp, {0, 1, 2});
    CHECK_FALSE(switching_scaling_equivalent(x, y).has_value());
    CHECK_THROWS_AS(switching_scaling_equivalent(GainGraph(g, GainGroup::mul(5), std::vector<int>(6, 1)),
                                                 GainGraph(g, GainGroup::mul(5), std::vector<int>(6, 1))),
                    GroupMismatch);

    // Normal forms 0/1/0/a/b/c without a balanced 2-cycle are pairwise
    // inequivalent; the decision also agrees with brute force over (s, eta).
    std::vector<GainGraph> forms;
    for (int a = 1; a < 5; ++a)
        for (int b = 0; b < 5; ++b)
            for (int c = 0; c < 5; ++c)
                if (b != c) forms.push_back(additive_normal(a, b, c));
    for (size_t i = 0; i < forms.size(); ++i)
        for (size_t j = 0; j < forms.size(); ++j) {
            bool brute = false;
            for (int s = 1; s < 5 && !brute; ++s)
                for_each_eta(3, grp, [&](const SwitchingFunction& eta) {
                    if (scale_gains(switching(forms[i], eta), s).gain == forms[j].gain) brute = true;
                });
            auto dec = switching_scaling_equivalent(forms[i], forms[j]);
            CHECK(dec.has_value() == brute);
            CHECK(dec.has_value() == (i == j));
            if (dec) CHECK(scale_gains(switching(forms[i], dec->eta), dec->scalar).gain == forms[j].gain);
        }
}

TEST_CASE("induced gains realize the biased minor") {
    std::mt19937 rng(13);
    MultiGraph g = tube_graph();
    g.add_edge(0, 0, "j1");
    g.add_edge(3, 3, "j2");
    g.add_edge(1, 2, "x");
    const std::vector<GainGroup> groups{GainGroup::zn(2), GainGroup::mul(5), GainGroup::add(4)};
    std::uniform_int_distribution<int> role(0, 3);
    for (int trial = 0; trial < 300; ++trial) {
        const auto& grp = groups[trial % groups.size()];
        auto gg = random_gains(g, grp, rng);
        EdgeSet con = 0;
        EdgeSet del = 0;
        for (int e = 0; e < g.num_edges(); ++e) {
            int r = role(rng);
            if (r == 0) con |= bit(e);
            if (r == 1) del |= bit(e);
        }
        auto bm = biased_minor(induced_bias(gg), con, del);
        auto gm = induced_gain(gg, con, del);
        CHECK(gm.edge_map == bm.edge_map);
        CHECK(induced_bias(gm.gains).balanced() == bm.result.balanced());
    }

    auto k = complete_graph(4);
    GainGraph gk(k, GainGroup::zn(3), {1, 2, 0, 1, 2, 0});
    auto del = induced_gain(gk, 0, k.edge_set({"e6"}));
    CHECK(del.gains.gain == std::vector<int>{1, 2, 0, 1, 2});

    auto c3 = cycle_graph(3);
    auto two = induced_gain(GainGraph(c3, GainGroup::mul(7), {1, 1, 1}), bit(0), 0);
    CHECK(two.gains.gain == std::vector<int>{1, 1});
    CHECK(induced_bias(two.gains).is_balanced());
    CHECK_THROWS_AS(induced_gain(gk, bit(7), 0), UnknownEdge);
}

TEST_CASE("forest contraction preserves switching inequivalence") {
    const std::vector<MultiGraph> graphs{complete_graph(4), double_triangle(), tube_graph()};
    for (const auto& g : graphs)
        for (const auto& grp : {GainGroup::zn(2), GainGroup::zn(3)}) {
            EdgeSet tree = spanning_forest(g);
            auto normal = normalized_realizations(BiasedGraph::trusted(g, {}), grp, tree);
            // Contrabalanced realizations are a subset; use every normalized
            // gain function instead.
            std::vector<GainGraph> all;
            auto free = bits_of(g.all_edges() & ~tree);
            int total = 1;
            for (size_t i = 0; i < free.size(); ++i) total *= grp.order();
            for (int code = 0; code < total; ++code) {
                std::vector<int> gains(g.num_edges(), 0);
                for (int i = 0, c = code; i < static_cast<int>(free.size()); ++i, c /= grp.order())
                    gains[free[i]] = c % grp.order();
                all.emplace_back(g, grp, gains);
            }
            CHECK(normal.size() <= all.size());
            std::vector<EdgeSet> forests;
            for (EdgeSet f = 0; f <= g.all_edges(); ++f)
                if (is_acyclic(g, f)) forests.push_back(f);
            bool ok = true;
            for (EdgeSet f : forests)
                for (size_t i = 0; i < all.size(); ++i)
                    for (size_t j = i + 1; j < all.size(); ++j) {
                        auto a = induced_gain(all[i], f, 0).gains;
                        auto b = induced_gain(all[j], f, 0).gains;
                        if (switching_equivalent(a, b)) ok = false;
                    }
            CHECK(ok);
        }
}
