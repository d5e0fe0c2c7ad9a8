// Acceptance run: one PASS/FAIL line per criterion.  Exit status is the
// number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "bmlab/catalog.hpp"
#include "bmlab/verify.hpp"
#include "oracles.hpp"

using namespace bmlab;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

int g_failed = 0;

void criterion(int n, const std::string& title, double limit_s, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > limit_s) {
        out.ok = false;
        out.detail += "; over the time limit";
    }
    g_failed += !out.ok;
    std::printf("criterion %d: %s  %s (%s; %.2fs of %.0fs)\n", n, out.ok ? "PASS" : "FAIL", title.c_str(),
                out.detail.c_str(), secs, limit_s);
    std::fflush(stdout);
}

Outcome claims_pass(const std::vector<std::string>& ids, const VerifyOptions& opts) {
    Outcome out;
    std::ostringstream d;
    for (const auto& id : ids) {
        auto r = verify(id, opts);
        if (r.status != VerifyStatus::Pass) {
            out.ok = false;
            d << id << " " << to_string(r.status) << " ";
            if (!r.witnesses.empty()) d << r.witnesses[0].dump() << " ";
        }
    }
    d << ids.size() << " claims";
    out.detail = d.str();
    return out;
}

// ---- criterion 2 -----------------------------------------------------------

GainGraph random_gain_graph(std::mt19937_64& rng, const GainGroup& grp) {
    std::uniform_int_distribution<int> nv(1, 6), ne(1, 10);
    const int n = nv(rng), m = ne(rng);
    std::uniform_int_distribution<int> vert(0, n - 1);
    auto elems = grp.elements();
    std::uniform_int_distribution<size_t> pick(0, elems.size() - 1);
    MultiGraph g(n);
    std::vector<int> gain;
    for (int k = 0; k < m; ++k) {
        g.add_edge(vert(rng), vert(rng));
        gain.push_back(elems[pick(rng)]);
    }
    return GainGraph(g, grp, gain);
}

Outcome canonical_correctness() {
    std::mt19937_64 rng(20240601);
    long long subsets = 0;
    for (int s = 0; s < 200; ++s) {
        GainGraph f = random_gain_graph(rng, GainGroup::mul(5));
        Matroid fm = vector_matroid(frame_matrix(f).matrix);
        for (EdgeSet x = 0; x <= f.graph.all_edges(); ++x, ++subsets)
            if (fm.rank(x) != oracle::gain_frame_rank(f, x))
                return {false, "frame sample " + std::to_string(s) + " subset " + std::to_string(x)};

        GainGraph l = random_gain_graph(rng, GainGroup::add(5));
        const int m = l.graph.num_edges();
        Matroid lm = vector_matroid(lift_matrix(l).matrix);
        Matroid l0 = vector_matroid(complete_lift_matrix(l).matrix);
        for (EdgeSet x = 0; x <= l.graph.all_edges(); ++x, subsets += 3) {
            if (lm.rank(x) != oracle::gain_lift_rank(l, x, false) || l0.rank(x) != oracle::gain_lift_rank(l, x, false) ||
                l0.rank(x | bit(m)) != oracle::gain_lift_rank(l, x, true))
                return {false, "lift sample " + std::to_string(s) + " subset " + std::to_string(x)};
        }
    }
    return {true, "200 frame and 200 lift samples, " + std::to_string(subsets) + " subset ranks"};
}

// ---- criterion 4 -----------------------------------------------------------

// Orbits of gain functions on g realizing the cycle set `balanced`, under
// switching (and scaling for additive groups), by exhaustive enumeration.
int brute_gain_classes(const MultiGraph& g, const std::vector<EdgeSet>& balanced, const GainGroup& grp, int q) {
    const auto cycles = oracle::cycles(g);
    const std::set<EdgeSet> bal(balanced.begin(), balanced.end());
    const auto elems = grp.elements();
    const int m = g.num_edges(), n = g.num_vertices();
    std::vector<int> scalars{1};
    if (grp.has_scaling()) scalars = GFField(q).units();

    std::set<std::vector<int>> seen;
    int classes = 0;
    std::vector<size_t> idx(m, 0);
    while (true) {
        std::vector<int> gain(m);
        for (int e = 0; e < m; ++e) gain[e] = elems[idx[e]];
        GainGraph gg(g, grp, gain);
        bool realizes = true;
        for (EdgeSet c : cycles) realizes = realizes && oracle::gains_balance(gg, c) == (bal.count(c) > 0);
        if (realizes && !seen.count(gain)) {
            ++classes;
            std::vector<size_t> eta(n, 0);
            while (true) {
                for (int a : scalars) {
                    std::vector<int> img(m);
                    for (int e = 0; e < m; ++e) {
                        const Edge& ed = g.edge(e);
                        int x = grp.has_scaling() ? grp.scale(a, gain[e]) : gain[e];
                        img[e] = grp.compose(grp.compose(grp.inverse(elems[eta[ed.tail]]), x), elems[eta[ed.head]]);
                    }
                    seen.insert(img);
                }
                size_t k = 0;
                while (k < eta.size() && ++eta[k] == elems.size()) eta[k++] = 0;
                if (k == eta.size()) break;
            }
        }
        size_t k = 0;
        while (k < idx.size() && ++idx[k] == elems.size()) idx[k++] = 0;
        if (k == idx.size()) break;
    }
    return classes;
}

Outcome all_reps_2c3() {
    std::ostringstream d;
    Outcome out;
    int total = 0;
    for (const auto& nb : classify_2c3_proper()) {
        const BiasedGraph& bg = nb.graph;
        auto reps = enumerate_representations(frame_matroid(bg), 4);
        int expected = brute_gain_classes(bg.graph(), bg.balanced(), GainGroup::mul(4), 4);
        if (matroids_equal(frame_matroid(bg), lift_matroid(bg)))
            expected += brute_gain_classes(bg.graph(), bg.balanced(), GainGroup::add(4), 4);
        total += static_cast<int>(reps.size());
        d << nb.name << "=" << reps.size() << " ";
        if (static_cast<int>(reps.size()) != expected) {
            out.ok = false;
            d << "(expected " << expected << ") ";
        }
        for (const auto& r : reps)
            if (canonicalize_representation(r.matrix, bg).status != CanonStatus::Found) {
                out.ok = false;
                d << "(non-canonical class) ";
            }
    }
    d << "total " << total;
    out.detail = d.str();
    return out;
}

// ---- criterion 7 -----------------------------------------------------------

Outcome invariant_suites() {
    Outcome out;
    long long checks = 0;
    auto fail = [&](const std::string& what) {
        if (out.ok) out.detail = what + "; ";
        out.ok = false;
    };
    std::vector<NamedBiasedGraph> family = all_named();
    for (const auto& nb : family) {
        const BiasedGraph& bg = nb.graph;
        const MultiGraph& g = bg.graph();
        Matroid f = frame_matroid(bg), l = lift_matroid(bg), l0 = complete_lift(bg);
        for (const Matroid* m : {&f, &l, &l0}) {
            ++checks;
            if (check_rank_axioms(*m)) fail(nb.name + " rank axioms");
        }
        for (int e = 0; e < g.num_edges(); ++e) {
            auto del = biased_minor(bg, 0, bit(e)).result;
            checks += 3;
            if (!matroids_equal(frame_matroid(del), f.minor(0, bit(e)))) fail(nb.name + " F deletion");
            if (!matroids_equal(lift_matroid(del), l.minor(0, bit(e)))) fail(nb.name + " L deletion");
            if (!matroids_equal(complete_lift(del), l0.minor(0, bit(e)))) fail(nb.name + " L0 deletion");
            if (g.edge(e).is_loop()) continue;
            auto con = biased_minor(bg, bit(e), 0).result;
            checks += 3;
            if (!matroids_equal(frame_matroid(con), f.minor(bit(e), 0))) fail(nb.name + " F contraction");
            if (!matroids_equal(lift_matroid(con), l.minor(bit(e), 0))) fail(nb.name + " L contraction");
            if (!matroids_equal(complete_lift(con), l0.minor(bit(e), 0))) fail(nb.name + " L0 contraction");
        }
        // The bias of a gain graph does not change under switching.
        for (int q : {3, 4, 5}) {
            GainGroup grp = GainGroup::mul(q);
            auto reals = normalized_realizations(bg, grp, spanning_forest(g));
            std::mt19937_64 rng(q);
            auto elems = grp.elements();
            std::uniform_int_distribution<size_t> pick(0, elems.size() - 1);
            for (const auto& gg : reals) {
                SwitchingFunction eta(g.num_vertices());
                for (auto& x : eta) x = elems[pick(rng)];
                GainGraph sw = switching(gg, eta);
                ++checks;
                for (EdgeSet c : bg.cycles())
                    if (oracle::gains_balance(sw, c) != bg.is_balanced_cycle(c)) fail(nb.name + " switching changed the bias");
            }
        }
    }
    VerifyOptions o;
    Outcome claims = claims_pass({"deltawye-matroid", "deltawye-gains", "rollup-frame", "contraction-inequiv",
                                  "subdivision-classes"},
                                 o);
    if (!claims.ok) fail(claims.detail);
    out.detail += std::to_string(family.size()) + " catalog graphs, " + std::to_string(checks) +
                  " direct checks, " + claims.detail;
    return out;
}

// ---- criterion 8 -----------------------------------------------------------

// Projective classes of GF(q) representations of U(2,4), by brute force over
// standard forms [I | D]: D has no zero entry and nonzero determinant, and
// two standard forms are equivalent exactly when D' = R D S for diagonal R, S.
int brute_u24_classes(int q) {
    GFField f(q);
    auto units = f.units();
    std::set<std::array<int, 4>> seen;
    int classes = 0;
    for (int a : units)
        for (int b : units)
            for (int c : units)
                for (int d : units) {
                    if (f.sub(f.mul(a, d), f.mul(b, c)) == 0) continue;
                    std::array<int, 4> m{a, b, c, d};
                    if (seen.count(m)) continue;
                    ++classes;
                    for (int r1 : units)
                        for (int r2 : units)
                            for (int s1 : units)
                                for (int s2 : units)
                                    seen.insert({f.mul(f.mul(r1, a), s1), f.mul(f.mul(r1, b), s2),
                                                 f.mul(f.mul(r2, c), s1), f.mul(f.mul(r2, d), s2)});
                }
    return classes;
}

Outcome u24_counts() {
    Matroid u = Matroid::uniform(2, {"a", "b", "c", "d"});
    const int e4 = static_cast<int>(enumerate_representations(u, 4).size());
    const int e5 = static_cast<int>(enumerate_representations(u, 5).size());
    const int b4 = brute_u24_classes(4), b5 = brute_u24_classes(5);
    return {e4 == 2 && e5 == 3 && b4 == e4 && b5 == e5,
            "GF(4): " + std::to_string(e4) + " (brute " + std::to_string(b4) + "), GF(5): " + std::to_string(e5) +
                " (brute " + std::to_string(b5) + ")"};
}

}  // namespace

int main() {
    criterion(1, "catalog counts 7/6/3/13", 5, [] {
        const size_t k4 = classify_k4().size(), c3 = classify_2c3_proper().size(), tube = classify_tube_proper().size(),
                     base = base_graphs().size();
        return Outcome{k4 == 7 && c3 == 6 && tube == 3 && base == 13,
                       std::to_string(k4) + "/" + std::to_string(c3) + "/" + std::to_string(tube) + "/" +
                           std::to_string(base)};
    });
    criterion(2, "canonical frame and lift matrices represent F and L0", 60, canonical_correctness);
    criterion(3, "projective equivalence matches switching over GF(4) and GF(5)", 600, [] {
        VerifyOptions o;
        o.fields = std::vector<int>{4, 5};
        return claims_pass({"lemma-2c3-frame", "lemma-2c3-lift", "lemma-2c3-frame-vs-lift", "lemma-k4-frame",
                            "lemma-k4-lift", "lemma-k4-frame-vs-lift", "lemma-tube-frame", "lemma-tube-lift", "main2"},
                           o);
    });
    criterion(4, "every GF(4) representation of a proper 2C3 is canonical", 600, all_reps_2c3);
    criterion(5, "scrambled canonical matrices are recovered", 60, [] {
        VerifyOptions o;
        o.samples = 100;
        o.fields = std::vector<int>{5};
        auto r = verify("main3-roundtrip", o);
        return Outcome{r.status == VerifyStatus::Pass && r.counts["recovered"] == 100,
                       "recovered " + r.counts.value("recovered", json(0)).dump() + " of 100"};
    });
    criterion(6, "tangled minor and subdivision structure on <= 5 vertices, <= 8 edges", 600,
              [] { return claims_pass({"tangled-minor", "tangled-subgraph"}, {}); });
    criterion(7, "invariant suites over the catalog", 300, invariant_suites);
    criterion(8, "U(2,4) has 2 classes over GF(4) and 3 over GF(5)", 10, u24_counts);
    return g_failed;
}
