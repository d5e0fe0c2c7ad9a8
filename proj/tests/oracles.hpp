#pragma once

// Brute-force reference implementations shared by the test suites.  They
// deliberately avoid the library's own search code and only use the
// elementary predicates (is_cycle, degree) on raw edge subsets.

#include <algorithm>
#include <vector>

#include "bmlab/bias.hpp"
#include "bmlab/gains.hpp"

namespace oracle {

using bmlab::EdgeSet;
using bmlab::MultiGraph;

inline std::vector<EdgeSet> cycles(const MultiGraph& g) {
    std::vector<EdgeSet> out;
    for (EdgeSet s = 1; s <= g.all_edges(); ++s)
        if (bmlab::is_cycle(g, s)) out.push_back(s);
    std::sort(out.begin(), out.end(), bmlab::cycle_order);
    return out;
}

// A theta is an edge set with exactly two vertices of degree three, every
// other touched vertex of degree two, no loops, and exactly three cycles
// inside it.
inline bool is_theta(const MultiGraph& g, EdgeSet s, const std::vector<EdgeSet>& all_cycles) {
    if (s & g.loops()) return false;
    int deg3 = 0;
    for (int v = 0; v < g.num_vertices(); ++v) {
        int d = g.degree(v, s);
        if (d == 3) ++deg3;
        else if (d != 0 && d != 2) return false;
    }
    if (deg3 != 2) return false;
    int inside = 0;
    EdgeSet covered = 0;
    for (EdgeSet c : all_cycles)
        if (bmlab::subset_of(c, s)) {
            ++inside;
            covered |= c;
        }
    return inside == 3 && covered == s;
}

inline bool theta_ok(const MultiGraph& g, const std::vector<EdgeSet>& balanced) {
    auto all = cycles(g);
    for (EdgeSet s = 1; s <= g.all_edges(); ++s) {
        if (!is_theta(g, s, all)) continue;
        int nb = 0;
        for (EdgeSet c : balanced)
            if (bmlab::subset_of(c, s)) ++nb;
        if (nb == 2) return false;
    }
    return true;
}

// Every bias class (subset of cycles) on g satisfying the theta property.
inline std::vector<std::vector<EdgeSet>> all_biases(const MultiGraph& g) {
    auto all = cycles(g);
    std::vector<std::vector<EdgeSet>> out;
    for (unsigned mask = 0; mask < (1U << all.size()); ++mask) {
        std::vector<EdgeSet> b;
        for (size_t i = 0; i < all.size(); ++i)
            if (mask >> i & 1U) b.push_back(all[i]);
        if (theta_ok(g, b)) out.push_back(b);
    }
    return out;
}

// Components of (V, x) and whether each is balanced under the gains, found
// by propagating vertex potentials (the groups here are abelian).
struct GainComponents {
    int count = 0;
    int balanced = 0;
    bool all_balanced = true;
};

inline GainComponents gain_components(const bmlab::GainGraph& gg, EdgeSet x) {
    const MultiGraph& g = gg.graph;
    const auto& grp = gg.group;
    const int n = g.num_vertices();
    std::vector<int> comp(n, -1), pot(n, 0);
    GainComponents out;
    for (int root = 0; root < n; ++root) {
        if (comp[root] >= 0) continue;
        const int id = out.count++;
        comp[root] = id;
        pot[root] = grp.identity();
        std::vector<int> stack{root};
        bool ok = true;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int e = 0; e < g.num_edges(); ++e) {
                if (!(x >> e & 1U)) continue;
                const auto& ed = g.edge(e);
                if (ed.tail != v && ed.head != v) continue;
                // Potential rule: pot(head) = pot(tail) * gain(e).
                if (ed.tail == ed.head) {
                    ok = ok && gg.gain[e] == grp.identity();
                    continue;
                }
                const bool forward = ed.tail == v;
                const int w = forward ? ed.head : ed.tail;
                const int want = forward ? grp.compose(pot[v], gg.gain[e]) : grp.compose(pot[v], grp.inverse(gg.gain[e]));
                if (comp[w] < 0) {
                    comp[w] = id;
                    pot[w] = want;
                    stack.push_back(w);
                } else if (pot[w] != want) {
                    ok = false;
                }
            }
        }
        out.balanced += ok;
        out.all_balanced = out.all_balanced && ok;
    }
    return out;
}

inline bool gains_balance(const bmlab::GainGraph& gg, EdgeSet x) { return gain_components(gg, x).all_balanced; }

// Frame rank |V| - (balanced components), isolated vertices included.
inline int gain_frame_rank(const bmlab::GainGraph& gg, EdgeSet x) {
    return gg.graph.num_vertices() - gain_components(gg, x).balanced;
}

// Complete lift rank; with_e0 adds the extra element.
inline int gain_lift_rank(const bmlab::GainGraph& gg, EdgeSet x, bool with_e0) {
    auto c = gain_components(gg, x);
    return gg.graph.num_vertices() - c.count + ((with_e0 || !c.all_balanced) ? 1 : 0);
}

}  // namespace oracle
