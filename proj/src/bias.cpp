#include "bmlab/bias.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace bmlab {

namespace {

void sort_unique(std::vector<EdgeSet>& v) {
    std::sort(v.begin(), v.end(), cycle_order);
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

EdgeSet map_set(EdgeSet s, const std::vector<int>& emap) {
    EdgeSet out = 0;
    for_each_bit(s, [&](int e) {
        if (emap[e] >= 0) out |= bit(emap[e]);
    });
    return out;
}

// Balanced cycles of bg that survive in a minor described by emap, i.e.
// that avoid every removed edge.
std::vector<EdgeSet> surviving(const BiasedGraph& bg, const std::vector<int>& emap) {
    EdgeSet removed = 0;
    for (size_t e = 0; e < emap.size(); ++e)
        if (emap[e] < 0) removed |= bit(static_cast<int>(e));
    std::vector<EdgeSet> out;
    for (EdgeSet c : bg.balanced())
        if ((c & removed) == 0) out.push_back(map_set(c, emap));
    return out;
}

std::string fresh_vertex_name(const MultiGraph& g) {
    for (int k = g.num_vertices() + 1;; ++k) {
        std::string name = "v" + std::to_string(k);
        bool clash = false;
        for (int v = 0; v < g.num_vertices(); ++v)
            if (g.vertex_name(v) == name) clash = true;
        if (!clash) return name;
    }
}

}  // namespace

std::optional<ThetaWitness> check_theta_property(const MultiGraph& g, const std::vector<EdgeSet>& balanced) {
    for (EdgeSet c : balanced)
        if (!is_cycle(g, c)) throw NotACycle("balanced set member is not a cycle");
    std::vector<EdgeSet> b = balanced;
    sort_unique(b);
    auto member = [&](EdgeSet c) { return std::binary_search(b.begin(), b.end(), c, cycle_order); };
    for (size_t i = 0; i < b.size(); ++i)
        for (size_t j = i + 1; j < b.size(); ++j) {
            if ((b[i] & b[j]) == 0) continue;
            if (!forms_theta(g, b[i], b[j])) continue;
            EdgeSet third = b[i] ^ b[j];
            if (!member(third)) return ThetaWitness{b[i] | b[j], b[i], b[j], third};
        }
    return std::nullopt;
}

// ------------------------------------------------------------ BiasedGraph

BiasedGraph::BiasedGraph(MultiGraph g, std::vector<EdgeSet> balanced) : g_(std::move(g)) {
    for (EdgeSet c : balanced)
        if (!is_cycle(g_, c)) throw NotACycle("balanced set member is not a cycle");
    if (auto w = check_theta_property(g_, balanced)) {
        auto names = [&](EdgeSet s) {
            std::string out;
            for (const auto& n : g_.edge_names(s)) out += (out.empty() ? "" : " ") + n;
            return "{" + out + "}";
        };
        throw ThetaViolation("theta " + names(w->theta) + " has exactly two balanced cycles " +
                             names(w->balanced1) + " and " + names(w->balanced2));
    }
    balanced_ = std::move(balanced);
    sort_unique(balanced_);
    init_cycles();
}

BiasedGraph BiasedGraph::trusted(MultiGraph g, std::vector<EdgeSet> balanced) {
    BiasedGraph bg;
    bg.g_ = std::move(g);
    bg.balanced_ = std::move(balanced);
    sort_unique(bg.balanced_);
    bg.init_cycles();
    return bg;
}

void BiasedGraph::init_cycles() { cycles_ = enumerate_cycles(g_); }

std::vector<EdgeSet> BiasedGraph::unbalanced_cycles() const {
    std::vector<EdgeSet> out;
    for (EdgeSet c : cycles_)
        if (!is_balanced_cycle(c)) out.push_back(c);
    return out;
}

bool BiasedGraph::is_balanced_cycle(EdgeSet c) const {
    return std::binary_search(balanced_.begin(), balanced_.end(), c, cycle_order);
}

bool BiasedGraph::is_balanced_set(EdgeSet x) const {
    for (EdgeSet c : cycles_)
        if (subset_of(c, x) && !is_balanced_cycle(c)) return false;
    return true;
}

EdgeSet BiasedGraph::joints() const {
    EdgeSet s = 0;
    for_each_bit(g_.loops(), [&](int e) {
        if (!is_balanced_cycle(bit(e))) s |= bit(e);
    });
    return s;
}

EdgeSet BiasedGraph::balanced_loops() const { return g_.loops() & ~joints(); }

// ------------------------------------------------------------------ balance

std::string to_string(BalanceTag t) {
    switch (t) {
        case BalanceTag::Balanced: return "balanced";
        case BalanceTag::AlmostBalanced: return "almost-balanced";
        case BalanceTag::ProperlyUnbalanced: return "properly-unbalanced";
    }
    return "?";
}

BalanceClass classify_balance(const BiasedGraph& bg) {
    const MultiGraph& g = bg.graph();
    BalanceClass out;
    VertexSet meet = g.all_vertices();
    bool any_unbalanced = false;
    for (EdgeSet c : bg.unbalanced_cycles()) {
        any_unbalanced = true;
        if (popcount(c) >= 2) meet &= g.vertices_of(c);
    }
    out.balancing_vertices = meet;
    if (!any_unbalanced) {
        out.tag = BalanceTag::Balanced;
    } else {
        out.tag = meet ? BalanceTag::AlmostBalanced : BalanceTag::ProperlyUnbalanced;
    }
    return out;
}

VertexSet balancing_vertices(const BiasedGraph& bg) {
    VertexSet meet = bg.graph().all_vertices();
    for (EdgeSet c : bg.unbalanced_cycles()) meet &= bg.graph().vertices_of(c);
    return meet;
}

std::optional<std::pair<EdgeSet, EdgeSet>> disjoint_unbalanced_pair(const BiasedGraph& bg, bool allow_loops) {
    const MultiGraph& g = bg.graph();
    auto unb = bg.unbalanced_cycles();
    if (!allow_loops)
        unb.erase(std::remove_if(unb.begin(), unb.end(), [](EdgeSet c) { return popcount(c) < 2; }),
                  unb.end());
    for (size_t i = 0; i < unb.size(); ++i)
        for (size_t j = i + 1; j < unb.size(); ++j)
            if ((g.vertices_of(unb[i]) & g.vertices_of(unb[j])) == 0) return std::make_pair(unb[i], unb[j]);
    return std::nullopt;
}

TangleReport tangle_report(const BiasedGraph& bg) {
    TangleReport r;
    r.disjoint_pair = disjoint_unbalanced_pair(bg);
    r.tangled = classify_balance(bg).tag == BalanceTag::ProperlyUnbalanced && !r.disjoint_pair;
    return r;
}

// ------------------------------------------------------------------ minors

namespace {

struct MinorState {
    BiasedGraph bg;
    std::vector<int> edge_map;
    std::vector<int> vertex_map;
};

void compose(MinorState& st, const std::vector<int>& emap, const std::vector<int>& vmap) {
    for (int& e : st.edge_map)
        if (e >= 0) e = emap[e];
    for (int& v : st.vertex_map) v = vmap[v];
}

void delete_edge(MinorState& st, int ce) {
    auto m = graph_minor(st.bg.graph(), 0, bit(ce));
    auto b = surviving(st.bg, m.edge_map);
    st.bg = BiasedGraph(std::move(m.graph), std::move(b));
    compose(st, m.edge_map, m.vertex_map);
}

void contract_link(MinorState& st, int ce) {
    const BiasedGraph& cur = st.bg;
    auto m = graph_minor(cur.graph(), bit(ce), 0);
    std::vector<int> back(m.graph.num_edges(), -1);
    for (int e = 0; e < cur.graph().num_edges(); ++e)
        if (m.edge_map[e] >= 0) back[m.edge_map[e]] = e;
    std::vector<EdgeSet> b;
    for (EdgeSet c : enumerate_cycles(m.graph)) {
        EdgeSet old = map_set(c, back);
        if (cur.is_balanced_cycle(old) || cur.is_balanced_cycle(old | bit(ce))) b.push_back(c);
    }
    st.bg = BiasedGraph(std::move(m.graph), std::move(b));
    compose(st, m.edge_map, m.vertex_map);
}

void contract_joint(MinorState& st, int ce) {
    const BiasedGraph& cur = st.bg;
    const MultiGraph& g = cur.graph();
    const int v = g.edge(ce).tail;
    MultiGraph h;
    for (int x = 0; x < g.num_vertices(); ++x) h.add_vertex(g.vertex_name(x));
    std::vector<int> emap(g.num_edges(), -1);
    std::vector<EdgeSet> b;
    for (int e = 0; e < g.num_edges(); ++e) {
        if (e == ce) continue;
        const Edge& ed = g.edge(e);
        if (ed.is_loop() && ed.tail == v) {
            emap[e] = h.add_edge(v, v, ed.name);
            b.push_back(bit(emap[e]));
        } else if (ed.tail == v || ed.head == v) {
            int w = ed.tail == v ? ed.head : ed.tail;
            emap[e] = h.add_edge(w, w, ed.name);
        } else {
            emap[e] = h.add_edge(ed.tail, ed.head, ed.name);
        }
    }
    for (EdgeSet c : cur.balanced())
        if (!contains(g.vertices_of(c), v)) b.push_back(map_set(c, emap));
    std::vector<int> vmap(g.num_vertices());
    std::iota(vmap.begin(), vmap.end(), 0);
    st.bg = BiasedGraph(std::move(h), std::move(b));
    compose(st, emap, vmap);
}

}  // namespace

BiasedMinor biased_minor(const BiasedGraph& bg, EdgeSet contract, EdgeSet del) {
    const MultiGraph& g = bg.graph();
    g.check_edges(contract | del);
    if (contract & del) throw InvalidArgument("contract and delete sets overlap");
    MinorState st;
    {
        auto m = graph_minor(g, 0, del);
        auto b = surviving(bg, m.edge_map);
        st.bg = BiasedGraph::trusted(std::move(m.graph), std::move(b));
        st.edge_map = m.edge_map;
        st.vertex_map = m.vertex_map;
    }
    bool link_minor = true;
    for_each_bit(contract, [&](int e) {
        int ce = st.edge_map[e];
        const Edge& ed = st.bg.graph().edge(ce);
        if (!ed.is_loop()) {
            contract_link(st, ce);
        } else if (st.bg.is_balanced_cycle(bit(ce))) {
            delete_edge(st, ce);
        } else {
            link_minor = false;
            contract_joint(st, ce);
        }
    });
    return {std::move(st.bg), std::move(st.edge_map), std::move(st.vertex_map), link_minor};
}

BiasedGraph drop_isolated(const BiasedGraph& bg) {
    auto m = drop_isolated(bg.graph());
    return BiasedGraph::trusted(std::move(m.graph), bg.balanced());
}

BiasedGraph restrict_edges(const BiasedGraph& bg, EdgeSet keep) {
    auto m = restrict_edges(bg.graph(), keep);
    return BiasedGraph::trusted(std::move(m.graph), surviving(bg, m.edge_map));
}

BiasedGraph subdivide_edge(const BiasedGraph& bg, int e, const std::string& name) {
    MultiGraph h = subdivide_edge(bg.graph(), e, name);
    int added = h.num_edges() - 1;
    std::vector<EdgeSet> b;
    for (EdgeSet c : bg.balanced()) b.push_back(contains(c, e) ? (c | bit(added)) : c);
    return BiasedGraph::trusted(std::move(h), std::move(b));
}

// ------------------------------------------------------------- isomorphism

std::optional<GraphIso> biased_isomorphism(const BiasedGraph& a, const BiasedGraph& b) {
    if (a.balanced().size() != b.balanced().size()) return std::nullopt;
    std::map<int, int> la, lb;
    for (EdgeSet c : a.balanced()) ++la[popcount(c)];
    for (EdgeSet c : b.balanced()) ++lb[popcount(c)];
    if (la != lb) return std::nullopt;
    return find_isomorphism(a.graph(), b.graph(), [&](const GraphIso& iso) {
        for (EdgeSet c : a.balanced())
            if (!b.is_balanced_cycle(map_set(c, iso.edge_map))) return false;
        return true;
    });
}

// ------------------------------------------------------------------ Delta-Y

bool is_triangle(const MultiGraph& g, EdgeSet x) {
    return popcount(x) == 3 && (x & g.loops()) == 0 && is_cycle(g, x);
}

int claw_center(const MultiGraph& g, EdgeSet y) {
    if (popcount(y) != 3 || (y & g.loops())) return -1;
    for (int v : bits_of(g.vertices_of(y))) {
        if ((g.incident(v) & y) != y) continue;
        if (g.degree(v, g.all_edges()) != 3) continue;
        VertexSet ends = 0;
        for_each_bit(y, [&](int e) { ends |= bit(g.other_end(e, v)); });
        if (popcount(ends) == 3 && !contains(ends, v)) return v;
    }
    return -1;
}

MultiGraph delta_y_graph(const MultiGraph& g, EdgeSet x) {
    if (!is_triangle(g, x)) throw NotTriangle("edge set is not a triangle");
    MultiGraph h;
    for (int v = 0; v < g.num_vertices(); ++v) h.add_vertex(g.vertex_name(v));
    int w = h.add_vertex(fresh_vertex_name(g));
    VertexSet tri = g.vertices_of(x);
    for (int e = 0; e < g.num_edges(); ++e) {
        const Edge& ed = g.edge(e);
        if (contains(x, e)) {
            int opposite = lowest(tri & ~(bit(ed.tail) | bit(ed.head)));
            h.add_edge(opposite, w, ed.name);
        } else {
            h.add_edge(ed.tail, ed.head, ed.name);
        }
    }
    return h;
}

MultiGraph y_delta_graph(const MultiGraph& g, EdgeSet y) {
    int w = claw_center(g, y);
    if (w < 0) throw NotTriad("edge set is not a claw with a degree-3 center");
    auto spokes = bits_of(y);
    int p = g.other_end(spokes[0], w), q = g.other_end(spokes[1], w), r = g.other_end(spokes[2], w);
    MultiGraph h;
    std::vector<int> vmap(g.num_vertices(), -1);
    for (int v = 0; v < g.num_vertices(); ++v)
        if (v != w) vmap[v] = h.add_vertex(g.vertex_name(v));
    for (int e = 0; e < g.num_edges(); ++e) {
        const Edge& ed = g.edge(e);
        if (e == spokes[0]) {
            h.add_edge(vmap[q], vmap[r], ed.name);
        } else if (e == spokes[1]) {
            h.add_edge(vmap[r], vmap[p], ed.name);
        } else if (e == spokes[2]) {
            h.add_edge(vmap[p], vmap[q], ed.name);
        } else {
            h.add_edge(vmap[ed.tail], vmap[ed.head], ed.name);
        }
    }
    return h;
}

BiasedGraph delta_y(const BiasedGraph& bg, EdgeSet x) {
    if (!is_triangle(bg.graph(), x) || !bg.is_balanced_cycle(x))
        throw NotBalancedTriangle("edge set is not a balanced triangle");
    MultiGraph h = delta_y_graph(bg.graph(), x);
    std::vector<EdgeSet> b;
    for (EdgeSet c : bg.balanced()) {
        int k = popcount(c & x);
        if (k == 0 || k == 2) b.push_back(c);
        if (k == 1) b.push_back(c ^ x);
    }
    return BiasedGraph(std::move(h), std::move(b));
}

BiasedGraph y_delta(const BiasedGraph& bg, EdgeSet y) {
    MultiGraph h = y_delta_graph(bg.graph(), y);
    std::vector<EdgeSet> b{y};
    for (EdgeSet c : bg.balanced()) {
        int k = popcount(c & y);
        if (k == 0) b.push_back(c);
        if (k == 2) {
            // C and its shortcut through the third triangle side share a
            // theta with the balanced triangle; keep whichever of them is
            // still a cycle (C fails when it also runs through the third
            // claw end).
            if (is_cycle(h, c)) b.push_back(c);
            if (is_cycle(h, c ^ y)) b.push_back(c ^ y);
        }
    }
    return BiasedGraph(std::move(h), std::move(b));
}

// ------------------------------------------------------- rolling/unrolling

UnbalancingPartition unbalancing_classes(const BiasedGraph& bg, int u) {
    const MultiGraph& g = bg.graph();
    if (u < 0 || u >= g.num_vertices()) throw InvalidArgument("vertex out of range");
    for (EdgeSet c : bg.unbalanced_cycles())
        if (popcount(c) >= 2 && !contains(g.vertices_of(c), u))
            throw NotBalancingVertex("vertex " + g.vertex_name(u) + " misses an unbalanced cycle");
    UnbalancingPartition out;
    out.vertex = u;
    EdgeSet links_u = g.incident(u) & g.links();
    std::vector<int> parent(g.num_edges());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x];
        return x;
    };
    for (EdgeSet c : bg.balanced()) {
        EdgeSet at = c & links_u;
        if (popcount(at) == 2) {
            int a = find(lowest(at)), b = find(lowest(at & (at - 1)));
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    }
    std::map<int, EdgeSet> blocks;
    for_each_bit(links_u, [&](int e) { blocks[find(e)] |= bit(e); });
    for (auto& [root, s] : blocks) out.classes.push_back(s);

    EdgeSet joints = bg.joints();
    out.joints_at = joints & g.incident(u);
    out.joints_away = joints & ~out.joints_at;
    // Joints away from u are grouped by the component of G - u they sit in.
    EdgeSet off_u = g.all_edges() & ~g.incident(u);
    auto label = component_labels(g, off_u);
    std::map<int, EdgeSet> jblocks;
    for_each_bit(out.joints_away, [&](int e) { jblocks[label[g.edge(e).tail]] |= bit(e); });
    for (auto& [root, s] : jblocks) out.classes.push_back(s);
    std::sort(out.classes.begin(), out.classes.end(),
              [](EdgeSet a, EdgeSet b) { return lowest(a) < lowest(b); });
    return out;
}

BiasedGraph roll_up(const BiasedGraph& bg, int u, EdgeSet cls) {
    const MultiGraph& g = bg.graph();
    auto part = unbalancing_classes(bg, u);
    bool found = false;
    for (EdgeSet c : part.classes)
        if (c == cls && (c & g.loops()) == 0) found = true;
    if (!found) throw InvalidArgument("not a link class of the unbalancing partition");
    // Existing joints away from u would share a class with the new ones.
    if (part.joints_away != 0) throw StructureMissing("graph already has joints away from the balancing vertex");
    MultiGraph h;
    for (int v = 0; v < g.num_vertices(); ++v) h.add_vertex(g.vertex_name(v));
    for (int e = 0; e < g.num_edges(); ++e) {
        const Edge& ed = g.edge(e);
        if (contains(cls, e)) {
            int w = g.other_end(e, u);
            h.add_edge(w, w, ed.name);
        } else {
            h.add_edge(ed.tail, ed.head, ed.name);
        }
    }
    std::vector<EdgeSet> b;
    for (EdgeSet c : bg.balanced())
        if ((c & cls) == 0) b.push_back(c);
    return BiasedGraph(std::move(h), std::move(b));
}

BiasedGraph unroll(const BiasedGraph& bg, int u) {
    const MultiGraph& g = bg.graph();
    auto part = unbalancing_classes(bg, u);
    if (part.joints_away == 0) throw StructureMissing("no joints away from the balancing vertex");
    MultiGraph h;
    for (int v = 0; v < g.num_vertices(); ++v) h.add_vertex(g.vertex_name(v));
    for (int e = 0; e < g.num_edges(); ++e) {
        const Edge& ed = g.edge(e);
        if (contains(part.joints_away, e)) {
            h.add_edge(u, ed.tail, ed.name);
        } else {
            h.add_edge(ed.tail, ed.head, ed.name);
        }
    }
    EdgeSet balanced_loops = bg.balanced_loops();
    std::vector<EdgeSet> b;
    for (EdgeSet c : enumerate_cycles(h)) {
        if (popcount(c) == 1) {
            if (c & balanced_loops) b.push_back(c);
            continue;
        }
        bool ok = true;
        for (EdgeSet cls : part.classes) {
            int k = popcount(c & cls);
            if (k != 0 && k != 2) ok = false;
        }
        if (ok) b.push_back(c);
    }
    return BiasedGraph(std::move(h), std::move(b));
}

FatTheta fat_theta_structure(const BiasedGraph& bg) {
    const MultiGraph& g = bg.graph();
    if (bg.is_balanced()) throw StructureMissing("balanced biased graph has no fat-theta structure");
    VertexSet bal = balancing_vertices(bg);
    if (popcount(bal) < 2) throw StructureMissing("fewer than two balancing vertices");
    FatTheta ft;
    ft.x = lowest(bal);
    ft.y = lowest(bal & (bal - 1));
    VertexSet hubs = bit(ft.x) | bit(ft.y);
    // Bridges of {x, y}.
    std::vector<int> parent(g.num_vertices());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[v] != v) v = parent[v];
        return v;
    };
    for (const auto& e : g.edges())
        if (!contains(hubs, e.tail) && !contains(hubs, e.head)) parent[find(e.tail)] = find(e.head);
    std::vector<EdgeSet> parts;
    std::map<int, size_t> by_root;
    for (int e = 0; e < g.num_edges(); ++e) {
        const Edge& ed = g.edge(e);
        bool inner_t = !contains(hubs, ed.tail), inner_h = !contains(hubs, ed.head);
        if (!inner_t && !inner_h) {
            parts.push_back(bit(e));
            continue;
        }
        int r = find(inner_t ? ed.tail : ed.head);
        auto it = by_root.find(r);
        if (it == by_root.end()) {
            by_root[r] = parts.size();
            parts.push_back(bit(e));
        } else {
            parts[it->second] |= bit(e);
        }
    }
    // Merge bridges joined by a balanced cycle.
    bool merged = true;
    while (merged) {
        merged = false;
        for (EdgeSet c : bg.balanced()) {
            std::vector<size_t> hit;
            for (size_t i = 0; i < parts.size(); ++i)
                if (parts[i] & c) hit.push_back(i);
            if (hit.size() > 1) {
                for (size_t k = hit.size() - 1; k >= 1; --k) {
                    parts[hit[0]] |= parts[hit[k]];
                    parts.erase(parts.begin() + static_cast<long>(hit[k]));
                }
                merged = true;
                break;
            }
        }
    }
    for (EdgeSet c : bg.cycles()) {
        bool single = std::any_of(parts.begin(), parts.end(), [&](EdgeSet p) { return subset_of(c, p); });
        if (single != bg.is_balanced_cycle(c))
            throw StructureMissing("balance is not determined by the hub parts");
    }
    std::sort(parts.begin(), parts.end(), [](EdgeSet a, EdgeSet b) { return lowest(a) < lowest(b); });
    ft.parts = std::move(parts);
    if (ft.parts.size() < 2) throw StructureMissing("fewer than two parts between the hubs");
    return ft;
}

BiasedGraph double_roll_up(const BiasedGraph& bg, int i, int j) {
    FatTheta ft = fat_theta_structure(bg);
    const int m = static_cast<int>(ft.parts.size());
    if (m < 3) throw StructureMissing("double roll-up needs at least three parts");
    if (i == j || i < 0 || j < 0 || i >= m || j >= m) throw InvalidArgument("bad part indices");
    const MultiGraph& g = bg.graph();
    EdgeSet ei = ft.parts[i] & g.incident(ft.x);
    EdgeSet ej = ft.parts[j] & g.incident(ft.y);
    MultiGraph h;
    for (int v = 0; v < g.num_vertices(); ++v) h.add_vertex(g.vertex_name(v));
    for (int e = 0; e < g.num_edges(); ++e) {
        const Edge& ed = g.edge(e);
        if (contains(ei, e)) {
            int w = g.other_end(e, ft.x);
            h.add_edge(w, w, ed.name);
        } else if (contains(ej, e)) {
            int w = g.other_end(e, ft.y);
            h.add_edge(w, w, ed.name);
        } else {
            h.add_edge(ed.tail, ed.head, ed.name);
        }
    }
    std::vector<EdgeSet> b;
    for (EdgeSet c : bg.balanced())
        if ((c & (ei | ej)) == 0) b.push_back(c);
    return BiasedGraph(std::move(h), std::move(b));
}

// ------------------------------------------------------------ link minors

namespace {

// Cycle of G|(c ∪ forest) containing c, for c a cycle of G/forest.
EdgeSet lift_cycle(const MultiGraph& g, EdgeSet forest, EdgeSet c) {
    EdgeSet s = c | forest;
    bool changed = true;
    while (changed) {
        changed = false;
        for_each_bit(s & forest, [&](int e) {
            const Edge& ed = g.edge(e);
            if (g.degree(ed.tail, s) == 1 || g.degree(ed.head, s) == 1) {
                s &= ~bit(e);
                changed = true;
            }
        });
    }
    return s;
}

// Enumerates forests of `links` in increasing size, calling f(forest); stops
// when f returns true.
template <class F>
bool for_each_forest(const MultiGraph& g, EdgeSet links, F&& f) {
    auto idx = bits_of(links);
    const int n = static_cast<int>(idx.size());
    for (int size = 0; size <= std::min(n, g.num_vertices() - 1); ++size) {
        std::vector<int> pick(size);
        std::iota(pick.begin(), pick.end(), 0);
        while (true) {
            EdgeSet s = 0;
            for (int p : pick) s |= bit(idx[p]);
            if (is_acyclic(g, s) && f(s)) return true;
            int i = size - 1;
            while (i >= 0 && pick[i] == n - size + i) --i;
            if (i < 0) break;
            ++pick[i];
            for (int j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
    return false;
}

template <class F>
bool for_each_subset_of_size(EdgeSet pool, int k, F&& f) {
    auto idx = bits_of(pool);
    const int n = static_cast<int>(idx.size());
    if (k > n) return false;
    std::vector<int> pick(k);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
        EdgeSet s = 0;
        for (int p : pick) s |= bit(idx[p]);
        if (f(s)) return true;
        int i = k - 1;
        while (i >= 0 && pick[i] == n - k + i) --i;
        if (i < 0) return false;
        ++pick[i];
        for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
}

// Builds the link minor G/forest restricted to r, without isolated
// vertices.  Edge i of the result is the i-th edge of r.
BiasedGraph quotient_minor(const BiasedGraph& bg, EdgeSet forest, EdgeSet r) {
    const MultiGraph& g = bg.graph();
    auto label = component_labels(g, forest);
    std::map<int, int> vid;
    MultiGraph h;
    auto vertex = [&](int v) {
        int l = label[v];
        auto it = vid.find(l);
        if (it != vid.end()) return it->second;
        int nv = h.add_vertex(g.vertex_name(l));
        vid[l] = nv;
        return nv;
    };
    std::vector<int> emap(g.num_edges(), -1);
    for_each_bit(r, [&](int e) {
        const Edge& ed = g.edge(e);
        int a = vertex(ed.tail);
        int b = vertex(ed.head);
        emap[e] = h.add_edge(a, b, ed.name);
    });
    std::vector<int> back(h.num_edges());
    for (int e = 0; e < g.num_edges(); ++e)
        if (emap[e] >= 0) back[emap[e]] = e;
    std::vector<EdgeSet> b;
    for (EdgeSet c : enumerate_cycles(h)) {
        EdgeSet orig = map_set(c, back);
        if (bg.is_balanced_cycle(lift_cycle(g, forest, orig))) b.push_back(c);
    }
    return BiasedGraph::trusted(std::move(h), std::move(b));
}

void check_link_minor_bounds(const BiasedGraph& bg) {
    const Bounds& b = bounds();
    if (bg.graph().num_vertices() > b.link_minor_vertices || bg.graph().num_edges() > b.link_minor_edges)
        throw BoundExceeded("link-minor search limited to " + std::to_string(b.link_minor_vertices) +
                            " vertices and " + std::to_string(b.link_minor_edges) + " edges");
}

// Sorted degree sequence and loop count of the quotient on r.
struct QuotientShape {
    int vertices = 0;
    int loops = 0;
    std::vector<int> degrees;
    friend bool operator==(const QuotientShape&, const QuotientShape&) = default;
};

QuotientShape quotient_shape(const MultiGraph& g, const std::vector<int>& label, EdgeSet r) {
    std::map<int, int> deg;
    QuotientShape s;
    for_each_bit(r, [&](int e) {
        int a = label[g.edge(e).tail], b = label[g.edge(e).head];
        ++deg[a];
        ++deg[b];
        if (a == b) ++s.loops;
    });
    s.vertices = static_cast<int>(deg.size());
    for (auto& [v, d] : deg) s.degrees.push_back(d);
    std::sort(s.degrees.begin(), s.degrees.end());
    return s;
}

}  // namespace

std::optional<LinkMinorRecipe> find_link_minor(const BiasedGraph& bg, const BiasedGraph& pattern) {
    check_link_minor_bounds(bg);
    BiasedGraph pat = drop_isolated(pattern);
    const MultiGraph& g = bg.graph();
    const MultiGraph& pg = pat.graph();
    std::vector<int> plabel(pg.num_vertices());
    std::iota(plabel.begin(), plabel.end(), 0);
    QuotientShape want = quotient_shape(pg, plabel, pg.all_edges());
    std::optional<LinkMinorRecipe> found;
    for_each_forest(g, g.links(), [&](EdgeSet forest) {
        auto label = component_labels(g, forest);
        return for_each_subset_of_size(g.all_edges() & ~forest, pg.num_edges(), [&](EdgeSet r) {
            if (!(quotient_shape(g, label, r) == want)) return false;
            BiasedGraph minor = quotient_minor(bg, forest, r);
            auto iso = biased_isomorphism(minor, pat);
            if (!iso) return false;
            found = LinkMinorRecipe{forest, g.all_edges() & ~forest & ~r, *iso};
            return true;
        });
    });
    return found;
}

std::optional<LinkMinorRecipe> find_tangled_minor(const BiasedGraph& bg) {
    check_link_minor_bounds(bg);
    const MultiGraph& g = bg.graph();
    QuotientShape k4{4, 0, {3, 3, 3, 3}};
    QuotientShape t2{3, 0, {4, 4, 4}};
    const MultiGraph k4g = complete_graph(4);
    const MultiGraph t2g = double_triangle();
    std::optional<LinkMinorRecipe> found;
    for_each_forest(g, g.links(), [&](EdgeSet forest) {
        auto label = component_labels(g, forest);
        return for_each_subset_of_size(g.all_edges() & ~forest, 6, [&](EdgeSet r) {
            QuotientShape s = quotient_shape(g, label, r);
            bool is_k4 = s == k4, is_t2 = s == t2;
            if (!is_k4 && !is_t2) return false;
            BiasedGraph minor = quotient_minor(bg, forest, r);
            auto iso = find_isomorphism(minor.graph(), is_k4 ? k4g : t2g);
            if (!iso) return false;
            int bad_len = is_k4 ? 3 : 2;
            for (EdgeSet c : minor.balanced())
                if (popcount(c) == bad_len) return false;
            found = LinkMinorRecipe{forest, g.all_edges() & ~forest & ~r, *iso};
            return true;
        });
    });
    return found;
}

std::optional<Embedding> find_biased_subdivision(const BiasedGraph& bg, const BiasedGraph& pattern) {
    const MultiGraph& pg = pattern.graph();
    return find_subdivision(bg.graph(), pg, [&](const Embedding& emb) {
        for (EdgeSet c : pattern.cycles()) {
            EdgeSet image = 0;
            for_each_bit(c, [&](int e) { image |= emb.edge_paths[e]; });
            if (bg.is_balanced_cycle(image) != pattern.is_balanced_cycle(c)) return false;
        }
        return true;
    });
}

}  // namespace bmlab
