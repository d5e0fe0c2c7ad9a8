#include "bmlab/graph.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace bmlab {

MultiGraph::MultiGraph(int n) {
    for (int i = 0; i < n; ++i) add_vertex();
}

int MultiGraph::add_vertex(std::string name) {
    if (num_vertices() >= kMaxVertices) throw BoundExceeded("graphs are limited to 64 vertices");
    int v = num_vertices();
    vertex_names_.push_back(name.empty() ? "v" + std::to_string(v + 1) : std::move(name));
    return v;
}

int MultiGraph::add_edge(int u, int v, std::string name) {
    if (num_edges() >= kMaxEdges) throw BoundExceeded("graphs are limited to 64 edges");
    if (u < 0 || v < 0 || u >= num_vertices() || v >= num_vertices())
        throw InvalidArgument("edge endpoint out of range");
    int e = num_edges();
    edges_.push_back({u, v, name.empty() ? "e" + std::to_string(e + 1) : std::move(name)});
    return e;
}

int MultiGraph::edge_index(const std::string& name) const {
    for (int e = 0; e < num_edges(); ++e)
        if (edges_[e].name == name) return e;
    throw UnknownEdge("no edge named '" + name + "'");
}

int MultiGraph::vertex_index(const std::string& name) const {
    for (int v = 0; v < num_vertices(); ++v)
        if (vertex_names_[v] == name) return v;
    throw InvalidArgument("no vertex named '" + name + "'");
}

EdgeSet MultiGraph::edge_set(const std::vector<std::string>& names) const {
    EdgeSet s = 0;
    for (const auto& n : names) s |= bit(edge_index(n));
    return s;
}

std::vector<std::string> MultiGraph::edge_names(EdgeSet s) const {
    std::vector<std::string> out;
    for_each_bit(s, [&](int e) { out.push_back(edges_.at(e).name); });
    return out;
}

EdgeSet MultiGraph::loops() const {
    EdgeSet s = 0;
    for (int e = 0; e < num_edges(); ++e)
        if (edges_[e].is_loop()) s |= bit(e);
    return s;
}

EdgeSet MultiGraph::incident(int v) const {
    EdgeSet s = 0;
    for (int e = 0; e < num_edges(); ++e)
        if (edges_[e].tail == v || edges_[e].head == v) s |= bit(e);
    return s;
}

VertexSet MultiGraph::vertices_of(EdgeSet s) const {
    VertexSet vs = 0;
    for_each_bit(s, [&](int e) { vs |= bit(edges_[e].tail) | bit(edges_[e].head); });
    return vs;
}

int MultiGraph::other_end(int e, int v) const {
    const Edge& ed = edges_.at(e);
    if (ed.tail == v) return ed.head;
    if (ed.head == v) return ed.tail;
    throw InvalidArgument("vertex is not an end of edge " + ed.name);
}

int MultiGraph::degree(int v, EdgeSet s) const {
    int d = 0;
    for_each_bit(s, [&](int e) {
        d += (edges_[e].tail == v) + (edges_[e].head == v);
    });
    return d;
}

void MultiGraph::check_edges(EdgeSet s) const {
    if (!subset_of(s, all_edges())) throw UnknownEdge("edge index out of range");
}

// ------------------------------------------------------------ components

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    // Keeps the smaller index as the root.
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (b < a) std::swap(a, b);
        parent[b] = a;
        return true;
    }
};

}  // namespace

std::vector<int> component_labels(const MultiGraph& g, EdgeSet x) {
    UnionFind uf(g.num_vertices());
    for_each_bit(x, [&](int e) { uf.unite(g.edge(e).tail, g.edge(e).head); });
    std::vector<int> label(g.num_vertices());
    for (int v = 0; v < g.num_vertices(); ++v) label[v] = uf.find(v);
    return label;
}

std::vector<EdgeSet> edge_components(const MultiGraph& g, EdgeSet x) {
    auto label = component_labels(g, x);
    std::vector<EdgeSet> by_root(g.num_vertices(), 0);
    for_each_bit(x, [&](int e) { by_root[label[g.edge(e).tail]] |= bit(e); });
    std::vector<EdgeSet> out;
    for (EdgeSet s : by_root)
        if (s) out.push_back(s);
    return out;
}

int count_components(const MultiGraph& g, EdgeSet x) {
    auto label = component_labels(g, x);
    VertexSet roots = 0;
    for_each_bit(g.vertices_of(x), [&](int v) { roots |= bit(label[v]); });
    return popcount(roots);
}

bool is_connected(const MultiGraph& g) {
    if (g.num_vertices() <= 1) return true;
    auto label = component_labels(g, g.all_edges());
    return std::all_of(label.begin(), label.end(), [&](int l) { return l == label[0]; });
}

bool is_acyclic(const MultiGraph& g, EdgeSet x) {
    UnionFind uf(g.num_vertices());
    bool ok = true;
    for_each_bit(x, [&](int e) {
        if (!uf.unite(g.edge(e).tail, g.edge(e).head)) ok = false;
    });
    return ok;
}

int cyclomatic_number(const MultiGraph& g, EdgeSet x) {
    return popcount(x) - popcount(g.vertices_of(x)) + count_components(g, x);
}

bool is_cycle(const MultiGraph& g, EdgeSet x) {
    if (x == 0) return false;
    bool two_regular = true;
    for_each_bit(g.vertices_of(x), [&](int v) {
        if (g.degree(v, x) != 2) two_regular = false;
    });
    return two_regular && count_components(g, x) == 1;
}

EdgeSet spanning_forest(const MultiGraph& g, EdgeSet within, EdgeSet prefer) {
    UnionFind uf(g.num_vertices());
    EdgeSet f = 0;
    auto take = [&](EdgeSet s) {
        for_each_bit(s, [&](int e) {
            if (uf.unite(g.edge(e).tail, g.edge(e).head)) f |= bit(e);
        });
    };
    take(within & prefer);
    take(within & ~prefer);
    return f;
}

bool is_maximal_forest(const MultiGraph& g, EdgeSet f) {
    if (!subset_of(f, g.all_edges()) || !is_acyclic(g, f)) return false;
    return popcount(f) == popcount(spanning_forest(g));
}

std::optional<EdgeSet> forest_path(const MultiGraph& g, EdgeSet f, int u, int v) {
    // Depth-first search in the forest from u, remembering the entering edge.
    std::vector<int> via(g.num_vertices(), -2);
    std::vector<int> stack{u};
    via[u] = -1;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for_each_bit(f & g.incident(x), [&](int e) {
            int y = g.other_end(e, x);
            if (via[y] == -2) {
                via[y] = e;
                stack.push_back(y);
            }
        });
    }
    if (via[v] == -2) return std::nullopt;
    EdgeSet path = 0;
    for (int x = v; x != u;) {
        int e = via[x];
        path |= bit(e);
        x = g.other_end(e, x);
    }
    return path;
}

// ------------------------------------------------------------------ cycles

bool cycle_order(EdgeSet a, EdgeSet b) {
    if (popcount(a) != popcount(b)) return popcount(a) < popcount(b);
    // Lexicographic on increasing index lists: the first differing index
    // decides, and the set holding the smaller index comes first.
    EdgeSet diff = a ^ b;
    if (!diff) return false;
    return contains(a, lowest(diff));
}

std::vector<EdgeSet> enumerate_cycles(const MultiGraph& g) {
    if (g.num_edges() > bounds().cycle_edges)
        throw BoundExceeded("cycle enumeration limited to " + std::to_string(bounds().cycle_edges) +
                            " edges");
    std::vector<EdgeSet> out;
    const int n = g.num_vertices();
    std::vector<EdgeSet> inc(n);
    for (int v = 0; v < n; ++v) inc[v] = g.incident(v) & g.links();

    for (int e = 0; e < g.num_edges(); ++e) {
        const Edge& ed = g.edge(e);
        if (ed.is_loop()) {
            out.push_back(bit(e));
            continue;
        }
        // Simple paths from head to tail through edges of larger index.
        EdgeSet allowed = g.links() & ~low_mask(e + 1);
        std::vector<int> stack_v{ed.head};
        VertexSet visited = bit(ed.head);
        EdgeSet path = 0;
        // Iterative DFS with explicit per-level remaining-edge sets.
        std::vector<EdgeSet> remaining{inc[ed.head] & allowed};
        std::vector<int> via;
        while (!remaining.empty()) {
            EdgeSet& rem = remaining.back();
            if (!rem) {
                remaining.pop_back();
                visited &= ~bit(stack_v.back());
                stack_v.pop_back();
                if (!via.empty()) {
                    path &= ~bit(via.back());
                    via.pop_back();
                }
                continue;
            }
            int f = lowest(rem);
            rem &= rem - 1;
            int w = g.other_end(f, stack_v.back());
            if (w == ed.tail) {
                out.push_back(path | bit(f) | bit(e));
                continue;
            }
            if (contains(visited, w)) continue;
            visited |= bit(w);
            stack_v.push_back(w);
            via.push_back(f);
            path |= bit(f);
            remaining.push_back(inc[w] & allowed & ~path);
        }
    }
    std::sort(out.begin(), out.end(), cycle_order);
    return out;
}

Walk cycle_walk(const MultiGraph& g, EdgeSet c) {
    if (!is_cycle(g, c)) throw NotACycle("edge set is not a cycle");
    Walk w;
    int first = lowest(c);
    w.push_back({first, false});
    int start = g.edge(first).tail;
    int at = g.edge(first).head;
    EdgeSet left = c & ~bit(first);
    while (left) {
        int next = -1;
        for_each_bit(left & g.incident(at), [&](int e) {
            if (next < 0) next = e;
        });
        const Edge& ed = g.edge(next);
        bool rev = ed.tail != at;
        w.push_back({next, rev});
        at = rev ? ed.tail : ed.head;
        left &= ~bit(next);
    }
    (void)start;
    return w;
}

bool is_walk(const MultiGraph& g, const Walk& w) {
    for (const auto& o : w)
        if (o.edge < 0 || o.edge >= g.num_edges()) return false;
    for (size_t i = 0; i + 1 < w.size(); ++i)
        if (g.head(w[i]) != g.tail(w[i + 1])) return false;
    return true;
}

bool forms_theta(const MultiGraph& g, EdgeSet c1, EdgeSet c2) {
    if (c1 == c2 || (c1 & c2) == 0) return false;
    if (!is_cycle(g, c1 ^ c2)) return false;
    return cyclomatic_number(g, c1 | c2) == 2;
}

// ---------------------------------------------------- vertical connectivity

namespace {

bool has_spanning_complete(const MultiGraph& g) {
    const int n = g.num_vertices();
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            bool adj = false;
            for (const auto& e : g.edges())
                if ((e.tail == u && e.head == v) || (e.tail == v && e.head == u)) adj = true;
            if (!adj) return false;
        }
    return true;
}

// Looks for a vertical separation whose shared vertex set is exactly s.
std::optional<Separation> separation_at(const MultiGraph& g, VertexSet s) {
    const int r = popcount(s);
    EdgeSet inside = 0;
    std::vector<EdgeSet> bridges;
    {
        // Components of G - s, each with its attaching edges.
        UnionFind uf(g.num_vertices());
        for (const auto& e : g.edges())
            if (!contains(s, e.tail) && !contains(s, e.head)) uf.unite(e.tail, e.head);
        std::vector<EdgeSet> by_root(g.num_vertices(), 0);
        for (int e = 0; e < g.num_edges(); ++e) {
            const Edge& ed = g.edge(e);
            if (contains(s, ed.tail) && contains(s, ed.head)) {
                inside |= bit(e);
            } else {
                int x = contains(s, ed.tail) ? ed.head : ed.tail;
                by_root[uf.find(x)] |= bit(e);
            }
        }
        for (EdgeSet b : by_root)
            if (b) bridges.push_back(b);
    }
    const int m = static_cast<int>(bridges.size());
    if (m < 2) return std::nullopt;
    const std::vector<int> in_edges = bits_of(inside);
    const int t = static_cast<int>(in_edges.size());
    if (m > 20 || t > 16) throw BoundExceeded("separation search too large");
    for (std::uint32_t mask = 1; mask + 1 < (1U << m); ++mask) {
        if (mask & 1U) continue;  // fix bridge 0 on side B to skip mirror images
        EdgeSet a = 0, b = 0;
        for (int i = 0; i < m; ++i) (contains(mask, i) ? a : b) |= bridges[i];
        for (std::uint32_t tm = 0; tm < (1U << t); ++tm) {
            EdgeSet a2 = a, b2 = b;
            for (int i = 0; i < t; ++i) (contains(tm, i) ? a2 : b2) |= bit(in_edges[i]);
            if (popcount(a2) < r || popcount(b2) < r) continue;
            VertexSet va = g.vertices_of(a2), vb = g.vertices_of(b2);
            if ((va & vb) != s) continue;
            if ((va & ~vb) == 0 || (vb & ~va) == 0) continue;
            return Separation{a2, b2, s};
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<Separation> vertical_separation(const MultiGraph& g, int k) {
    const int n = g.num_vertices();
    if (k < 1) throw InvalidArgument("connectivity order must be positive");
    if (!is_connected(g)) {
        auto comps = edge_components(g, g.all_edges());
        Separation sep;
        if (!comps.empty()) {
            sep.a = comps[0];
            sep.b = g.all_edges() & ~comps[0];
        }
        return sep;
    }
    if (n <= k + 1) {
        if (has_spanning_complete(g)) return std::nullopt;
    }
    for (int r = 1; r < k && r < n; ++r) {
        // Subsets of size r in increasing colex order.
        std::vector<int> pick(r);
        std::iota(pick.begin(), pick.end(), 0);
        while (true) {
            VertexSet s = 0;
            for (int v : pick) s |= bit(v);
            if (auto sep = separation_at(g, s)) return sep;
            int i = r - 1;
            while (i >= 0 && pick[i] == n - r + i) --i;
            if (i < 0) break;
            ++pick[i];
            for (int j = i + 1; j < r; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
    if (n <= k + 1) return Separation{};  // small and not complete
    return std::nullopt;
}

// ------------------------------------------------------------------ minors

GraphMinor graph_minor(const MultiGraph& g, EdgeSet con, EdgeSet del) {
    g.check_edges(con | del);
    if (con & del) throw InvalidArgument("contract and delete sets overlap");
    UnionFind uf(g.num_vertices());
    for_each_bit(con, [&](int e) { uf.unite(g.edge(e).tail, g.edge(e).head); });
    GraphMinor out;
    out.vertex_map.assign(g.num_vertices(), -1);
    std::vector<int> rep_index(g.num_vertices(), -1);
    for (int v = 0; v < g.num_vertices(); ++v) {
        int r = uf.find(v);
        if (rep_index[r] < 0) rep_index[r] = out.graph.add_vertex(g.vertex_name(r));
        out.vertex_map[v] = rep_index[r];
    }
    out.edge_map.assign(g.num_edges(), -1);
    for (int e = 0; e < g.num_edges(); ++e) {
        if (contains(con | del, e)) continue;
        const Edge& ed = g.edge(e);
        out.edge_map[e] = out.graph.add_edge(out.vertex_map[ed.tail], out.vertex_map[ed.head], ed.name);
    }
    return out;
}

std::pair<EdgeSet, EdgeSet> acyclic_contraction_form(const MultiGraph& g, EdgeSet con, EdgeSet del) {
    EdgeSet forest = spanning_forest(g, con);
    return {forest, del | (con & ~forest)};
}

GraphMinor drop_isolated(const MultiGraph& g) {
    GraphMinor out;
    VertexSet used = g.vertices_of(g.all_edges());
    out.vertex_map.assign(g.num_vertices(), -1);
    for (int v = 0; v < g.num_vertices(); ++v)
        if (contains(used, v)) out.vertex_map[v] = out.graph.add_vertex(g.vertex_name(v));
    out.edge_map.assign(g.num_edges(), -1);
    for (int e = 0; e < g.num_edges(); ++e) {
        const Edge& ed = g.edge(e);
        out.edge_map[e] = out.graph.add_edge(out.vertex_map[ed.tail], out.vertex_map[ed.head], ed.name);
    }
    return out;
}

GraphMinor restrict_edges(const MultiGraph& g, EdgeSet keep) {
    return graph_minor(g, 0, g.all_edges() & ~keep);
}

MultiGraph subdivide_edge(const MultiGraph& g, int e, const std::string& name) {
    MultiGraph h;
    for (int v = 0; v < g.num_vertices(); ++v) h.add_vertex(g.vertex_name(v));
    int w = h.add_vertex("s" + std::to_string(g.num_vertices() + 1));
    for (int f = 0; f < g.num_edges(); ++f) {
        const Edge& ed = g.edge(f);
        if (f == e) {
            h.add_edge(ed.tail, w, ed.name);
        } else {
            h.add_edge(ed.tail, ed.head, ed.name);
        }
    }
    h.add_edge(w, g.edge(e).head, name);
    return h;
}

// ------------------------------------------------------------- isomorphism

namespace {

struct IsoSearch {
    const MultiGraph& g1;
    const MultiGraph& g2;
    const std::function<bool(const GraphIso&)>& accept;
    int n;
    std::vector<std::vector<int>> m1, m2;  // edge multiplicities
    std::vector<int> deg1, deg2;
    std::vector<int> vmap;
    std::vector<bool> used;
    std::optional<GraphIso> found;

    IsoSearch(const MultiGraph& a, const MultiGraph& b, const std::function<bool(const GraphIso&)>& acc)
        : g1(a), g2(b), accept(acc), n(a.num_vertices()) {
        auto fill = [&](const MultiGraph& g, std::vector<std::vector<int>>& m, std::vector<int>& d) {
            m.assign(n, std::vector<int>(n, 0));
            d.assign(n, 0);
            for (const auto& e : g.edges()) {
                ++m[e.tail][e.head];
                if (!e.is_loop()) ++m[e.head][e.tail];
                ++d[e.tail];
                ++d[e.head];
            }
        };
        fill(g1, m1, deg1);
        fill(g2, m2, deg2);
        vmap.assign(n, -1);
        used.assign(n, false);
    }

    bool map_vertices(int u) {
        if (u == n) return map_edges();
        for (int x = 0; x < n; ++x) {
            if (used[x] || deg1[u] != deg2[x] || m1[u][u] != m2[x][x]) continue;
            bool ok = true;
            for (int w = 0; w < u && ok; ++w)
                if (m1[u][w] != m2[x][vmap[w]]) ok = false;
            if (!ok) continue;
            vmap[u] = x;
            used[x] = true;
            if (map_vertices(u + 1)) return true;
            used[x] = false;
            vmap[u] = -1;
        }
        return false;
    }

    // Parallel classes of g1 in edge order, each matched to the class of g2
    // between the image vertices; every permutation inside each class is
    // tried.
    std::vector<std::vector<int>> cls1, cls2;
    std::vector<int> emap;

    bool map_edges() {
        cls1.clear();
        cls2.clear();
        std::vector<bool> seen(g1.num_edges(), false);
        for (int e = 0; e < g1.num_edges(); ++e) {
            if (seen[e]) continue;
            const Edge& ed = g1.edge(e);
            std::vector<int> c1, c2;
            for (int f = e; f < g1.num_edges(); ++f) {
                const Edge& fd = g1.edge(f);
                if ((fd.tail == ed.tail && fd.head == ed.head) || (fd.tail == ed.head && fd.head == ed.tail)) {
                    c1.push_back(f);
                    seen[f] = true;
                }
            }
            int a = vmap[ed.tail], b = vmap[ed.head];
            for (int f = 0; f < g2.num_edges(); ++f) {
                const Edge& fd = g2.edge(f);
                if ((fd.tail == a && fd.head == b) || (fd.tail == b && fd.head == a)) c2.push_back(f);
            }
            cls1.push_back(std::move(c1));
            cls2.push_back(std::move(c2));
        }
        emap.assign(g1.num_edges(), -1);
        return permute_class(0);
    }

    bool permute_class(size_t i) {
        if (i == cls1.size()) {
            GraphIso iso{vmap, emap};
            if (!accept || accept(iso)) {
                found = std::move(iso);
                return true;
            }
            return false;
        }
        std::vector<int> perm = cls2[i];
        std::sort(perm.begin(), perm.end());
        do {
            for (size_t j = 0; j < perm.size(); ++j) emap[cls1[i][j]] = perm[j];
            if (permute_class(i + 1)) return true;
        } while (std::next_permutation(perm.begin(), perm.end()));
        return false;
    }
};

}  // namespace

std::optional<GraphIso> find_isomorphism(const MultiGraph& g1, const MultiGraph& g2,
                                         const std::function<bool(const GraphIso&)>& accept) {
    if (g1.num_vertices() != g2.num_vertices() || g1.num_edges() != g2.num_edges()) return std::nullopt;
    IsoSearch s(g1, g2, accept);
    auto d1 = s.deg1, d2 = s.deg2;
    std::sort(d1.begin(), d1.end());
    std::sort(d2.begin(), d2.end());
    if (d1 != d2) return std::nullopt;
    s.map_vertices(0);
    return s.found;
}

// ------------------------------------------------------------ subdivisions

EdgeSet Embedding::used() const {
    EdgeSet s = 0;
    for (EdgeSet p : edge_paths) s |= p;
    return s;
}

namespace {

struct SubdivisionSearch {
    const MultiGraph& host;
    const MultiGraph& pat;
    const std::function<bool(const Embedding&)>& accept;
    std::vector<int> vmap;
    VertexSet branch = 0;
    VertexSet interior = 0;
    EdgeSet used_edges = 0;
    std::vector<EdgeSet> paths;
    std::vector<int> order;  // pattern vertices in mapping order
    std::optional<Embedding> found;

    SubdivisionSearch(const MultiGraph& h, const MultiGraph& p, const std::function<bool(const Embedding&)>& a)
        : host(h), pat(p), accept(a) {}

    bool map_vertex(size_t i) {
        if (i == order.size()) {
            paths.assign(pat.num_edges(), 0);
            return route(0);
        }
        int u = order[i];
        int need = pat.degree(u, pat.all_edges());
        for (int x = 0; x < host.num_vertices(); ++x) {
            if (contains(branch, x)) continue;
            if (host.degree(x, host.all_edges()) < need) continue;
            vmap[u] = x;
            branch |= bit(x);
            if (map_vertex(i + 1)) return true;
            branch &= ~bit(x);
        }
        vmap[u] = -1;
        return false;
    }

    bool route(int pe) {
        if (pe == pat.num_edges()) {
            Embedding emb{vmap, paths};
            if (!accept || accept(emb)) {
                found = std::move(emb);
                return true;
            }
            return false;
        }
        const Edge& ed = pat.edge(pe);
        int s = vmap[ed.tail], t = vmap[ed.head];
        return extend(pe, s, t, s, 0, 0);
    }

    // Depth-first path growth from `at` towards t.
    bool extend(int pe, int s, int t, int at, EdgeSet path, VertexSet inner) {
        EdgeSet cand = host.incident(at) & ~used_edges & ~path;
        for (int f : bits_of(cand)) {
            const Edge& fd = host.edge(f);
            if (fd.is_loop()) {
                if (s == t && path == 0 && close(pe, bit(f), 0)) return true;
                continue;
            }
            int w = host.other_end(f, at);
            if (w == t) {
                if (close(pe, path | bit(f), inner)) return true;
                continue;
            }
            if (contains(branch, w) || contains(interior, w) || contains(inner, w)) continue;
            if (extend(pe, s, t, w, path | bit(f), inner | bit(w))) return true;
        }
        return false;
    }

    bool close(int pe, EdgeSet p, VertexSet inner) {
        used_edges |= p;
        interior |= inner;
        paths[pe] = p;
        if (route(pe + 1)) return true;
        used_edges &= ~p;
        interior &= ~inner;
        paths[pe] = 0;
        return false;
    }
};

}  // namespace

std::optional<Embedding> find_subdivision(const MultiGraph& host, const MultiGraph& pattern,
                                          const std::function<bool(const Embedding&)>& accept) {
    const Bounds& b = bounds();
    if (host.num_vertices() > b.subdivision_vertices || host.num_edges() > b.subdivision_edges)
        throw BoundExceeded("subdivision search limited to " + std::to_string(b.subdivision_vertices) +
                            " vertices and " + std::to_string(b.subdivision_edges) + " edges");
    if (pattern.num_vertices() > host.num_vertices() || pattern.num_edges() > host.num_edges())
        return std::nullopt;
    SubdivisionSearch s(host, pattern, accept);
    s.vmap.assign(pattern.num_vertices(), -1);
    // Map high-degree pattern vertices first.
    for (int v = 0; v < pattern.num_vertices(); ++v) s.order.push_back(v);
    std::stable_sort(s.order.begin(), s.order.end(), [&](int a, int c) {
        return pattern.degree(a, pattern.all_edges()) > pattern.degree(c, pattern.all_edges());
    });
    s.map_vertex(0);
    return s.found;
}

// ---------------------------------------------------------- common graphs

MultiGraph complete_graph(int n) {
    MultiGraph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

MultiGraph cycle_graph(int n) {
    MultiGraph g(n);
    if (n == 1) {
        g.add_edge(0, 0);
        return g;
    }
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

MultiGraph path_graph(int n) {
    MultiGraph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

MultiGraph double_triangle() {
    MultiGraph g(3);
    const std::array<std::pair<int, int>, 3> sides{{{0, 1}, {1, 2}, {2, 0}}};
    for (auto [u, v] : sides) {
        g.add_edge(u, v);
        g.add_edge(u, v);
    }
    return g;
}

MultiGraph tube_graph() {
    MultiGraph g(4);
    g.add_edge(0, 1);
    g.add_edge(0, 1);
    g.add_edge(0, 2);
    g.add_edge(1, 3);
    g.add_edge(2, 3);
    g.add_edge(2, 3);
    return g;
}

}  // namespace bmlab
