#include "bmlab/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

namespace bmlab {

namespace {

struct Triple {
    int a, b, c;
};

class BiasEnumerator {
public:
    BiasEnumerator(const MultiGraph& g, const BiasSearch& opts) : g_(g), cycles_(enumerate_cycles(g)) {
        const int n = static_cast<int>(cycles_.size());
        std::unordered_map<EdgeSet, int> index;
        for (int i = 0; i < n; ++i) index[cycles_[i]] = i;
        thetas_.resize(n);
        disjoint_.resize(n);
        forced_.assign(n, false);
        std::vector<VertexSet> verts(n);
        for (int i = 0; i < n; ++i) {
            verts[i] = g.vertices_of(cycles_[i]);
            if (opts.forced_unbalanced) forced_[i] = opts.forced_unbalanced(cycles_[i]);
        }
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                if (opts.no_disjoint_unbalanced && !(verts[i] & verts[j])) disjoint_[j].push_back(i);
                if (!forms_theta(g, cycles_[i], cycles_[j])) continue;
                int k = index.at(cycles_[i] ^ cycles_[j]);
                if (k < j) continue;  // recorded from the pair (i, k) or (j, k)
                thetas_[k].push_back({i, j, k});
            }
    }

    std::vector<std::vector<EdgeSet>> run() {
        balanced_.assign(cycles_.size(), false);
        out_.clear();
        step(0);
        return std::move(out_);
    }

private:
    bool consistent(int i) const {
        for (const Triple& t : thetas_[i])
            if (balanced_[t.a] + balanced_[t.b] + balanced_[t.c] == 2) return false;
        if (!balanced_[i])
            for (int j : disjoint_[i])
                if (!balanced_[j]) return false;
        return true;
    }

    void step(int i) {
        if (i == static_cast<int>(cycles_.size())) {
            std::vector<EdgeSet> b;
            for (size_t k = 0; k < cycles_.size(); ++k)
                if (balanced_[k]) b.push_back(cycles_[k]);
            out_.push_back(std::move(b));
            return;
        }
        for (bool choice : {false, true}) {
            if (choice && forced_[i]) continue;
            balanced_[i] = choice;
            if (consistent(i)) step(i + 1);
        }
        balanced_[i] = false;
    }

    const MultiGraph& g_;
    std::vector<EdgeSet> cycles_;
    std::vector<std::vector<Triple>> thetas_;
    std::vector<std::vector<int>> disjoint_;
    std::vector<bool> forced_;
    std::vector<bool> balanced_;
    std::vector<std::vector<EdgeSet>> out_;
};

std::vector<GraphIso> automorphisms(const MultiGraph& g) {
    std::vector<GraphIso> out;
    find_isomorphism(g, g, [&](const GraphIso& iso) {
        out.push_back(iso);
        return false;
    });
    return out;
}

EdgeSet image_of(EdgeSet s, const std::vector<int>& edge_map) {
    EdgeSet out = 0;
    for_each_bit(s, [&](int e) { out |= bit(edge_map[e]); });
    return out;
}

int count_of_length(const BiasedGraph& bg, int len) {
    int n = 0;
    for (EdgeSet c : bg.balanced()) n += popcount(c) == len;
    return n;
}

bool is_two_cycle(EdgeSet c) { return popcount(c) == 2; }

std::string plural(int n, const std::string& word) {
    return std::to_string(n) + " " + word + (n == 1 ? "" : "s");
}

std::string k4_name(int t, int q) { return "D_{" + std::to_string(t) + "," + std::to_string(q) + "}"; }

std::string normalize_name(const std::string& s) {
    std::string out;
    for (char ch : s) {
        if (ch == '_' || ch == '{' || ch == '}' || ch == ',' || std::isspace(static_cast<unsigned char>(ch))) continue;
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    }
    return out;
}

}  // namespace

std::vector<std::vector<EdgeSet>> enumerate_biases(const MultiGraph& g, const BiasSearch& opts) {
    return BiasEnumerator(g, opts).run();
}

std::vector<BiasedGraph> bias_classes(const MultiGraph& g, const BiasSearch& opts) {
    auto biases = enumerate_biases(g, opts);
    auto autos = automorphisms(g);
    std::vector<BiasedGraph> out;
    std::set<std::vector<EdgeSet>> seen;
    for (auto& b : biases) {
        std::sort(b.begin(), b.end());
        if (seen.count(b)) continue;
        for (const auto& a : autos) {
            std::vector<EdgeSet> img;
            for (EdgeSet c : b) img.push_back(image_of(c, a.edge_map));
            std::sort(img.begin(), img.end());
            seen.insert(std::move(img));
        }
        std::sort(b.begin(), b.end(), cycle_order);
        out.push_back(BiasedGraph::trusted(g, b));
    }
    return out;
}

const std::vector<NamedBiasedGraph>& classify_k4() {
    static const std::vector<NamedBiasedGraph> table = [] {
        std::vector<NamedBiasedGraph> out;
        for (auto& bg : bias_classes(complete_graph(4))) {
            int t = count_of_length(bg, 3), q = count_of_length(bg, 4);
            out.push_back({k4_name(t, q), bg,
                           "K4 with " + plural(t, "balanced triangle") + " and " + plural(q, "balanced quadrilateral")});
        }
        std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
        return out;
    }();
    return table;
}

const std::vector<NamedBiasedGraph>& classify_2c3_proper() {
    static const std::vector<NamedBiasedGraph> table = [] {
        std::vector<NamedBiasedGraph> out;
        for (auto& bg : bias_classes(double_triangle(), {is_two_cycle, false})) {
            int k = count_of_length(bg, 3);
            std::string name = "T_" + std::to_string(k);
            std::string note = "2C3 with " + plural(k, "balanced triangle");
            if (k == 2) {
                // T_2 and T_2' are told apart by the image under Delta-Y at a
                // balanced triangle: D_{0,1} for T_2, D_{1,0} for T_2'.
                auto image = delta_y(bg, bg.balanced().front());
                int t = count_of_length(image, 3), q = count_of_length(image, 4);
                if (t == 1) name += "'";
                note += ", Delta-Y image " + k4_name(t, q);
            }
            out.push_back({name, bg, note});
        }
        std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
        return out;
    }();
    return table;
}

const std::vector<NamedBiasedGraph>& classify_tube_proper() {
    static const std::vector<NamedBiasedGraph> table = [] {
        std::vector<NamedBiasedGraph> out;
        for (auto& bg : bias_classes(tube_graph(), {is_two_cycle, false})) {
            int q = count_of_length(bg, 4);
            out.push_back({"B_" + std::to_string(q), bg, "tube with " + plural(q, "balanced quadrilateral")});
        }
        std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
        return out;
    }();
    return table;
}

const std::vector<NamedBiasedGraph>& base_graphs() {
    static const std::vector<NamedBiasedGraph> table = [] {
        std::vector<NamedBiasedGraph> out;
        for (const auto& d : classify_k4())
            if (count_of_length(d.graph, 3) == 0) out.push_back(d);
        for (const auto& t : classify_2c3_proper()) out.push_back(t);
        for (const auto& b : classify_tube_proper()) out.push_back(b);
        return out;
    }();
    return table;
}

NamedBiasedGraph u2() {
    MultiGraph g(2);
    g.add_edge(0, 0);
    g.add_edge(1, 1);
    g.add_edge(0, 1);
    g.add_edge(1, 0);
    return {"U_2", BiasedGraph(g, {}), "joints e1 at v1 and e2 at v2, contrabalanced links e3, e4"};
}

NamedBiasedGraph u3() {
    MultiGraph g(2);
    g.add_edge(0, 0);
    g.add_edge(0, 1);
    g.add_edge(0, 1);
    g.add_edge(1, 0);
    return {"U_3", BiasedGraph(g, {}), "joint e1 at v1, contrabalanced links e2, e3, e4"};
}

NamedBiasedGraph t2_prime_split(int i) {
    if (i < 1 || i > 3) throw InvalidArgument("t2_prime_split takes i in {1, 2, 3}");
    MultiGraph g(6);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(2, 0);
    g.add_edge(3, 4);
    g.add_edge(4, 5);
    g.add_edge(5, 3);
    g.add_edge(0, 3);
    g.add_edge(1, 4);
    g.add_edge(2, 5);
    BiasedGraph prism(g, {0b000111, 0b111000});
    EdgeSet con = 0;
    for (int k = 0; k < 3 - i; ++k) con |= bit(6 + k);
    std::string name = "T_{2," + std::to_string(i) + "}'";
    if (!con) return {name, prism, "prism with both triangles balanced"};
    return {name, biased_minor(prism, con, 0).result,
            "prism with both triangles balanced, " + plural(3 - i, "matching link") + " contracted"};
}

const std::vector<NamedBiasedGraph>& contracted_tubes() {
    static const std::vector<NamedBiasedGraph> table = [] {
        std::vector<NamedBiasedGraph> out;
        for (const auto& b : classify_tube_proper())
            out.push_back({b.name + "'", biased_minor(b.graph, bit(2), 0).result, b.name + " with e3 contracted"});
        return out;
    }();
    return table;
}

std::vector<NamedBiasedGraph> all_named() {
    std::vector<NamedBiasedGraph> out = classify_k4();
    for (const auto& t : classify_2c3_proper()) out.push_back(t);
    for (const auto& b : classify_tube_proper()) out.push_back(b);
    out.push_back(u2());
    out.push_back(u3());
    for (int i = 1; i <= 3; ++i) out.push_back(t2_prime_split(i));
    for (const auto& b : contracted_tubes()) out.push_back(b);
    return out;
}

std::optional<NamedBiasedGraph> find_named(const std::string& name) {
    std::string key = normalize_name(name);
    if (key == "d42") key = "d43";
    for (auto& n : all_named())
        if (normalize_name(n.name) == key) return n;
    return std::nullopt;
}

BiasedGraph fat_theta(const std::vector<FatThetaPart>& parts) {
    if (parts.size() < 2) throw BadGlue("a fat theta needs at least two parts");
    MultiGraph g(2);
    std::vector<EdgeSet> balanced;
    for (size_t p = 0; p < parts.size(); ++p) {
        const MultiGraph& pg = parts[p].graph.graph();
        const int x = parts[p].x, y = parts[p].y;
        if (x == y || x < 0 || y < 0 || x >= pg.num_vertices() || y >= pg.num_vertices())
            throw BadGlue("part " + std::to_string(p + 1) + " has invalid hub vertices");
        if (!is_connected(pg)) throw BadGlue("part " + std::to_string(p + 1) + " is not connected");
        std::vector<int> vmap(pg.num_vertices());
        for (int v = 0; v < pg.num_vertices(); ++v) vmap[v] = v == x ? 0 : v == y ? 1 : g.add_vertex();
        std::vector<int> emap(pg.num_edges());
        for (int e = 0; e < pg.num_edges(); ++e) emap[e] = g.add_edge(vmap[pg.edge(e).tail], vmap[pg.edge(e).head]);
        for (EdgeSet c : parts[p].graph.balanced()) balanced.push_back(image_of(c, emap));
    }
    return BiasedGraph(g, balanced);
}

BiasedGraph fat_theta_of_paths(const std::vector<int>& lengths) {
    std::vector<FatThetaPart> parts;
    for (int len : lengths) {
        if (len < 1) throw BadGlue("paths need at least one edge");
        parts.push_back({BiasedGraph(path_graph(len + 1), {}), 0, len});
    }
    return fat_theta(parts);
}

std::vector<MultiGraph> small_multigraphs(int max_vertices, int max_edges) {
    std::vector<MultiGraph> out;
    for (int n = 1; n <= max_vertices; ++n) {
        std::vector<std::pair<int, int>> pairs;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
        std::map<std::pair<int, int>, int> pair_index;
        for (size_t k = 0; k < pairs.size(); ++k) pair_index[pairs[k]] = static_cast<int>(k);
        std::vector<std::vector<int>> perms;
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        do perms.push_back(perm);
        while (std::next_permutation(perm.begin(), perm.end()));

        std::set<std::vector<int>> seen;
        std::vector<int> mult(pairs.size(), 0);
        auto emit = [&] {
            std::vector<int> best = mult;
            for (const auto& p : perms) {
                std::vector<int> img(pairs.size());
                for (size_t k = 0; k < pairs.size(); ++k) {
                    int a = p[pairs[k].first], b = p[pairs[k].second];
                    img[pair_index[{std::min(a, b), std::max(a, b)}]] = mult[k];
                }
                best = std::max(best, img);
            }
            if (!seen.insert(best).second) return;
            MultiGraph g(n);
            for (size_t k = 0; k < pairs.size(); ++k)
                for (int r = 0; r < best[k]; ++r) g.add_edge(pairs[k].first, pairs[k].second);
            if (is_connected(g)) out.push_back(std::move(g));
        };
        std::function<void(size_t, int)> rec = [&](size_t k, int left) {
            if (k == pairs.size()) {
                emit();
                return;
            }
            for (int m = 0; m <= left; ++m) {
                mult[k] = m;
                rec(k + 1, left - m);
            }
            mult[k] = 0;
        };
        rec(0, max_edges);
    }
    return out;
}

std::vector<BiasedGraph> tangled_family(int max_vertices, int max_edges) {
    std::vector<BiasedGraph> out;
    for (const auto& g : small_multigraphs(max_vertices, max_edges)) {
        // A vertex on every cycle is a balancing vertex for every bias.
        auto cycles = enumerate_cycles(g);
        VertexSet common = g.all_vertices();
        for (EdgeSet c : cycles) common &= g.vertices_of(c);
        if (cycles.empty() || common) continue;
        for (auto& bg : bias_classes(g, {{}, true}))
            if (is_tangled(bg)) out.push_back(std::move(bg));
    }
    return out;
}

}  // namespace bmlab
