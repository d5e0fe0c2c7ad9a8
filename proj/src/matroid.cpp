#include "bmlab/matroid.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>

namespace bmlab {

struct Matroid::Memo {
    std::mutex mu;
    std::vector<std::int8_t> table;
};

Matroid::Matroid(std::vector<std::string> labels, RankFn rank) : labels_(std::move(labels)), rank_(std::move(rank)) {
    if (labels_.size() > 64) throw BoundExceeded("matroid ground sets are limited to 64 elements");
    if (size() <= bounds().matroid_elements) {
        memo_ = std::make_shared<Memo>();
        memo_->table.assign(std::size_t{1} << size(), -1);
    }
}

Matroid Matroid::uniform(int r, std::vector<std::string> labels) {
    return Matroid(std::move(labels), [r](ElementSet x) { return std::min(r, popcount(x)); });
}

Matroid Matroid::from_table(std::vector<std::string> labels, std::vector<int> ranks) {
    if (ranks.size() != (std::size_t{1} << labels.size())) throw InvalidArgument("rank table has the wrong size");
    auto shared = std::make_shared<std::vector<int>>(std::move(ranks));
    return Matroid(std::move(labels), [shared](ElementSet x) { return (*shared)[x]; });
}

int Matroid::index_of(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw InvalidArgument("no element named '" + label + "'");
    return static_cast<int>(it - labels_.begin());
}

ElementSet Matroid::subset(const std::vector<std::string>& labels) const {
    ElementSet s = 0;
    for (const auto& l : labels) s |= bit(index_of(l));
    return s;
}

std::vector<std::string> Matroid::names(ElementSet s) const {
    std::vector<std::string> out;
    for_each_bit(s, [&](int i) { out.push_back(labels_[i]); });
    return out;
}

int Matroid::rank(ElementSet x) const {
    if (!subset_of(x, ground())) throw InvalidArgument("subset outside the ground set");
    if (!memo_) return rank_(x);
    {
        std::lock_guard<std::mutex> lock(memo_->mu);
        if (memo_->table[x] >= 0) return memo_->table[x];
    }
    int r = rank_(x);
    std::lock_guard<std::mutex> lock(memo_->mu);
    memo_->table[x] = static_cast<std::int8_t>(r);
    return r;
}

bool Matroid::is_circuit(ElementSet x) const {
    if (x == 0) return false;
    int n = popcount(x);
    if (rank(x) != n - 1) return false;
    bool minimal = true;
    for_each_bit(x, [&](int e) { minimal = minimal && rank(x & ~bit(e)) == n - 1; });
    return minimal;
}

ElementSet Matroid::closure(ElementSet x) const {
    int r = rank(x);
    ElementSet out = x;
    for_each_bit(ground() & ~x, [&](int e) {
        if (rank(x | bit(e)) == r) out |= bit(e);
    });
    return out;
}

Matroid Matroid::minor(ElementSet contract, ElementSet del) const {
    if (contract & del) throw InvalidArgument("contract and delete sets overlap");
    std::vector<int> keep = bits_of(ground() & ~(contract | del));
    std::vector<std::string> labels;
    for (int i : keep) labels.push_back(labels_[i]);
    Matroid base = *this;
    int rc = rank(contract);
    return Matroid(std::move(labels), [base, keep, contract, rc](ElementSet s) {
        ElementSet t = contract;
        for_each_bit(s, [&](int i) { t |= bit(keep[i]); });
        return base.rank(t) - rc;
    });
}

Matroid Matroid::dual() const {
    Matroid base = *this;
    int r = rank();
    ElementSet g = ground();
    return Matroid(labels_, [base, r, g](ElementSet s) { return popcount(s) + base.rank(g & ~s) - r; });
}

Matroid Matroid::relabeled(std::vector<std::string> labels) const {
    if (labels.size() != labels_.size()) throw InvalidArgument("relabeling must keep the ground set size");
    Matroid base = *this;
    return Matroid(std::move(labels), [base](ElementSet s) { return base.rank(s); });
}

// --------------------------------------------------------- graph matroids

bool is_balanced_subgraph(const BiasedGraph& bg, EdgeSet x) {
    const MultiGraph& g = bg.graph();
    EdgeSet forest = spanning_forest(g, x);
    bool ok = true;
    for_each_bit(x & ~forest, [&](int e) {
        if (!ok) return;
        const Edge& ed = g.edge(e);
        EdgeSet c = bit(e);
        if (!ed.is_loop()) c |= *forest_path(g, forest, ed.tail, ed.head);
        ok = bg.is_balanced_cycle(c);
    });
    return ok;
}

int graphic_rank(const MultiGraph& g, EdgeSet x) {
    g.check_edges(x);
    return popcount(g.vertices_of(x)) - count_components(g, x);
}

int frame_rank(const BiasedGraph& bg, EdgeSet x) {
    const MultiGraph& g = bg.graph();
    g.check_edges(x);
    int balanced = 0;
    for (EdgeSet c : edge_components(g, x))
        if (is_balanced_subgraph(bg, c)) ++balanced;
    return popcount(g.vertices_of(x)) - balanced;
}

int lift_rank(const BiasedGraph& bg, EdgeSet x) {
    const MultiGraph& g = bg.graph();
    g.check_edges(x);
    int r = popcount(g.vertices_of(x)) - count_components(g, x);
    return is_balanced_subgraph(bg, x) ? r : r + 1;
}

namespace {
std::vector<std::string> edge_labels(const MultiGraph& g) {
    std::vector<std::string> out;
    for (const auto& e : g.edges()) out.push_back(e.name);
    return out;
}
}  // namespace

Matroid frame_matroid(const BiasedGraph& bg) {
    return Matroid(edge_labels(bg.graph()), [bg](ElementSet x) { return frame_rank(bg, x); });
}

Matroid lift_matroid(const BiasedGraph& bg) {
    return Matroid(edge_labels(bg.graph()), [bg](ElementSet x) { return lift_rank(bg, x); });
}

Matroid complete_lift(const BiasedGraph& bg) {
    auto labels = edge_labels(bg.graph());
    const int n = static_cast<int>(labels.size());
    labels.push_back("e0");
    return Matroid(std::move(labels), [bg, n](ElementSet x) {
        EdgeSet edges = x & low_mask(n);
        if (!contains(x, n)) return lift_rank(bg, edges);
        return graphic_rank(bg.graph(), edges) + 1;
    });
}

Matroid graphic_matroid(const MultiGraph& g) {
    return Matroid(edge_labels(g), [g](ElementSet x) { return graphic_rank(g, x); });
}

std::string to_string(MatroidKind k) {
    switch (k) {
        case MatroidKind::Frame: return "frame";
        case MatroidKind::Lift: return "lift";
        case MatroidKind::CompleteLift: return "lift0";
    }
    return "?";
}

MatroidKind parse_matroid_kind(const std::string& s) {
    if (s == "frame") return MatroidKind::Frame;
    if (s == "lift") return MatroidKind::Lift;
    if (s == "lift0") return MatroidKind::CompleteLift;
    throw ParseError("unknown matroid kind '" + s + "'");
}

Matroid biased_matroid(const BiasedGraph& bg, MatroidKind k) {
    switch (k) {
        case MatroidKind::Frame: return frame_matroid(bg);
        case MatroidKind::Lift: return lift_matroid(bg);
        case MatroidKind::CompleteLift: return complete_lift(bg);
    }
    throw InvalidArgument("bad matroid kind");
}

// ------------------------------------------------------------- comparison

std::optional<RankDifference> matroid_difference(const Matroid& a, const Matroid& b) {
    if (a.labels() != b.labels()) throw GroundSetMismatch("matroids have different ground sets");
    if (a.size() > bounds().matroid_elements)
        throw BoundExceeded("exhaustive matroid comparison limited to " + std::to_string(bounds().matroid_elements) +
                            " elements");
    for (ElementSet s = 0; s <= a.ground(); ++s) {
        int ra = a.rank(s);
        int rb = b.rank(s);
        if (ra != rb) return RankDifference{s, ra, rb};
        if (s == a.ground()) break;
    }
    return std::nullopt;
}

std::optional<std::vector<int>> matroid_isomorphism(const Matroid& a, const Matroid& b) {
    const int n = a.size();
    if (n != b.size() || a.rank() != b.rank()) return std::nullopt;
    if (n > bounds().matroid_elements) throw BoundExceeded("matroid isomorphism limited by the matroid bound");
    // Cheap invariant per element: rank of the element and size of its
    // closure-with-itself class (parallel class).
    auto signature = [](const Matroid& m, int e) {
        return std::make_pair(m.rank(bit(e)), popcount(m.closure(bit(e))));
    };
    std::vector<int> map(n, -1);
    std::vector<bool> used(n, false);
    std::function<bool(int)> extend = [&](int k) -> bool {
        if (k == n) return true;
        auto sig = signature(a, k);
        for (int t = 0; t < n; ++t) {
            if (used[t] || signature(b, t) != sig) continue;
            map[k] = t;
            bool ok = true;
            // Every subset of {0..k} containing k must keep its rank.
            for (ElementSet s = 0; ok && s < (ElementSet{1} << k); ++s) {
                ElementSet sa = s | bit(k);
                ElementSet sb = bit(t);
                for_each_bit(s, [&](int i) { sb |= bit(map[i]); });
                ok = a.rank(sa) == b.rank(sb);
            }
            if (!ok) continue;
            used[t] = true;
            if (extend(k + 1)) return true;
            used[t] = false;
        }
        map[k] = -1;
        return false;
    };
    if (extend(0)) return map;
    return std::nullopt;
}

std::optional<std::string> check_rank_axioms(const Matroid& m) {
    if (m.rank(0) != 0) return "rank of the empty set is not zero";
    const ElementSet g = m.ground();
    for (ElementSet s = 0;; ++s) {
        int rs = m.rank(s);
        for (int e = 0; e < m.size(); ++e) {
            if (contains(s, e)) continue;
            int re = m.rank(s | bit(e));
            if (re < rs || re > rs + 1) return "unit increase fails at element " + m.labels()[e];
            for (int f = e + 1; f < m.size(); ++f) {
                if (contains(s, f)) continue;
                if (re + m.rank(s | bit(f)) < m.rank(s | bit(e) | bit(f)) + rs)
                    return "submodularity fails at " + m.labels()[e] + ", " + m.labels()[f];
            }
        }
        if (s == g) break;
    }
    return std::nullopt;
}

std::vector<ElementSet> circuits(const Matroid& m) {
    if (m.size() > bounds().circuit_elements)
        throw BoundExceeded("circuit listing limited to " + std::to_string(bounds().circuit_elements) + " elements");
    std::vector<ElementSet> out;
    for (ElementSet s = 1; s <= m.ground(); ++s) {
        if (m.is_circuit(s)) out.push_back(s);
        if (s == m.ground()) break;
    }
    return out;
}

// ------------------------------------------------------- circuit shapes

std::string to_string(CircuitShape s) {
    switch (s) {
        case CircuitShape::BalancedCycle: return "balanced-cycle";
        case CircuitShape::Theta: return "theta";
        case CircuitShape::TightHandcuff: return "tight-handcuff";
        case CircuitShape::LooseHandcuff: return "loose-handcuff";
        case CircuitShape::DisjointPair: return "disjoint-pair";
    }
    return "?";
}

namespace {

// Shape of a bicycle: an edge set of cyclomatic number two with no vertex of
// degree one and no balanced cycle.
std::optional<CircuitShape> bicycle_shape(const BiasedGraph& bg, EdgeSet x) {
    const MultiGraph& g = bg.graph();
    if (x == 0) return std::nullopt;
    if (is_cycle(g, x)) return bg.is_balanced_cycle(x) ? std::optional(CircuitShape::BalancedCycle) : std::nullopt;
    for (EdgeSet c : bg.balanced())
        if (subset_of(c, x)) return std::nullopt;
    auto comps = edge_components(g, x);
    if (popcount(x) - popcount(g.vertices_of(x)) + static_cast<int>(comps.size()) != 2) return std::nullopt;
    int deg3 = 0;
    int deg4 = 0;
    bool ok = true;
    for_each_bit(g.vertices_of(x), [&](int v) {
        int d = g.degree(v, x);
        if (d == 3) ++deg3;
        else if (d == 4) ++deg4;
        else if (d != 2) ok = false;
    });
    if (!ok) return std::nullopt;
    if (comps.size() == 2) {
        if (is_cycle(g, comps[0]) && is_cycle(g, comps[1])) return CircuitShape::DisjointPair;
        return std::nullopt;
    }
    if (deg4 == 1 && deg3 == 0) return CircuitShape::TightHandcuff;
    if (deg3 != 2 || deg4 != 0) return std::nullopt;
    int inside = 0;
    for (EdgeSet c : bg.cycles())
        if (subset_of(c, x)) ++inside;
    return inside == 3 ? CircuitShape::Theta : CircuitShape::LooseHandcuff;
}

}  // namespace

std::optional<CircuitShape> frame_circuit_shape(const BiasedGraph& bg, EdgeSet x) {
    auto s = bicycle_shape(bg, x);
    if (s == CircuitShape::DisjointPair) return std::nullopt;
    return s;
}

std::optional<CircuitShape> lift_circuit_shape(const BiasedGraph& bg, EdgeSet x) {
    auto s = bicycle_shape(bg, x);
    if (s == CircuitShape::LooseHandcuff) return std::nullopt;
    return s;
}

// ------------------------------------------------------------ Delta-Y

namespace {

// M(K4) on local indices 0..5: 0,1,2 are the triangle a,b,c on p,q,r and
// 3,4,5 are the claw edges a',b',c' with a' disjoint from a.
int k4_rank(unsigned s) {
    static const int ends[6][2] = {{1, 2}, {2, 0}, {0, 1}, {0, 3}, {1, 3}, {2, 3}};
    int parent[4] = {0, 1, 2, 3};
    auto find = [&](int v) {
        while (parent[v] != v) v = parent[v];
        return v;
    };
    int r = 0;
    for (int e = 0; e < 6; ++e) {
        if (!(s >> e & 1U)) continue;
        int a = find(ends[e][0]);
        int b = find(ends[e][1]);
        if (a != b) {
            parent[a] = b;
            ++r;
        }
    }
    return r;
}

unsigned k4_closure(unsigned s) {
    int r = k4_rank(s);
    for (int e = 0; e < 6; ++e)
        if (k4_rank(s | 1U << e) == r) s |= 1U << e;
    return s;
}

}  // namespace

Matroid delta_y_matroid(const Matroid& m, ElementSet x) {
    if (popcount(x) != 3 || !subset_of(x, m.ground()) || !m.is_circuit(x))
        throw NotTriangle("elements do not form a triangle of the matroid");
    const std::vector<int> tri = bits_of(x);
    Matroid base = m;
    // Rank in the generalized parallel connection: close alternately in both
    // parts until stable, then r1(F1) + r2(F2) - r(F ∩ T).
    auto rank = [base, tri, x](ElementSet s) {
        unsigned local = 0;  // K4 part
        ElementSet big = s & ~x;
        for (int i = 0; i < 3; ++i)
            if (contains(s, tri[i])) local |= 1U << (3 + i);
        while (true) {
            unsigned l2 = k4_closure(local);
            for (int i = 0; i < 3; ++i)
                if (l2 >> i & 1U) big |= bit(tri[i]);
            ElementSet b2 = base.closure(big);
            for (int i = 0; i < 3; ++i)
                if (contains(b2, tri[i])) l2 |= 1U << i;
            if (l2 == local && b2 == big) break;
            local = l2;
            big = b2;
        }
        int shared = std::min(2, popcount(local & 7U));
        return k4_rank(local) + base.rank(big) - shared;
    };
    return Matroid(m.labels(), rank);
}

Matroid y_delta_matroid(const Matroid& m, ElementSet y) {
    Matroid d = m.dual();
    if (popcount(y) != 3 || !subset_of(y, m.ground()) || !d.is_circuit(y))
        throw NotTriad("elements do not form a triad of the matroid");
    return delta_y_matroid(d, y).dual();
}

}  // namespace bmlab
