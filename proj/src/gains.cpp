#include "bmlab/gains.hpp"

#include <algorithm>
#include <deque>

namespace bmlab {

GainGroup GainGroup::mul(int q) {
    GainGroup g;
    g.kind_ = GroupKind::Mul;
    g.n_ = q;
    g.field_ = &GF::get(q);
    return g;
}

GainGroup GainGroup::add(int q) {
    GainGroup g;
    g.kind_ = GroupKind::Add;
    g.n_ = q;
    g.field_ = &GF::get(q);
    return g;
}

GainGroup GainGroup::zn(int n) {
    if (n < 1 || n > 256) throw InvalidArgument("cyclic group order must be in 1..256");
    GainGroup g;
    g.kind_ = GroupKind::Zn;
    g.n_ = n;
    return g;
}

GainGroup GainGroup::parse(const std::string& kind, int n) {
    if (kind == "mul") return mul(n);
    if (kind == "add") return add(n);
    if (kind == "zn") return zn(n);
    throw ParseError("unknown group kind '" + kind + "'");
}

bool GainGroup::contains(int a) const {
    if (kind_ == GroupKind::Mul) return a >= 1 && a < n_;
    return a >= 0 && a < n_;
}

int GainGroup::compose(int a, int b) const {
    switch (kind_) {
        case GroupKind::Mul: return field_->mul(a, b);
        case GroupKind::Add: return field_->add(a, b);
        case GroupKind::Zn: return (a + b) % n_;
    }
    return 0;
}

int GainGroup::inverse(int a) const {
    switch (kind_) {
        case GroupKind::Mul: return field_->inv(a);
        case GroupKind::Add: return field_->neg(a);
        case GroupKind::Zn: return (n_ - a) % n_;
    }
    return 0;
}

std::vector<int> GainGroup::elements() const {
    std::vector<int> out;
    for (int a = kind_ == GroupKind::Mul ? 1 : 0; a < n_; ++a) out.push_back(a);
    return out;
}

int GainGroup::smallest_non_identity() const {
    for (int a : elements())
        if (a != identity()) return a;
    throw InvalidArgument("trivial group has no non-identity element");
}

int GainGroup::scale(int a, int x) const {
    if (kind_ != GroupKind::Add) throw GroupMismatch("scaling needs an additive field group");
    return field_->mul(a, x);
}

std::string GainGroup::describe() const {
    switch (kind_) {
        case GroupKind::Mul: return "mul " + std::to_string(n_);
        case GroupKind::Add: return "add " + std::to_string(n_);
        case GroupKind::Zn: return "zn " + std::to_string(n_);
    }
    return "?";
}

GainGraph::GainGraph(MultiGraph g, GainGroup grp, std::vector<int> gains)
    : graph(std::move(g)), group(grp), gain(std::move(gains)) {
    if (static_cast<int>(gain.size()) != graph.num_edges())
        throw InvalidArgument("one gain per edge is required");
    for (int a : gain)
        if (!group.contains(a)) throw InvalidArgument("gain " + std::to_string(a) + " not in " + group.describe());
}

int GainGraph::gain_of(OrientedEdge o) const {
    int a = gain.at(o.edge);
    return o.reversed ? group.inverse(a) : a;
}

int walk_gain(const GainGraph& gg, const Walk& w) {
    if (!is_walk(gg.graph, w)) throw NotAWalk("oriented edges do not form a walk");
    int acc = gg.group.identity();
    for (const auto& o : w) acc = gg.group.compose(acc, gg.gain_of(o));
    return acc;
}

bool cycle_is_balanced(const GainGraph& gg, EdgeSet c) {
    return walk_gain(gg, cycle_walk(gg.graph, c)) == gg.group.identity();
}

BiasedGraph induced_bias(const GainGraph& gg) {
    std::vector<EdgeSet> b;
    for (EdgeSet c : enumerate_cycles(gg.graph))
        if (cycle_is_balanced(gg, c)) b.push_back(c);
    return BiasedGraph(gg.graph, std::move(b));
}

bool is_realization(const GainGraph& gg, const BiasedGraph& bg) {
    if (gg.graph.num_edges() != bg.graph().num_edges() || gg.graph.num_vertices() != bg.graph().num_vertices())
        throw GraphMismatch("gain graph and biased graph differ");
    for (EdgeSet c : bg.cycles())
        if (cycle_is_balanced(gg, c) != bg.is_balanced_cycle(c)) return false;
    return true;
}

GainGraph switching(const GainGraph& gg, const SwitchingFunction& eta) {
    if (static_cast<int>(eta.size()) != gg.graph.num_vertices())
        throw InvalidArgument("switching function needs one value per vertex");
    const GainGroup& grp = gg.group;
    GainGraph out = gg;
    for (int e = 0; e < gg.graph.num_edges(); ++e) {
        const Edge& ed = gg.graph.edge(e);
        out.gain[e] = grp.compose(grp.compose(grp.inverse(eta[ed.tail]), gg.gain[e]), eta[ed.head]);
    }
    return out;
}

SwitchingFunction compose_switching(const GainGroup& grp, const SwitchingFunction& a, const SwitchingFunction& b) {
    SwitchingFunction out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = grp.compose(a[i], b[i]);
    return out;
}

namespace {

// Switching that makes every edge of the forest f the identity, anchored at
// the least vertex of each component of (V, f).
SwitchingFunction forest_switching(const GainGraph& gg, EdgeSet f) {
    const MultiGraph& g = gg.graph;
    const GainGroup& grp = gg.group;
    SwitchingFunction eta(g.num_vertices(), -1);
    for (int root = 0; root < g.num_vertices(); ++root) {
        if (eta[root] >= 0) continue;
        eta[root] = grp.identity();
        std::deque<int> queue{root};
        while (!queue.empty()) {
            int x = queue.front();
            queue.pop_front();
            for_each_bit(f & g.incident(x), [&](int e) {
                const Edge& ed = g.edge(e);
                int y = g.other_end(e, x);
                if (eta[y] >= 0) return;
                if (ed.tail == x) {
                    eta[y] = grp.compose(grp.inverse(gg.gain[e]), eta[x]);
                } else {
                    eta[y] = grp.compose(gg.gain[e], eta[x]);
                }
                queue.push_back(y);
            });
        }
    }
    return eta;
}

}  // namespace

Normalized normalize(const GainGraph& gg, EdgeSet f) {
    if (!is_maximal_forest(gg.graph, f)) throw NotMaximalForest("edge set is not a maximal forest");
    auto eta = forest_switching(gg, f);
    return {switching(gg, eta), eta};
}

namespace {
void require_same(const GainGraph& a, const GainGraph& b) {
    if (a.graph.num_vertices() != b.graph.num_vertices() || a.graph.num_edges() != b.graph.num_edges())
        throw GraphMismatch("gain graphs have different underlying graphs");
    for (int e = 0; e < a.graph.num_edges(); ++e)
        if (a.graph.edge(e).tail != b.graph.edge(e).tail || a.graph.edge(e).head != b.graph.edge(e).head)
            throw GraphMismatch("gain graphs orient edge " + a.graph.edge(e).name + " differently");
    if (!(a.group == b.group)) throw GroupMismatch("gain groups differ");
}
}  // namespace

std::optional<SwitchingFunction> switching_equivalent(const GainGraph& phi, const GainGraph& psi) {
    require_same(phi, psi);
    EdgeSet f = spanning_forest(phi.graph);
    auto a = normalize(phi, f);
    auto b = normalize(psi, f);
    if (a.gains.gain != b.gains.gain) return std::nullopt;
    const GainGroup& grp = phi.group;
    SwitchingFunction inv_b(b.eta.size());
    for (size_t i = 0; i < b.eta.size(); ++i) inv_b[i] = grp.inverse(b.eta[i]);
    return compose_switching(grp, a.eta, inv_b);
}

GainGraph scale_gains(const GainGraph& gg, int a) {
    GainGraph out = gg;
    for (int& x : out.gain) x = gg.group.scale(a, x);
    return out;
}

std::optional<ScalingWitness> switching_scaling_equivalent(const GainGraph& phi, const GainGraph& psi) {
    require_same(phi, psi);
    if (phi.group.kind() != GroupKind::Add) throw GroupMismatch("switching-and-scaling needs an additive field group");
    EdgeSet f = spanning_forest(phi.graph);
    auto a = normalize(phi, f);
    auto b = normalize(psi, f);
    const GF& fld = *phi.group.field();
    for (int s = 1; s < fld.q(); ++s) {
        if (scale_gains(a.gains, s).gain != b.gains.gain) continue;
        // psi = s * phi^(eta_a - s^-1 eta_b)
        int sinv = fld.inv(s);
        SwitchingFunction eta(a.eta.size());
        for (size_t i = 0; i < eta.size(); ++i) eta[i] = fld.sub(a.eta[i], fld.mul(sinv, b.eta[i]));
        return ScalingWitness{s, eta};
    }
    return std::nullopt;
}

// ----------------------------------------------------------- induced gains

namespace {

GainMinor contract_sequential(const GainGraph& gg, EdgeSet contract, EdgeSet del) {
    auto base = graph_minor(gg.graph, 0, del);
    std::vector<int> gains;
    for (int e = 0; e < gg.graph.num_edges(); ++e)
        if (base.edge_map[e] >= 0) gains.push_back(gg.gain[e]);
    GainGraph cur(std::move(base.graph), gg.group, std::move(gains));
    std::vector<int> emap = base.edge_map;
    const GainGroup& grp = gg.group;
    for (int e : bits_of(contract)) {
        int ce = emap[e];
        const Edge ed = cur.graph.edge(ce);
        std::vector<int> step(cur.graph.num_edges(), -1);
        if (!ed.is_loop()) {
            SwitchingFunction eta(cur.graph.num_vertices(), grp.identity());
            eta[ed.head] = grp.inverse(cur.gain[ce]);
            if (ed.tail == ed.head) eta[ed.head] = grp.identity();
            GainGraph sw = switching(cur, eta);
            auto m = graph_minor(sw.graph, bit(ce), 0);
            std::vector<int> ng;
            for (int x = 0; x < sw.graph.num_edges(); ++x)
                if (m.edge_map[x] >= 0) ng.push_back(sw.gain[x]);
            cur = GainGraph(std::move(m.graph), grp, std::move(ng));
            step = m.edge_map;
        } else if (cur.gain[ce] == grp.identity()) {
            auto m = graph_minor(cur.graph, 0, bit(ce));
            std::vector<int> ng;
            for (int x = 0; x < cur.graph.num_edges(); ++x)
                if (m.edge_map[x] >= 0) ng.push_back(cur.gain[x]);
            cur = GainGraph(std::move(m.graph), grp, std::move(ng));
            step = m.edge_map;
        } else {
            const int v = ed.tail;
            MultiGraph h;
            for (int x = 0; x < cur.graph.num_vertices(); ++x) h.add_vertex(cur.graph.vertex_name(x));
            std::vector<int> ng;
            for (int x = 0; x < cur.graph.num_edges(); ++x) {
                if (x == ce) continue;
                const Edge& xd = cur.graph.edge(x);
                if (xd.is_loop() && xd.tail == v) {
                    step[x] = h.add_edge(v, v, xd.name);
                    ng.push_back(grp.identity());
                } else if (xd.tail == v || xd.head == v) {
                    int w = xd.tail == v ? xd.head : xd.tail;
                    step[x] = h.add_edge(w, w, xd.name);
                    ng.push_back(grp.smallest_non_identity());
                } else {
                    step[x] = h.add_edge(xd.tail, xd.head, xd.name);
                    ng.push_back(cur.gain[x]);
                }
            }
            cur = GainGraph(std::move(h), grp, std::move(ng));
        }
        for (int& x : emap)
            if (x >= 0) x = step[x];
    }
    return {std::move(cur), std::move(emap)};
}

}  // namespace

GainMinor induced_gain(const GainGraph& gg, EdgeSet contract, EdgeSet del) {
    const MultiGraph& g = gg.graph;
    g.check_edges(contract | del);
    if (contract & del) throw InvalidArgument("contract and delete sets overlap");
    bool balanced_k = true;
    for (EdgeSet c : enumerate_cycles(g))
        if (subset_of(c, contract) && !cycle_is_balanced(gg, c)) balanced_k = false;
    if (!balanced_k) return contract_sequential(gg, contract, del);

    // Switching along a forest of G|K alone agrees with normalizing on a
    // maximal forest through it, up to a further switching of the minor,
    // and leaves pure deletions as plain restrictions.
    auto [k2, d2] = acyclic_contraction_form(g, contract, del);
    GainGraph sw = switching(gg, forest_switching(gg, k2));
    auto m = graph_minor(g, k2, d2);
    std::vector<int> ng;
    for (int e = 0; e < g.num_edges(); ++e)
        if (m.edge_map[e] >= 0) ng.push_back(sw.gain[e]);
    return {GainGraph(std::move(m.graph), gg.group, std::move(ng)), m.edge_map};
}

std::vector<GainGraph> normalized_realizations(const BiasedGraph& bg, const GainGroup& grp, EdgeSet f) {
    const MultiGraph& g = bg.graph();
    if (!is_maximal_forest(g, f)) throw NotMaximalForest("edge set is not a maximal forest");
    std::vector<int> free = bits_of(g.all_edges() & ~f);
    std::vector<int> gains(g.num_edges(), grp.identity());
    const auto elems = grp.elements();
    // A cycle can be judged once every edge of it has a gain; cycles are
    // attached to the last free edge they use so pruning happens early.
    std::vector<std::vector<EdgeSet>> check_at(free.size());
    for (EdgeSet c : bg.cycles()) {
        int last = -1;
        for (size_t i = 0; i < free.size(); ++i)
            if (contains(c, free[i])) last = static_cast<int>(i);
        if (last >= 0) check_at[last].push_back(c);
    }
    std::vector<GainGraph> out;
    GainGraph cur(g, grp, gains);
    std::vector<size_t> choice(free.size(), 0);
    // Iterative odometer with pruning.
    size_t depth = 0;
    if (free.empty()) {
        bool ok = true;
        for (EdgeSet c : bg.cycles())
            if (cycle_is_balanced(cur, c) != bg.is_balanced_cycle(c)) ok = false;
        if (ok) out.push_back(cur);
        return out;
    }
    while (true) {
        cur.gain[free[depth]] = elems[choice[depth]];
        bool ok = true;
        for (EdgeSet c : check_at[depth])
            if (cycle_is_balanced(cur, c) != bg.is_balanced_cycle(c)) {
                ok = false;
                break;
            }
        if (ok && depth + 1 == free.size()) out.push_back(cur);
        if (ok && depth + 1 < free.size()) {
            ++depth;
            choice[depth] = 0;
            continue;
        }
        // advance
        while (true) {
            ++choice[depth];
            if (choice[depth] < elems.size()) break;
            if (depth == 0) return out;
            --depth;
        }
    }
}

}  // namespace bmlab
