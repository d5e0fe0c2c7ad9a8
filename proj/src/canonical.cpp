#include "bmlab/canonical.hpp"

#include <deque>
#include <numeric>
#include <set>

namespace bmlab {

std::string to_string(CanonicalKind k) {
    switch (k) {
        case CanonicalKind::Frame: return "frame";
        case CanonicalKind::Lift: return "lift";
        case CanonicalKind::CompleteLift: return "lift0";
    }
    return "?";
}

CanonicalKind parse_canonical_kind(const std::string& s) {
    if (s == "frame") return CanonicalKind::Frame;
    if (s == "lift") return CanonicalKind::Lift;
    if (s == "lift0" || s == "complete-lift") return CanonicalKind::CompleteLift;
    throw ParseError("unknown matrix kind '" + s + "'");
}

std::string to_string(CanonStatus s) {
    switch (s) {
        case CanonStatus::Found: return "found";
        case CanonStatus::NotCanonical: return "not-canonical";
        case CanonStatus::Undecided: return "undecided";
    }
    return "?";
}

namespace {

std::vector<std::string> edge_labels(const MultiGraph& g) {
    std::vector<std::string> out;
    for (const auto& e : g.edges()) out.push_back(e.name);
    return out;
}

std::vector<std::string> vertex_labels(const MultiGraph& g) {
    std::vector<std::string> out;
    for (int v = 0; v < g.num_vertices(); ++v) out.push_back(g.vertex_name(v));
    return out;
}

GMatrix build_lift(const GainGraph& gg, bool complete) {
    if (gg.group.kind() != GroupKind::Add) throw GroupMismatch("lift matrices need GF(q)^+ gains");
    GFField f(*gg.group.field());
    const MultiGraph& g = gg.graph;
    const int n = g.num_edges();
    GMatrix m(f, g.num_vertices() + 1, n + (complete ? 1 : 0));
    for (int e = 0; e < n; ++e) {
        const Edge& ed = g.edge(e);
        if (ed.is_loop()) {
            if (gg.gain[e] != 0) m.at(0, e) = 1;
            continue;
        }
        m.at(0, e) = gg.gain[e];
        m.at(1 + ed.tail, e) = 1;
        m.at(1 + ed.head, e) = f.neg(1);
    }
    auto cols = edge_labels(g);
    if (complete) {
        m.at(0, n) = 1;
        cols.push_back("e0");
    }
    auto rows = vertex_labels(g);
    rows.insert(rows.begin(), "v0");
    m.set_row_labels(rows);
    m.set_col_labels(cols);
    return m;
}

int column_rank(const GMatrix& a, ElementSet s) { return matrix_rank(a.columns(bits_of(s))); }

void check_columns(const GMatrix& a, ElementSet s) {
    if (a.cols() > 64 || !subset_of(s, low_mask(a.cols()))) throw InvalidArgument("column set outside the matrix");
}

// Row vector times column j.
int apply(const GFField& f, const std::vector<int>& lambda, const GMatrix& r, int j) {
    int s = 0;
    for (int i = 0; i < r.rows(); ++i) s = f.add(s, f.mul(lambda[i], r.at(i, j)));
    return s;
}

// Row vectors lambda with lambda * r[:, cols] = 0.
std::vector<std::vector<int>> left_null(const GMatrix& r, const std::vector<int>& cols) {
    return null_space(r.columns(cols).transpose());
}

// Points of the projective space spanned by `basis`, with the first nonzero
// coefficient equal to one.
std::vector<std::vector<int>> projective_points(const GFField& f, const std::vector<std::vector<int>>& basis, int len) {
    const int d = static_cast<int>(basis.size());
    const int q = f.f->q();
    std::vector<std::vector<int>> out;
    std::vector<int> c(d, 0);
    // Enumerate all coefficient vectors; keep normalized ones.
    long long total = 1;
    for (int i = 0; i < d; ++i) total *= q;
    for (long long code = 1; code < total; ++code) {
        long long x = code;
        for (int i = 0; i < d; ++i, x /= q) c[i] = static_cast<int>(x % q);
        int lead = 0;
        while (c[lead] == 0) ++lead;
        if (c[lead] != 1) continue;
        std::vector<int> v(len, 0);
        for (int i = 0; i < d; ++i)
            for (int k = 0; k < len; ++k) v[k] = f.add(v[k], f.mul(c[i], basis[i][k]));
        out.push_back(std::move(v));
    }
    return out;
}

enum class Outcome { Found, None, Budget };

struct Attempt {
    Outcome outcome = Outcome::None;
    CanonicalForm form;
    GMatrix t;  // rows of the canonical matrix, as functionals on r's rows
    std::vector<int> s;
};

Attempt budget_hit() {
    Attempt a;
    a.outcome = Outcome::Budget;
    return a;
}

class Searcher {
public:
    Searcher(const GMatrix& r, const BiasedGraph& bg, CanonicalKind kind, long long& nodes)
        : r_(r), bg_(bg), g_(bg.graph()), kind_(kind), f_(r.field()), nodes_(nodes) {}

    Attempt run() {
        const int n = g_.num_vertices();
        const bool lift = kind_ != CanonicalKind::Frame;
        if (!lift && f_.f->q() == 2 && bg_.joints()) return {};
        const EdgeSet balanced_loops = bg_.balanced_loops();
        cands_.assign(n, {});
        for (int v = 0; v < n; ++v) {
            std::vector<int> zero, nonzero;
            for (int e = 0; e < g_.num_edges(); ++e) {
                const Edge& ed = g_.edge(e);
                bool at_v = ed.tail == v || ed.head == v;
                bool required = lift ? at_v && !ed.is_loop() : at_v && !contains(balanced_loops, e);
                bool vanish = lift ? !(at_v && !ed.is_loop()) : !at_v;
                if (vanish) zero.push_back(e);
                if (required) nonzero.push_back(e);
            }
            if (kind_ == CanonicalKind::CompleteLift) zero.push_back(g_.num_edges());
            auto basis = left_null(r_, zero);
            if (basis.size() > 8) return budget_hit();
            for (auto& lambda : projective_points(f_, basis, r_.rows())) {
                if (++nodes_ > bounds().canon_nodes) return budget_hit();
                bool ok = true;
                for (int e : nonzero) ok = ok && apply(f_, lambda, r_, e) != 0;
                if (ok) cands_[v].push_back(std::move(lambda));
            }
            if (cands_[v].empty()) return {};
        }
        std::vector<size_t> pick(n, 0);
        while (true) {
            if (++nodes_ > bounds().canon_nodes) return budget_hit();
            Attempt a = lift ? try_lift(pick) : try_frame(pick);
            if (a.outcome == Outcome::Found) return a;
            int i = n - 1;
            while (i >= 0 && pick[i] + 1 == cands_[i].size()) pick[i--] = 0;
            if (i < 0) return {};
            ++pick[i];
        }
    }

private:
    Attempt finish(const GMatrix& t, std::vector<int> s, GainGraph gg) {
        if (!is_realization(gg, bg_)) return {};
        CanonicalForm form = canonical_matrix(gg, kind_);
        if (!(t * r_ * GMatrix::diagonal(f_, s)).same_entries(form.matrix)) return {};
        return {Outcome::Found, std::move(form), t, std::move(s)};
    }

    Attempt try_frame(const std::vector<size_t>& pick) {
        const int n = g_.num_vertices();
        const int rk = r_.rows();
        GMatrix t(f_, n, rk);
        for (int v = 0; v < n; ++v)
            for (int k = 0; k < rk; ++k) t.at(v, k) = cands_[v][pick[v]][k];
        if (matrix_rank(t) != rk) return {};
        GMatrix tr = t * r_;
        const GainGroup grp = GainGroup::mul(f_.f->q());
        const EdgeSet joints = bg_.joints();
        std::vector<int> s(g_.num_edges(), 1), gain(g_.num_edges(), 1);
        for (int e = 0; e < g_.num_edges(); ++e) {
            const Edge& ed = g_.edge(e);
            if (ed.is_loop()) {
                if (!contains(joints, e)) continue;
                s[e] = f_.inv(tr.at(ed.tail, e));
                gain[e] = grp.smallest_non_identity();
                continue;
            }
            s[e] = f_.inv(tr.at(ed.tail, e));
            gain[e] = f_.neg(f_.mul(tr.at(ed.head, e), s[e]));
        }
        return finish(t, std::move(s), GainGraph(g_, grp, std::move(gain)));
    }

    Attempt try_lift(const std::vector<size_t>& pick) {
        const int n = g_.num_vertices();
        const int rk = r_.rows();
        // Relative scales of the vertex rows so that every link reads +1/-1.
        std::vector<int> scale(n, 0);
        for (int root = 0; root < n; ++root) {
            if (scale[root]) continue;
            scale[root] = 1;
            std::deque<int> queue{root};
            while (!queue.empty()) {
                int v = queue.front();
                queue.pop_front();
                for_each_bit(g_.incident(v) & g_.links(), [&](int e) {
                    int w = g_.other_end(e, v);
                    if (scale[w]) return;
                    int xv = apply(f_, cands_[v][pick[v]], r_, e);
                    int xw = apply(f_, cands_[w][pick[w]], r_, e);
                    scale[w] = f_.neg(f_.div(f_.mul(scale[v], xv), xw));
                    queue.push_back(w);
                });
            }
        }
        GMatrix inc(f_, n, rk);
        for (int v = 0; v < n; ++v)
            for (int k = 0; k < rk; ++k) inc.at(v, k) = f_.mul(scale[v], cands_[v][pick[v]][k]);
        GMatrix incr = inc * r_;
        for (int e : bits_of(g_.links())) {
            const Edge& ed = g_.edge(e);
            if (f_.add(incr.at(ed.tail, e), incr.at(ed.head, e)) != 0) return {};
        }
        const int k = matrix_rank(inc);
        std::vector<int> g0(rk, 0);
        if (k < rk) {
            for (int i = 0; i < rk; ++i) {
                GMatrix ext(f_, n + 1, rk);
                for (int v = 0; v < n; ++v)
                    for (int c = 0; c < rk; ++c) ext.at(v, c) = inc.at(v, c);
                ext.at(n, i) = 1;
                if (matrix_rank(ext) == k + 1) {
                    g0[i] = 1;
                    break;
                }
            }
            if (k + 1 != rk) return {};
        }
        GMatrix t(f_, n + 1, rk);
        for (int c = 0; c < rk; ++c) t.at(0, c) = g0[c];
        for (int v = 0; v < n; ++v)
            for (int c = 0; c < rk; ++c) t.at(v + 1, c) = inc.at(v, c);
        GMatrix tr = t * r_;
        const int cols = r_.cols();
        const EdgeSet joints = bg_.joints();
        std::vector<int> s(cols, 1), gain(g_.num_edges(), 0);
        for (int e = 0; e < g_.num_edges(); ++e) {
            const Edge& ed = g_.edge(e);
            if (ed.is_loop()) {
                if (!contains(joints, e)) continue;
                if (tr.at(0, e) == 0) return {};
                s[e] = f_.inv(tr.at(0, e));
                gain[e] = 1;
                continue;
            }
            s[e] = f_.inv(tr.at(1 + ed.tail, e));
            gain[e] = f_.mul(tr.at(0, e), s[e]);
        }
        if (kind_ == CanonicalKind::CompleteLift) {
            if (tr.at(0, cols - 1) == 0) return {};
            s[cols - 1] = f_.inv(tr.at(0, cols - 1));
        }
        return finish(t, std::move(s), GainGraph(g_, GainGroup::add(f_.f->q()), std::move(gain)));
    }

    const GMatrix& r_;
    const BiasedGraph& bg_;
    const MultiGraph& g_;
    CanonicalKind kind_;
    GFField f_;
    long long& nodes_;
    std::vector<std::vector<std::vector<int>>> cands_;
};

constexpr int kMaxRollDepth = 4;

std::string graph_key(const BiasedGraph& bg) {
    std::string k;
    for (const auto& e : bg.graph().edges())
        k += e.name + ":" + std::to_string(e.tail) + "-" + std::to_string(e.head) + ";";
    auto bal = bg.balanced();
    std::sort(bal.begin(), bal.end());
    for (EdgeSet c : bal) k += std::to_string(c) + ",";
    return k;
}

// Biased graphs reachable by one rolling-type operation, with a description.
std::vector<std::pair<BiasedGraph, std::string>> roll_variants(const BiasedGraph& bg) {
    std::vector<std::pair<BiasedGraph, std::string>> out;
    const MultiGraph& g = bg.graph();
    auto cls = classify_balance(bg);
    for_each_bit(cls.balancing_vertices, [&](int u) {
        auto part = unbalancing_classes(bg, u);
        const std::string at = " at " + g.vertex_name(u);
        if (part.joints_away) {
            out.emplace_back(unroll(bg, u), "unroll" + at);
            return;
        }
        for (EdgeSet c : part.classes) {
            if (c & bg.joints()) continue;
            std::string names;
            for (const auto& nm : g.edge_names(c)) names += (names.empty() ? "" : ",") + nm;
            out.emplace_back(roll_up(bg, u, c), "roll-up" + at + " {" + names + "}");
        }
    });
    try {
        auto ft = fat_theta_structure(bg);
        const int m = static_cast<int>(ft.parts.size());
        if (m >= 3)
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j)
                    if (i != j)
                        out.emplace_back(double_roll_up(bg, i, j),
                                         "double roll-up parts " + std::to_string(i) + "," + std::to_string(j));
    } catch (const StructureMissing&) {
    }
    return out;
}

}  // namespace

MatroidKind matroid_kind(CanonicalKind k) {
    switch (k) {
        case CanonicalKind::Frame: return MatroidKind::Frame;
        case CanonicalKind::Lift: return MatroidKind::Lift;
        case CanonicalKind::CompleteLift: return MatroidKind::CompleteLift;
    }
    return MatroidKind::Frame;
}

CanonicalForm frame_matrix(const GainGraph& gg) {
    if (gg.group.kind() != GroupKind::Mul) throw GroupMismatch("frame matrices need GF(q)^x gains");
    GFField f(*gg.group.field());
    const MultiGraph& g = gg.graph;
    GMatrix m(f, g.num_vertices(), g.num_edges());
    for (int e = 0; e < g.num_edges(); ++e) {
        const Edge& ed = g.edge(e);
        if (ed.is_loop()) {
            if (gg.gain[e] != 1) m.at(ed.head, e) = 1;
            continue;
        }
        m.at(ed.tail, e) = 1;
        m.at(ed.head, e) = f.neg(gg.gain[e]);
    }
    m.set_row_labels(vertex_labels(g));
    m.set_col_labels(edge_labels(g));
    return {CanonicalKind::Frame, gg, std::move(m)};
}

CanonicalForm lift_matrix(const GainGraph& gg) { return {CanonicalKind::Lift, gg, build_lift(gg, false)}; }

CanonicalForm complete_lift_matrix(const GainGraph& gg) {
    return {CanonicalKind::CompleteLift, gg, build_lift(gg, true)};
}

CanonicalForm canonical_matrix(const GainGraph& gg, CanonicalKind k) {
    switch (k) {
        case CanonicalKind::Frame: return frame_matrix(gg);
        case CanonicalKind::Lift: return lift_matrix(gg);
        case CanonicalKind::CompleteLift: return complete_lift_matrix(gg);
    }
    throw InvalidArgument("unknown matrix kind");
}

GMatrix delta_y_matrix(const GMatrix& a, ElementSet x) {
    check_columns(a, x);
    const GFField& f = a.field();
    if (popcount(x) != 3 || column_rank(a, x) != 2) throw NotTriangle("columns do not form a triangle");
    for (int e : bits_of(x))
        if (column_rank(a, x & ~bit(e)) != 2) throw NotTriangle("columns do not form a triangle");
    auto idx = bits_of(x);
    auto rel = null_space(a.columns(idx));
    const auto& c = rel.front();  // c0 x_i + c1 x_j + c2 x_k = 0, all nonzero
    const int m = a.rows();
    GMatrix out(f, m + 1, a.cols());
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (!contains(x, j)) out.at(i, j) = a.at(i, j);
    // With p = c0 x_i and s = -c1 x_j the triangle reads p, s, s - p; the
    // claw is w, w - p, w - s for a new coordinate w.
    for (int i = 0; i < m; ++i) {
        int p = f.mul(c[0], a.at(i, idx[0]));
        int s = f.neg(f.mul(c[1], a.at(i, idx[1])));
        out.at(i, idx[0]) = f.neg(s);
        out.at(i, idx[1]) = f.neg(p);
    }
    for (int j : idx) out.at(m, j) = 1;
    auto rows = a.row_labels();
    rows.push_back("w");
    out.set_row_labels(rows);
    out.set_col_labels(a.col_labels());
    return out;
}

GMatrix y_delta_matrix(const GMatrix& a, ElementSet y) {
    check_columns(a, y);
    const GFField& f = a.field();
    auto red = rref(a);
    const int r = red.rank();
    GMatrix rm = red.form.row_range(0, r);
    const ElementSet all = low_mask(a.cols());
    if (popcount(y) != 3 || column_rank(rm, all & ~y) != r - 1) throw NotTriad("columns do not form a triad");
    for (int e : bits_of(y))
        if (column_rank(rm, (all & ~y) | bit(e)) != r) throw NotTriad("columns do not form a triad");
    auto lambda = left_null(rm, bits_of(all & ~y)).front();
    int p = 0;
    while (lambda[p] == 0) ++p;
    GMatrix t(f, r, r);
    for (int i = 0, row = 0; i < r; ++i)
        if (i != p) t.at(row++, i) = 1;
    for (int i = 0; i < r; ++i) t.at(r - 1, i) = lambda[i];
    GMatrix b = t * rm;
    auto idx = bits_of(y);
    // Scale the triad columns to read -1 on the last row, then replace each
    // by the difference of the other two.
    std::vector<std::vector<int>> v(3, std::vector<int>(r - 1));
    for (int k = 0; k < 3; ++k) {
        int s = f.neg(f.inv(b.at(r - 1, idx[k])));
        for (int i = 0; i < r - 1; ++i) v[k][i] = f.mul(s, b.at(i, idx[k]));
    }
    GMatrix out = b.row_range(0, r - 1);
    for (int i = 0; i < r - 1; ++i) {
        out.at(i, idx[0]) = f.sub(v[1][i], v[2][i]);
        out.at(i, idx[1]) = f.sub(v[0][i], v[2][i]);
        out.at(i, idx[2]) = f.sub(v[0][i], v[1][i]);
    }
    std::vector<std::string> rows;
    for (int i = 0; i < r - 1; ++i) rows.push_back("r" + std::to_string(i + 1));
    out.set_row_labels(rows);
    return out;
}

CanonicalizeResult canonicalize_representation(const GMatrix& a, const BiasedGraph& omega,
                                               std::optional<CanonicalKind> hint) {
    const MultiGraph& g = omega.graph();
    auto labels = edge_labels(g);
    if (hint == CanonicalKind::CompleteLift) labels.push_back("e0");
    if (a.col_labels() != labels) throw ColumnLabelMismatch("matrix columns do not match the edges of the biased graph");
    if (!is_vertically_k_connected(g, 2)) throw NotVertically2Connected("biased graph is not vertically 2-connected");

    const Matroid m = vector_matroid(a);
    std::vector<CanonicalKind> kinds;
    if (hint) {
        kinds = {*hint};
    } else {
        kinds = {CanonicalKind::Frame, CanonicalKind::Lift};
    }
    auto matching = [&](const BiasedGraph& bg) {
        std::vector<CanonicalKind> out;
        for (auto k : kinds)
            if (matroids_equal(m, biased_matroid(bg, matroid_kind(k)))) out.push_back(k);
        return out;
    };
    auto direct = matching(omega);
    if (direct.empty()) throw MatroidMismatch("the matrix does not represent the requested matroid of the biased graph");

    // Full-row-rank reduction: r = to_r * a.
    auto red = rref(a);
    const GMatrix r = red.form.row_range(0, red.rank());
    const GMatrix to_r = red.transform.row_range(0, red.rank());

    CanonicalizeResult res;
    bool exhausted = false;
    auto run_on = [&](const BiasedGraph& bg, const std::vector<CanonicalKind>& ks, const std::string& op) {
        for (auto k : ks) {
            Attempt at = Searcher(r, bg, k, res.nodes).run();
            if (at.outcome == Outcome::Budget) exhausted = true;
            if (at.outcome != Outcome::Found) continue;
            if (res.form) {
                res.also_found.push_back(k);
                continue;
            }
            ProjWitness<GFField> w{at.t * to_r, at.s};
            if (!check_witness(a, at.form.matrix, w)) throw std::logic_error("canonical witness failed to verify");
            res.form = std::move(at.form);
            res.witness = std::move(w);
            res.graph = bg;
            if (!op.empty()) res.operations.push_back(op);
        }
    };
    run_on(omega, direct, "");
    if (!res.form && classify_balance(omega).tag == BalanceTag::AlmostBalanced) {
        // Breadth-first over sequences of rolling-type operations, so the
        // shortest sequence wins.  Labelled graphs are deduplicated.
        std::set<std::string> seen{graph_key(omega)};
        std::vector<std::pair<BiasedGraph, std::vector<std::string>>> layer{{omega, {}}};
        for (int depth = 0; depth < kMaxRollDepth && !res.form && !layer.empty(); ++depth) {
            std::vector<std::pair<BiasedGraph, std::vector<std::string>>> next;
            for (const auto& [from, ops] : layer) {
                for (auto& [bg, op] : roll_variants(from)) {
                    if (!seen.insert(graph_key(bg)).second) continue;
                    auto path = ops;
                    path.push_back(op);
                    run_on(bg, matching(bg), "");
                    if (res.form) {
                        res.operations = path;
                        break;
                    }
                    next.emplace_back(std::move(bg), std::move(path));
                }
                if (res.form) break;
            }
            layer = std::move(next);
        }
    }
    res.status = res.form ? CanonStatus::Found : exhausted ? CanonStatus::Undecided : CanonStatus::NotCanonical;
    return res;
}

std::vector<RepresentationClass> enumerate_representations(const Matroid& m, int q, const BiasedGraph* omega) {
    const Bounds& b = bounds();
    const int rank = m.rank();
    if (rank > b.enum_rank || m.size() > b.enum_elements || q > b.enum_q)
        throw BoundExceeded("representation enumeration limited to rank " + std::to_string(b.enum_rank) + ", " +
                            std::to_string(b.enum_elements) + " elements and q <= " + std::to_string(b.enum_q));
    if (rank == 0) throw NoBasis("a rank-zero matroid has no basis to standardize on");
    GFField f(q);
    const int n = m.size();
    ElementSet basis = 0;
    for (int e = 0; e < n; ++e)
        if (m.is_independent(basis | bit(e))) basis |= bit(e);
    auto rows = bits_of(basis);
    std::vector<int> row_of(n, -1);
    for (int k = 0; k < rank; ++k) row_of[rows[k]] = k;

    // Support entries (row, column) forced by fundamental circuits.  Entries
    // on a spanning forest of the bipartite support graph are scaled to 1.
    struct Entry {
        int row, col;
        bool fixed;
    };
    std::vector<Entry> entries;
    std::vector<int> uf(rank + n);
    std::iota(uf.begin(), uf.end(), 0);
    auto find = [&](int x) {
        while (uf[x] != x) x = uf[x] = uf[uf[x]];
        return x;
    };
    for (int e = 0; e < n; ++e) {
        if (contains(basis, e)) continue;
        for (int k = 0; k < rank; ++k) {
            if (!m.is_independent((basis & ~bit(rows[k])) | bit(e))) continue;
            int x = find(k), y = find(rank + e);
            entries.push_back({k, e, x != y});
            if (x != y) uf[x] = y;
        }
    }
    std::vector<int> free_idx;
    for (size_t i = 0; i < entries.size(); ++i)
        if (!entries[i].fixed) free_idx.push_back(static_cast<int>(i));
    long long total = 1;
    for (size_t i = 0; i < free_idx.size(); ++i) {
        total *= q - 1;
        if (total > b.canon_nodes) throw BoundExceeded("too many standard-form candidates");
    }

    std::vector<RepresentationClass> out;
    std::vector<int> value(free_idx.size(), 1);
    for (long long code = 0; code < total; ++code) {
        long long c = code;
        for (size_t i = 0; i < free_idx.size(); ++i, c /= q - 1) value[i] = 1 + static_cast<int>(c % (q - 1));
        GMatrix mat(f, rank, n);
        for (int k = 0; k < rank; ++k) mat.at(k, rows[k]) = 1;
        for (const auto& en : entries) mat.at(en.row, en.col) = 1;
        for (size_t i = 0; i < free_idx.size(); ++i) {
            const auto& en = entries[free_idx[i]];
            mat.at(en.row, en.col) = value[i];
        }
        mat.set_col_labels(m.labels());
        if (!matroids_equal(vector_matroid(mat), m)) continue;
        bool seen = false;
        for (const auto& cls : out) seen = seen || diagonally_equivalent(cls.matrix, mat).has_value();
        if (!seen) out.push_back({std::move(mat), std::nullopt, std::nullopt});
    }

    if (omega) {
        for (auto& cls : out) {
            if (matroids_equal(m, frame_matroid(*omega)))
                cls.frame = canonicalize_representation(cls.matrix, *omega, CanonicalKind::Frame).status;
            if (matroids_equal(m, lift_matroid(*omega)))
                cls.lift = canonicalize_representation(cls.matrix, *omega, CanonicalKind::Lift).status;
        }
    }
    return out;
}

}  // namespace bmlab
