#include "bmlab/verify.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <random>

#include "bmlab/catalog.hpp"

namespace bmlab {

namespace {

class Run {
public:
    explicit Run(VerifyReport& r) : r_(r) {}

    void add(const std::string& key, long long n = 1) {
        long long cur = r_.counts.contains(key) ? r_.counts[key].get<long long>() : 0;
        r_.counts[key] = cur + n;
    }
    void set(const std::string& key, json v) { r_.counts[key] = std::move(v); }
    void fail(const std::string& what, json detail = json::object()) {
        r_.status = VerifyStatus::Fail;
        if (r_.witnesses.size() < 5) {
            detail["failure"] = what;
            r_.witnesses.push_back(std::move(detail));
        }
    }
    void undecided(const std::string& what) {
        if (r_.status == VerifyStatus::Pass) r_.status = VerifyStatus::Undecided;
        if (r_.summary.empty()) r_.summary = what;
    }
    bool failed() const { return r_.status == VerifyStatus::Fail; }
    void summary(std::string s) {
        if (r_.summary.empty()) r_.summary = std::move(s);
    }

private:
    VerifyReport& r_;
};

// Temporarily replaces the global search bounds.
class BoundsScope {
public:
    explicit BoundsScope(const std::function<void(Bounds&)>& edit) : saved_(bounds()) {
        Bounds b = saved_;
        edit(b);
        set_bounds(b);
    }
    ~BoundsScope() { set_bounds(saved_); }
    BoundsScope(const BoundsScope&) = delete;
    BoundsScope& operator=(const BoundsScope&) = delete;

private:
    Bounds saved_;
};

std::vector<int> fields_or(const VerifyOptions& o, std::vector<int> def) { return o.fields ? *o.fields : def; }
int samples_or(const VerifyOptions& o, int def) { return o.samples > 0 ? o.samples : def; }

std::vector<GainGraph> realizations(const BiasedGraph& bg, const GainGroup& grp) {
    return normalized_realizations(bg, grp, spanning_forest(bg.graph()));
}

// Representatives of the realizations up to switching and scaling.
std::vector<GainGraph> scaling_classes(const std::vector<GainGraph>& add) {
    std::vector<GainGraph> reps;
    for (const auto& gg : add) {
        bool seen = false;
        for (const auto& r : reps) seen = seen || switching_scaling_equivalent(r, gg).has_value();
        if (!seen) reps.push_back(gg);
    }
    return reps;
}

std::vector<NamedBiasedGraph> named_list(const std::vector<std::string>& names) {
    std::vector<NamedBiasedGraph> out;
    for (const auto& n : names) out.push_back(*find_named(n));
    return out;
}

std::vector<NamedBiasedGraph> k4_proper() {
    std::vector<NamedBiasedGraph> out;
    for (const auto& d : base_graphs())
        if (d.graph.graph().num_vertices() == 4 && d.name[0] == 'D') out.push_back(d);
    return out;
}

// ---- projective equivalence against switching -----------------------------

enum class Pairing { Frame, Lift, Cross };

void biconditional(Run& run, const NamedBiasedGraph& nb, int q, Pairing p) {
    const BiasedGraph& bg = nb.graph;
    auto witness = [&](const GainGraph& a, const GainGraph& b) {
        return json{{"graph", nb.name}, {"q", q}, {"phi", to_json(a)}, {"psi", to_json(b)}};
    };
    if (p == Pairing::Cross) {
        auto mul = realizations(bg, GainGroup::mul(q));
        auto add = realizations(bg, GainGroup::add(q));
        for (const auto& f : mul) {
            GMatrix af = frame_matrix(f).matrix;
            for (const auto& l : add) {
                run.add("cross_pairs");
                if (projectively_equivalent(af, lift_matrix(l).matrix)) {
                    run.add("equivalent_cross_pairs");
                    run.fail("frame and lift matrices are projectively equivalent", witness(f, l));
                }
            }
        }
        return;
    }
    const bool frame = p == Pairing::Frame;
    auto all = realizations(bg, frame ? GainGroup::mul(q) : GainGroup::add(q));
    std::vector<GMatrix> mats;
    for (const auto& gg : all) mats.push_back(frame ? frame_matrix(gg).matrix : lift_matrix(gg).matrix);
    run.add("realizations", static_cast<long long>(all.size()));
    for (size_t i = 0; i < all.size(); ++i)
        for (size_t j = i + 1; j < all.size(); ++j) {
            bool proj = projectively_equivalent(mats[i], mats[j]).has_value();
            bool sw = frame ? switching_equivalent(all[i], all[j]).has_value()
                            : switching_scaling_equivalent(all[i], all[j]).has_value();
            run.add("pairs");
            if (proj) run.add("equivalent_pairs");
            if (proj != sw) {
                json w = witness(all[i], all[j]);
                w["projective"] = proj;
                w["switching"] = sw;
                run.fail("projective equivalence disagrees with gain equivalence", w);
            }
        }
}

void biconditional_family(Run& run, const std::vector<NamedBiasedGraph>& family, const std::vector<int>& qs,
                          std::initializer_list<Pairing> modes) {
    for (int q : qs)
        for (const auto& nb : family)
            for (Pairing p : modes) biconditional(run, nb, q, p);
}

// ---- all representations canonical -----------------------------------------

struct AllRepsCheck {
    bool need_frame_and_lift = false;  // every class must canonicalize both ways
    bool lift_direct = false;          // the lift form must not need rolling
};

void all_reps(Run& run, const NamedBiasedGraph& nb, MatroidKind mk, int q, AllRepsCheck how = {}) {
    const BiasedGraph& bg = nb.graph;
    Matroid m = biased_matroid(bg, mk);
    const bool frame_ok = matroids_equal(m, frame_matroid(bg));
    const bool lift_ok = matroids_equal(m, lift_matroid(bg));
    auto reps = enumerate_representations(m, q);
    size_t expected = 0;
    if (frame_ok) expected += realizations(bg, GainGroup::mul(q)).size();
    if (lift_ok) expected += scaling_classes(realizations(bg, GainGroup::add(q))).size();
    run.add("classes", static_cast<long long>(reps.size()));
    json where{{"graph", nb.name}, {"q", q}, {"matroid", to_string(mk)}};
    if (!how.need_frame_and_lift && reps.size() != expected) {
        json w = where;
        w["classes"] = reps.size();
        w["gain_classes"] = expected;
        run.fail("class count differs from the number of gain classes", w);
    }
    for (const auto& rep : reps) {
        bool any = false;
        int kinds_found = 0, kinds_possible = 0;
        for (auto kind : {CanonicalKind::Frame, CanonicalKind::Lift}) {
            if (!(kind == CanonicalKind::Frame ? frame_ok : lift_ok)) continue;
            ++kinds_possible;
            auto res = canonicalize_representation(rep.matrix, bg, kind);
            if (res.status == CanonStatus::Undecided) {
                run.undecided("canonicalization budget exhausted on " + nb.name);
                continue;
            }
            if (res.status != CanonStatus::Found) continue;
            if (!check_witness(rep.matrix, res.form->matrix, *res.witness)) {
                json w = where;
                w["matrix"] = to_json(rep.matrix);
                run.fail("canonicalization witness does not verify", w);
            }
            if (kind == CanonicalKind::Lift && how.lift_direct && !res.operations.empty()) continue;
            any = true;
            ++kinds_found;
            if (!res.operations.empty()) run.add("found_after_rolling");
            run.add(kind == CanonicalKind::Frame ? "frame_canonical" : "lift_canonical");
        }
        const bool ok = how.need_frame_and_lift ? kinds_found == kinds_possible : any;
        if (!ok) {
            json w = where;
            w["matrix"] = to_json(rep.matrix);
            run.fail("representation is not canonical", w);
        }
    }
}

// ---- random gain graphs ------------------------------------------------------

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

void check_same(Run& run, const Matroid& a, const Matroid& b, const GainGraph& gg, const std::string& what) {
    run.add("matroid_checks");
    if (auto d = matroid_difference(a, b)) {
        json w{{"gain_graph", to_json(gg)}, {"subset", a.names(d->subset)}, {"matrix_rank", d->rank1},
               {"oracle_rank", d->rank2}};
        run.fail(what, w);
    }
}

// ---- link minor enumeration --------------------------------------------------

struct Recipe {
    EdgeSet contract = 0;
    EdgeSet del = 0;
};

// Link minors of bg isomorphic (up to isolated vertices) to a member of
// `targets`, found by contracting forests of links and deleting the rest.
std::vector<Recipe> link_minor_recipes(const BiasedGraph& bg, const std::vector<BiasedGraph>& targets) {
    const MultiGraph& g = bg.graph();
    std::vector<Recipe> out;
    std::vector<int> sizes;
    for (const auto& t : targets) sizes.push_back(t.graph().num_edges());
    std::sort(sizes.begin(), sizes.end());
    sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
    const EdgeSet all = g.all_edges();
    for (EdgeSet c = 0;; c = (c - all) & all) {
        if (!(c & g.loops()) && is_acyclic(g, c)) {
            const EdgeSet rest = all & ~c;
            for (EdgeSet keep = rest;; keep = (keep - 1) & rest) {
                if (std::binary_search(sizes.begin(), sizes.end(), popcount(keep))) {
                    auto minor = biased_minor(bg, c, rest & ~keep);
                    if (minor.link_minor) {
                        BiasedGraph clean = drop_isolated(minor.result);
                        for (const auto& t : targets)
                            if (t.graph().num_edges() == popcount(keep) && isomorphic(clean, t)) {
                                out.push_back({c, rest & ~keep});
                                break;
                            }
                    }
                }
                if (!keep) break;
            }
        }
        if (c == all) break;
    }
    return out;
}

std::vector<BiasedGraph> base_graph_list() {
    std::vector<BiasedGraph> out;
    for (const auto& b : base_graphs()) out.push_back(b.graph);
    return out;
}

bool has_contrabalanced_theta(const BiasedGraph& bg) {
    const auto& cyc = bg.cycles();
    for (size_t i = 0; i < cyc.size(); ++i)
        for (size_t j = i + 1; j < cyc.size(); ++j)
            if (forms_theta(bg.graph(), cyc[i], cyc[j]) && !bg.is_balanced_cycle(cyc[i]) &&
                !bg.is_balanced_cycle(cyc[j]) && !bg.is_balanced_cycle(cyc[i] ^ cyc[j]))
                return true;
    return false;
}

// Every bias class on the small multigraphs that passes `keep`.
std::vector<BiasedGraph> small_biased_graphs(int max_v, int max_e, const std::function<bool(const MultiGraph&)>& graph_ok,
                                             const std::function<bool(const BiasedGraph&)>& keep) {
    std::vector<BiasedGraph> out;
    for (const auto& g : small_multigraphs(max_v, max_e)) {
        if (!graph_ok(g)) continue;
        for (auto& bg : bias_classes(g))
            if (keep(bg)) out.push_back(std::move(bg));
    }
    return out;
}

std::vector<EdgeSet> link_forests(const MultiGraph& g) {
    std::vector<EdgeSet> out;
    const EdgeSet links = g.links();
    for (EdgeSet c = 0;; c = (c - links) & links) {
        if (is_acyclic(g, c)) out.push_back(c);
        if (c == links) break;
    }
    return out;
}

// All gain functions on g normalized on a maximal forest.
std::vector<GainGraph> all_normalized_gains(const MultiGraph& g, const GainGroup& grp) {
    const EdgeSet f = spanning_forest(g);
    auto free_edges = bits_of(g.all_edges() & ~f);
    auto elems = grp.elements();
    std::vector<GainGraph> out;
    std::vector<size_t> idx(free_edges.size(), 0);
    while (true) {
        std::vector<int> gain(g.num_edges(), grp.identity());
        for (size_t k = 0; k < free_edges.size(); ++k) gain[free_edges[k]] = elems[idx[k]];
        out.emplace_back(g, grp, gain);
        size_t k = 0;
        while (k < idx.size() && ++idx[k] == elems.size()) idx[k++] = 0;
        if (k == idx.size()) break;
    }
    return out;
}

// ---- the claims ----------------------------------------------------------------

using ClaimFn = std::function<void(Run&, const VerifyOptions&)>;

struct Claim {
    ClaimInfo info;
    ClaimFn run;
};

void count_claim(Run& run, const std::vector<NamedBiasedGraph>& got, size_t want, const std::string& what) {
    run.set("count", got.size());
    json names = json::array();
    for (const auto& n : got) names.push_back(n.name);
    run.set("names", names);
    if (got.size() != want) run.fail(what + " count differs", {{"expected", want}, {"found", got.size()}});
}

void claim_base_count(Run& run, const VerifyOptions&) {
    count_claim(run, base_graphs(), 13, "base graph");
    auto prop = [](const BiasedGraph& bg) {
        return is_vertically_k_connected(bg.graph(), 2) &&
               classify_balance(drop_isolated(bg)).tag == BalanceTag::ProperlyUnbalanced;
    };
    for (const auto& b : base_graphs()) {
        if (!prop(b.graph)) run.fail("base graph lacks the defining property", {{"graph", b.name}});
        for (int e = 0; e < b.graph.graph().num_edges(); ++e) {
            run.add("single_edge_minors", 2);
            if (prop(biased_minor(b.graph, 0, bit(e)).result) || prop(biased_minor(b.graph, bit(e), 0).result))
                run.fail("base graph is not minimal", {{"graph", b.name}, {"edge", b.graph.graph().edge(e).name}});
        }
    }
}

void claim_canonical(Run& run, const VerifyOptions& o, bool frame) {
    std::mt19937_64 rng(o.seed);
    const int n = samples_or(o, 200);
    for (int q : fields_or(o, {5})) {
        GainGroup grp = frame ? GainGroup::mul(q) : GainGroup::add(q);
        for (int s = 0; s < n; ++s) {
            GainGraph gg = random_gain_graph(rng, grp);
            BiasedGraph bg = induced_bias(gg);
            run.add("samples");
            if (frame) {
                check_same(run, vector_matroid(frame_matrix(gg).matrix), frame_matroid(bg), gg,
                           "frame matrix does not represent the frame matroid");
            } else {
                check_same(run, vector_matroid(lift_matrix(gg).matrix), lift_matroid(bg), gg,
                           "lift matrix does not represent the lift matroid");
                check_same(run, vector_matroid(complete_lift_matrix(gg).matrix), complete_lift(bg), gg,
                           "complete lift matrix does not represent the complete lift");
            }
        }
    }
}

void claim_u2(Run& run, const VerifyOptions& o) {
    const BiasedGraph bg = u2().graph;
    for (int q : fields_or(o, {2, 3, 4, 5})) {
        GainGroup grp = GainGroup::mul(q);
        auto all = realizations(bg, grp);
        run.add("realizations", static_cast<long long>(all.size()));
        for (const auto& a : all)
            for (const auto& b : all) {
                bool proj = projectively_equivalent(frame_matrix(a).matrix, frame_matrix(b).matrix).has_value();
                bool same = grp.compose(a.gain[2], a.gain[3]) == grp.compose(b.gain[2], b.gain[3]);
                run.add("pairs");
                if (proj != same)
                    run.fail("U2 criterion fails", {{"q", q}, {"phi", to_json(a)}, {"psi", to_json(b)}, {"projective", proj}});
            }
    }
}

void claim_u3(Run& run, const VerifyOptions& o) {
    const BiasedGraph bg = u3().graph;
    for (int q : fields_or(o, {3, 4, 5})) {
        auto all = realizations(bg, GainGroup::add(q));
        run.add("realizations", static_cast<long long>(all.size()));
        for (const auto& a : all)
            for (const auto& b : all) {
                bool proj = projectively_equivalent(lift_matrix(a).matrix, lift_matrix(b).matrix).has_value();
                auto ra = induced_gain(a, 0, bit(0)).gains, rb = induced_gain(b, 0, bit(0)).gains;
                bool eq = switching_scaling_equivalent(ra, rb).has_value();
                run.add("pairs");
                if (proj != eq)
                    run.fail("U3 criterion fails", {{"q", q}, {"phi", to_json(a)}, {"psi", to_json(b)}, {"projective", proj}});
            }
    }
}

void claim_tangled_minor(Run& run, const VerifyOptions&) {
    for (const auto& bg : tangled_family(5, 8)) {
        run.add("tangled");
        if (!find_tangled_minor(bg)) run.fail("no K4 or 2C3 link minor", {{"graph", to_json(bg)}});
    }
}

std::vector<BiasedGraph> subdivision_targets() {
    std::vector<BiasedGraph> t = base_graph_list();
    for (int i = 1; i <= 3; ++i) t.push_back(t2_prime_split(i).graph);
    return t;
}

void claim_tangled_subgraph(Run& run, const VerifyOptions&) {
    auto targets = subdivision_targets();
    for (const auto& bg : tangled_family(5, 8)) {
        if (!is_vertically_k_connected(bg.graph(), 2)) continue;
        run.add("vertically_2_connected_tangled");
        bool found = false;
        for (const auto& t : targets)
            if (t.graph().num_vertices() <= bg.graph().num_vertices() && find_biased_subdivision(bg, t)) {
                found = true;
                break;
            }
        if (!found) run.fail("no subdivision of a base graph or a T'_2 split", {{"graph", to_json(bg)}});
    }
    // Properly unbalanced graphs that are not tangled, on a smaller family.
    auto others = small_biased_graphs(
        4, 7, [](const MultiGraph& g) { return is_vertically_k_connected(g, 2); },
        [](const BiasedGraph& bg) {
            return classify_balance(bg).tag == BalanceTag::ProperlyUnbalanced && !is_tangled(bg);
        });
    for (const auto& bg : others) {
        run.add("untangled_properly_unbalanced");
        bool found = false;
        for (const auto& t : targets)
            if (t.graph().num_vertices() <= bg.graph().num_vertices() && find_biased_subdivision(bg, t)) {
                found = true;
                break;
            }
        if (!found) run.fail("no subdivision of a base graph", {{"graph", to_json(bg)}});
    }
}

void claim_inequivalence_localized(Run& run, const VerifyOptions& o) {
    auto targets = base_graph_list();
    std::vector<BiasedGraph> family;
    for (const auto& bg : tangled_family(5, 7))
        if (is_vertically_k_connected(bg.graph(), 2)) family.push_back(bg);
    std::vector<GainGroup> groups;
    for (int q : fields_or(o, {3, 4})) {
        groups.push_back(GainGroup::mul(q));
        groups.push_back(GainGroup::add(q));
    }
    for (const auto& bg : family) {
        std::vector<Recipe> recipes;
        bool computed = false;
        for (const auto& grp : groups) {
            auto all = realizations(bg, grp);
            if (all.size() < 2) continue;
            if (!computed) {
                recipes = link_minor_recipes(bg, targets);
                computed = true;
            }
            const bool scaled = grp.has_scaling();
            std::vector<std::vector<GainGraph>> restricted(all.size());
            for (size_t i = 0; i < all.size(); ++i)
                for (const auto& r : recipes) restricted[i].push_back(induced_gain(all[i], r.contract, r.del).gains);
            for (size_t i = 0; i < all.size(); ++i)
                for (size_t j = i + 1; j < all.size(); ++j) {
                    if (scaled && switching_scaling_equivalent(all[i], all[j])) continue;
                    run.add("inequivalent_pairs");
                    bool localized = false;
                    for (size_t k = 0; k < recipes.size() && !localized; ++k)
                        localized = scaled ? !switching_scaling_equivalent(restricted[i][k], restricted[j][k])
                                           : !switching_equivalent(restricted[i][k], restricted[j][k]);
                    if (!localized)
                        run.fail("inequivalence is not visible on a base-graph link minor",
                                 {{"graph", to_json(bg)}, {"phi", to_json(all[i])}, {"psi", to_json(all[j])}});
                }
        }
        run.add("graphs");
    }
}

void claim_tangled_no_extend(Run& run, const VerifyOptions& o) {
    std::vector<NamedBiasedGraph> bases = k4_proper();
    for (const auto& t : classify_2c3_proper()) bases.push_back(t);
    for (int q : fields_or(o, {3, 4, 5})) {
        GFField f(q);
        for (const auto& nb : bases) {
            const BiasedGraph& bg = nb.graph;
            if (!matroids_equal(frame_matroid(bg), lift_matroid(bg))) continue;
            for (int v = 0; v < bg.graph().num_vertices(); ++v) {
                MultiGraph g = bg.graph();
                int l = g.add_edge(v, v, "l");
                BiasedGraph with_joint(g, bg.balanced());
                Matroid lift_target = lift_matroid(with_joint), frame_target = frame_matroid(with_joint);
                // Part 1: frame matrices never extend to L(Omega); part 2: lift
                // matrices never extend to F(Omega).
                for (int part = 1; part <= 2; ++part) {
                    const bool frame = part == 1;
                    auto all = realizations(bg, frame ? GainGroup::mul(q) : GainGroup::add(q));
                    for (const auto& gg : all) {
                        GMatrix a = frame ? frame_matrix(gg).matrix : lift_matrix(gg).matrix;
                        const int r = a.rows();
                        long long total = 1;
                        for (int i = 0; i < r; ++i) total *= q;
                        run.add(frame ? "frame_matrices" : "lift_matrices");
                        for (long long code = 1; code < total; ++code) {
                            // One column per projective point: the leading nonzero entry is 1.
                            std::vector<int> col(r);
                            long long c = code;
                            for (int i = 0; i < r; ++i, c /= q) col[i] = static_cast<int>(c % q);
                            auto lead = std::find_if(col.rbegin(), col.rend(), [](int x) { return x != 0; });
                            if (*lead != 1) continue;
                            GMatrix ext(f, r, a.cols() + 1);
                            for (int i = 0; i < r; ++i) {
                                for (int j = 0; j < a.cols(); ++j) ext.at(i, j) = a.at(i, j);
                                ext.at(i, l) = col[i];
                            }
                            const Matroid& target = frame ? lift_target : frame_target;
                            bool agrees = true;
                            for (EdgeSet sub = 0; agrees && sub < bit(l); ++sub)
                                agrees = matrix_rank(ext.columns(bits_of(sub | bit(l)))) == target.rank(sub | bit(l));
                            run.add("extensions_tried");
                            if (agrees) {
                                auto labels = a.col_labels();
                                labels.push_back("l");
                                ext.set_col_labels(labels);
                                run.fail("canonical matrix extends across the joint",
                                         {{"graph", nb.name}, {"q", q}, {"matrix", to_json(ext)}});
                            }
                        }
                    }
                }
            }
        }
    }
}

void claim_unique_balancing_subdivision(Run& run, const VerifyOptions&) {
    std::vector<BiasedGraph> targets{find_named("D_{1,0}")->graph};
    for (const auto& b : contracted_tubes()) targets.push_back(b.graph);
    auto family = small_biased_graphs(
        5, 7, [](const MultiGraph& g) { return is_vertically_k_connected(g, 2); },
        [](const BiasedGraph& bg) {
            return popcount(classify_balance(bg).balancing_vertices) == 1 && has_contrabalanced_theta(bg);
        });
    for (const auto& bg : family) {
        run.add("graphs");
        bool found = false;
        for (const auto& t : targets)
            if (find_biased_subdivision(bg, t)) {
                found = true;
                break;
            }
        if (!found) run.fail("no subdivision of D_{1,0} or a contracted tube", {{"graph", to_json(bg)}});
    }
}

void claim_main3_roundtrip(Run& run, const VerifyOptions& o) {
    std::mt19937_64 rng(o.seed);
    const int n = samples_or(o, 100);
    auto family = named_list({"B_0", "D_{0,2}", "T_0"});
    for (int q : fields_or(o, {5})) {
        GFField f(q);
        std::uniform_int_distribution<int> any(0, q - 1), unit(1, q - 1);
        for (int s = 0; s < n; ++s) {
            const auto& nb = family[s % family.size()];
            const bool frame = (s / family.size()) % 2 == 0;
            auto all = realizations(nb.graph, frame ? GainGroup::mul(q) : GainGroup::add(q));
            if (all.empty()) {
                run.add("unrealizable_samples");
                continue;
            }
            std::uniform_int_distribution<size_t> pick(0, all.size() - 1);
            const GainGraph& gg = all[pick(rng)];
            GMatrix a = frame ? frame_matrix(gg).matrix : lift_matrix(gg).matrix;
            GMatrix t(f, a.rows(), a.rows());
            do {
                for (int i = 0; i < a.rows(); ++i)
                    for (int j = 0; j < a.rows(); ++j) t.at(i, j) = any(rng);
            } while (matrix_rank(t) != a.rows());
            std::vector<int> d;
            for (int j = 0; j < a.cols(); ++j) d.push_back(unit(rng));
            GMatrix scrambled = t * a * GMatrix::diagonal(f, d);
            scrambled.set_col_labels(a.col_labels());
            auto res = canonicalize_representation(scrambled, nb.graph);
            run.add("samples");
            json w{{"graph", nb.name}, {"q", q}, {"gains", to_json(gg)}, {"matrix", to_json(scrambled)}};
            if (res.status == CanonStatus::Undecided) {
                run.undecided("canonicalization budget exhausted");
                continue;
            }
            if (res.status != CanonStatus::Found) {
                run.fail("scrambled matrix not recognized as canonical", w);
                continue;
            }
            const auto want = frame ? CanonicalKind::Frame : CanonicalKind::Lift;
            bool gains_ok = frame ? switching_equivalent(res.form->gains, gg).has_value()
                                  : switching_scaling_equivalent(res.form->gains, gg).has_value();
            if (res.form->kind != want || !gains_ok || !res.operations.empty() ||
                !check_witness(scrambled, res.form->matrix, *res.witness))
                run.fail("recovered form differs from the original", w);
            else
                run.add("recovered");
        }
    }
}

std::vector<NamedBiasedGraph> almost_balanced_samples() {
    std::vector<NamedBiasedGraph> all{*find_named("D_{1,0}"), u2(), u3()};
    for (const auto& b : contracted_tubes()) all.push_back(b);
    all.push_back({"fat theta 2,2,2", fat_theta_of_paths({2, 2, 2}), "three paths of length two"});
    all.push_back({"fat theta 1,2,2", fat_theta_of_paths({1, 2, 2}), "a link and two paths of length two"});
    std::vector<NamedBiasedGraph> out;
    for (auto& nb : all)
        if (classify_balance(nb.graph).tag == BalanceTag::AlmostBalanced) out.push_back(std::move(nb));
    return out;
}

// GF(2) is left out by default: its multiplicative group is trivial, so no
// gain graph over it has an unbalanced loop, and the joints created by a
// roll-up cannot be realized.  Passing --q 2 reproduces the failure on B_2'.
void claim_main4(Run& run, const VerifyOptions& o) {
    BoundsScope scope([](Bounds& b) { b.enum_rank = std::max(b.enum_rank, 5); });
    for (int q : fields_or(o, {3, 4, 5}))
        for (const auto& nb : almost_balanced_samples())
            for (auto mk : {MatroidKind::Frame, MatroidKind::Lift})
                all_reps(run, nb, mk, q, {true, false});
}

void claim_contraction_inequiv(Run& run, const VerifyOptions&) {
    std::vector<GainGroup> groups{GainGroup::mul(3), GainGroup::mul(4), GainGroup::add(4), GainGroup::zn(3)};
    for (const auto& g : {complete_graph(4), double_triangle(), tube_graph()}) {
        auto forests = link_forests(g);
        for (const auto& grp : groups) {
            auto all = all_normalized_gains(g, grp);
            for (size_t i = 0; i < all.size(); ++i)
                for (size_t j = i + 1; j < all.size(); ++j) {
                    run.add("inequivalent_pairs");
                    for (EdgeSet f : forests) {
                        auto a = induced_gain(all[i], f, 0).gains, b = induced_gain(all[j], f, 0).gains;
                        run.add("contractions");
                        if (switching_equivalent(a, b))
                            run.fail("contraction made inequivalent gains equivalent",
                                     {{"phi", to_json(all[i])}, {"psi", to_json(all[j])}, {"forest", g.edge_names(f)}});
                    }
                }
        }
    }
}

std::vector<BiasedGraph> delta_family() {
    std::vector<BiasedGraph> out;
    for (const auto& g : {complete_graph(4), double_triangle()})
        for (auto& bg : bias_classes(g)) out.push_back(bg);
    return out;
}

void claim_deltawye_matroid(Run& run, const VerifyOptions&) {
    for (const auto& bg : delta_family()) {
        const MultiGraph& g = bg.graph();
        Matroid f = frame_matroid(bg), l0 = complete_lift(bg);
        for (EdgeSet x : bg.balanced()) {
            if (!is_triangle(g, x)) continue;
            auto d = delta_y(bg, x);
            run.add("triangles");
            if (!matroids_equal(frame_matroid(d), delta_y_matroid(f, x)) ||
                !matroids_equal(complete_lift(d), delta_y_matroid(l0, x)))
                run.fail("Delta-Y does not commute with the matroid", {{"graph", to_json(bg)}, {"x", g.edge_names(x)}});
        }
        for (int v = 0; v < g.num_vertices(); ++v) {
            EdgeSet y = g.incident(v);
            if (claw_center(g, y) != v) continue;
            auto n = y_delta(bg, y);
            for (auto [m, mm, name] : {std::tuple{f, frame_matroid(n), "frame"}, std::tuple{l0, complete_lift(n), "lift0"}}) {
                if (m.rank(m.ground() & ~y) != m.rank() - 1) continue;  // y is not a triad
                bool triad = true;
                for (int e : bits_of(y)) triad = triad && m.rank((m.ground() & ~y) | bit(e)) == m.rank();
                if (!triad) continue;
                run.add("triads");
                if (!matroids_equal(mm, y_delta_matroid(m, y)))
                    run.fail(std::string("Y-Delta does not commute with the ") + name + " matroid",
                             {{"graph", to_json(bg)}, {"y", g.edge_names(y)}});
            }
        }
    }
}

void claim_deltawye_gains(Run& run, const VerifyOptions& o) {
    std::vector<GainGroup> groups{GainGroup::zn(3)};
    for (int q : fields_or(o, {3, 4, 5})) {
        groups.push_back(GainGroup::mul(q));
        groups.push_back(GainGroup::add(q));
    }
    for (const auto& bg : delta_family()) {
        const MultiGraph& g = bg.graph();
        for (EdgeSet x : bg.balanced()) {
            if (!is_triangle(g, x)) continue;
            auto d = delta_y(bg, x);
            EdgeSet fd = spanning_forest(d.graph(), d.graph().all_edges(), x);
            EdgeSet fg = fd & ~bit(lowest(x));
            for (const auto& grp : groups) {
                auto before = normalized_realizations(bg, grp, fg);
                auto after = normalized_realizations(d, grp, fd);
                run.add("cases");
                bool same = before.size() == after.size();
                for (size_t k = 0; same && k < before.size(); ++k) same = before[k].gain == after[k].gain;
                if (!same)
                    run.fail("realizations do not correspond",
                             {{"graph", to_json(bg)}, {"group", grp.describe()}, {"before", before.size()}, {"after", after.size()}});
                else
                    run.add("realizations", static_cast<long long>(before.size()));
            }
        }
    }
}

void claim_rollup_frame(Run& run, const VerifyOptions&) {
    std::vector<BiasedGraph> family;
    for (const auto& nb : almost_balanced_samples()) family.push_back(nb.graph);
    for (auto& bg : small_biased_graphs(
             4, 6, [](const MultiGraph&) { return true; },
             [](const BiasedGraph& b) { return classify_balance(b).tag == BalanceTag::AlmostBalanced; }))
        family.push_back(std::move(bg));
    for (const auto& bg : family) {
        Matroid f = frame_matroid(bg);
        for_each_bit(classify_balance(bg).balancing_vertices, [&](int u) {
            auto part = unbalancing_classes(bg, u);
            std::vector<std::pair<BiasedGraph, std::string>> variants;
            if (part.joints_away) {
                variants.emplace_back(unroll(bg, u), "unroll");
            } else {
                for (EdgeSet c : part.classes)
                    if (!(c & bg.joints())) variants.emplace_back(roll_up(bg, u, c), "roll-up");
            }
            for (const auto& [v, op] : variants) {
                run.add(op);
                if (!matroids_equal(frame_matroid(v), f))
                    run.fail(op + " changed the frame matroid", {{"graph", to_json(bg)}, {"vertex", bg.graph().vertex_name(u)}});
            }
        });
        try {
            auto ft = fat_theta_structure(bg);
            const int m = static_cast<int>(ft.parts.size());
            for (int i = 0; m >= 3 && i < m; ++i)
                for (int j = 0; j < m; ++j) {
                    if (i == j) continue;
                    run.add("double roll-up");
                    if (!matroids_equal(frame_matroid(double_roll_up(bg, i, j)), f))
                        run.fail("double roll-up changed the frame matroid", {{"graph", to_json(bg)}});
                }
        } catch (const StructureMissing&) {
        }
    }
}

void claim_subdivision_classes(Run& run, const VerifyOptions& o) {
    BoundsScope scope([](Bounds& b) { b.enum_rank = std::max(b.enum_rank, 5); });
    for (int q : fields_or(o, {4}))
        for (const auto& nb : base_graphs())
            for (int e = 0; e < nb.graph.graph().num_edges(); ++e) {
                BiasedGraph sub = subdivide_edge(nb.graph, e, "s");
                for (auto mk : {MatroidKind::Frame, MatroidKind::Lift}) {
                    auto a = enumerate_representations(biased_matroid(nb.graph, mk), q).size();
                    auto b = enumerate_representations(biased_matroid(sub, mk), q).size();
                    run.add("comparisons");
                    if (a != b)
                        run.fail("subdivision changed the class count", {{"graph", nb.name},
                                                                         {"edge", nb.graph.graph().edge(e).name},
                                                                         {"matroid", to_string(mk)},
                                                                         {"before", a},
                                                                         {"after", b}});
                }
            }
}

const std::vector<Claim>& registry() {
    static const std::vector<Claim> table = [] {
        std::vector<Claim> c;
        auto add = [&](std::string id, std::string d, ClaimFn f) { c.push_back({{std::move(id), std::move(d)}, std::move(f)}); };
        add("seven-dwarves", "biased K4s up to isomorphism: 7",
            [](Run& r, const VerifyOptions&) { count_claim(r, classify_k4(), 7, "biased K4"); });
        add("2c3-proper-count", "biased 2C3s without a balanced 2-cycle: 6",
            [](Run& r, const VerifyOptions&) { count_claim(r, classify_2c3_proper(), 6, "proper 2C3"); });
        add("tube-count", "tubes without a balanced 2-cycle: 3",
            [](Run& r, const VerifyOptions&) { count_claim(r, classify_tube_proper(), 3, "tube"); });
        add("base-count", "13 base graphs, each minimal under single-edge link minors", claim_base_count);
        add("canonical-frame", "frame matrices of random gain graphs represent the frame matroid",
            [](Run& r, const VerifyOptions& o) { claim_canonical(r, o, true); });
        add("canonical-lift", "lift and complete lift matrices of random gain graphs represent L and L0",
            [](Run& r, const VerifyOptions& o) { claim_canonical(r, o, false); });
        auto lemma = [&](const std::string& id, const std::string& what, auto family, Pairing p) {
            add(id, what, [family, p](Run& r, const VerifyOptions& o) {
                biconditional_family(r, family(), fields_or(o, {2, 3, 4, 5}), {p});
            });
        };
        auto twoc3 = [] { return classify_2c3_proper(); };
        auto tubes = [] { return classify_tube_proper(); };
        lemma("lemma-2c3-frame", "proper 2C3: frame matrices equivalent iff gains switching equivalent", twoc3, Pairing::Frame);
        lemma("lemma-2c3-lift", "proper 2C3: lift matrices equivalent iff gains switching-and-scaling equivalent", twoc3,
              Pairing::Lift);
        lemma("lemma-2c3-frame-vs-lift", "proper 2C3: no frame matrix is equivalent to a lift matrix", twoc3, Pairing::Cross);
        lemma("lemma-k4-frame", "proper K4: frame matrices equivalent iff switching equivalent", k4_proper, Pairing::Frame);
        lemma("lemma-k4-lift", "proper K4: lift matrices equivalent iff switching-and-scaling equivalent", k4_proper,
              Pairing::Lift);
        lemma("lemma-k4-frame-vs-lift", "proper K4: no frame matrix is equivalent to a lift matrix", k4_proper, Pairing::Cross);
        lemma("lemma-tube-frame", "tubes: frame matrices equivalent iff switching equivalent", tubes, Pairing::Frame);
        lemma("lemma-tube-lift", "tubes: lift matrices equivalent iff switching-and-scaling equivalent", tubes, Pairing::Lift);
        add("u2-criterion", "U2 frame matrices equivalent iff the 2-cycle gains agree", claim_u2);
        add("u3-lift-criterion", "U3 lift matrices equivalent iff the theta gains are switching-and-scaling equivalent",
            claim_u3);
        add("allreps-2c3", "every representation of a proper biased 2C3 is canonical, one class per gain class",
            [](Run& r, const VerifyOptions& o) {
                for (int q : fields_or(o, {2, 3, 4, 5}))
                    for (const auto& nb : classify_2c3_proper()) all_reps(r, nb, MatroidKind::Frame, q);
            });
        add("allreps-t2prime-splits", "every representation of T'_{2,1} and T'_{2,2} is canonical",
            [](Run& r, const VerifyOptions& o) {
                BoundsScope scope([](Bounds& b) { b.enum_rank = std::max(b.enum_rank, 5); });
                for (int q : fields_or(o, {4}))
                    for (int i = 1; i <= 2; ++i) all_reps(r, t2_prime_split(i), MatroidKind::Frame, q);
            });
        add("allreps-k4", "every representation of F and L of a proper biased K4 is canonical",
            [](Run& r, const VerifyOptions& o) {
                for (int q : fields_or(o, {2, 3, 4, 5}))
                    for (const auto& nb : k4_proper())
                        for (auto mk : {MatroidKind::Frame, MatroidKind::Lift}) all_reps(r, nb, mk, q);
            });
        add("allreps-tube-frame", "every representation of the frame matroid of a tube is canonical",
            [](Run& r, const VerifyOptions& o) {
                for (int q : fields_or(o, {2, 3, 4, 5}))
                    for (const auto& nb : classify_tube_proper()) all_reps(r, nb, MatroidKind::Frame, q);
            });
        add("allreps-tube-lift", "every representation of the lift matroid of a tube is canonical",
            [](Run& r, const VerifyOptions& o) {
                for (int q : fields_or(o, {2, 3, 4, 5}))
                    for (const auto& nb : classify_tube_proper()) all_reps(r, nb, MatroidKind::Lift, q);
            });
        add("allreps-contracted-tube",
            "representations of a contracted tube are frame (possibly after a roll-up) and lift canonical",
            [](Run& r, const VerifyOptions& o) {
                for (int q : fields_or(o, {3, 4, 5}))
                    for (const auto& nb : contracted_tubes()) all_reps(r, nb, MatroidKind::Frame, q, {true, true});
            });
        add("tangled-minor", "tangled biased graphs on <= 5 vertices and <= 8 edges have a K4 or 2C3 link minor",
            claim_tangled_minor);
        add("tangled-subgraph",
            "vertically 2-connected properly unbalanced biased graphs contain a subdivision of a base graph or T'_2 split",
            claim_tangled_subgraph);
        add("inequivalence-localized",
            "inequivalent realizations of tangled graphs stay inequivalent on some base-graph link minor",
            claim_inequivalence_localized);
        add("tangled-no-extend", "canonical matrices of proper K4s and 2C3s do not extend across an added joint",
            claim_tangled_no_extend);
        add("unique-balancing-subdivision",
            "a unique balancing vertex and a contrabalanced theta give a subdivision of D_{1,0} or a contracted tube",
            claim_unique_balancing_subdivision);
        add("main2", "projective equivalence matches gain equivalence on the base graphs and T'_2 splits",
            [](Run& r, const VerifyOptions& o) {
                std::vector<NamedBiasedGraph> fam = base_graphs();
                fam.push_back(t2_prime_split(1));
                fam.push_back(t2_prime_split(2));
                biconditional_family(r, fam, fields_or(o, {2, 3, 4, 5}), {Pairing::Frame, Pairing::Lift, Pairing::Cross});
            });
        add("main3-roundtrip", "scrambled canonical matrices of B_0, D_{0,2} and T_0 are recovered", claim_main3_roundtrip);
        add("main4-samples", "representations of almost balanced samples are frame and lift canonical up to rolling",
            claim_main4);
        add("contraction-inequiv", "contracting a forest keeps inequivalent gain functions inequivalent",
            claim_contraction_inequiv);
        add("deltawye-matroid", "Delta-Y and Y-Delta commute with F and L0", claim_deltawye_matroid);
        add("deltawye-gains", "realizations before and after Delta-Y correspond", claim_deltawye_gains);
        add("rollup-frame", "rolling and unrolling preserve the frame matroid", claim_rollup_frame);
        add("subdivision-classes", "subdividing an edge keeps the number of representation classes",
            claim_subdivision_classes);
        return c;
    }();
    return table;
}

}  // namespace

std::string to_string(VerifyStatus s) {
    switch (s) {
        case VerifyStatus::Pass: return "pass";
        case VerifyStatus::Fail: return "fail";
        case VerifyStatus::Undecided: return "undecided";
    }
    return "fail";
}

const std::vector<ClaimInfo>& claims() {
    static const std::vector<ClaimInfo> infos = [] {
        std::vector<ClaimInfo> out;
        for (const auto& c : registry()) out.push_back(c.info);
        return out;
    }();
    return infos;
}

VerifyReport verify(const std::string& id, const VerifyOptions& opts) {
    for (const auto& c : registry()) {
        if (c.info.id != id) continue;
        VerifyReport rep;
        rep.claim = id;
        Run run(rep);
        const auto start = std::chrono::steady_clock::now();
        try {
            c.run(run, opts);
        } catch (const BoundExceeded& e) {
            run.undecided(e.what());
        }
        rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (rep.summary.empty()) rep.summary = c.info.description;
        return rep;
    }
    throw UnknownClaim("no claim named '" + id + "'");
}

json to_json(const VerifyReport& r) {
    return {{"claim", r.claim},   {"status", to_string(r.status)}, {"summary", r.summary},
            {"counts", r.counts}, {"witnesses", r.witnesses},     {"seconds", r.seconds}};
}

}  // namespace bmlab
