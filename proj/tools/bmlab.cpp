// bmlab: command-line front end for biased graphs, gain graphs and their
// frame and lift matrices.
//
// Exit status: 0 pass, 1 fail, 2 usage or input error, 3 undecided (a search
// bound was reached).

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <set>
#include <sstream>

#include "bmlab/catalog.hpp"
#include "bmlab/verify.hpp"

using namespace bmlab;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kUndecided = 3 };

bool g_json = false;

// ---- input loading ----------------------------------------------------------

struct Source {
    std::string text;
    std::filesystem::path dir;
    bool is_json = false;
};

Source load(const std::string& path) {
    Source s;
    s.text = read_text_file(path);
    s.dir = std::filesystem::path(path).parent_path();
    auto first = s.text.find_first_not_of(" \t\r\n");
    s.is_json = first != std::string::npos && s.text[first] == '{';
    return s;
}

json parse_json(const Source& s) {
    try {
        return json::parse(s.text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());
    }
}

// A biased graph from a file, or a catalog entry when no such file exists.
BiasedGraph load_biased(const std::string& arg) {
    if (!std::filesystem::exists(arg)) {
        if (auto named = find_named(arg)) return named->graph;
        throw InvalidArgument("no file or catalog entry named '" + arg + "'");
    }
    Source s = load(arg);
    return s.is_json ? biased_from_json(parse_json(s)) : parse_biased(s.text);
}

BiasDeclaration load_declaration(const std::string& arg) {
    if (!std::filesystem::exists(arg)) {
        if (auto named = find_named(arg)) return {named->graph.graph(), named->graph.balanced()};
        throw InvalidArgument("no file or catalog entry named '" + arg + "'");
    }
    Source s = load(arg);
    return s.is_json ? bias_declaration_from_json(parse_json(s)) : parse_bias_declaration(s.text);
}

GainGraph load_gain_graph(const std::string& arg) {
    Source s = load(arg);
    return s.is_json ? gain_graph_from_json(parse_json(s)) : parse_gain_graph(s.text);
}

AnyMatrix load_matrix(const std::string& arg) {
    Source s = load(arg);
    return s.is_json ? matrix_from_json(parse_json(s)) : parse_matrix(s.text);
}

GMatrix load_finite_matrix(const std::string& arg) {
    AnyMatrix m = load_matrix(arg);
    if (auto* g = std::get_if<GMatrix>(&m)) return *g;
    throw InvalidArgument(arg + ": a matrix over a finite field is required");
}

Matroid load_matroid(const std::string& arg) {
    Source s = load(arg);
    return parse_matroid(s.text, s.dir);
}

EdgeSet edges_arg(const MultiGraph& g, const std::string& list) {
    std::vector<std::string> names;
    std::stringstream in(list);
    std::string tok;
    while (std::getline(in, tok, ','))
        if (!tok.empty()) names.push_back(tok);
    return g.edge_set(names);
}

int vertex_arg(const MultiGraph& g, const std::string& s) {
    if (!s.empty() && std::all_of(s.begin(), s.end(), ::isdigit)) {
        int v = std::stoi(s);
        if (v < 1 || v > g.num_vertices()) throw InvalidArgument("vertex " + s + " out of range");
        return v - 1;
    }
    return g.vertex_index(s);
}

std::string join(const std::vector<std::string>& xs, const std::string& sep = ",") {
    std::string out;
    for (const auto& x : xs) out += (out.empty() ? "" : sep) + x;
    return out;
}

void emit(const json& j, const std::string& text) {
    if (g_json)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

std::string witness_text(const ProjWitness<GFField>& w) {
    std::string s = "T =\n" + format_matrix(w.t) + "S = diag(";
    for (size_t i = 0; i < w.s.size(); ++i) s += (i ? " " : "") + std::to_string(w.s[i]);
    return s + ")\n";
}

// ---- subcommands -------------------------------------------------------------

int cmd_catalog(const std::vector<std::string>& names, bool all) {
    std::vector<NamedBiasedGraph> entries;
    if (names.empty()) {
        entries = all_named();
    } else {
        for (const auto& n : names) {
            auto f = find_named(n);
            if (!f) throw InvalidArgument("no catalog entry named '" + n + "'");
            entries.push_back(*f);
        }
    }
    const bool full = all || !names.empty();
    json j = json::array();
    std::string text;
    for (const auto& e : entries) {
        json item{{"name", e.name}, {"note", e.note}};
        if (full) item["graph"] = to_json(e.graph);
        j.push_back(item);
        if (full)
            text += "# " + e.name + ": " + e.note + "\n" + format_biased(e.graph) + "\n";
        else
            text += e.name + "\t" + e.note + "\n";
    }
    emit(j, text);
    return kPass;
}

int cmd_check_theta(const std::string& file) {
    auto d = load_declaration(file);
    auto w = check_theta_property(d.graph, d.balanced);
    json j{{"theta_property", !w.has_value()}};
    std::string text = "theta property holds\n";
    if (w) {
        j["witness"] = {{"theta", edge_names_json(d.graph, w->theta)},
                        {"balanced", {edge_names_json(d.graph, w->balanced1), edge_names_json(d.graph, w->balanced2)}},
                        {"unbalanced", edge_names_json(d.graph, w->unbalanced)}};
        text = "theta property fails: cycles {" + join(d.graph.edge_names(w->balanced1)) + "} and {" +
               join(d.graph.edge_names(w->balanced2)) + "} are balanced but {" +
               join(d.graph.edge_names(w->unbalanced)) + "} is not\n";
    }
    emit(j, text);
    return w ? kFail : kPass;
}

int cmd_classify(const std::string& file) {
    BiasedGraph bg = load_biased(file);
    const MultiGraph& g = bg.graph();
    auto cls = classify_balance(bg);
    std::vector<std::string> bv;
    for_each_bit(cls.balancing_vertices, [&](int v) { bv.push_back(g.vertex_name(v)); });
    const bool tangled = is_tangled(bg);
    const bool v2c = is_vertically_k_connected(g, 2);
    std::optional<std::string> name;
    for (const auto& n : all_named())
        if (isomorphic(n.graph, bg)) name = n.name;
    json j{{"balance", to_string(cls.tag)},
           {"balancing_vertices", bv},
           {"joints", edge_names_json(g, bg.joints())},
           {"tangled", tangled},
           {"vertically_2_connected", v2c},
           {"balanced_cycles", bg.balanced().size()},
           {"cycles", bg.cycles().size()},
           {"catalog", name ? json(*name) : json(nullptr)}};
    std::ostringstream t;
    t << "balance: " << to_string(cls.tag) << "\n"
      << "balancing vertices: " << (bv.empty() ? "none" : join(bv)) << "\n"
      << "joints: " << (bg.joints() ? join(g.edge_names(bg.joints())) : "none") << "\n"
      << "tangled: " << (tangled ? "yes" : "no") << "\n"
      << "vertically 2-connected: " << (v2c ? "yes" : "no") << "\n"
      << "balanced cycles: " << bg.balanced().size() << " of " << bg.cycles().size() << "\n";
    if (name) t << "isomorphic to " << *name << "\n";
    emit(j, t.str());
    return kPass;
}

int cmd_rank(const std::string& kind, const std::string& file, const std::string& subset) {
    BiasedGraph bg = load_biased(file);
    Matroid m = biased_matroid(bg, parse_matroid_kind(kind));
    ElementSet s = m.ground();
    if (!subset.empty()) {
        std::vector<std::string> names;
        std::stringstream in(subset);
        std::string tok;
        while (std::getline(in, tok, ','))
            if (!tok.empty()) names.push_back(tok);
        s = m.subset(names);
    }
    const int r = m.rank(s);
    emit(json{{"matroid", kind}, {"subset", m.names(s)}, {"rank", r}}, std::to_string(r) + "\n");
    return kPass;
}

int cmd_matrix(const std::string& kind, const std::string& file) {
    GainGraph gg = load_gain_graph(file);
    CanonicalForm f = canonical_matrix(gg, parse_canonical_kind(kind));
    emit(to_json(f), format_matrix(f.matrix));
    return kPass;
}

int cmd_bias(const std::string& file) {
    BiasedGraph bg = induced_bias(load_gain_graph(file));
    emit(to_json(bg), format_biased(bg));
    return kPass;
}

int cmd_switch_equiv(const std::string& a, const std::string& b, bool scaling) {
    GainGraph phi = load_gain_graph(a), psi = load_gain_graph(b);
    json j;
    std::string text;
    bool ok = false;
    auto eta_json = [&](const SwitchingFunction& eta) {
        json m = json::object();
        for (int v = 0; v < phi.graph.num_vertices(); ++v) m[phi.graph.vertex_name(v)] = eta[v];
        return m;
    };
    auto eta_text = [&](const SwitchingFunction& eta) {
        std::string s;
        for (int v = 0; v < phi.graph.num_vertices(); ++v)
            s += (v ? " " : "") + phi.graph.vertex_name(v) + "=" + std::to_string(eta[v]);
        return s;
    };
    if (scaling) {
        auto w = switching_scaling_equivalent(phi, psi);
        ok = w.has_value();
        j = {{"equivalent", ok}};
        if (w) {
            j["scalar"] = w->scalar;
            j["switching"] = eta_json(w->eta);
            text = "equivalent: scale by " + std::to_string(w->scalar) + ", switch " + eta_text(w->eta) + "\n";
        }
    } else {
        auto w = switching_equivalent(phi, psi);
        ok = w.has_value();
        j = {{"equivalent", ok}};
        if (w) {
            j["switching"] = eta_json(*w);
            text = "equivalent: switch " + eta_text(*w) + "\n";
        }
    }
    if (!ok) text = "not equivalent\n";
    emit(j, text);
    return ok ? kPass : kFail;
}

int cmd_proj_equiv(const std::string& a, const std::string& b) {
    AnyMatrix ma = load_matrix(a), mb = load_matrix(b);
    if (ma.index() != mb.index()) throw InvalidArgument("matrices are over different fields");
    json j;
    std::string text;
    bool ok = std::visit(
        [&](const auto& x) {
            using M = std::decay_t<decltype(x)>;
            const M& y = std::get<M>(mb);
            auto w = projectively_equivalent(x, y);
            j = {{"equivalent", w.has_value()}};
            if (!w) {
                text = "not projectively equivalent\n";
                return false;
            }
            M diag = M::diagonal(x.field(), w->s);
            j["T"] = format_matrix(w->t);
            j["S"] = format_matrix(diag);
            text = "projectively equivalent\nT =\n" + format_matrix(w->t) + "S =\n" + format_matrix(diag);
            return true;
        },
        ma);
    emit(j, text);
    return ok ? kPass : kFail;
}

int cmd_canonicalize(const std::string& mfile, const std::string& bfile, const std::string& kind) {
    GMatrix a = load_finite_matrix(mfile);
    BiasedGraph bg = load_biased(bfile);
    std::optional<CanonicalKind> hint;
    if (!kind.empty()) hint = parse_canonical_kind(kind);
    auto res = canonicalize_representation(a, bg, hint);
    json j{{"status", to_string(res.status)}, {"nodes", res.nodes}};
    std::string text = to_string(res.status) + "\n";
    if (res.form) {
        j["form"] = to_json(*res.form);
        j["witness"] = to_json(*res.witness);
        j["operations"] = res.operations;
        j["graph"] = to_json(res.graph);
        std::vector<std::string> also;
        for (auto k : res.also_found) also.push_back(to_string(k));
        j["also_found"] = also;
        text = std::string("canonical ") + to_string(res.form->kind) + " matrix\n";
        for (const auto& op : res.operations) text += "after " + op + "\n";
        text += format_matrix(res.form->matrix) + "gains\n" + format_gain_graph(res.form->gains) + witness_text(*res.witness);
    }
    emit(j, text);
    switch (res.status) {
        case CanonStatus::Found: return kPass;
        case CanonStatus::NotCanonical: return kFail;
        case CanonStatus::Undecided: return kUndecided;
    }
    return kFail;
}

int cmd_enumerate_reps(const std::string& file, int q, const std::string& bias_file) {
    Matroid m = load_matroid(file);
    std::optional<BiasedGraph> omega;
    if (!bias_file.empty()) omega = load_biased(bias_file);
    auto reps = enumerate_representations(m, q, omega ? &*omega : nullptr);
    json arr = json::array();
    std::ostringstream t;
    t << reps.size() << " projective classes over GF(" << q << ")\n";
    bool undecided = false;
    for (size_t i = 0; i < reps.size(); ++i) {
        json item{{"matrix", to_json(reps[i].matrix)}};
        t << "\nclass " << i + 1 << "\n" << format_matrix(reps[i].matrix);
        for (auto [name, st] : {std::pair{"frame", reps[i].frame}, std::pair{"lift", reps[i].lift}}) {
            if (!st) continue;
            item[name] = to_string(*st);
            undecided = undecided || *st == CanonStatus::Undecided;
            t << name << ": " << to_string(*st) << "\n";
        }
        arr.push_back(item);
    }
    emit(json{{"q", q}, {"count", reps.size()}, {"classes", arr}}, t.str());
    return undecided ? kUndecided : kPass;
}

int cmd_minor(const std::string& file, const std::string& con, const std::string& del) {
    BiasedGraph bg = load_biased(file);
    auto m = biased_minor(bg, edges_arg(bg.graph(), con), edges_arg(bg.graph(), del));
    json j = to_json(m.result);
    j["link_minor"] = m.link_minor;
    emit(j, format_biased(m.result));
    return kPass;
}

int cmd_deltawye(const std::string& file, const std::string& at, bool forward) {
    BiasedGraph bg = load_biased(file);
    EdgeSet s = edges_arg(bg.graph(), at);
    BiasedGraph out = forward ? delta_y(bg, s) : y_delta(bg, s);
    emit(to_json(out), format_biased(out));
    return kPass;
}

int cmd_rollup(const std::string& file, const std::string& vertex, const std::string& cls) {
    BiasedGraph bg = load_biased(file);
    int u = vertex_arg(bg.graph(), vertex);
    std::vector<EdgeSet> classes;
    if (!cls.empty()) {
        classes.push_back(edges_arg(bg.graph(), cls));
    } else {
        auto part = unbalancing_classes(bg, u);
        for (EdgeSet c : part.classes)
            if (!(c & bg.joints())) classes.push_back(c);
    }
    json arr = json::array();
    std::string text;
    for (EdgeSet c : classes) {
        BiasedGraph r = roll_up(bg, u, c);
        arr.push_back({{"class", edge_names_json(bg.graph(), c)}, {"graph", to_json(r)}});
        text += "# roll-up of {" + join(bg.graph().edge_names(c)) + "}\n" + format_biased(r) + "\n";
    }
    emit(arr, text);
    return kPass;
}

int cmd_unroll(const std::string& file, const std::string& vertex) {
    BiasedGraph bg = load_biased(file);
    BiasedGraph r = unroll(bg, vertex_arg(bg.graph(), vertex));
    emit(to_json(r), format_biased(r));
    return kPass;
}

int cmd_verify(const std::vector<std::string>& ids, bool all, bool list, const VerifyOptions& opts) {
    if (list) {
        json arr = json::array();
        std::string text;
        for (const auto& c : claims()) {
            arr.push_back({{"id", c.id}, {"description", c.description}});
            text += c.id + "\t" + c.description + "\n";
        }
        emit(arr, text);
        return kPass;
    }
    std::vector<std::string> run = ids;
    if (all)
        for (const auto& c : claims()) run.push_back(c.id);
    if (run.empty()) throw InvalidArgument("name a claim or pass --all (see --list)");
    json arr = json::array();
    int code = kPass;
    for (const auto& id : run) {
        VerifyReport r = verify(id, opts);
        if (r.status == VerifyStatus::Fail) code = kFail;
        if (r.status == VerifyStatus::Undecided && code == kPass) code = kUndecided;
        if (g_json) {
            arr.push_back(to_json(r));
            continue;
        }
        std::printf("%-30s %-9s %8.3fs  %s\n", id.c_str(), to_string(r.status).c_str(), r.seconds,
                    r.counts.dump().c_str());
        for (const auto& w : r.witnesses) std::printf("    witness: %s\n", w.dump().c_str());
    }
    if (g_json) std::cout << (arr.size() == 1 ? arr[0] : arr).dump(2) << "\n";
    return code;
}

int exit_code_for(const Error& e) {
    static const std::set<std::string> usage{"ParseError",    "InvalidArgument",     "UnknownEdge",
                                             "UnknownClaim",  "ThetaViolation",      "NotACycle",
                                             "GroupMismatch", "ColumnLabelMismatch", "GroundSetMismatch"};
    if (e.kind() == "BoundExceeded") return kUndecided;
    return usage.count(e.kind()) ? kUsage : kFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"biased graphs, gain graphs and their canonical frame and lift matrices"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--json", g_json, "print JSON instead of text");
    std::string bounds_spec;
    app.add_option("--bounds", bounds_spec, "search bounds, e.g. enum_rank=5 (added to BMLAB_BOUNDS)");

    std::string a, b, kind, subset, con, del, at, vertex, cls, bias_file;
    std::vector<std::string> names;
    bool all = false, scaling = false, list = false;
    int q = 0;
    VerifyOptions vopts;
    std::vector<int> fields;
    std::function<int()> action;

    auto* cat = app.add_subcommand("catalog", "list the named biased graphs, or print some of them");
    cat->add_option("names", names, "entries to print");
    cat->add_flag("--all", all, "print every entry in full");
    cat->callback([&] { action = [&] { return cmd_catalog(names, all); }; });

    auto* theta = app.add_subcommand("check-theta", "check the theta property of a declared bias");
    theta->add_option("biased", a, "biased graph file or catalog name")->required();
    theta->callback([&] { action = [&] { return cmd_check_theta(a); }; });

    auto* classify = app.add_subcommand("classify", "balance type, balancing vertices, tangledness");
    classify->add_option("biased", a, "biased graph file or catalog name")->required();
    classify->callback([&] { action = [&] { return cmd_classify(a); }; });

    auto* rank = app.add_subcommand("rank", "rank of a subset in F, L or L0");
    rank->add_option("kind", kind, "frame, lift or lift0")->required()->check(CLI::IsMember({"frame", "lift", "lift0"}));
    rank->add_option("biased", a, "biased graph file or catalog name")->required();
    rank->add_option("subset", subset, "comma separated elements (default: all)");
    rank->callback([&] { action = [&] { return cmd_rank(kind, a, subset); }; });

    auto* matrix = app.add_subcommand("matrix", "canonical frame, lift or complete lift matrix of a gain graph");
    matrix->add_option("kind", kind, "frame, lift or lift0")->required()->check(CLI::IsMember({"frame", "lift", "lift0"}));
    matrix->add_option("gain_graph", a, "gain graph file")->required();
    matrix->callback([&] { action = [&] { return cmd_matrix(kind, a); }; });

    auto* bias = app.add_subcommand("bias", "the bias induced by a gain graph");
    bias->add_option("gain_graph", a, "gain graph file")->required();
    bias->callback([&] { action = [&] { return cmd_bias(a); }; });

    auto* sw = app.add_subcommand("switch-equiv", "are two gain graphs switching equivalent?");
    sw->add_option("phi", a)->required();
    sw->add_option("psi", b)->required();
    sw->add_flag("--scaling", scaling, "also allow scaling (additive groups)");
    sw->callback([&] { action = [&] { return cmd_switch_equiv(a, b, scaling); }; });

    auto* pe = app.add_subcommand("proj-equiv", "are two matrices projectively equivalent?");
    pe->add_option("a", a)->required();
    pe->add_option("b", b)->required();
    pe->callback([&] { action = [&] { return cmd_proj_equiv(a, b); }; });

    auto* canon = app.add_subcommand("canonicalize", "find a canonical form of a representation");
    canon->add_option("matrix", a)->required();
    canon->add_option("biased", b, "biased graph file or catalog name")->required();
    canon->add_option("--kind", kind, "frame, lift or lift0")->check(CLI::IsMember({"frame", "lift", "lift0"}));
    canon->callback([&] { action = [&] { return cmd_canonicalize(a, b, kind); }; });

    auto* reps = app.add_subcommand("enumerate-reps", "all GF(q) representations up to projective equivalence");
    reps->add_option("matroid", a, "matroid file")->required();
    reps->add_option("--q", q, "field order")->required();
    reps->add_option("--bias", bias_file, "classify each class against this biased graph");
    reps->callback([&] { action = [&] { return cmd_enumerate_reps(a, q, bias_file); }; });

    auto* minor = app.add_subcommand("minor", "contract and delete edges");
    minor->add_option("biased", a)->required();
    minor->add_option("--contract", con, "comma separated edges");
    minor->add_option("--delete", del, "comma separated edges");
    minor->callback([&] { action = [&] { return cmd_minor(a, con, del); }; });

    auto* dy = app.add_subcommand("deltawye", "Delta-Y exchange at a balanced triangle");
    dy->add_option("biased", a)->required();
    dy->add_option("--at", at, "the triangle's edges")->required();
    dy->callback([&] { action = [&] { return cmd_deltawye(a, at, true); }; });

    auto* yd = app.add_subcommand("wyedelta", "Y-Delta exchange at a claw");
    yd->add_option("biased", a)->required();
    yd->add_option("--at", at, "the claw's edges")->required();
    yd->callback([&] { action = [&] { return cmd_deltawye(a, at, false); }; });

    auto* ru = app.add_subcommand("rollup", "roll up an unbalancing class at a balancing vertex");
    ru->add_option("biased", a)->required();
    ru->add_option("--vertex", vertex, "balancing vertex (name or 1-based index)")->required();
    ru->add_option("--class", cls, "the class's edges (default: every class)");
    ru->callback([&] { action = [&] { return cmd_rollup(a, vertex, cls); }; });

    auto* ur = app.add_subcommand("unroll", "unroll the joints away from a balancing vertex");
    ur->add_option("biased", a)->required();
    ur->add_option("--vertex", vertex, "balancing vertex (name or 1-based index)")->required();
    ur->callback([&] { action = [&] { return cmd_unroll(a, vertex); }; });

    auto* ver = app.add_subcommand("verify", "run registered claims");
    ver->add_option("claims", names, "claim ids");
    ver->add_flag("--all", all, "run every claim");
    ver->add_flag("--list", list, "list the claims");
    ver->add_option("--seed", vopts.seed, "seed for sampled claims");
    ver->add_option("--q", fields, "field orders to use instead of the claim's defaults");
    ver->add_option("--samples", vopts.samples, "sample count for sampled claims");
    ver->callback([&] {
        if (!fields.empty()) vopts.fields = fields;
        action = [&] { return cmd_verify(names, all, list, vopts); };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kPass : kUsage;
    }

    try {
        if (!bounds_spec.empty()) {
            // Later keys win, so command-line bounds override the environment.
            const char* env = std::getenv("BMLAB_BOUNDS");
            set_bounds(Bounds::parse(std::string(env ? env : "") + "," + bounds_spec));
        }
        return action();
    } catch (const Error& e) {
        if (g_json)
            std::cout << json{{"error", {{"kind", e.kind()}, {"message", e.what()}}}}.dump(2) << "\n";
        else
            std::cerr << "bmlab: " << e.kind() << ": " << e.what() << "\n";
        return exit_code_for(e);
    }
}
