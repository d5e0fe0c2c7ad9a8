#include "bmlab/io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace bmlab {

namespace {

struct Line {
    int number = 0;
    std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
    std::vector<Line> out;
    std::istringstream in(text);
    std::string raw;
    int n = 0;
    while (std::getline(in, raw)) {
        ++n;
        std::istringstream ls(raw);
        Line line{n, {}};
        std::string tok;
        while (ls >> tok) line.tokens.push_back(tok);
        if (line.tokens.empty() || line.tokens[0][0] == '#') continue;
        out.push_back(std::move(line));
    }
    return out;
}

[[noreturn]] void fail(const Line& l, const std::string& msg) {
    throw ParseError("line " + std::to_string(l.number) + ": " + msg);
}

int to_int(const Line& l, const std::string& s) {
    try {
        size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size()) fail(l, "expected an integer, got '" + s + "'");
        return v;
    } catch (const std::logic_error&) {
        fail(l, "expected an integer, got '" + s + "'");
    }
}

void expect_arity(const Line& l, size_t n) {
    if (l.tokens.size() != n) fail(l, "'" + l.tokens[0] + "' takes " + std::to_string(n - 1) + " arguments");
}

int vertex_ref(const Line& l, const MultiGraph& g, const std::string& s) {
    if (!s.empty() && std::isdigit(static_cast<unsigned char>(s[0]))) {
        int v = to_int(l, s);
        if (v < 1 || v > g.num_vertices()) fail(l, "vertex " + s + " out of range");
        return v - 1;
    }
    for (int v = 0; v < g.num_vertices(); ++v)
        if (g.vertex_name(v) == s) return v;
    fail(l, "unknown vertex '" + s + "'");
}

int edge_ref(const Line& l, const MultiGraph& g, const std::string& s) {
    for (int e = 0; e < g.num_edges(); ++e)
        if (g.edge(e).name == s) return e;
    fail(l, "unknown edge '" + s + "'");
}

struct Parsed {
    MultiGraph graph;
    std::vector<EdgeSet> balanced;
    std::optional<GainGroup> group;
    std::vector<std::pair<int, int>> gains;  // edge, element
};

// Reads the graph lines plus whichever extra keywords are allowed.
Parsed parse_decls(const std::string& text, bool biased, bool gains) {
    Parsed p;
    bool have_vertices = false;
    std::set<std::string> names;
    for (const Line& l : tokenize(text)) {
        const std::string& kw = l.tokens[0];
        if (kw == "vertices") {
            expect_arity(l, 2);
            if (have_vertices) fail(l, "'vertices' given twice");
            int n = to_int(l, l.tokens[1]);
            if (n < 0 || n > 64) fail(l, "vertex count must be between 0 and 64");
            p.graph = MultiGraph(n);
            have_vertices = true;
        } else if (!have_vertices) {
            fail(l, "'vertices' must come first");
        } else if (kw == "vertex") {
            expect_arity(l, 3);
            p.graph.set_vertex_name(vertex_ref(l, p.graph, l.tokens[1]), l.tokens[2]);
        } else if (kw == "edge") {
            expect_arity(l, 4);
            if (!names.insert(l.tokens[1]).second) fail(l, "duplicate edge name '" + l.tokens[1] + "'");
            p.graph.add_edge(vertex_ref(l, p.graph, l.tokens[2]), vertex_ref(l, p.graph, l.tokens[3]), l.tokens[1]);
        } else if (kw == "balanced" && biased) {
            if (l.tokens.size() < 2) fail(l, "'balanced' needs at least one edge");
            EdgeSet c = 0;
            for (size_t i = 1; i < l.tokens.size(); ++i) c |= bit(edge_ref(l, p.graph, l.tokens[i]));
            if (!is_cycle(p.graph, c)) fail(l, "balanced edges do not form a cycle");
            p.balanced.push_back(c);
        } else if (kw == "group" && gains) {
            expect_arity(l, 3);
            try {
                p.group = GainGroup::parse(l.tokens[1], to_int(l, l.tokens[2]));
            } catch (const Error& e) {
                fail(l, e.what());
            }
        } else if (kw == "gain" && gains) {
            expect_arity(l, 3);
            if (!p.group) fail(l, "'group' must come before 'gain'");
            int e = edge_ref(l, p.graph, l.tokens[1]);
            int a = to_int(l, l.tokens[2]);
            if (!p.group->contains(a)) fail(l, "gain " + l.tokens[2] + " is not in " + p.group->describe());
            p.gains.emplace_back(e, a);
        } else {
            fail(l, "unknown keyword '" + kw + "'");
        }
    }
    if (!have_vertices) throw ParseError("line 1: missing 'vertices' line");
    return p;
}

std::string group_keyword(const GainGroup& g) {
    switch (g.kind()) {
        case GroupKind::Mul: return "mul";
        case GroupKind::Add: return "add";
        case GroupKind::Zn: return "zn";
    }
    return "zn";
}

template <class K>
json matrix_json(const Matrix<K>& m) {
    json entries = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) {
            if constexpr (std::is_same_v<K, GFField>) row.push_back(m.at(i, j));
            else row.push_back(m.field().str(m.at(i, j)));
        }
        entries.push_back(row);
    }
    return {{"field", m.field().name()},     {"rows", m.rows()},           {"cols", m.cols()},
            {"row_labels", m.row_labels()}, {"col_labels", m.col_labels()}, {"entries", entries}};
}

}  // namespace

std::string read_text_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw InvalidArgument("cannot read " + p.string());
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

MultiGraph parse_graph(const std::string& text) { return parse_decls(text, false, false).graph; }

BiasDeclaration parse_bias_declaration(const std::string& text) {
    auto p = parse_decls(text, true, false);
    return {std::move(p.graph), std::move(p.balanced)};
}

BiasedGraph parse_biased(const std::string& text) {
    auto d = parse_bias_declaration(text);
    return BiasedGraph(std::move(d.graph), std::move(d.balanced));
}

GainGraph parse_gain_graph(const std::string& text) {
    auto p = parse_decls(text, false, true);
    if (!p.group) throw ParseError("line 1: missing 'group' line");
    std::vector<int> gain(p.graph.num_edges(), p.group->identity());
    for (auto [e, a] : p.gains) gain[e] = a;
    return GainGraph(std::move(p.graph), *p.group, std::move(gain));
}

std::string format_graph(const MultiGraph& g) {
    std::ostringstream out;
    out << "vertices " << g.num_vertices() << "\n";
    for (int v = 0; v < g.num_vertices(); ++v)
        if (g.vertex_name(v) != "v" + std::to_string(v + 1)) out << "vertex " << v + 1 << " " << g.vertex_name(v) << "\n";
    for (const Edge& e : g.edges()) out << "edge " << e.name << " " << e.tail + 1 << " " << e.head + 1 << "\n";
    return out.str();
}

std::string format_biased(const BiasedGraph& bg) {
    std::string out = format_graph(bg.graph());
    for (EdgeSet c : bg.balanced()) {
        out += "balanced";
        for (const auto& n : bg.graph().edge_names(c)) out += " " + n;
        out += "\n";
    }
    return out;
}

std::string format_gain_graph(const GainGraph& gg) {
    std::string out = format_graph(gg.graph);
    out += "group " + group_keyword(gg.group) + " " + std::to_string(gg.group.param()) + "\n";
    for (int e = 0; e < gg.graph.num_edges(); ++e)
        out += "gain " + gg.graph.edge(e).name + " " + std::to_string(gg.gain[e]) + "\n";
    return out;
}

AnyMatrix parse_matrix(const std::string& text) {
    auto lines = tokenize(text);
    if (lines.empty()) throw ParseError("line 1: empty matrix file");
    const Line& h = lines[0];
    if (h.tokens.size() < 6 || h.tokens[0] != "rows" || h.tokens[2] != "cols" || h.tokens[4] != "field")
        fail(h, "expected 'rows r cols c field {gf q | rational}'");
    const int r = to_int(h, h.tokens[1]), c = to_int(h, h.tokens[3]);
    if (r < 0 || c < 0) fail(h, "negative dimensions");
    auto fill = [&](auto field) {
        using K = decltype(field);
        Matrix<K> m(field, r, c);
        int row = 0;
        for (size_t k = 1; k < lines.size(); ++k) {
            const Line& l = lines[k];
            if (l.tokens[0] == "labels") {
                if (static_cast<int>(l.tokens.size()) != c + 1) fail(l, "expected " + std::to_string(c) + " labels");
                m.set_col_labels({l.tokens.begin() + 1, l.tokens.end()});
                continue;
            }
            if (row == r) fail(l, "more than " + std::to_string(r) + " rows");
            if (static_cast<int>(l.tokens.size()) != c) fail(l, "expected " + std::to_string(c) + " entries");
            for (int j = 0; j < c; ++j) {
                try {
                    m.at(row, j) = field.parse(l.tokens[j]);
                } catch (const Error& e) {
                    fail(l, e.what());
                }
            }
            ++row;
        }
        if (row != r) throw ParseError("line " + std::to_string(lines.back().number) + ": expected " +
                                       std::to_string(r) + " rows, found " + std::to_string(row));
        return m;
    };
    if (h.tokens[5] == "rational") {
        if (h.tokens.size() != 6) fail(h, "trailing tokens after 'rational'");
        return fill(QField{});
    }
    if (h.tokens[5] != "gf" || h.tokens.size() != 7) fail(h, "field must be 'gf q' or 'rational'");
    const int q = to_int(h, h.tokens[6]);
    try {
        GF::get(q);
    } catch (const Error& e) {
        fail(h, e.what());
    }
    return fill(GFField(q));
}

template <class K>
std::string format_matrix(const Matrix<K>& m) {
    std::ostringstream out;
    out << "rows " << m.rows() << " cols " << m.cols() << " field " << m.field().name() << "\n";
    out << "labels";
    for (const auto& l : m.col_labels()) out << " " << l;
    out << "\n";
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) out << (j ? " " : "") << m.field().str(m.at(i, j));
        out << "\n";
    }
    return out.str();
}
template std::string format_matrix(const GMatrix&);
template std::string format_matrix(const QMatrix&);

std::string format_matrix(const AnyMatrix& m) {
    return std::visit([](const auto& x) { return format_matrix(x); }, m);
}

Matroid parse_matroid(const std::string& text, const std::filesystem::path& base_dir) {
    std::optional<std::vector<std::string>> ground;
    std::map<ElementSet, int> ranks;
    std::optional<int> uniform;
    std::optional<BiasedGraph> biased;
    std::optional<MatroidKind> kind;
    int last = 1;
    for (const Line& l : tokenize(text)) {
        last = l.number;
        const std::string& kw = l.tokens[0];
        if (kw == "ground") {
            if (ground) fail(l, "'ground' given twice");
            ground = std::vector<std::string>(l.tokens.begin() + 1, l.tokens.end());
            if (static_cast<int>(ground->size()) > bounds().matroid_elements) fail(l, "too many elements");
            if (std::set<std::string>(ground->begin(), ground->end()).size() != ground->size())
                fail(l, "duplicate ground-set labels");
        } else if (kw == "rank") {
            expect_arity(l, 3);
            if (!ground) fail(l, "'ground' must come before 'rank'");
            ElementSet s = 0;
            if (l.tokens[1] != "-") {
                std::istringstream names(l.tokens[1]);
                std::string name;
                while (std::getline(names, name, ',')) {
                    auto it = std::find(ground->begin(), ground->end(), name);
                    if (it == ground->end()) fail(l, "unknown element '" + name + "'");
                    s |= bit(static_cast<int>(it - ground->begin()));
                }
            }
            if (!ranks.emplace(s, to_int(l, l.tokens[2])).second) fail(l, "rank of this subset given twice");
        } else if (kw == "uniform") {
            expect_arity(l, 2);
            uniform = to_int(l, l.tokens[1]);
        } else if (kw == "biased") {
            expect_arity(l, 2);
            std::filesystem::path p = l.tokens[1];
            if (p.is_relative()) p = base_dir / p;
            try {
                biased = parse_biased(read_text_file(p));
            } catch (const Error& e) {
                fail(l, p.string() + ": " + e.what());
            }
        } else if (kw == "kind") {
            expect_arity(l, 2);
            try {
                kind = parse_matroid_kind(l.tokens[1]);
            } catch (const Error& e) {
                fail(l, e.what());
            }
        } else {
            fail(l, "unknown keyword '" + kw + "'");
        }
    }
    const std::string at = "line " + std::to_string(last) + ": ";
    if (biased) {
        if (!kind) throw ParseError(at + "a biased-graph reference needs a 'kind' line");
        Matroid m = biased_matroid(*biased, *kind);
        if (ground && *ground != m.labels()) throw ParseError(at + "ground set does not match the biased graph's edges");
        return m;
    }
    if (!ground) throw ParseError(at + "missing 'ground' line");
    if (uniform) {
        if (*uniform < 0 || *uniform > static_cast<int>(ground->size())) throw ParseError(at + "bad uniform rank");
        return Matroid::uniform(*uniform, *ground);
    }
    const size_t n = ground->size();
    if (ranks.size() != (size_t{1} << n))
        throw ParseError(at + "rank lines must cover all " + std::to_string(size_t{1} << n) + " subsets");
    std::vector<int> table(size_t{1} << n);
    for (auto [s, r] : ranks) table[s] = r;
    Matroid m = Matroid::from_table(*ground, table);
    if (auto bad = check_rank_axioms(m)) throw ParseError(at + "rank table is not a matroid: " + *bad);
    return m;
}

// ---- JSON ------------------------------------------------------------------

json edge_names_json(const MultiGraph& g, EdgeSet s) { return g.edge_names(s); }

json to_json(const MultiGraph& g) {
    json vs = json::array();
    for (int v = 0; v < g.num_vertices(); ++v) vs.push_back(g.vertex_name(v));
    json es = json::array();
    for (const Edge& e : g.edges())
        es.push_back({{"name", e.name}, {"tail", g.vertex_name(e.tail)}, {"head", g.vertex_name(e.head)}});
    return {{"vertices", vs}, {"edges", es}};
}

json to_json(const BiasedGraph& bg) {
    json j = to_json(bg.graph());
    json b = json::array();
    for (EdgeSet c : bg.balanced()) b.push_back(edge_names_json(bg.graph(), c));
    j["balanced"] = b;
    return j;
}

json to_json(const GainGraph& gg) {
    json j = to_json(gg.graph);
    j["group"] = {{"kind", group_keyword(gg.group)}, {"param", gg.group.param()}};
    json gains = json::object();
    for (int e = 0; e < gg.graph.num_edges(); ++e) gains[gg.graph.edge(e).name] = gg.gain[e];
    j["gains"] = gains;
    return j;
}

json to_json(const GMatrix& m) { return matrix_json(m); }
json to_json(const QMatrix& m) { return matrix_json(m); }

json to_json(const ProjWitness<GFField>& w) {
    GMatrix s = GMatrix::diagonal(w.t.field(), w.s);
    return {{"T", format_matrix(w.t)}, {"S", format_matrix(s)}};
}

json to_json(const CanonicalForm& f) {
    json orient = json::array();
    const MultiGraph& g = f.gains.graph;
    for (const Edge& e : g.edges())
        orient.push_back({{"edge", e.name}, {"tail", g.vertex_name(e.tail)}, {"head", g.vertex_name(e.head)}});
    return {{"kind", to_string(f.kind)},
            {"gain_graph", to_json(f.gains)},
            {"matrix", to_json(f.matrix)},
            {"orientation", orient}};
}

MultiGraph graph_from_json(const json& j) {
    try {
        const auto& vs = j.at("vertices");
        MultiGraph g(static_cast<int>(vs.size()));
        std::map<std::string, int> index;
        for (size_t v = 0; v < vs.size(); ++v) {
            g.set_vertex_name(static_cast<int>(v), vs[v].get<std::string>());
            index[vs[v].get<std::string>()] = static_cast<int>(v);
        }
        for (const auto& e : j.at("edges"))
            g.add_edge(index.at(e.at("tail").get<std::string>()), index.at(e.at("head").get<std::string>()),
                       e.at("name").get<std::string>());
        return g;
    } catch (const json::exception& e) {
        throw ParseError(std::string("graph JSON: ") + e.what());
    } catch (const std::out_of_range&) {
        throw ParseError("graph JSON: edge refers to an unknown vertex");
    }
}

BiasDeclaration bias_declaration_from_json(const json& j) {
    BiasDeclaration d{graph_from_json(j), {}};
    try {
        for (const auto& c : j.at("balanced")) {
            EdgeSet s = d.graph.edge_set(c.get<std::vector<std::string>>());
            if (!is_cycle(d.graph, s)) throw ParseError("biased graph JSON: balanced edges do not form a cycle");
            d.balanced.push_back(s);
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("biased graph JSON: ") + e.what());
    } catch (const UnknownEdge& e) {
        throw ParseError(std::string("biased graph JSON: ") + e.what());
    }
    return d;
}

BiasedGraph biased_from_json(const json& j) {
    auto d = bias_declaration_from_json(j);
    return BiasedGraph(std::move(d.graph), std::move(d.balanced));
}

GainGraph gain_graph_from_json(const json& j) {
    MultiGraph g = graph_from_json(j);
    try {
        GainGroup grp = GainGroup::parse(j.at("group").at("kind").get<std::string>(), j.at("group").at("param").get<int>());
        std::vector<int> gain(g.num_edges(), grp.identity());
        for (const auto& [name, value] : j.at("gains").items()) {
            const int a = value.get<int>();
            if (!grp.contains(a)) throw ParseError("gain graph JSON: gain " + std::to_string(a) + " is not in " + grp.describe());
            gain[g.edge_index(name)] = a;
        }
        return GainGraph(std::move(g), grp, std::move(gain));
    } catch (const json::exception& e) {
        throw ParseError(std::string("gain graph JSON: ") + e.what());
    } catch (const UnknownEdge& e) {
        throw ParseError(std::string("gain graph JSON: ") + e.what());
    }
}

AnyMatrix matrix_from_json(const json& j) {
    try {
        const std::string field = j.at("field").get<std::string>();
        const int r = j.at("rows").get<int>(), c = j.at("cols").get<int>();
        auto fill = [&](auto k) {
            using K = decltype(k);
            Matrix<K> m(k, r, c);
            const auto& entries = j.at("entries");
            if (static_cast<int>(entries.size()) != r) throw ParseError("matrix JSON: wrong number of rows");
            for (int i = 0; i < r; ++i) {
                if (static_cast<int>(entries[i].size()) != c) throw ParseError("matrix JSON: wrong number of columns");
                for (int jj = 0; jj < c; ++jj) {
                    if constexpr (std::is_same_v<K, GFField>) m.at(i, jj) = k.parse(std::to_string(entries[i][jj].get<int>()));
                    else m.at(i, jj) = k.parse(entries[i][jj].get<std::string>());
                }
            }
            if (j.contains("row_labels")) m.set_row_labels(j.at("row_labels").get<std::vector<std::string>>());
            if (j.contains("col_labels")) m.set_col_labels(j.at("col_labels").get<std::vector<std::string>>());
            return m;
        };
        if (field == "rational") return fill(QField{});
        if (field.rfind("gf ", 0) == 0) return fill(GFField(std::stoi(field.substr(3))));
        throw ParseError("matrix JSON: unknown field '" + field + "'");
    } catch (const json::exception& e) {
        throw ParseError(std::string("matrix JSON: ") + e.what());
    }
}

}  // namespace bmlab
