#pragma once

// Text and JSON formats for graphs, biased graphs, gain graphs, matrices and
// matroids.  Every parser reports failures as ParseError with a line number.

#include <filesystem>
#include <string>
#include <variant>

#include <json.hpp>

#include "bmlab/canonical.hpp"
#include "bmlab/gains.hpp"
#include "bmlab/linalg.hpp"
#include "bmlab/matroid.hpp"

namespace bmlab {

using json = nlohmann::ordered_json;
using QMatrix = Matrix<QField>;
using AnyMatrix = std::variant<GMatrix, QMatrix>;

std::string read_text_file(const std::filesystem::path& p);

// vertices N
// edge <name> <u> <v>        u, v are 1-based indices or vertex names
// balanced <edge>+           biased graphs only
// group {mul|add} q | group zn n, gain <edge> <element>   gain graphs only
MultiGraph parse_graph(const std::string& text);
BiasedGraph parse_biased(const std::string& text);

// A graph with a list of declared balanced cycles that has not yet been
// checked against the theta property.
struct BiasDeclaration {
    MultiGraph graph;
    std::vector<EdgeSet> balanced;
};
BiasDeclaration parse_bias_declaration(const std::string& text);
GainGraph parse_gain_graph(const std::string& text);
std::string format_graph(const MultiGraph& g);
std::string format_biased(const BiasedGraph& bg);
std::string format_gain_graph(const GainGraph& gg);

// rows r cols c field {gf q | rational}
// labels <name>*c             optional
// one line of c entries per row
AnyMatrix parse_matrix(const std::string& text);
template <class K>
std::string format_matrix(const Matrix<K>& m);
std::string format_matrix(const AnyMatrix& m);

// ground <label>+ followed by either
//   rank <subset> <r>    for every subset (subset is comma separated, "-" for empty)
//   uniform <r>
// or a file reference
//   biased <path>  and  kind {frame|lift|lift0}
// Relative paths resolve against base_dir.
Matroid parse_matroid(const std::string& text, const std::filesystem::path& base_dir = {});

// ---- JSON ------------------------------------------------------------------

json edge_names_json(const MultiGraph& g, EdgeSet s);
json to_json(const MultiGraph& g);
json to_json(const BiasedGraph& bg);
json to_json(const GainGraph& gg);
json to_json(const GMatrix& m);
json to_json(const QMatrix& m);
json to_json(const ProjWitness<GFField>& w);
json to_json(const CanonicalForm& f);

MultiGraph graph_from_json(const json& j);
BiasedGraph biased_from_json(const json& j);
BiasDeclaration bias_declaration_from_json(const json& j);
GainGraph gain_graph_from_json(const json& j);
AnyMatrix matrix_from_json(const json& j);

}  // namespace bmlab
