#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bmlab/common.hpp"

namespace bmlab {

struct Edge {
    int tail = 0;
    int head = 0;
    std::string name;
    bool is_loop() const { return tail == head; }
};

// An edge together with a direction.  reversed=false means tail -> head as
// stored in the edge table.
struct OrientedEdge {
    int edge = 0;
    bool reversed = false;
    OrientedEdge inverse() const { return {edge, !reversed}; }
    friend bool operator==(const OrientedEdge&, const OrientedEdge&) = default;
};

using Walk = std::vector<OrientedEdge>;

class MultiGraph {
public:
    MultiGraph() = default;
    explicit MultiGraph(int n);

    int add_vertex(std::string name = {});
    // Adds an edge u -> v; an empty name becomes "e<index+1>".
    int add_edge(int u, int v, std::string name = {});

    int num_vertices() const { return static_cast<int>(vertex_names_.size()); }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    const Edge& edge(int e) const { return edges_.at(e); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::string& vertex_name(int v) const { return vertex_names_.at(v); }
    void set_vertex_name(int v, std::string name) { vertex_names_.at(v) = std::move(name); }
    void set_edge_name(int e, std::string name) { edges_.at(e).name = std::move(name); }

    int edge_index(const std::string& name) const;    // throws UnknownEdge
    int vertex_index(const std::string& name) const;  // throws InvalidArgument
    EdgeSet edge_set(const std::vector<std::string>& names) const;
    std::vector<std::string> edge_names(EdgeSet s) const;

    EdgeSet all_edges() const { return low_mask(num_edges()); }
    VertexSet all_vertices() const { return low_mask(num_vertices()); }
    EdgeSet loops() const;
    EdgeSet links() const { return all_edges() & ~loops(); }
    // Edges with an end at v, loops included.
    EdgeSet incident(int v) const;
    VertexSet vertices_of(EdgeSet s) const;
    int other_end(int e, int v) const;
    int tail(OrientedEdge o) const { return o.reversed ? edges_[o.edge].head : edges_[o.edge].tail; }
    int head(OrientedEdge o) const { return o.reversed ? edges_[o.edge].tail : edges_[o.edge].head; }
    // Number of edge ends at v inside s (a loop counts twice).
    int degree(int v, EdgeSet s) const;

    // Throws UnknownEdge when s mentions an edge that does not exist.
    void check_edges(EdgeSet s) const;

private:
    std::vector<std::string> vertex_names_;
    std::vector<Edge> edges_;
};

// ---- structure of edge subsets -------------------------------------------

// Component label for every vertex of g in the spanning subgraph (V, X).
std::vector<int> component_labels(const MultiGraph& g, EdgeSet x);
// Connected components of G|X as edge sets (isolated vertices are ignored).
std::vector<EdgeSet> edge_components(const MultiGraph& g, EdgeSet x);
// Number of components of G|X (the subgraph induced on V(X)).
int count_components(const MultiGraph& g, EdgeSet x);
bool is_connected(const MultiGraph& g);
bool is_acyclic(const MultiGraph& g, EdgeSet x);
bool is_cycle(const MultiGraph& g, EdgeSet x);

// A maximal forest of G|within, preferring the edges of `prefer` first.
EdgeSet spanning_forest(const MultiGraph& g, EdgeSet within, EdgeSet prefer = 0);
inline EdgeSet spanning_forest(const MultiGraph& g) { return spanning_forest(g, g.all_edges()); }
bool is_maximal_forest(const MultiGraph& g, EdgeSet f);
// Edges of the unique path in forest f between u and v, or nullopt.
std::optional<EdgeSet> forest_path(const MultiGraph& g, EdgeSet f, int u, int v);

// All cycles, sorted by length then by increasing edge-index list.
std::vector<EdgeSet> enumerate_cycles(const MultiGraph& g);
bool cycle_order(EdgeSet a, EdgeSet b);
// A closed walk traversing cycle c, starting at its smallest edge in stored
// orientation.  Throws NotACycle.
Walk cycle_walk(const MultiGraph& g, EdgeSet c);
bool is_walk(const MultiGraph& g, const Walk& w);

// Union of two cycles is a theta exactly when they share an edge, their
// symmetric difference is a cycle and the union has cyclomatic number 2.
bool forms_theta(const MultiGraph& g, EdgeSet c1, EdgeSet c2);
int cyclomatic_number(const MultiGraph& g, EdgeSet x);

// ---- vertical connectivity -----------------------------------------------

struct Separation {
    EdgeSet a = 0;
    EdgeSet b = 0;
    VertexSet shared = 0;
    int order() const { return popcount(shared); }
};

// Returns nullopt when g is vertically k-connected.  Otherwise the witness
// is a vertical r-separation with r < k, or, when g is disconnected or too
// small, a separation with empty `shared`/degenerate sides.
std::optional<Separation> vertical_separation(const MultiGraph& g, int k);
inline bool is_vertically_k_connected(const MultiGraph& g, int k) {
    return !vertical_separation(g, k).has_value();
}

// ---- minors ----------------------------------------------------------------

struct GraphMinor {
    MultiGraph graph;
    std::vector<int> vertex_map;  // old vertex -> new vertex
    std::vector<int> edge_map;    // old edge -> new edge, -1 if removed
};

// Deletes `del` and contracts `con` (loops in `con` are deleted).  Edge and
// vertex names are kept; a merged vertex keeps the name of its smallest
// member.
GraphMinor graph_minor(const MultiGraph& g, EdgeSet con, EdgeSet del);
// Replaces con by a maximal forest of G|con and moves the rest to del.
std::pair<EdgeSet, EdgeSet> acyclic_contraction_form(const MultiGraph& g, EdgeSet con, EdgeSet del);
// Removes vertices of degree zero.
GraphMinor drop_isolated(const MultiGraph& g);
// Restriction to an edge subset (vertices all kept).
GraphMinor restrict_edges(const MultiGraph& g, EdgeSet keep);

// ---- isomorphism and subdivisions ----------------------------------------

struct GraphIso {
    std::vector<int> vertex_map;  // g1 vertex -> g2 vertex
    std::vector<int> edge_map;    // g1 edge -> g2 edge
};

// Enumerates isomorphisms g1 -> g2 (edge orientation ignored) until `accept`
// returns true.  Returns the accepted map.
std::optional<GraphIso> find_isomorphism(const MultiGraph& g1, const MultiGraph& g2,
                                         const std::function<bool(const GraphIso&)>& accept = {});

struct Embedding {
    std::vector<int> vertex_map;            // pattern vertex -> host branch vertex
    std::vector<EdgeSet> edge_paths;        // pattern edge -> host path (cycle for a loop)
    EdgeSet used() const;
};

// Finds a subdivision of `pattern` inside `host`.  The optional callback sees
// each complete embedding and may reject it.
std::optional<Embedding> find_subdivision(const MultiGraph& host, const MultiGraph& pattern,
                                          const std::function<bool(const Embedding&)>& accept = {});

// Replaces edge e by a path of length 2 through a new vertex.  The old edge
// keeps its name for the tail half; the new half is named `name`.
MultiGraph subdivide_edge(const MultiGraph& g, int e, const std::string& name);

// ---- common graphs -------------------------------------------------------
MultiGraph complete_graph(int n);
MultiGraph cycle_graph(int n);
MultiGraph path_graph(int n);
// 2C3 with parallel pairs {e1,e2}, {e3,e4}, {e5,e6} on v1v2, v2v3, v3v1.
MultiGraph double_triangle();
// The tube 2C4'': a 4-cycle v1 v2 v4 v3 with the sides v1v2 and v3v4 doubled.
MultiGraph tube_graph();

}  // namespace bmlab
