#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bmlab/graph.hpp"

namespace bmlab {

// A theta subgraph holding exactly two balanced cycles.
struct ThetaWitness {
    EdgeSet theta = 0;
    EdgeSet balanced1 = 0;
    EdgeSet balanced2 = 0;
    EdgeSet unbalanced = 0;
};

// Checks every member is a cycle (NotACycle otherwise) and returns the first
// violating theta, or nullopt when the theta property holds.
std::optional<ThetaWitness> check_theta_property(const MultiGraph& g, const std::vector<EdgeSet>& balanced);

class BiasedGraph {
public:
    BiasedGraph() = default;
    // Validates membership and the theta property (ThetaViolation).
    BiasedGraph(MultiGraph g, std::vector<EdgeSet> balanced);
    // Skips validation; used by generators that build valid classes.
    static BiasedGraph trusted(MultiGraph g, std::vector<EdgeSet> balanced);

    const MultiGraph& graph() const { return g_; }
    const std::vector<EdgeSet>& balanced() const { return balanced_; }
    const std::vector<EdgeSet>& cycles() const { return cycles_; }
    std::vector<EdgeSet> unbalanced_cycles() const;

    bool is_balanced_cycle(EdgeSet c) const;
    // Every cycle inside x is balanced.
    bool is_balanced_set(EdgeSet x) const;
    EdgeSet joints() const;
    EdgeSet balanced_loops() const;
    bool is_balanced() const { return balanced_.size() == cycles_.size(); }

private:
    void init_cycles();
    MultiGraph g_;
    std::vector<EdgeSet> balanced_;
    std::vector<EdgeSet> cycles_;
};

enum class BalanceTag { Balanced, AlmostBalanced, ProperlyUnbalanced };
std::string to_string(BalanceTag t);

struct BalanceClass {
    BalanceTag tag = BalanceTag::Balanced;
    // Vertices meeting every unbalanced cycle of length at least two.
    VertexSet balancing_vertices = 0;
};

BalanceClass classify_balance(const BiasedGraph& bg);
// Vertices meeting every unbalanced cycle (joints included).
VertexSet balancing_vertices(const BiasedGraph& bg);

struct TangleReport {
    bool tangled = false;
    // Two vertex-disjoint unbalanced cycles, when they exist.
    std::optional<std::pair<EdgeSet, EdgeSet>> disjoint_pair;
};
TangleReport tangle_report(const BiasedGraph& bg);
inline bool is_tangled(const BiasedGraph& bg) { return tangle_report(bg).tangled; }
std::optional<std::pair<EdgeSet, EdgeSet>> disjoint_unbalanced_pair(const BiasedGraph& bg, bool allow_loops = true);

// ---- minors ---------------------------------------------------------------

struct BiasedMinor {
    BiasedGraph result;
    std::vector<int> edge_map;    // original edge -> result edge or -1
    std::vector<int> vertex_map;  // original vertex -> result vertex
    bool link_minor = true;       // no joint was contracted
};

BiasedMinor biased_minor(const BiasedGraph& bg, EdgeSet contract, EdgeSet del);
BiasedGraph drop_isolated(const BiasedGraph& bg);
BiasedGraph restrict_edges(const BiasedGraph& bg, EdgeSet keep);

// ---- isomorphism ---------------------------------------------------------

std::optional<GraphIso> biased_isomorphism(const BiasedGraph& a, const BiasedGraph& b);
inline bool isomorphic(const BiasedGraph& a, const BiasedGraph& b) {
    return biased_isomorphism(a, b).has_value();
}

// ---- Delta-Y ---------------------------------------------------------------

// Replaces the balanced triangle x by a claw on a new vertex.  Each triangle
// edge becomes the spoke to the triangle vertex it misses, oriented from
// that vertex to the new one.
BiasedGraph delta_y(const BiasedGraph& bg, EdgeSet x);
// Inverse exchange on a claw whose center has degree exactly three.  With
// spokes a < b < c at ends p, q, r the new edges are a = q->r, b = r->p and
// c = p->q; the center vertex is removed.
BiasedGraph y_delta(const BiasedGraph& bg, EdgeSet y);
MultiGraph delta_y_graph(const MultiGraph& g, EdgeSet x);
MultiGraph y_delta_graph(const MultiGraph& g, EdgeSet y);
// Center vertex of a claw, or -1 when y is not a claw with a degree-3 center.
int claw_center(const MultiGraph& g, EdgeSet y);
bool is_triangle(const MultiGraph& g, EdgeSet x);

// ---- rolling and unrolling ------------------------------------------------

struct UnbalancingPartition {
    int vertex = -1;
    std::vector<EdgeSet> classes;  // blocks of delta(u) and J'
    EdgeSet joints_away = 0;       // J': joints not at u
    EdgeSet joints_at = 0;         // J'': joints at u
};

// Throws NotBalancingVertex unless u meets every unbalanced cycle of
// length at least two.
UnbalancingPartition unbalancing_classes(const BiasedGraph& bg, int u);
// Turns every u-link of the class into a joint at its other end.  The
// input must have no joints away from u (StructureMissing otherwise).
BiasedGraph roll_up(const BiasedGraph& bg, int u, EdgeSet cls);
// Replaces every joint of J' by a link from u.
BiasedGraph unroll(const BiasedGraph& bg, int u);

struct FatTheta {
    int x = -1;
    int y = -1;
    std::vector<EdgeSet> parts;
};
// Detects the two-balancing-vertex structure; StructureMissing otherwise.
FatTheta fat_theta_structure(const BiasedGraph& bg);
BiasedGraph double_roll_up(const BiasedGraph& bg, int i, int j);

// ---- link minors and subdivisions ---------------------------------------

struct LinkMinorRecipe {
    EdgeSet contract = 0;
    EdgeSet del = 0;
    GraphIso iso;  // from the cleaned minor to the pattern
};

// Exhaustive search for a link minor isomorphic to `pattern` up to isolated
// vertices.  Contractions are restricted to forests.
std::optional<LinkMinorRecipe> find_link_minor(const BiasedGraph& bg, const BiasedGraph& pattern);
// Link minor with underlying K4 and no balanced triangle, or underlying 2C3
// and no balanced 2-cycle.
std::optional<LinkMinorRecipe> find_tangled_minor(const BiasedGraph& bg);

// A subgraph of bg that is a subdivision of the biased graph `pattern`.
std::optional<Embedding> find_biased_subdivision(const BiasedGraph& bg, const BiasedGraph& pattern);

// Subdivides edge e; cycles through e keep their bias.
BiasedGraph subdivide_edge(const BiasedGraph& bg, int e, const std::string& name);

}  // namespace bmlab
