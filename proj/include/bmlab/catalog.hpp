#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bmlab/bias.hpp"

namespace bmlab {

struct NamedBiasedGraph {
    std::string name;  // e.g. "D_{0,2}", "T_2'", "B_1", "U_3"
    BiasedGraph graph;
    std::string note;  // how the entry was produced
};

// ---- bias generation -------------------------------------------------------

struct BiasSearch {
    // Cycles that must be unbalanced (for example 2-cycles).
    std::function<bool(EdgeSet)> forced_unbalanced;
    // Keep only biases with no two vertex-disjoint unbalanced cycles.
    bool no_disjoint_unbalanced = false;
};

// Every set of cycles of g satisfying the theta property and the search
// constraints, by backtracking over the cycles in cycle_order.
std::vector<std::vector<EdgeSet>> enumerate_biases(const MultiGraph& g, const BiasSearch& opts = {});
// One bias per orbit of the automorphism group of g.
std::vector<BiasedGraph> bias_classes(const MultiGraph& g, const BiasSearch& opts = {});

// ---- named families ----------------------------------------------------------

// Biased K4s named D_{t,q} by their numbers of balanced triangles and
// quadrilaterals.  The fully balanced one is D_{4,3}.
const std::vector<NamedBiasedGraph>& classify_k4();
// Biased 2C3s with no balanced 2-cycle: T_0, T_1, T_2, T_2', T_3, T_4.
const std::vector<NamedBiasedGraph>& classify_2c3_proper();
// Tubes with no balanced 2-cycle: B_0, B_1, B_2.
const std::vector<NamedBiasedGraph>& classify_tube_proper();
// D_{0,0..3}, the six proper 2C3s and the three tubes.
const std::vector<NamedBiasedGraph>& base_graphs();

NamedBiasedGraph u2();
NamedBiasedGraph u3();
// The prism with both triangles balanced (i = 3), with 3 - i of its matching
// links e7, e8 contracted.  InvalidArgument unless 1 <= i <= 3.
NamedBiasedGraph t2_prime_split(int i);
// B_i with the single link e3 contracted.
const std::vector<NamedBiasedGraph>& contracted_tubes();

// Every named entry above.
std::vector<NamedBiasedGraph> all_named();
// Looks a name up ignoring case, braces, commas and underscores, so "d02",
// "D_{0,2}" and "D0,2" all match.  D_{4,2} is accepted for D_{4,3}.
std::optional<NamedBiasedGraph> find_named(const std::string& name);

// ---- fat thetas --------------------------------------------------------------

struct FatThetaPart {
    BiasedGraph graph;
    int x = 0;  // hub vertices inside the part
    int y = 1;
};

// Glues the parts at their hubs.  The result has hubs v1 = x and v2 = y
// followed by the inner vertices of each part in order; a cycle is balanced
// iff it lies in one part and is balanced there.  BadGlue when fewer than two
// parts are given, a hub index is invalid, or a part is disconnected.
BiasedGraph fat_theta(const std::vector<FatThetaPart>& parts);
// m parts, each a path with the given number of edges from x to y.
BiasedGraph fat_theta_of_paths(const std::vector<int>& lengths);

// ---- tangled family ----------------------------------------------------------

// Connected loopless multigraphs with 1..max_vertices vertices and at most
// max_edges edges, one per isomorphism class.
std::vector<MultiGraph> small_multigraphs(int max_vertices, int max_edges);
// Every tangled biased graph on those multigraphs, one per isomorphism class.
std::vector<BiasedGraph> tangled_family(int max_vertices, int max_edges);

}  // namespace bmlab
