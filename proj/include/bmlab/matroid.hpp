#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bmlab/bias.hpp"

namespace bmlab {

using ElementSet = std::uint64_t;

// A matroid given by its rank function on subsets of an ordered, labelled
// ground set.  Ranks are memoized when the ground set has at most
// bounds().matroid_elements elements.
class Matroid {
public:
    using RankFn = std::function<int(ElementSet)>;

    Matroid() = default;
    Matroid(std::vector<std::string> labels, RankFn rank);

    static Matroid uniform(int r, std::vector<std::string> labels);
    // Explicit rank table indexed by subset bitmask.
    static Matroid from_table(std::vector<std::string> labels, std::vector<int> ranks);

    int size() const { return static_cast<int>(labels_.size()); }
    const std::vector<std::string>& labels() const { return labels_; }
    ElementSet ground() const { return low_mask(size()); }
    int index_of(const std::string& label) const;  // throws InvalidArgument
    ElementSet subset(const std::vector<std::string>& labels) const;
    std::vector<std::string> names(ElementSet s) const;

    int rank(ElementSet x) const;
    int rank() const { return rank(ground()); }
    bool is_independent(ElementSet x) const { return rank(x) == popcount(x); }
    bool is_circuit(ElementSet x) const;
    ElementSet closure(ElementSet x) const;
    bool is_flat(ElementSet x) const { return closure(x) == x; }

    // Minor on the remaining elements, in their original order.
    Matroid minor(ElementSet contract, ElementSet del) const;
    Matroid dual() const;
    Matroid relabeled(std::vector<std::string> labels) const;

private:
    struct Memo;
    std::vector<std::string> labels_;
    RankFn rank_;
    std::shared_ptr<Memo> memo_;
};

// ---- biased-graph matroids ----------------------------------------------

int frame_rank(const BiasedGraph& bg, EdgeSet x);
int lift_rank(const BiasedGraph& bg, EdgeSet x);
int graphic_rank(const MultiGraph& g, EdgeSet x);
// Every cycle of G|x is balanced, decided through fundamental cycles of a
// spanning forest of G|x.
bool is_balanced_subgraph(const BiasedGraph& bg, EdgeSet x);

Matroid frame_matroid(const BiasedGraph& bg);
Matroid lift_matroid(const BiasedGraph& bg);
// Lift matroid plus the extra element "e0" (last in the ground set).
Matroid complete_lift(const BiasedGraph& bg);
Matroid graphic_matroid(const MultiGraph& g);

enum class MatroidKind { Frame, Lift, CompleteLift };
std::string to_string(MatroidKind k);
MatroidKind parse_matroid_kind(const std::string& s);
Matroid biased_matroid(const BiasedGraph& bg, MatroidKind k);

// ---- comparison ----------------------------------------------------------

struct RankDifference {
    ElementSet subset = 0;
    int rank1 = 0;
    int rank2 = 0;
};
// First subset (in increasing bitmask order) on which the ranks differ.
// Throws GroundSetMismatch when labels differ, BoundExceeded past the
// matroid bound.
std::optional<RankDifference> matroid_difference(const Matroid& a, const Matroid& b);
inline bool matroids_equal(const Matroid& a, const Matroid& b) { return !matroid_difference(a, b).has_value(); }

// Element bijection a -> b preserving rank, or nullopt.
std::optional<std::vector<int>> matroid_isomorphism(const Matroid& a, const Matroid& b);

// Description of the first failed rank axiom, or nullopt.
std::optional<std::string> check_rank_axioms(const Matroid& m);

// Minimal dependent sets in increasing bitmask order.  BoundExceeded past
// bounds().circuit_elements.
std::vector<ElementSet> circuits(const Matroid& m);

// ---- graphical circuit shapes ------------------------------------------

enum class CircuitShape { BalancedCycle, Theta, TightHandcuff, LooseHandcuff, DisjointPair };
std::string to_string(CircuitShape s);
std::optional<CircuitShape> frame_circuit_shape(const BiasedGraph& bg, EdgeSet x);
std::optional<CircuitShape> lift_circuit_shape(const BiasedGraph& bg, EdgeSet x);

// ---- Delta-Y on matroids -------------------------------------------------

// Generalized parallel connection with M(K4) along the triangle x, followed
// by deleting x and giving each new element the label of the triangle
// element it is disjoint from in K4.  Throws NotTriangle.
Matroid delta_y_matroid(const Matroid& m, ElementSet x);
// Dual operation on a triad; throws NotTriad.
Matroid y_delta_matroid(const Matroid& m, ElementSet y);

}  // namespace bmlab
