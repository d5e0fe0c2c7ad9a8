#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bmlab/bias.hpp"
#include "bmlab/field.hpp"

namespace bmlab {

enum class GroupKind { Mul, Add, Zn };

// Abelian gain group on small integer codes.  Mul is GF(q)^x on codes
// 1..q-1, Add is GF(q)^+ on codes 0..q-1, Zn is Z/n on 0..n-1.
class GainGroup {
public:
    static GainGroup mul(int q);
    static GainGroup add(int q);
    static GainGroup zn(int n);
    // "mul 5", "add 4", "zn 3"
    static GainGroup parse(const std::string& kind, int n);

    GroupKind kind() const { return kind_; }
    int param() const { return n_; }
    int order() const { return kind_ == GroupKind::Mul ? n_ - 1 : n_; }
    int identity() const { return kind_ == GroupKind::Mul ? 1 : 0; }
    bool contains(int a) const;
    int compose(int a, int b) const;
    int inverse(int a) const;
    std::vector<int> elements() const;
    // First non-identity element of elements(); used for new joints.
    int smallest_non_identity() const;
    const GF* field() const { return field_; }
    bool has_scaling() const { return kind_ == GroupKind::Add; }
    // x -> a*x for a in GF(q)^x (additive groups only).
    int scale(int a, int x) const;
    std::string describe() const;

    friend bool operator==(const GainGroup& a, const GainGroup& b) {
        return a.kind_ == b.kind_ && a.n_ == b.n_;
    }

private:
    GroupKind kind_ = GroupKind::Zn;
    int n_ = 1;
    const GF* field_ = nullptr;
};

struct GainGraph {
    MultiGraph graph;
    GainGroup group = GainGroup::zn(1);
    std::vector<int> gain;  // gain on each edge in its stored orientation

    GainGraph() = default;
    GainGraph(MultiGraph g, GainGroup grp, std::vector<int> gains);
    int gain_of(OrientedEdge o) const;
    friend bool operator==(const GainGraph& a, const GainGraph& b) {
        return a.group == b.group && a.gain == b.gain && a.graph.num_edges() == b.graph.num_edges();
    }
};

using SwitchingFunction = std::vector<int>;

int walk_gain(const GainGraph& gg, const Walk& w);
bool cycle_is_balanced(const GainGraph& gg, EdgeSet c);
BiasedGraph induced_bias(const GainGraph& gg);
bool is_realization(const GainGraph& gg, const BiasedGraph& bg);

GainGraph switching(const GainGraph& gg, const SwitchingFunction& eta);
// Pointwise product of switching functions.
SwitchingFunction compose_switching(const GainGroup& grp, const SwitchingFunction& a, const SwitchingFunction& b);

struct Normalized {
    GainGraph gains;
    SwitchingFunction eta;
};
// Identity on the forest f; eta is the identity at the least vertex of each
// component.  Throws NotMaximalForest.
Normalized normalize(const GainGraph& gg, EdgeSet f);

// eta with switching(phi, eta) == psi, or nullopt.
std::optional<SwitchingFunction> switching_equivalent(const GainGraph& phi, const GainGraph& psi);

struct ScalingWitness {
    int scalar = 1;
    SwitchingFunction eta;
};
// (a, eta) with a * switching(phi, eta) == psi over GF(q)^+, first a in
// field order.
std::optional<ScalingWitness> switching_scaling_equivalent(const GainGraph& phi, const GainGraph& psi);
GainGraph scale_gains(const GainGraph& gg, int a);

struct GainMinor {
    GainGraph gains;
    std::vector<int> edge_map;
};
GainMinor induced_gain(const GainGraph& gg, EdgeSet contract, EdgeSet del);

// All gain functions normalized on forest f, in lexicographic order of the
// non-forest gains, that realize bg.  Non-forest loops range over the whole
// group.
std::vector<GainGraph> normalized_realizations(const BiasedGraph& bg, const GainGroup& grp, EdgeSet f);

}  // namespace bmlab
