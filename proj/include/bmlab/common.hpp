#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bmlab {

// Edge and vertex subsets are bitmasks; every graph in this library has at
// most 64 edges and at most 64 vertices.
using EdgeSet = std::uint64_t;
using VertexSet = std::uint64_t;

constexpr int kMaxEdges = 64;
constexpr int kMaxVertices = 64;

inline constexpr std::uint64_t bit(int i) { return std::uint64_t{1} << i; }
inline constexpr int popcount(std::uint64_t s) { return std::popcount(s); }
inline constexpr int lowest(std::uint64_t s) { return std::countr_zero(s); }
inline constexpr bool contains(std::uint64_t s, int i) { return (s >> i) & 1U; }
inline constexpr bool subset_of(std::uint64_t a, std::uint64_t b) { return (a & ~b) == 0; }
inline constexpr std::uint64_t low_mask(int n) { return n >= 64 ? ~std::uint64_t{0} : bit(n) - 1; }

template <class F>
void for_each_bit(std::uint64_t s, F&& f) {
    while (s) {
        int i = std::countr_zero(s);
        s &= s - 1;
        f(i);
    }
}

inline std::vector<int> bits_of(std::uint64_t s) {
    std::vector<int> out;
    for_each_bit(s, [&](int i) { out.push_back(i); });
    return out;
}

// Error hierarchy.  Every error carries a stable kind string used by the CLI
// and by JSON reports.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

#define BMLAB_ERROR(Name)                                                  \
    class Name : public Error {                                            \
    public:                                                                \
        explicit Name(const std::string& what) : Error(#Name, what) {}     \
    }

BMLAB_ERROR(BoundExceeded);
BMLAB_ERROR(UnknownEdge);
BMLAB_ERROR(NotACycle);
BMLAB_ERROR(NotAWalk);
BMLAB_ERROR(ThetaViolation);
BMLAB_ERROR(NotBalancedTriangle);
BMLAB_ERROR(NotTriad);
BMLAB_ERROR(NotTriangle);
BMLAB_ERROR(NotBalancingVertex);
BMLAB_ERROR(StructureMissing);
BMLAB_ERROR(GraphMismatch);
BMLAB_ERROR(GroupMismatch);
BMLAB_ERROR(NotMaximalForest);
BMLAB_ERROR(GroundSetMismatch);
BMLAB_ERROR(ColumnLabelMismatch);
BMLAB_ERROR(MatroidMismatch);
BMLAB_ERROR(NotVertically2Connected);
BMLAB_ERROR(NoBasis);
BMLAB_ERROR(BadGlue);
BMLAB_ERROR(UnknownClaim);
BMLAB_ERROR(ParseError);
BMLAB_ERROR(InvalidArgument);

#undef BMLAB_ERROR

// Search bounds.  Defaults can be raised through the BMLAB_BOUNDS environment
// variable, e.g. BMLAB_BOUNDS="cycle_edges=30,subdivision_vertices=14".
struct Bounds {
    int cycle_edges = 24;
    int subdivision_vertices = 12;
    int subdivision_edges = 24;
    int link_minor_vertices = 10;
    int link_minor_edges = 20;
    int matroid_elements = 20;
    int circuit_elements = 14;
    int enum_rank = 4;
    int enum_elements = 8;
    int enum_q = 5;
    int canon_nodes = 2000000;

    // Parses "key=value,key=value"; unknown keys raise InvalidArgument.
    static Bounds parse(const std::string& spec);
};

const Bounds& bounds();
// Replaces the process-wide bounds (used by tests and the CLI).
void set_bounds(const Bounds& b);

}  // namespace bmlab
