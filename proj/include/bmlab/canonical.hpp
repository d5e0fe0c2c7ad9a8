#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bmlab/gains.hpp"
#include "bmlab/linalg.hpp"
#include "bmlab/matroid.hpp"

namespace bmlab {

using GMatrix = Matrix<GFField>;

enum class CanonicalKind { Frame, Lift, CompleteLift };
std::string to_string(CanonicalKind k);
CanonicalKind parse_canonical_kind(const std::string& s);
MatroidKind matroid_kind(CanonicalKind k);

// A gain graph together with the matrix it determines.  Links use the
// orientation stored in the graph.
struct CanonicalForm {
    CanonicalKind kind = CanonicalKind::Frame;
    GainGraph gains;
    GMatrix matrix;
};

// Rows are the vertices.  A link is tail - gain * head, a joint is its
// vertex, a balanced loop is zero.  GroupMismatch unless the group is GF(q)^x.
CanonicalForm frame_matrix(const GainGraph& gg);
// Rows are v0 (the gains row) and then the vertices.  A link is
// tail - head + gain * v0, a joint is v0, a balanced loop is zero.
// GroupMismatch unless the group is GF(q)^+.
CanonicalForm lift_matrix(const GainGraph& gg);
// lift_matrix plus a final column "e0" equal to v0.
CanonicalForm complete_lift_matrix(const GainGraph& gg);
CanonicalForm canonical_matrix(const GainGraph& gg, CanonicalKind k);

// Matrix Delta-Y on the columns x, which must form a triangle of the vector
// matroid (NotTriangle).  The triangle columns are rescaled to sum to zero,
// a new row is appended, and each triangle column is replaced by the claw
// vector disjoint from it in K4.  Column labels are kept.
GMatrix delta_y_matrix(const GMatrix& a, ElementSet x);
// Inverse exchange on a triad (NotTriad).  The row space is first reduced so
// that its last row is the functional vanishing off the triad; that row is
// then dropped.
GMatrix y_delta_matrix(const GMatrix& a, ElementSet y);

// ---- canonicalization ------------------------------------------------------

enum class CanonStatus { Found, NotCanonical, Undecided };
std::string to_string(CanonStatus s);

struct CanonicalizeResult {
    CanonStatus status = CanonStatus::NotCanonical;
    std::optional<CanonicalForm> form;
    std::optional<ProjWitness<GFField>> witness;  // witness.t * A * diag(s) = form.matrix
    // The biased graph the form is particular to, and the roll-up style
    // operations that produced it from the input (empty when it is the input).
    BiasedGraph graph;
    std::vector<std::string> operations;
    // Kinds other than the reported one that also succeeded on this graph.
    std::vector<CanonicalKind> also_found;
    long long nodes = 0;
};

// Finds gains phi on omega with T A S equal to the canonical matrix of the
// requested kind (every kind whose matroid matches when no hint is given).
// When omega itself admits no canonical form and is almost balanced, its
// roll-ups, unrollings and double roll-ups are tried.  Every success carries
// a checked witness; Undecided means the node budget ran out.
// Throws ColumnLabelMismatch, MatroidMismatch, NotVertically2Connected.
CanonicalizeResult canonicalize_representation(const GMatrix& a, const BiasedGraph& omega,
                                               std::optional<CanonicalKind> hint = std::nullopt);

// ---- representation enumeration -----------------------------------------

struct RepresentationClass {
    GMatrix matrix;  // standard form [I | D] in the matroid's element order
    std::optional<CanonStatus> frame;
    std::optional<CanonStatus> lift;
};

// One representative per projective equivalence class of GF(q)
// representations of m, each in standard form relative to the
// lexicographically first basis.  When omega is given every class is
// classified by canonicalize_representation.  Throws BoundExceeded outside
// the enum_* bounds and NoBasis for a rank-zero matroid.
std::vector<RepresentationClass> enumerate_representations(const Matroid& m, int q,
                                                           const BiasedGraph* omega = nullptr);

}  // namespace bmlab
