#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cdm/graph.hpp"

namespace cdm {

class ParityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Group action h of the port permutations on vertex labels. The default
/// leaves labels untouched (singleton alphabet).
using LabelAction = std::function<std::string(const Permutation&, const std::string&)>;

/// r_u: the permutation `perm` applied at `vertex`. Even for rotations,
/// odd for symmetries.
struct VertexRotation {
  Name vertex;
  Permutation perm;

  friend bool operator==(const VertexRotation&, const VertexRotation&) = default;
};

/// Steps are applied first to last.
using RotationSequence = std::vector<VertexRotation>;

/// Per-vertex net permutations; vertices not mentioned are unrotated.
using RotationAssignment = std::map<Name, Permutation>;

/// Applies r at u: (u:p, g, v:q) -> (u:r(p), g r^-1, v:q), reverse edges
/// (v:q, r g^-1, u:r(p)), semi-edges (u:p) -> (u:r(p)). Throws ParityError
/// for an odd permutation.
Graph apply_rotation(const Graph& g, const VertexRotation& rot, const LabelAction& action = {});
Graph apply_rotation_sequence(const Graph& g, const RotationSequence& seq, const LabelAction& action = {});

/// Applies each vertex's net permutation. Vertices absent from g are ignored.
Graph apply_assignment(const Graph& g, const RotationAssignment& assignment, const LabelAction& action = {});

/// Applies odd permutations; throws ParityError if the result has an even gluing.
Graph apply_symmetry_sequence(const Graph& g, const RotationSequence& seq, const LabelAction& action = {});

/// The ordered gathering of the steps at u, composed (identity if none).
Permutation net_rotation(const RotationSequence& seq, const Name& u, int dim);
RotationAssignment net_rotations(const RotationSequence& seq);

/// One step per vertex with a non-identity net permutation, in vertex order.
RotationSequence to_sequence(const RotationAssignment& assignment);

RotationAssignment inverse(const RotationAssignment& assignment);

/// True iff both sequences have the same net permutation at every vertex of `shared`.
bool sequences_consistent(const RotationSequence& a, const RotationSequence& b, const std::set<Name>& shared, int dim);

class MergeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A single sequence r with r(union G_i) == union (r_i G_i). Throws
/// MergeError when a consistency precondition fails.
RotationSequence merge_rotations(const std::vector<std::pair<Graph, RotationSequence>>& pairs);

/// A rotation sequence taking g to h when V(g) == V(h), if one exists.
/// Exact: on each component the rotation at one vertex determines all others
/// through the gluings, so trying every even permutation at a root decides it.
std::optional<RotationSequence> rotation_equivalent(const Graph& g, const Graph& h, const LabelAction& action = {});

/// Same as rotation_equivalent but returns the per-vertex assignment, with
/// an entry for every vertex.
std::optional<RotationAssignment> rotation_equivalence_assignment(const Graph& g, const Graph& h,
                                                                  const LabelAction& action = {});

}  // namespace cdm
