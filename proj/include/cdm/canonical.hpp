#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cdm/graph.hpp"

namespace cdm {

/// Whether canonical forms identify rotation-equivalent graphs.
enum class Quotient { None, Rotation };

/// Extra per-port / per-vertex marks folded into a canonical code. Used by
/// the disk enumerator for partially built graphs.
struct CodeMarks {
  const std::set<PortRef>* open_ports = nullptr;
  const std::set<Name>* marked_vertices = nullptr;
};

/// Canonical labeling of one connected component.
///
/// Port labels make a rooted traversal deterministic: from a root (and, in
/// rotation mode, a root frame) a breadth-first walk visiting ports in
/// increasing order numbers every vertex. The code of the component is the
/// minimum traversal code over all admissible roots and frames.
struct ComponentLabeling {
  std::string code;
  std::vector<Name> order;
  /// Per vertex of `order`, the even permutation taking its ports into the
  /// canonical frame (identity unless quotienting by rotations).
  std::vector<Permutation> frames;
};

ComponentLabeling canonical_component(const Graph& g, const std::set<Name>& component, Quotient quotient,
                                      const std::optional<Name>& root = std::nullopt, const CodeMarks& marks = {});

/// Code of the whole graph: sorted component codes. Equal codes iff isomorphic
/// (or rotation-isomorphic under Quotient::Rotation).
std::string canonical_code(const Graph& g, Quotient quotient = Quotient::None, const CodeMarks& marks = {});

/// Code of a graph with a distinguished vertex.
std::string pointed_code(const Graph& g, const Name& center, Quotient quotient = Quotient::None,
                         const CodeMarks& marks = {});

/// A renaming R with R(g) == h, if any. Ports and gluings are preserved exactly.
std::optional<std::map<Name, Name>> isomorphism(const Graph& g, const Graph& h);

/// Pointed variant: R must send `g_center` to `h_center`.
std::optional<std::map<Name, Name>> pointed_isomorphism(const Graph& g, const Name& g_center, const Graph& h,
                                                        const Name& h_center);

/// Renaming plus per-vertex rotations: rotating each vertex x of g by
/// `rotation[x]` and then renaming yields h.
struct RotationIsomorphism {
  std::map<Name, Name> renaming;
  std::map<Name, Permutation> rotation;
};

std::optional<RotationIsomorphism> rotation_isomorphism(const Graph& g, const Graph& h);

}  // namespace cdm
