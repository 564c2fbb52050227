#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cdm/graph.hpp"
#include "cdm/rotation.hpp"

namespace cdm {

class GeometryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A k-face at a vertex: k+1 of its ports, read as the simplex points
/// opposite those facets.
struct Face {
  Name vertex;
  PortSet ports = 0;

  int k() const { return port_count(ports) - 1; }
  friend bool operator==(const Face&, const Face&) = default;
  friend auto operator<=>(const Face&, const Face&) = default;
};

std::string to_string(const Face& f);

/// A hinge: directed edges e_1..e_m carrying `start` to `end`. At every
/// step the exit and entry ports lie outside the transported face.
struct HingePath {
  Face start;
  std::vector<Edge> edges;
  Face end;

  std::size_t length() const { return edges.size(); }
};

/// `hinge <u>:<ports> -> <u'>:<ports'> via <edge list>`
std::string to_string(const HingePath& h);

/// Moves `f` across `e` = (u:p, g, v:q): requires u == f.vertex and
/// p, q outside the face. Returns Face(v, g(f)).
Face transport(const Face& f, const Edge& e);

/// Replays a hinge path, checking every step; returns the end face.
Face replay_hinge(const Graph& g, const Face& start, const std::vector<Edge>& edges);

struct EquivalentFace {
  Face face;
  HingePath witness;  // shortest hinge from the query face
};

/// Breadth-first closure of transport; includes the face itself with the empty hinge.
std::vector<EquivalentFace> equivalent_faces(const Graph& g, const Face& f);

/// S(G) intersected with the ports outside every face equivalent to f.
std::vector<PortRef> covering_semi_edges(const Graph& g, const Face& f);
bool is_border(const Graph& g, const Face& f);

struct TorsionWitness {
  Name vertex;
  PortSet face = 0;
  PortSet other = 0;
  HingePath hinge;
};

/// Every pair of distinct faces at one vertex that are equivalent, with a
/// hinge between them. Empty iff the graph is torsion-free.
std::vector<TorsionWitness> torsion_scan(const Graph& g);
bool torsion_free(const Graph& g);

/// True iff every step has gluing s_{p q} and the port set changes only by p -> q.
bool is_normal_form(const Graph& g, const std::vector<Edge>& path);

/// Even rotations at the path's vertices putting it in normal form, if any.
/// The rotation at the first vertex determines all the others, so the search
/// over it is exhaustive.
std::optional<RotationSequence> try_normalize(const Graph& g, const std::vector<Edge>& path);

/// Vertices sharing an equivalent face with u (u included).
std::set<Name> geometric_neighbors(const Graph& g, const Name& u);

/// Induced subgraph on u and its geometric neighbors.
Graph star(const Graph& g, const Name& u);

struct BoundedStarReport {
  bool bounded = true;
  /// Longest state-simple hinge seen; longer than the bound when unbounded.
  HingePath longest;
};

/// True iff no hinge without repeated (vertex, face) states is longer than `bound`.
BoundedStarReport bounded_star_check(const Graph& g, int bound);

/// Length of the longest state-simple hinge, searching no deeper than `cap`.
std::size_t longest_hinge(const Graph& g, std::size_t cap);

}  // namespace cdm
