#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cdm/name.hpp"
#include "cdm/permutation.hpp"

namespace cdm {

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A port `u:p`.
struct PortRef {
  Name vertex;
  int port = 0;

  friend bool operator==(const PortRef&, const PortRef&) = default;
  friend auto operator<=>(const PortRef&, const PortRef&) = default;
};

std::string to_string(const PortRef& ref);

/// The directed edge (from, gluing, to). Every stored edge has its reverse
/// (to, gluing^-1, from) stored as well.
struct Edge {
  PortRef from;
  Permutation gluing;
  PortRef to;

  Edge reversed() const { return {to, gluing.inverse(), from}; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

std::string to_string(const Edge& e);

struct VertexInfo {
  PortSet ports = 0;
  std::string label;

  friend bool operator==(const VertexInfo&, const VertexInfo&) = default;
};

/// Port- and permutation-labeled graph encoding a pseudo-manifold of
/// n-simplices: vertices are simplices, ports are facets, and an edge
/// (u:p, g, v:q) glues facet p of u onto facet q of v with the odd
/// permutation g of {0..n+1}.
///
/// Semi-edges are not stored: a declared port without an edge is a semi-edge.
/// Directed edges are keyed by their source port, so two edges can never
/// leave the same port.
class Graph {
 public:
  struct Link {
    Permutation gluing;
    PortRef to;
    friend bool operator==(const Link&, const Link&) = default;
  };

  Graph() = default;
  explicit Graph(int dim);

  int dim() const { return dim_; }
  std::size_t size() const { return vertices_.size(); }
  bool empty() const { return vertices_.empty(); }

  void add_vertex(const Name& name, PortSet ports, std::string label = {});
  void remove_vertex(const Name& name);
  bool has_vertex(const Name& name) const { return vertices_.count(name) != 0; }
  const VertexInfo& vertex(const Name& name) const;
  PortSet ports(const Name& name) const { return vertex(name).ports; }
  void set_label(const Name& name, std::string label);
  std::vector<Name> vertex_names() const;
  const std::map<Name, VertexInfo>& vertices() const { return vertices_; }

  /// Adds (a, g, b) and (b, g^-1, a). Throws if either port already carries
  /// a different edge. Does not check gluing well-formedness (see validate).
  void add_edge(const PortRef& a, const Permutation& gluing, const PortRef& b);
  /// Adds only the directed edge; used for raw input that may violate closure.
  void add_directed_edge(const PortRef& a, const Permutation& gluing, const PortRef& b);
  /// Removes the edge at `a` and its reverse, leaving semi-edges.
  void remove_edge(const PortRef& a);

  std::optional<Link> link(const PortRef& at) const;
  bool has_edge_at(const PortRef& at) const { return links_.count(at) != 0; }
  bool is_semi_edge(const PortRef& at) const;

  /// All directed edges, ordered by source port.
  std::vector<Edge> edges() const;
  /// One edge per reciprocal pair, source port smaller than target port.
  std::vector<Edge> undirected_edges() const;
  std::vector<PortRef> semi_edges() const;
  const std::map<PortRef, Link>& links() const { return links_; }

  /// Distinct neighbors of a vertex, sorted.
  std::vector<Name> neighbors(const Name& name) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  int dim_ = 0;
  std::map<Name, VertexInfo> vertices_;
  std::map<PortRef, Link> links_;
};

/// Which graph condition a violation breaks.
enum class Condition {
  SemiEdgeConflict,   // a port is both a semi-edge and an edge
  DuplicateEdge,      // two edges leave the same port
  PortCount,          // vertex does not have exactly n+1 ports, or an edge uses an undeclared port
  Gluing,             // gluing not odd, not a bijection between port sets, or g(p) != q
  Reversal,           // reverse edge missing
  UnknownVertex,      // edge endpoint not a vertex
};

const char* condition_name(Condition c);

struct Violation {
  Condition condition;
  std::string where;
  std::string message;
};

/// Every broken graph condition, one record each. Empty means valid.
std::vector<Violation> validate(const Graph& g);
bool is_valid(const Graph& g);

/// Subgraph induced by `keep`; edges leaving it become semi-edges.
Graph induced_subgraph(const Graph& g, const std::set<Name>& keep);

/// Graph distances from `from` (unreachable vertices are absent).
std::map<Name, int> distances(const Graph& g, const Name& from);

/// The disk of radius r: vertices within distance r+1 of the center.
struct PointedDisk {
  Graph graph;
  Name center;
  int radius = 0;
};

PointedDisk disk(const Graph& g, const Name& center, int radius);

/// Consistency of two graphs. Shared vertices must agree on ports and labels,
/// and shared ports must carry the same edge. A semi-edge on one side is
/// compatible with an edge on the other only when the far endpoint of the
/// edge is absent from the semi-edge side (it is then a broken edge).
bool consistent(const Graph& a, const Graph& b);
/// Describes the first conflict, or nullopt when consistent.
std::optional<std::string> first_inconsistency(const Graph& a, const Graph& b);

/// Union of pairwise consistent graphs; throws GraphError naming the first conflict.
Graph graph_union(const std::vector<Graph>& parts);

/// Applies a vertex renaming (must be injective on V(g)).
Graph rename_vertices(const Graph& g, const std::map<Name, Name>& renaming);

/// True iff `sub` is a subgraph of `g`: vertices and ports agree, every edge
/// of `sub` is an edge of `g`.
bool is_subgraph(const Graph& sub, const Graph& g);

/// Connected components as vertex sets, in order of their smallest name.
std::vector<std::set<Name>> components(const Graph& g);

}  // namespace cdm
