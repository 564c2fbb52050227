#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cdm/geometry.hpp"
#include "cdm/graph.hpp"
#include "cdm/rotation.hpp"

namespace cdm {

class MoveError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The canonical sphere: complete graph on n+2 vertices, v_i with ports
/// {0..n+1} minus i, edges (v_i:j, s_ij, v_j:i).
Graph canonical_sphere(int n, const std::vector<Name>& names);

/// A subgraph H of the host sent into the canonical sphere: vertex h goes to
/// v_index[h], which is forced to be the one port h lacks.
struct SphereEmbedding {
  std::map<Name, int> index;
  std::vector<int> complement;  // sphere indices outside the image, ascending
};

/// Embeddings of the connected induced subgraphs containing `seed` that match
/// the sphere exactly (ports and gluings), strict and nonempty.
std::vector<SphereEmbedding> find_sphere_embeddings(const Graph& g, const Name& seed);

/// The embedding of exactly `vertices`, if that subgraph matches the sphere.
std::optional<SphereEmbedding> sphere_embedding_for(const Graph& g, const std::set<Name>& vertices);

struct RotatedEmbedding {
  RotationAssignment rotation;  // apply first; identity entries omitted
  SphereEmbedding embedding;
};

/// Like find_sphere_embeddings, but also accepts subgraphs that match after
/// rotating their vertices. One result per vertex subset.
std::vector<RotatedEmbedding> find_sphere_embeddings_up_to_rotation(const Graph& g, const Name& seed);

/// Deterministic fresh names `<site>_<k>` absent from g.
std::vector<Name> fresh_names(const Graph& g, const Name& site, std::size_t count);

/// Replaces H by the s01-flipped complement, rewiring every boundary edge
/// (h:p, g, u:q) to (v':p', g g', u:q) through the sphere edge e' = (v':p', g', h:p).
/// `fresh` names the complement vertices in ascending index order.
Graph bistellar(const Graph& g, const SphereEmbedding& emb, const std::vector<Name>& fresh);

/// Adds v with ports s01(ports(u)) and edges (u:p, s01, v:s01(p)) for p in S.
Graph shell_inverse(const Graph& g, const Name& u, PortSet s, const Name& fresh);

/// The vertex v would be attached to and the ports of that vertex, when v is
/// exactly the image of an inverse shelling (no edges: isolated vertex).
struct ShellSite {
  std::optional<Name> u;
  PortSet ports = 0;
};
std::optional<ShellSite> shell_site(const Graph& g, const Name& v);

/// Removes v, turning its edges back into semi-edges; throws MoveError when
/// v is not shellable as is.
Graph shell(const Graph& g, const Name& v);

/// An even rotation at v after which v is shellable.
std::optional<Permutation> shell_normalization(const Graph& g, const Name& v);

/// Glues a fresh simplex over a border face with exactly n-k covering
/// semi-edges; throws MoveError on a wrong count, mismatched port sets, or
/// when the result would be torsioned through the new vertex.
Graph standard_shell_inverse(const Graph& g, const Face& f, const Name& fresh);

struct MoveRecord {
  enum class Kind { Bistellar, Shell, Unshell, Rotate };
  Kind kind = Kind::Rotate;
  Name site;                      // seed, shelled vertex, unshell base, rotated vertex
  std::map<Name, int> sphere_map; // bistellar
  PortSet ports = 0;              // unshell
  std::vector<Name> fresh;        // bistellar complement / unshell new vertex
  Permutation perm;               // rotate

  friend bool operator==(const MoveRecord&, const MoveRecord&) = default;
};

/// `bistellar seed=<v> sphere-map=<h>:<i>,... fresh=<x>,...`,
/// `unshell u=<u> ports=<p>,... fresh=<v>`, `shell v=<v>`, `rot <v> perm <images>`.
std::string to_string(const MoveRecord& m);
MoveRecord parse_move(const std::string& line, int dim);

/// Applies a record. Missing fresh names are allocated and written back.
Graph apply_move(const Graph& g, MoveRecord& m);
Graph apply_moves(const Graph& g, std::vector<MoveRecord>& moves);

/// The record undoing `m` when applied to apply_move(before, m).
MoveRecord invert_move(const Graph& before, const MoveRecord& m);

/// Graph-local moves realising standard_shell_inverse(g, f), searched
/// breadth-first up to `budget` non-rotation moves. The target is matched up
/// to rotation and renaming.
std::optional<std::vector<MoveRecord>> decompose_standard_shelling(const Graph& g, const Face& f, int budget,
                                                                   std::size_t state_cap = 200000);

enum class Verdict { Yes, No, Unknown };
const char* verdict_name(Verdict v);

struct StarVerdict {
  Name vertex;
  Verdict verdict = Verdict::Unknown;
  std::string reason;
  std::vector<MoveRecord> moves;  // reduction to a single simplex, when found
};

struct ManifoldReport {
  Verdict verdict = Verdict::Yes;
  std::vector<StarVerdict> stars;
};

/// Per-vertex decision whether the star reduces to a single simplex.
/// n <= 2: exact, by classifying the star as a surface. n == 3: "no" on a
/// certificate (torsion, a point link that is neither disk nor sphere, a star
/// boundary that is not a sphere), "yes" when a budgeted move search reaches
/// one simplex, otherwise unknown. A star that is a whole closed sphere
/// component counts as "yes".
ManifoldReport is_discrete_manifold(const Graph& g, int budget = 2000);
StarVerdict star_verdict(const Graph& g, const Name& u, int budget = 2000);

}  // namespace cdm
