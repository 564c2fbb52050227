#include "cdm/geometry.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace cdm {

namespace {

std::string port_list(PortSet s) {
  std::string out;
  for (int p : ports_of(s)) {
    if (!out.empty()) out += ',';
    out += std::to_string(p);
  }
  return "{" + out + "}";
}

// Nonempty subsets of a port set.
std::vector<PortSet> faces_of(PortSet ports) {
  std::vector<PortSet> out;
  for (PortSet sub = ports; sub; sub = static_cast<PortSet>((sub - 1) & ports)) out.push_back(sub);
  return out;
}

// Edges along which a face at its vertex can be transported.
std::vector<Edge> exits(const Graph& g, const Face& f) {
  std::vector<Edge> out;
  for (int p : ports_of(g.ports(f.vertex))) {
    if (has_port(f.ports, p)) continue;
    if (auto l = g.link({f.vertex, p})) {
      if (!has_port(l->gluing.apply(f.ports), l->to.port)) out.push_back({{f.vertex, p}, l->gluing, l->to});
    }
  }
  return out;
}

struct Reach {
  Face parent;
  Edge via;
};

// BFS tree over the (vertex, face) states reachable from f.
std::map<Face, std::optional<Reach>> explore(const Graph& g, const Face& f) {
  std::map<Face, std::optional<Reach>> seen{{f, std::nullopt}};
  std::deque<Face> queue{f};
  while (!queue.empty()) {
    Face cur = queue.front();
    queue.pop_front();
    for (const auto& e : exits(g, cur)) {
      Face next{e.to.vertex, e.gluing.apply(cur.ports)};
      if (seen.emplace(next, Reach{cur, e}).second) queue.push_back(next);
    }
  }
  return seen;
}

HingePath path_to(const std::map<Face, std::optional<Reach>>& tree, const Face& start, const Face& target) {
  HingePath h{start, {}, target};
  for (Face cur = target; tree.at(cur).has_value(); cur = tree.at(cur)->parent) h.edges.push_back(tree.at(cur)->via);
  std::reverse(h.edges.begin(), h.edges.end());
  return h;
}

}  // namespace

std::string to_string(const Face& f) { return f.vertex.str() + ":" + port_list(f.ports); }

std::string to_string(const HingePath& h) {
  std::string out = "hinge " + to_string(h.start) + " -> " + to_string(h.end) + " via [";
  for (std::size_t i = 0; i < h.edges.size(); ++i) {
    if (i) out += ", ";
    out += to_string(h.edges[i]);
  }
  return out + "]";
}

Face transport(const Face& f, const Edge& e) {
  if (e.from.vertex != f.vertex) throw GeometryError("edge does not leave the face's vertex");
  if (has_port(f.ports, e.from.port)) {
    throw GeometryError("exit port " + std::to_string(e.from.port) + " lies in face " + to_string(f));
  }
  PortSet image = e.gluing.apply(f.ports);
  if (has_port(image, e.to.port)) {
    throw GeometryError("entry port " + std::to_string(e.to.port) + " lies in the transported face");
  }
  return {e.to.vertex, image};
}

Face replay_hinge(const Graph& g, const Face& start, const std::vector<Edge>& edges) {
  Face cur = start;
  for (const auto& e : edges) {
    auto l = g.link(e.from);
    if (!l || !(*l == Graph::Link{e.gluing, e.to})) throw GeometryError("hinge uses a missing edge " + to_string(e));
    cur = transport(cur, e);
  }
  return cur;
}

std::vector<EquivalentFace> equivalent_faces(const Graph& g, const Face& f) {
  if (!g.has_vertex(f.vertex)) throw GeometryError("unknown vertex " + f.vertex.str());
  if (!f.ports || (f.ports & ~g.ports(f.vertex))) throw GeometryError("face " + to_string(f) + " is not a face of its vertex");
  auto tree = explore(g, f);
  std::vector<EquivalentFace> out;
  for (const auto& [face, _] : tree) out.push_back({face, path_to(tree, f, face)});
  return out;
}

std::vector<PortRef> covering_semi_edges(const Graph& g, const Face& f) {
  std::set<PortRef> out;
  for (const auto& eq : equivalent_faces(g, f)) {
    const Face& face = eq.face;
    for (int p : ports_of(g.ports(face.vertex))) {
      if (!has_port(face.ports, p) && g.is_semi_edge({face.vertex, p})) out.insert({face.vertex, p});
    }
  }
  return {out.begin(), out.end()};
}

bool is_border(const Graph& g, const Face& f) { return !covering_semi_edges(g, f).empty(); }

std::vector<TorsionWitness> torsion_scan(const Graph& g) {
  std::vector<TorsionWitness> out;
  std::set<Face> classified;
  for (const auto& [name, info] : g.vertices()) {
    for (PortSet sub : faces_of(info.ports)) {
      Face f{name, sub};
      if (classified.count(f)) continue;
      auto tree = explore(g, f);
      std::map<Name, std::vector<PortSet>> by_vertex;
      for (const auto& [face, _] : tree) {
        classified.insert(face);
        by_vertex[face.vertex].push_back(face.ports);
      }
      for (const auto& [v, faces] : by_vertex) {
        if (faces.size() < 2) continue;
        // hinge from the first face at v to each other one
        Face base{v, faces.front()};
        auto local = explore(g, base);
        for (std::size_t i = 1; i < faces.size(); ++i) {
          Face other{v, faces[i]};
          out.push_back({v, base.ports, other.ports, path_to(local, base, other)});
        }
      }
    }
  }
  return out;
}

bool torsion_free(const Graph& g) { return torsion_scan(g).empty(); }

bool is_normal_form(const Graph& g, const std::vector<Edge>& path) {
  for (const auto& e : path) {
    auto l = g.link(e.from);
    if (!l || !(*l == Graph::Link{e.gluing, e.to})) return false;
    if (e.from.port == e.to.port) return false;
    if (e.gluing != Permutation::transposition(g.dim(), e.from.port, e.to.port)) return false;
    PortSet expected = static_cast<PortSet>((g.ports(e.from.vertex) & ~port_bit(e.from.port)) | port_bit(e.to.port));
    if (g.ports(e.to.vertex) != expected) return false;
  }
  return true;
}

std::optional<RotationSequence> try_normalize(const Graph& g, const std::vector<Edge>& path) {
  if (path.empty()) return RotationSequence{};
  const int dim = g.dim();
  const PortSet all = full_port_set(dim);
  for (const auto& start : Permutation::even(dim)) {
    RotationAssignment rho{{path.front().from.vertex, start}};
    bool ok = true;
    for (const auto& e : path) {
      const Permutation& ru = rho.at(e.from.vertex);
      const int exit_port = ru(e.from.port);
      // normal form forces the entry port to be the one port the source lacks
      const PortSet missing = static_cast<PortSet>(all & ~ru.apply(g.ports(e.from.vertex)));
      const int entry_port = ports_of(missing).front();
      Permutation rv = Permutation::transposition(dim, exit_port, entry_port) * ru * e.gluing.inverse();
      auto [it, fresh] = rho.emplace(e.to.vertex, rv);
      if (!fresh && it->second != rv) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    Graph rotated = apply_assignment(g, rho);
    std::vector<Edge> moved;
    for (const auto& e : path) {
      const Permutation& ru = rho.at(e.from.vertex);
      const Permutation& rv = rho.at(e.to.vertex);
      moved.push_back({{e.from.vertex, ru(e.from.port)}, rv * e.gluing * ru.inverse(), {e.to.vertex, rv(e.to.port)}});
    }
    if (is_normal_form(rotated, moved)) return to_sequence(rho);
  }
  return std::nullopt;
}

std::set<Name> geometric_neighbors(const Graph& g, const Name& u) {
  std::set<Name> out{u};
  std::set<Face> seen;
  for (PortSet sub : faces_of(g.ports(u))) {
    Face f{u, sub};
    if (seen.count(f)) continue;
    for (const auto& [face, _] : explore(g, f)) {
      seen.insert(face);
      out.insert(face.vertex);
    }
  }
  return out;
}

Graph star(const Graph& g, const Name& u) { return induced_subgraph(g, geometric_neighbors(g, u)); }

namespace {

// Depth-first search for state-simple hinges; stops once one of length
// `stop_at` is found.
void deepest(const Graph& g, std::vector<Face>& states, std::vector<Edge>& edges, std::set<Face>& on_path,
             std::size_t stop_at, HingePath& best) {
  if (edges.size() > best.edges.size()) best = {states.front(), edges, states.back()};
  if (best.edges.size() >= stop_at) return;
  for (const auto& e : exits(g, states.back())) {
    Face next{e.to.vertex, e.gluing.apply(states.back().ports)};
    if (on_path.count(next)) continue;
    states.push_back(next);
    edges.push_back(e);
    on_path.insert(next);
    deepest(g, states, edges, on_path, stop_at, best);
    on_path.erase(next);
    edges.pop_back();
    states.pop_back();
    if (best.edges.size() >= stop_at) return;
  }
}

HingePath longest_path(const Graph& g, std::size_t stop_at) {
  HingePath best;
  bool first = true;
  for (const auto& [name, info] : g.vertices()) {
    for (PortSet sub : faces_of(info.ports)) {
      Face f{name, sub};
      if (first) {
        best = {f, {}, f};
        first = false;
      }
      std::vector<Face> states{f};
      std::vector<Edge> edges;
      std::set<Face> on_path{f};
      deepest(g, states, edges, on_path, stop_at, best);
      if (best.edges.size() >= stop_at) return best;
    }
  }
  return best;
}

}  // namespace

BoundedStarReport bounded_star_check(const Graph& g, int bound) {
  if (bound < 0) throw GeometryError("negative star bound");
  HingePath h = longest_path(g, static_cast<std::size_t>(bound) + 1);
  return {h.edges.size() <= static_cast<std::size_t>(bound), h};
}

std::size_t longest_hinge(const Graph& g, std::size_t cap) { return longest_path(g, cap).edges.size(); }

}  // namespace cdm
