#include "cdm/graph.hpp"

#include <deque>

namespace cdm {

std::string to_string(const PortRef& ref) { return ref.vertex.str() + ":" + std::to_string(ref.port); }

std::string to_string(const Edge& e) {
  return "(" + to_string(e.from) + ", " + e.gluing.to_string() + ", " + to_string(e.to) + ")";
}

const char* condition_name(Condition c) {
  switch (c) {
    case Condition::SemiEdgeConflict: return "semi-edge-conflict";
    case Condition::DuplicateEdge: return "duplicate-edge";
    case Condition::PortCount: return "port-count";
    case Condition::Gluing: return "gluing";
    case Condition::Reversal: return "reversal";
    case Condition::UnknownVertex: return "unknown-vertex";
  }
  return "?";
}

Graph::Graph(int dim) : dim_(dim) {
  if (dim < 1 || dim > kMaxDim) throw GraphError("dimension out of range: " + std::to_string(dim));
}

void Graph::add_vertex(const Name& name, PortSet ports, std::string label) {
  if (has_vertex(name)) throw GraphError("duplicate vertex " + name.str());
  if (ports & ~full_port_set(dim_)) throw GraphError("port out of range at " + name.str());
  vertices_.emplace(name, VertexInfo{ports, std::move(label)});
}

void Graph::remove_vertex(const Name& name) {
  if (!has_vertex(name)) throw GraphError("unknown vertex " + name.str());
  for (int p : ports_of(ports(name))) {
    if (has_edge_at({name, p})) remove_edge({name, p});
  }
  // raw inputs may carry dangling links into this vertex
  for (auto it = links_.begin(); it != links_.end();) {
    if (it->first.vertex == name || it->second.to.vertex == name) {
      it = links_.erase(it);
    } else {
      ++it;
    }
  }
  vertices_.erase(name);
}

const VertexInfo& Graph::vertex(const Name& name) const {
  auto it = vertices_.find(name);
  if (it == vertices_.end()) throw GraphError("unknown vertex " + name.str());
  return it->second;
}

void Graph::set_label(const Name& name, std::string label) {
  auto it = vertices_.find(name);
  if (it == vertices_.end()) throw GraphError("unknown vertex " + name.str());
  it->second.label = std::move(label);
}

std::vector<Name> Graph::vertex_names() const {
  std::vector<Name> out;
  out.reserve(vertices_.size());
  for (const auto& [n, _] : vertices_) out.push_back(n);
  return out;
}

void Graph::add_directed_edge(const PortRef& a, const Permutation& gluing, const PortRef& b) {
  auto it = links_.find(a);
  if (it != links_.end()) {
    if (it->second == Link{gluing, b}) return;
    throw GraphError("port " + to_string(a) + " already carries an edge");
  }
  links_.emplace(a, Link{gluing, b});
}

void Graph::add_edge(const PortRef& a, const Permutation& gluing, const PortRef& b) {
  if (gluing.dim() != dim_) throw GraphError("gluing dimension mismatch on " + to_string(a));
  if (a == b && gluing != gluing.inverse()) {
    throw GraphError("self-glued port " + to_string(a) + " needs an involutive gluing");
  }
  auto ia = links_.find(a);
  auto ib = links_.find(b);
  if (ia != links_.end() && !(ia->second == Link{gluing, b})) {
    throw GraphError("port " + to_string(a) + " already carries an edge");
  }
  if (ib != links_.end() && !(ib->second == Link{gluing.inverse(), a})) {
    throw GraphError("port " + to_string(b) + " already carries an edge");
  }
  links_[a] = Link{gluing, b};
  links_[b] = Link{gluing.inverse(), a};
}

void Graph::remove_edge(const PortRef& a) {
  auto it = links_.find(a);
  if (it == links_.end()) throw GraphError("no edge at " + to_string(a));
  PortRef b = it->second.to;
  links_.erase(it);
  auto back = links_.find(b);
  if (back != links_.end() && back->second.to == a) links_.erase(back);
}

std::optional<Graph::Link> Graph::link(const PortRef& at) const {
  auto it = links_.find(at);
  if (it == links_.end()) return std::nullopt;
  return it->second;
}

bool Graph::is_semi_edge(const PortRef& at) const {
  auto it = vertices_.find(at.vertex);
  return it != vertices_.end() && has_port(it->second.ports, at.port) && !has_edge_at(at);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(links_.size());
  for (const auto& [from, l] : links_) out.push_back({from, l.gluing, l.to});
  return out;
}

std::vector<Edge> Graph::undirected_edges() const {
  std::vector<Edge> out;
  for (const auto& [from, l] : links_) {
    if (from <= l.to) out.push_back({from, l.gluing, l.to});
  }
  return out;
}

std::vector<PortRef> Graph::semi_edges() const {
  std::vector<PortRef> out;
  for (const auto& [n, info] : vertices_) {
    for (int p : ports_of(info.ports)) {
      if (!has_edge_at({n, p})) out.push_back({n, p});
    }
  }
  return out;
}

std::vector<Name> Graph::neighbors(const Name& name) const {
  std::set<Name> out;
  for (int p : ports_of(ports(name))) {
    if (auto l = link({name, p})) out.insert(l->to.vertex);
  }
  return {out.begin(), out.end()};
}

std::vector<Violation> validate(const Graph& g) {
  std::vector<Violation> out;
  for (const auto& [n, info] : g.vertices()) {
    if (port_count(info.ports) != g.dim() + 1) {
      out.push_back({Condition::PortCount, n.str(),
                     "vertex has " + std::to_string(port_count(info.ports)) + " ports, expected " +
                         std::to_string(g.dim() + 1)});
    }
  }
  for (const auto& e : g.edges()) {
    const std::string where = to_string(e);
    if (!g.has_vertex(e.from.vertex) || !g.has_vertex(e.to.vertex)) {
      out.push_back({Condition::UnknownVertex, where, "edge endpoint is not a vertex"});
      continue;
    }
    PortSet pu = g.ports(e.from.vertex);
    PortSet pv = g.ports(e.to.vertex);
    if (!has_port(pu, e.from.port) || !has_port(pv, e.to.port)) {
      out.push_back({Condition::PortCount, where, "edge uses an undeclared port"});
    }
    if (!e.gluing.is_odd()) out.push_back({Condition::Gluing, where, "gluing is not odd"});
    if (e.gluing(e.from.port) != e.to.port) {
      out.push_back({Condition::Gluing, where, "gluing does not send p to q"});
    }
    if (e.gluing.apply(pu) != pv) {
      out.push_back({Condition::Gluing, where, "gluing does not map the ports of the source onto the target's"});
    }
    auto back = g.link(e.to);
    if (!back || back->to != e.from || back->gluing != e.gluing.inverse()) {
      out.push_back({Condition::Reversal, where, "reverse edge missing"});
    }
  }
  return out;
}

bool is_valid(const Graph& g) { return validate(g).empty(); }

Graph induced_subgraph(const Graph& g, const std::set<Name>& keep) {
  Graph out(g.dim());
  for (const auto& n : keep) {
    const auto& info = g.vertex(n);
    out.add_vertex(n, info.ports, info.label);
  }
  for (const auto& [from, l] : g.links()) {
    if (keep.count(from.vertex) && keep.count(l.to.vertex)) out.add_directed_edge(from, l.gluing, l.to);
  }
  return out;
}

std::map<Name, int> distances(const Graph& g, const Name& from) {
  std::map<Name, int> dist;
  if (!g.has_vertex(from)) throw GraphError("unknown vertex " + from.str());
  std::deque<Name> queue{from};
  dist[from] = 0;
  while (!queue.empty()) {
    Name u = queue.front();
    queue.pop_front();
    for (const auto& v : g.neighbors(u)) {
      if (dist.emplace(v, dist[u] + 1).second) queue.push_back(v);
    }
  }
  return dist;
}

PointedDisk disk(const Graph& g, const Name& center, int radius) {
  if (radius < 0) throw GraphError("negative radius");
  std::set<Name> keep;
  for (const auto& [n, d] : distances(g, center)) {
    if (d <= radius + 1) keep.insert(n);
  }
  return {induced_subgraph(g, keep), center, radius};
}

std::optional<std::string> first_inconsistency(const Graph& a, const Graph& b) {
  if (a.dim() != b.dim()) return "dimension mismatch";
  for (const auto& [n, ia] : a.vertices()) {
    if (!b.has_vertex(n)) continue;
    const auto& ib = b.vertex(n);
    if (ia.ports != ib.ports) return "vertex " + n.str() + " has different ports";
    if (ia.label != ib.label) return "vertex " + n.str() + " has different labels";
    for (int p : ports_of(ia.ports)) {
      PortRef at{n, p};
      auto la = a.link(at);
      auto lb = b.link(at);
      if (la && lb) {
        if (!(*la == *lb)) return "port " + to_string(at) + " is glued differently";
      } else if (la && b.has_vertex(la->to.vertex)) {
        return "port " + to_string(at) + " is an edge in one graph and a semi-edge in the other";
      } else if (lb && a.has_vertex(lb->to.vertex)) {
        return "port " + to_string(at) + " is an edge in one graph and a semi-edge in the other";
      }
    }
  }
  return std::nullopt;
}

bool consistent(const Graph& a, const Graph& b) { return !first_inconsistency(a, b).has_value(); }

Graph graph_union(const std::vector<Graph>& parts) {
  if (parts.empty()) throw GraphError("union of no graphs");
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      if (auto why = first_inconsistency(parts[i], parts[j])) {
        throw GraphError("inconsistent union (parts " + std::to_string(i) + ", " + std::to_string(j) + "): " + *why);
      }
    }
  }
  Graph out(parts.front().dim());
  for (const auto& g : parts) {
    for (const auto& [n, info] : g.vertices()) {
      if (!out.has_vertex(n)) out.add_vertex(n, info.ports, info.label);
    }
  }
  for (const auto& g : parts) {
    for (const auto& [from, l] : g.links()) out.add_directed_edge(from, l.gluing, l.to);
  }
  return out;
}

Graph rename_vertices(const Graph& g, const std::map<Name, Name>& renaming) {
  auto r = [&](const Name& n) {
    auto it = renaming.find(n);
    if (it == renaming.end()) throw GraphError("renaming misses vertex " + n.str());
    return it->second;
  };
  Graph out(g.dim());
  for (const auto& [n, info] : g.vertices()) out.add_vertex(r(n), info.ports, info.label);
  for (const auto& [from, l] : g.links()) {
    out.add_directed_edge({r(from.vertex), from.port}, l.gluing, {r(l.to.vertex), l.to.port});
  }
  return out;
}

bool is_subgraph(const Graph& sub, const Graph& g) {
  if (sub.dim() != g.dim()) return false;
  for (const auto& [n, info] : sub.vertices()) {
    if (!g.has_vertex(n) || g.vertex(n) != info) return false;
  }
  for (const auto& [from, l] : sub.links()) {
    auto other = g.link(from);
    if (!other || !(*other == l)) return false;
  }
  return true;
}

std::vector<std::set<Name>> components(const Graph& g) {
  std::vector<std::set<Name>> out;
  std::set<Name> seen;
  for (const auto& n : g.vertex_names()) {
    if (seen.count(n)) continue;
    std::set<Name> comp;
    for (const auto& [m, _] : distances(g, n)) comp.insert(m);
    seen.insert(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

}  // namespace cdm
