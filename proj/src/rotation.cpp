#include "cdm/rotation.hpp"

#include <deque>

namespace cdm {

namespace {

// Applies arbitrary permutations at several vertices at once, parity unchecked.
Graph permute_vertices(const Graph& g, const RotationAssignment& perms, const LabelAction& action) {
  auto perm_at = [&](const Name& n) -> const Permutation* {
    auto it = perms.find(n);
    return it == perms.end() ? nullptr : &it->second;
  };
  Graph out(g.dim());
  for (const auto& [n, info] : g.vertices()) {
    const Permutation* r = perm_at(n);
    if (!r) {
      out.add_vertex(n, info.ports, info.label);
      continue;
    }
    out.add_vertex(n, r->apply(info.ports), action ? action(*r, info.label) : info.label);
  }
  for (const auto& [from, l] : g.links()) {
    const Permutation* rs = perm_at(from.vertex);
    const Permutation* rt = perm_at(l.to.vertex);
    Permutation gluing = l.gluing;
    PortRef a = from;
    PortRef b = l.to;
    if (rs) {
      gluing = gluing * rs->inverse();
      a.port = (*rs)(a.port);
    }
    if (rt) {
      gluing = (*rt) * gluing;
      b.port = (*rt)(b.port);
    }
    out.add_directed_edge(a, gluing, b);
  }
  return out;
}

}  // namespace

Graph apply_rotation(const Graph& g, const VertexRotation& rot, const LabelAction& action) {
  if (!rot.perm.is_even()) throw ParityError("vertex rotation at " + rot.vertex.str() + " is odd");
  if (!g.has_vertex(rot.vertex)) throw GraphError("unknown vertex " + rot.vertex.str());
  return permute_vertices(g, {{rot.vertex, rot.perm}}, action);
}

Graph apply_rotation_sequence(const Graph& g, const RotationSequence& seq, const LabelAction& action) {
  Graph out = g;
  for (const auto& step : seq) out = apply_rotation(out, step, action);
  return out;
}

Graph apply_assignment(const Graph& g, const RotationAssignment& assignment, const LabelAction& action) {
  RotationAssignment present;
  for (const auto& [n, r] : assignment) {
    if (!r.is_even()) throw ParityError("vertex rotation at " + n.str() + " is odd");
    if (g.has_vertex(n)) present.emplace(n, r);
  }
  return permute_vertices(g, present, action);
}

Graph apply_symmetry_sequence(const Graph& g, const RotationSequence& seq, const LabelAction& action) {
  Graph out = g;
  for (const auto& step : seq) {
    if (!step.perm.is_odd()) throw ParityError("symmetry at " + step.vertex.str() + " is even");
    if (!out.has_vertex(step.vertex)) throw GraphError("unknown vertex " + step.vertex.str());
    out = permute_vertices(out, {{step.vertex, step.perm}}, action);
  }
  for (const auto& e : out.undirected_edges()) {
    if (!e.gluing.is_odd()) throw ParityError("symmetry sequence leaves an even gluing on " + to_string(e));
  }
  return out;
}

Permutation net_rotation(const RotationSequence& seq, const Name& u, int dim) {
  Permutation net = Permutation::identity(dim);
  for (const auto& step : seq) {
    if (step.vertex == u) net = step.perm * net;
  }
  return net;
}

RotationAssignment net_rotations(const RotationSequence& seq) {
  RotationAssignment out;
  for (const auto& step : seq) {
    auto it = out.find(step.vertex);
    if (it == out.end()) {
      out.emplace(step.vertex, step.perm);
    } else {
      it->second = step.perm * it->second;
    }
  }
  return out;
}

RotationSequence to_sequence(const RotationAssignment& assignment) {
  RotationSequence out;
  for (const auto& [n, r] : assignment) {
    if (!r.is_identity()) out.push_back({n, r});
  }
  return out;
}

RotationAssignment inverse(const RotationAssignment& assignment) {
  RotationAssignment out;
  for (const auto& [n, r] : assignment) out.emplace(n, r.inverse());
  return out;
}

bool sequences_consistent(const RotationSequence& a, const RotationSequence& b, const std::set<Name>& shared,
                          int dim) {
  for (const auto& u : shared) {
    if (net_rotation(a, u, dim) != net_rotation(b, u, dim)) return false;
  }
  return true;
}

RotationSequence merge_rotations(const std::vector<std::pair<Graph, RotationSequence>>& pairs) {
  if (pairs.empty()) return {};
  const int dim = pairs.front().first.dim();
  std::vector<Graph> rotated;
  for (const auto& [g, seq] : pairs) {
    for (const auto& step : seq) {
      if (!g.has_vertex(step.vertex)) throw MergeError("sequence rotates " + step.vertex.str() + " outside its graph");
    }
    rotated.push_back(apply_rotation_sequence(g, seq));
  }
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      if (auto why = first_inconsistency(pairs[i].first, pairs[j].first)) throw MergeError("graphs inconsistent: " + *why);
      if (auto why = first_inconsistency(rotated[i], rotated[j])) {
        throw MergeError("rotated graphs inconsistent: " + *why);
      }
      std::set<Name> shared;
      for (const auto& n : pairs[i].first.vertex_names()) {
        if (pairs[j].first.has_vertex(n)) shared.insert(n);
      }
      if (!sequences_consistent(pairs[i].second, pairs[j].second, shared, dim)) {
        throw MergeError("rotation sequences disagree on a shared vertex");
      }
    }
  }
  // Each vertex takes the net rotation of the first graph holding it; on
  // shared vertices all candidates agree, and by commutation of rotations at
  // distinct vertices the order of the gathered steps is irrelevant.
  RotationAssignment merged;
  for (const auto& [g, seq] : pairs) {
    for (const auto& n : g.vertex_names()) {
      if (!merged.count(n)) merged.emplace(n, net_rotation(seq, n, dim));
    }
  }
  return to_sequence(merged);
}

std::optional<RotationAssignment> rotation_equivalence_assignment(const Graph& g, const Graph& h,
                                                                  const LabelAction& action) {
  if (g.dim() != h.dim() || g.size() != h.size()) return std::nullopt;
  for (const auto& n : g.vertex_names()) {
    if (!h.has_vertex(n)) return std::nullopt;
  }
  const int dim = g.dim();
  RotationAssignment result;
  for (const auto& comp : components(g)) {
    const Name root = *comp.begin();
    bool found = false;
    for (const auto& start : Permutation::even(dim)) {
      RotationAssignment rho{{root, start}};
      std::deque<Name> queue{root};
      bool ok = true;
      while (ok && !queue.empty()) {
        const Name x = queue.front();
        queue.pop_front();
        const Permutation rx = rho.at(x);
        const auto& gx = g.vertex(x);
        const auto& hx = h.vertex(x);
        if (rx.apply(gx.ports) != hx.ports) {
          ok = false;
          break;
        }
        if ((action ? action(rx, gx.label) : gx.label) != hx.label) {
          ok = false;
          break;
        }
        for (int p : ports_of(gx.ports)) {
          auto lg = g.link({x, p});
          auto lh = h.link({x, rx(p)});
          if (!lg || !lh) {
            if (lg || lh) ok = false;
            if (!ok) break;
            continue;
          }
          const Name& y = lg->to.vertex;
          if (lh->to.vertex != y) {
            ok = false;
            break;
          }
          Permutation ry = lh->gluing * rx * lg->gluing.inverse();
          if (ry(lg->to.port) != lh->to.port) {
            ok = false;
            break;
          }
          auto [it, fresh] = rho.emplace(y, ry);
          if (fresh) {
            queue.push_back(y);
          } else if (it->second != ry) {
            ok = false;
            break;
          }
        }
      }
      if (ok) {
        result.insert(rho.begin(), rho.end());
        found = true;
        break;
      }
    }
    if (!found) return std::nullopt;
  }
  return result;
}

std::optional<RotationSequence> rotation_equivalent(const Graph& g, const Graph& h, const LabelAction& action) {
  auto a = rotation_equivalence_assignment(g, h, action);
  if (!a) return std::nullopt;
  return to_sequence(*a);
}

}  // namespace cdm
