#include "cdm/pachner.hpp"

#include <algorithm>
#include <functional>
#include <tuple>
#include <deque>
#include <queue>
#include <set>
#include <sstream>

#include "cdm/canonical.hpp"
#include "cdm/surface.hpp"

namespace cdm {

namespace {

int missing_port(int dim, PortSet ports) {
  return ports_of(static_cast<PortSet>(full_port_set(dim) & ~ports)).front();
}

Permutation flip(int dim) { return Permutation::transposition(dim, 0, 1); }

std::string csv(PortSet s) {
  std::string out;
  for (int p : ports_of(s)) {
    if (!out.empty()) out += ',';
    out += std::to_string(p);
  }
  return out;
}

// Splits on commas outside braces (derived names contain commas).
std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '{') ++depth;
    if (c == '}') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

int parse_int(const std::string& s) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    throw MoveError("expected a number, got '" + s + "'");
  }
  if (used != s.size()) throw MoveError("expected a number, got '" + s + "'");
  return v;
}

std::set<std::tuple<Name, PortSet, PortSet>> torsion_pairs(const Graph& g) {
  std::set<std::tuple<Name, PortSet, PortSet>> out;
  for (const auto& w : torsion_scan(g)) out.emplace(w.vertex, std::min(w.face, w.other), std::max(w.face, w.other));
  return out;
}

}  // namespace

Graph canonical_sphere(int n, const std::vector<Name>& names) {
  if (names.size() != static_cast<std::size_t>(n + 2)) throw MoveError("canonical sphere needs n+2 names");
  if (std::set<Name>(names.begin(), names.end()).size() != names.size()) throw MoveError("sphere names must be distinct");
  Graph g(n);
  const PortSet all = full_port_set(n);
  for (int i = 0; i < n + 2; ++i) g.add_vertex(names[static_cast<std::size_t>(i)], static_cast<PortSet>(all & ~port_bit(i)));
  for (int i = 0; i < n + 2; ++i) {
    for (int j = i + 1; j < n + 2; ++j) {
      g.add_edge({names[static_cast<std::size_t>(i)], j}, Permutation::transposition(n, i, j),
                 {names[static_cast<std::size_t>(j)], i});
    }
  }
  return g;
}

std::optional<SphereEmbedding> sphere_embedding_for(const Graph& g, const std::set<Name>& vertices) {
  const int n = g.dim();
  if (vertices.empty() || vertices.size() > static_cast<std::size_t>(n + 1)) return std::nullopt;
  SphereEmbedding emb;
  std::map<int, Name> by_index;
  for (const auto& h : vertices) {
    if (!g.has_vertex(h)) return std::nullopt;
    int i = missing_port(n, g.ports(h));
    if (!by_index.emplace(i, h).second) return std::nullopt;
    emb.index.emplace(h, i);
  }
  for (const auto& [h, i] : emb.index) {
    for (int p : ports_of(g.ports(h))) {
      auto l = g.link({h, p});
      auto it = by_index.find(p);
      if (it != by_index.end()) {
        if (!l || l->to != PortRef{it->second, i} || l->gluing != Permutation::transposition(n, i, p)) return std::nullopt;
      } else if (l && vertices.count(l->to.vertex)) {
        return std::nullopt;
      }
    }
  }
  for (int j = 0; j < n + 2; ++j) {
    if (!by_index.count(j)) emb.complement.push_back(j);
  }
  return emb;
}

namespace {

// Vertex subsets {seed} plus up to n neighbors, in a fixed order.
std::vector<std::set<Name>> candidate_sets(const Graph& g, const Name& seed) {
  std::vector<Name> nbrs;
  for (const auto& x : g.neighbors(seed)) {
    if (x != seed) nbrs.push_back(x);
  }
  std::vector<std::set<Name>> out;
  const std::size_t limit = static_cast<std::size_t>(g.dim()) + 1;
  for (std::uint32_t mask = 0; mask < (1u << nbrs.size()); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) + 1 > limit) continue;
    std::set<Name> s{seed};
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      if (mask & (1u << k)) s.insert(nbrs[k]);
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

std::vector<SphereEmbedding> find_sphere_embeddings(const Graph& g, const Name& seed) {
  if (!g.has_vertex(seed)) throw MoveError("unknown vertex " + seed.str());
  std::vector<SphereEmbedding> out;
  for (const auto& s : candidate_sets(g, seed)) {
    if (auto e = sphere_embedding_for(g, s)) out.push_back(std::move(*e));
  }
  return out;
}

std::vector<RotatedEmbedding> find_sphere_embeddings_up_to_rotation(const Graph& g, const Name& seed) {
  if (!g.has_vertex(seed)) throw MoveError("unknown vertex " + seed.str());
  const int n = g.dim();
  std::vector<RotatedEmbedding> out;
  for (const auto& s : candidate_sets(g, seed)) {
    for (const auto& start : Permutation::even(n)) {
      RotationAssignment rho{{seed, start}};
      std::deque<Name> queue{seed};
      bool ok = true;
      while (ok && !queue.empty()) {
        Name x = queue.front();
        queue.pop_front();
        const Permutation rx = rho.at(x);
        const int ix = missing_port(n, rx.apply(g.ports(x)));
        for (int p : ports_of(g.ports(x))) {
          auto l = g.link({x, p});
          if (!l || !s.count(l->to.vertex)) continue;
          Permutation ry = Permutation::transposition(n, ix, rx(p)) * rx * l->gluing.inverse();
          auto [it, fresh] = rho.emplace(l->to.vertex, ry);
          if (fresh) {
            queue.push_back(l->to.vertex);
          } else if (it->second != ry) {
            ok = false;
            break;
          }
        }
      }
      if (!ok || rho.size() != s.size()) continue;
      auto emb = sphere_embedding_for(apply_assignment(g, rho), s);
      if (!emb) continue;
      RotationAssignment kept;
      for (const auto& [v, r] : rho) {
        if (!r.is_identity()) kept.emplace(v, r);
      }
      out.push_back({std::move(kept), std::move(*emb)});
      break;
    }
  }
  return out;
}

std::vector<Name> fresh_names(const Graph& g, const Name& site, std::size_t count) {
  const std::string base = site.is_derived() ? "n" : site.str();
  std::vector<Name> out;
  for (int k = 1; out.size() < count; ++k) {
    Name candidate = Name::atom(base + "_" + std::to_string(k));
    if (!g.has_vertex(candidate)) out.push_back(candidate);
  }
  return out;
}

Graph bistellar(const Graph& g, const SphereEmbedding& emb, const std::vector<Name>& fresh) {
  const int n = g.dim();
  std::set<Name> h;
  for (const auto& [v, _] : emb.index) h.insert(v);
  auto actual = sphere_embedding_for(g, h);
  if (!actual || actual->index != emb.index) throw MoveError("subgraph is not an induced strict piece of the canonical sphere");
  if (fresh.size() != actual->complement.size()) throw MoveError("wrong number of fresh names");
  std::set<Name> seen;
  for (const auto& x : fresh) {
    if (g.has_vertex(x) || !seen.insert(x).second) throw MoveError("fresh name " + x.str() + " collides");
  }
  const Permutation s01 = flip(n);
  const PortSet all = full_port_set(n);
  std::map<int, Name> name_of;
  for (std::size_t k = 0; k < fresh.size(); ++k) name_of.emplace(actual->complement[k], fresh[k]);

  struct Rewire {
    PortRef from;
    Permutation gluing;
    PortRef to;
  };
  std::vector<Rewire> rewired;
  for (const auto& [v, i] : actual->index) {
    for (int p : ports_of(g.ports(v))) {
      if (!name_of.count(p)) continue;
      auto l = g.link({v, p});
      if (!l) continue;
      // e' = (v_p : s01(i), s_pi s01, v_i : p)
      rewired.push_back({{name_of.at(p), s01(i)}, l->gluing * Permutation::transposition(n, p, i) * s01, l->to});
    }
  }
  Graph out = g;
  for (const auto& v : h) out.remove_vertex(v);
  for (const auto& [j, x] : name_of) out.add_vertex(x, s01.apply(static_cast<PortSet>(all & ~port_bit(j))));
  for (const auto& [j, x] : name_of) {
    for (const auto& [k, y] : name_of) {
      if (j < k) out.add_edge({x, s01(k)}, s01 * Permutation::transposition(n, j, k) * s01, {y, s01(j)});
    }
  }
  for (const auto& r : rewired) out.add_edge(r.from, r.gluing, r.to);
  return out;
}

Graph shell_inverse(const Graph& g, const Name& u, PortSet s, const Name& fresh) {
  const int n = g.dim();
  if (!g.has_vertex(u)) throw MoveError("unknown vertex " + u.str());
  if (port_count(s) > n) throw MoveError("an inverse shelling uses at most n free ports");
  for (int p : ports_of(s)) {
    if (!has_port(g.ports(u), p) || !g.is_semi_edge({u, p})) {
      throw MoveError("port " + u.str() + ":" + std::to_string(p) + " is not free");
    }
  }
  if (g.has_vertex(fresh)) throw MoveError("fresh name " + fresh.str() + " collides");
  const Permutation s01 = flip(n);
  Graph out = g;
  out.add_vertex(fresh, s01.apply(g.ports(u)));
  for (int p : ports_of(s)) out.add_edge({u, p}, s01, {fresh, s01(p)});
  return out;
}

std::optional<ShellSite> shell_site(const Graph& g, const Name& v) {
  if (!g.has_vertex(v)) return std::nullopt;
  const int n = g.dim();
  const Permutation s01 = flip(n);
  ShellSite site;
  int count = 0;
  for (int q : ports_of(g.ports(v))) {
    auto l = g.link({v, q});
    if (!l) continue;
    if (l->to.vertex == v) return std::nullopt;
    if (site.u && *site.u != l->to.vertex) return std::nullopt;
    site.u = l->to.vertex;
    if (l->gluing != s01 || l->to.port != s01(q)) return std::nullopt;
    site.ports |= port_bit(l->to.port);
    ++count;
  }
  if (count > n) return std::nullopt;
  if (site.u && g.ports(v) != s01.apply(g.ports(*site.u))) return std::nullopt;
  return site;
}

Graph shell(const Graph& g, const Name& v) {
  if (!g.has_vertex(v)) throw MoveError("unknown vertex " + v.str());
  if (!shell_site(g, v)) throw MoveError("vertex " + v.str() + " is not shellable");
  Graph out = g;
  out.remove_vertex(v);
  return out;
}

std::optional<Permutation> shell_normalization(const Graph& g, const Name& v) {
  if (!g.has_vertex(v)) return std::nullopt;
  for (const auto& r : Permutation::even(g.dim())) {
    if (shell_site(apply_rotation(g, {v, r}), v)) return r;
  }
  return std::nullopt;
}

Graph standard_shell_inverse(const Graph& g, const Face& f, const Name& fresh) {
  const int n = g.dim();
  auto cover = covering_semi_edges(g, f);
  const int need = n - f.k();
  if (need <= 0) throw MoveError("face " + to_string(f) + " is a whole simplex");
  if (cover.size() != static_cast<std::size_t>(need)) {
    throw MoveError("face " + to_string(f) + " has " + std::to_string(cover.size()) + " covering semi-edges, expected " +
                    std::to_string(need));
  }
  const PortSet ports = g.ports(cover.front().vertex);
  PortSet used = 0;
  for (const auto& c : cover) {
    if (g.ports(c.vertex) != ports) throw MoveError("covering semi-edges sit on simplices with different port sets");
    if (has_port(used, c.port)) throw MoveError("two covering semi-edges share port " + std::to_string(c.port));
    used |= port_bit(c.port);
  }
  if (g.has_vertex(fresh)) throw MoveError("fresh name " + fresh.str() + " collides");
  const Permutation s01 = flip(n);
  Graph out = g;
  out.add_vertex(fresh, s01.apply(ports));
  for (const auto& c : cover) out.add_edge(c, s01, {fresh, s01(c.port)});
  auto before = torsion_pairs(g);
  for (const auto& t : torsion_pairs(out)) {
    if (!before.count(t)) throw MoveError("inverse shelling would create torsion at " + std::get<0>(t).str());
  }
  return out;
}

std::string to_string(const MoveRecord& m) {
  auto names = [](const std::vector<Name>& xs) {
    std::string s;
    for (const auto& x : xs) {
      if (!s.empty()) s += ',';
      s += x.str();
    }
    return s;
  };
  switch (m.kind) {
    case MoveRecord::Kind::Bistellar: {
      std::string s = "bistellar seed=" + m.site.str() + " sphere-map=";
      bool first = true;
      for (const auto& [h, i] : m.sphere_map) {
        if (!first) s += ',';
        first = false;
        s += h.str() + ":" + std::to_string(i);
      }
      if (!m.fresh.empty()) s += " fresh=" + names(m.fresh);
      return s;
    }
    case MoveRecord::Kind::Unshell: {
      std::string s = "unshell u=" + m.site.str() + " ports=" + csv(m.ports);
      if (!m.fresh.empty()) s += " fresh=" + names(m.fresh);
      return s;
    }
    case MoveRecord::Kind::Shell:
      return "shell v=" + m.site.str();
    case MoveRecord::Kind::Rotate:
      return "rot " + m.site.str() + " perm " + m.perm.to_string();
  }
  return {};
}

MoveRecord parse_move(const std::string& line, int dim) {
  std::istringstream in(line);
  std::vector<std::string> tokens;
  for (std::string t; in >> t;) tokens.push_back(t);
  if (tokens.empty()) throw MoveError("empty move");
  MoveRecord m;
  auto keyed = [&](std::size_t from) {
    std::map<std::string, std::string> kv;
    for (std::size_t i = from; i < tokens.size(); ++i) {
      auto eq = tokens[i].find('=');
      if (eq == std::string::npos) throw MoveError("expected key=value, got '" + tokens[i] + "'");
      kv[tokens[i].substr(0, eq)] = tokens[i].substr(eq + 1);
    }
    return kv;
  };
  auto required = [](const std::map<std::string, std::string>& kv, const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end()) throw MoveError("missing " + key + "=");
    return it->second;
  };
  auto name_list = [](const std::string& text) {
    std::vector<Name> out;
    for (const auto& s : split_list(text)) out.emplace_back(s);
    return out;
  };
  const std::string& kind = tokens.front();
  try {
    if (kind == "rot") {
      if (tokens.size() != 4 || tokens[2] != "perm") throw MoveError("expected: rot <vertex> perm <images>");
      m.kind = MoveRecord::Kind::Rotate;
      m.site = Name(tokens[1]);
      m.perm = Permutation::parse(dim, tokens[3]);
    } else if (kind == "shell") {
      auto kv = keyed(1);
      m.kind = MoveRecord::Kind::Shell;
      m.site = Name(required(kv, "v"));
    } else if (kind == "unshell") {
      auto kv = keyed(1);
      m.kind = MoveRecord::Kind::Unshell;
      m.site = Name(required(kv, "u"));
      for (const auto& p : split_list(required(kv, "ports"))) {
        int port = parse_int(p);
        if (port < 0 || port > dim + 1) throw MoveError("port out of range: " + p);
        m.ports |= port_bit(port);
      }
      if (kv.count("fresh")) m.fresh = name_list(kv.at("fresh"));
    } else if (kind == "bistellar") {
      auto kv = keyed(1);
      m.kind = MoveRecord::Kind::Bistellar;
      m.site = Name(required(kv, "seed"));
      for (const auto& entry : split_list(required(kv, "sphere-map"))) {
        auto colon = entry.rfind(':');
        if (colon == std::string::npos) throw MoveError("sphere-map entries are <vertex>:<index>");
        m.sphere_map.emplace(Name(entry.substr(0, colon)), parse_int(entry.substr(colon + 1)));
      }
      if (kv.count("fresh")) m.fresh = name_list(kv.at("fresh"));
    } else {
      throw MoveError("unknown move '" + kind + "'");
    }
  } catch (const MoveError&) {
    throw;
  } catch (const std::exception& e) {
    throw MoveError(e.what());
  }
  return m;
}

Graph apply_move(const Graph& g, MoveRecord& m) {
  switch (m.kind) {
    case MoveRecord::Kind::Rotate:
      if (!g.has_vertex(m.site)) throw MoveError("unknown vertex " + m.site.str());
      return apply_rotation(g, {m.site, m.perm});
    case MoveRecord::Kind::Shell:
      return shell(g, m.site);
    case MoveRecord::Kind::Unshell:
      if (m.fresh.empty()) m.fresh = fresh_names(g, m.site, 1);
      if (m.fresh.size() != 1) throw MoveError("unshell takes one fresh name");
      return shell_inverse(g, m.site, m.ports, m.fresh.front());
    case MoveRecord::Kind::Bistellar: {
      if (!m.sphere_map.count(m.site)) throw MoveError("seed missing from the sphere map");
      std::set<Name> h;
      for (const auto& [v, _] : m.sphere_map) h.insert(v);
      auto emb = sphere_embedding_for(g, h);
      if (!emb || emb->index != m.sphere_map) throw MoveError("sphere map does not match the graph at " + m.site.str());
      if (m.fresh.empty()) m.fresh = fresh_names(g, m.site, emb->complement.size());
      return bistellar(g, *emb, m.fresh);
    }
  }
  return g;
}

Graph apply_moves(const Graph& g, std::vector<MoveRecord>& moves) {
  Graph out = g;
  for (auto& m : moves) out = apply_move(out, m);
  return out;
}

MoveRecord invert_move(const Graph& before, const MoveRecord& m) {
  MoveRecord copy = m;
  Graph after = apply_move(before, copy);
  const int n = before.dim();
  MoveRecord inv;
  switch (m.kind) {
    case MoveRecord::Kind::Rotate:
      inv.kind = MoveRecord::Kind::Rotate;
      inv.site = m.site;
      inv.perm = m.perm.inverse();
      break;
    case MoveRecord::Kind::Unshell:
      inv.kind = MoveRecord::Kind::Shell;
      inv.site = copy.fresh.front();
      break;
    case MoveRecord::Kind::Shell: {
      auto site = shell_site(before, m.site);
      if (!site || !site->u) throw MoveError("cannot invert the removal of an isolated vertex");
      inv.kind = MoveRecord::Kind::Unshell;
      inv.site = *site->u;
      inv.ports = site->ports;
      inv.fresh = {m.site};
      break;
    }
    case MoveRecord::Kind::Bistellar: {
      const Permutation s01 = flip(n);
      inv.kind = MoveRecord::Kind::Bistellar;
      inv.site = copy.fresh.front();
      for (const auto& x : copy.fresh) inv.sphere_map.emplace(x, missing_port(n, after.ports(x)));
      std::map<int, Name> by_new_index;
      for (const auto& [h, i] : m.sphere_map) by_new_index.emplace(s01(i), h);
      for (const auto& [_, h] : by_new_index) inv.fresh.push_back(h);
      break;
    }
  }
  return inv;
}

namespace {

struct Successor {
  Graph graph;
  std::vector<MoveRecord> moves;
};

MoveRecord rot_record(const Name& v, const Permutation& r) {
  MoveRecord m;
  m.kind = MoveRecord::Kind::Rotate;
  m.site = v;
  m.perm = r;
  return m;
}

void add_successor(const Graph& g, std::vector<MoveRecord> moves, std::vector<Successor>& out) {
  try {
    Graph next = apply_moves(g, moves);
    out.push_back({std::move(next), std::move(moves)});
  } catch (const std::exception&) {
  }
}

std::vector<Successor> shell_moves(const Graph& g) {
  std::vector<Successor> out;
  for (const auto& v : g.vertex_names()) {
    if (g.size() == 1) break;
    MoveRecord sh;
    sh.kind = MoveRecord::Kind::Shell;
    sh.site = v;
    if (shell_site(g, v)) {
      add_successor(g, {sh}, out);
    } else if (auto r = shell_normalization(g, v)) {
      add_successor(g, {rot_record(v, *r), sh}, out);
    }
  }
  return out;
}

// Bistellar moves on every sphere piece found up to rotation; `keep` filters
// by (|H|, |complement|).
template <class Keep>
std::vector<Successor> bistellar_moves(const Graph& g, Keep keep) {
  std::vector<Successor> out;
  std::set<std::set<Name>> done;
  for (const auto& seed : g.vertex_names()) {
    for (const auto& re : find_sphere_embeddings_up_to_rotation(g, seed)) {
      std::set<Name> h;
      for (const auto& [v, _] : re.embedding.index) h.insert(v);
      if (!done.insert(h).second) continue;
      if (!keep(h.size(), re.embedding.complement.size())) continue;
      std::vector<MoveRecord> moves;
      for (const auto& [v, r] : re.rotation) moves.push_back(rot_record(v, r));
      MoveRecord b;
      b.kind = MoveRecord::Kind::Bistellar;
      b.site = seed;
      b.sphere_map = re.embedding.index;
      moves.push_back(b);
      add_successor(g, std::move(moves), out);
    }
  }
  return out;
}

std::vector<Successor> unshell_moves(const Graph& g) {
  std::vector<Successor> out;
  const int n = g.dim();
  for (const auto& [u, info] : g.vertices()) {
    PortSet free = 0;
    for (int p : ports_of(info.ports)) {
      if (g.is_semi_edge({u, p})) free |= port_bit(p);
    }
    for (PortSet s = free; s; s = static_cast<PortSet>((s - 1) & free)) {
      if (port_count(s) > n) continue;
      MoveRecord m;
      m.kind = MoveRecord::Kind::Unshell;
      m.site = u;
      m.ports = s;
      add_successor(g, {m}, out);
    }
  }
  return out;
}

}  // namespace

std::optional<std::vector<MoveRecord>> decompose_standard_shelling(const Graph& g, const Face& f, int budget,
                                                                   std::size_t state_cap) {
  const Name v = fresh_names(g, f.vertex, 1).front();
  const Graph target = standard_shell_inverse(g, f, v);
  auto cover = covering_semi_edges(g, f);
  const bool single = std::all_of(cover.begin(), cover.end(), [&](const PortRef& c) { return c.vertex == cover.front().vertex; });
  if (single) {
    if (budget < 1) return std::nullopt;
    MoveRecord m;
    m.kind = MoveRecord::Kind::Unshell;
    m.site = cover.front().vertex;
    for (const auto& c : cover) m.ports |= port_bit(c.port);
    m.fresh = {v};
    return std::vector<MoveRecord>{m};
  }
  if (budget < 1) return std::nullopt;
  const std::string goal = canonical_code(target, Quotient::Rotation);
  struct Node {
    Graph graph;
    std::vector<MoveRecord> path;
    int depth;
  };
  std::deque<Node> queue{{g, {}, 0}};
  std::set<std::string> seen{canonical_code(g, Quotient::Rotation)};
  while (!queue.empty()) {
    Node node = std::move(queue.front());
    queue.pop_front();
    std::vector<Successor> next = shell_moves(node.graph);
    for (auto& s : bistellar_moves(node.graph, [](std::size_t, std::size_t) { return true; })) next.push_back(std::move(s));
    for (auto& s : unshell_moves(node.graph)) next.push_back(std::move(s));
    for (auto& s : next) {
      std::string code = canonical_code(s.graph, Quotient::Rotation);
      std::vector<MoveRecord> path = node.path;
      path.insert(path.end(), s.moves.begin(), s.moves.end());
      if (code == goal && rotation_isomorphism(s.graph, target)) return path;
      if (node.depth + 1 >= budget || seen.size() >= state_cap) continue;
      if (seen.insert(code).second) queue.push_back({std::move(s.graph), std::move(path), node.depth + 1});
    }
  }
  return std::nullopt;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Yes:
      return "yes";
    case Verdict::No:
      return "no";
    case Verdict::Unknown:
      return "unknown";
  }
  return "unknown";
}

namespace {

bool is_single_simplex(const Graph& g) { return g.size() == 1 && g.links().empty(); }

// Best-first search (fewest vertices first) for moves taking g to one simplex.
std::optional<std::vector<MoveRecord>> reduce_to_simplex(const Graph& g, int budget) {
  if (is_single_simplex(g)) return std::vector<MoveRecord>{};
  struct Node {
    std::size_t size;
    std::size_t order;
    Graph graph;
    std::vector<MoveRecord> path;
  };
  auto worse = [](const Node& a, const Node& b) { return std::tie(a.size, a.order) > std::tie(b.size, b.order); };
  std::priority_queue<Node, std::vector<Node>, decltype(worse)> open(worse);
  std::set<std::string> seen{canonical_code(g, Quotient::Rotation)};
  std::size_t order = 0;
  open.push({g.size(), order++, g, {}});
  const std::size_t n1 = static_cast<std::size_t>(g.dim()) + 1;
  for (int expanded = 0; !open.empty() && expanded < budget; ++expanded) {
    Node node = open.top();
    open.pop();
    std::vector<Successor> next = shell_moves(node.graph);
    // every bistellar move except the one that adds n vertices
    for (auto& s : bistellar_moves(node.graph, [&](std::size_t h, std::size_t) { return h > 1 || n1 <= 2; })) {
      next.push_back(std::move(s));
    }
    for (auto& s : next) {
      std::vector<MoveRecord> path = node.path;
      path.insert(path.end(), s.moves.begin(), s.moves.end());
      if (is_single_simplex(s.graph)) return path;
      if (seen.insert(canonical_code(s.graph, Quotient::Rotation)).second) {
        open.push({s.graph.size(), order++, std::move(s.graph), std::move(path)});
      }
    }
  }
  return std::nullopt;
}

// The link of the point class of (u, {x}) as a cell complex of dimension n-1.
CellComplex point_link(const Graph& g, const Face& point) {
  CellComplex c;
  c.dim = g.dim() - 1;
  std::map<Face, int> cell;
  auto classes = equivalent_faces(g, point);
  for (const auto& eq : classes) {
    cell.emplace(eq.face, static_cast<int>(c.cells.size()));
    c.cells.push_back(ports_of(static_cast<PortSet>(g.ports(eq.face.vertex) & ~eq.face.ports)));
  }
  for (const auto& eq : classes) {
    const Face& f = eq.face;
    for (int p : ports_of(g.ports(f.vertex))) {
      if (has_port(f.ports, p)) continue;
      auto l = g.link({f.vertex, p});
      if (!l) continue;
      Face next{l->to.vertex, l->gluing.apply(f.ports)};
      CellComplex::Glue glue{cell.at(f), cell.at(next), {}};
      for (int z : ports_of(static_cast<PortSet>(g.ports(f.vertex) & ~f.ports))) {
        if (z != p) glue.corners.emplace(z, l->gluing(z));
      }
      c.glues.push_back(std::move(glue));
    }
  }
  return c;
}

std::string describe(const SurfaceSummary& s) {
  std::ostringstream out;
  out << "euler " << s.euler() << ", boundary components " << s.boundary_components
      << (s.connected ? "" : ", disconnected") << (s.degenerate ? ", degenerate" : "");
  return out.str();
}

// Returns a reason when the boundary of a 3-dimensional star is not a sphere.
std::optional<std::string> boundary_obstruction(const Graph& s) {
  std::set<Face> seen_points, seen_segments;
  int points = 0, segments = 0;
  const auto semis = s.semi_edges();
  std::map<PortRef, int> index;
  std::vector<int> parent;
  for (const auto& se : semis) {
    index.emplace(se, static_cast<int>(parent.size()));
    parent.push_back(static_cast<int>(parent.size()));
  }
  std::function<int(int)> find = [&](int x) {
    return parent[static_cast<std::size_t>(x)] == x ? x : parent[static_cast<std::size_t>(x)] = find(parent[static_cast<std::size_t>(x)]);
  };
  for (const auto& [u, info] : s.vertices()) {
    for (PortSet sub = info.ports; sub; sub = static_cast<PortSet>((sub - 1) & info.ports)) {
      const int size = port_count(sub);
      if (size > 2) continue;
      Face f{u, sub};
      auto& seen = size == 1 ? seen_points : seen_segments;
      if (seen.count(f)) continue;
      auto cls = equivalent_faces(s, f);
      for (const auto& eq : cls) seen.insert(eq.face);
      auto cover = covering_semi_edges(s, f);
      if (cover.empty()) continue;
      if (size == 1) {
        ++points;
      } else {
        ++segments;
        for (const auto& c : cover) parent[static_cast<std::size_t>(find(index.at(c)))] = find(index.at(cover.front()));
      }
    }
  }
  std::set<int> roots;
  for (std::size_t i = 0; i < parent.size(); ++i) roots.insert(find(static_cast<int>(i)));
  const int euler = points - segments + static_cast<int>(semis.size());
  if (roots.size() != 1 || euler != 2) {
    return "star boundary is not a sphere (euler " + std::to_string(euler) + ", " + std::to_string(roots.size()) +
           " components)";
  }
  return std::nullopt;
}

}  // namespace

StarVerdict star_verdict(const Graph& g, const Name& u, int budget) {
  StarVerdict out{u, Verdict::Unknown, {}, {}};
  const int n = g.dim();
  const std::set<Name> members = geometric_neighbors(g, u);
  const Graph s = induced_subgraph(g, members);
  if (is_single_simplex(s)) {
    out.verdict = Verdict::Yes;
    out.reason = "single simplex";
    return out;
  }
  if (auto tw = torsion_scan(s); !tw.empty()) {
    out.verdict = Verdict::No;
    out.reason = "torsion: " + to_string(tw.front().hinge);
    return out;
  }
  bool whole_component = false;
  for (const auto& comp : components(g)) {
    if (comp.count(u)) whole_component = comp == members;
  }
  if (n <= 2) {
    SurfaceSummary summary = classify(complex_of(s));
    if (summary.is_ball()) {
      out.verdict = Verdict::Yes;
      out.reason = "star is a disk";
    } else if (summary.is_sphere() && whole_component) {
      out.verdict = Verdict::Yes;
      out.reason = "star is a whole closed sphere";
    } else {
      out.verdict = Verdict::No;
      out.reason = "star is not a disk (" + describe(summary) + ")";
    }
    return out;
  }
  if (n == 3) {
    std::set<Face> seen;
    for (const auto& [v, info] : s.vertices()) {
      for (int x : ports_of(info.ports)) {
        Face point{v, port_bit(x)};
        if (seen.count(point)) continue;
        for (const auto& eq : equivalent_faces(s, point)) seen.insert(eq.face);
        SurfaceSummary link = classify(point_link(s, point));
        if (!link.is_ball() && !link.is_sphere()) {
          out.verdict = Verdict::No;
          out.reason = "link of point " + to_string(point) + " is neither disk nor sphere (" + describe(link) + ")";
          return out;
        }
      }
    }
    if (!s.semi_edges().empty()) {
      if (auto why = boundary_obstruction(s)) {
        out.verdict = Verdict::No;
        out.reason = *why;
        return out;
      }
    } else if (whole_component) {
      std::vector<Name> names;
      for (int i = 0; i < n + 2; ++i) names.push_back(Name::atom("s" + std::to_string(i)));
      if (rotation_isomorphism(s, canonical_sphere(n, names))) {
        out.verdict = Verdict::Yes;
        out.reason = "star is a whole closed sphere";
      } else {
        out.reason = "star is a whole closed component";
      }
      return out;
    }
  }
  if (auto moves = reduce_to_simplex(s, budget)) {
    out.verdict = Verdict::Yes;
    out.reason = "reduced to a single simplex in " + std::to_string(moves->size()) + " moves";
    out.moves = std::move(*moves);
    return out;
  }
  out.reason = "move search budget exhausted";
  return out;
}

ManifoldReport is_discrete_manifold(const Graph& g, int budget) {
  ManifoldReport report;
  for (const auto& u : g.vertex_names()) {
    StarVerdict v = star_verdict(g, u, budget);
    if (v.verdict == Verdict::No) {
      report.verdict = Verdict::No;
    } else if (v.verdict == Verdict::Unknown && report.verdict == Verdict::Yes) {
      report.verdict = Verdict::Unknown;
    }
    report.stars.push_back(std::move(v));
  }
  return report;
}

}  // namespace cdm
