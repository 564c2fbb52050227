#include "cdm/dynamics.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "cdm/pachner.hpp"

namespace cdm {

namespace {

Graph rename_output(const Graph& out, const std::map<Name, Name>& iso) {
  std::map<Name, Name> renaming;
  for (const auto& v : out.vertex_names()) {
    renaming.emplace(v, rename_star(v, [&](const Name& x) {
                       auto it = iso.find(x);
                       if (it == iso.end()) throw RuleError("output name " + v.str() + " refers to " + x.str());
                       return it->second;
                     }));
  }
  return rename_vertices(out, renaming);
}

std::string fingerprint(const Graph& g) {
  std::ostringstream s;
  for (const auto& [n, info] : g.vertices()) s << n.str() << '/' << info.ports << '/' << info.label << ';';
  s << '|';
  for (const auto& [from, l] : g.links()) {
    s << from.vertex.str() << ':' << from.port << '>' << l.to.vertex.str() << ':' << l.to.port << '=' << l.gluing.to_string()
      << ';';
  }
  return s.str();
}

// Union of graphs after checking every pair that shares a vertex.
Graph checked_union(int dim, const std::vector<Graph>& parts, const std::vector<Name>& owners) {
  std::map<Name, std::vector<std::size_t>> holders;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (const auto& v : parts[i].vertex_names()) holders[v].push_back(i);
  }
  std::set<std::pair<std::size_t, std::size_t>> done;
  for (const auto& [v, idx] : holders) {
    for (std::size_t a = 0; a < idx.size(); ++a) {
      for (std::size_t b = a + 1; b < idx.size(); ++b) {
        if (!done.insert({idx[a], idx[b]}).second) continue;
        if (auto why = first_inconsistency(parts[idx[a]], parts[idx[b]])) {
          std::optional<Name> x, y;
          if (!owners.empty()) {
            x = owners[idx[a]];
            y = owners[idx[b]];
          }
          throw EvaluationError("outputs" + (x ? " of " + x->str() + " and " + y->str() : std::string()) +
                                    " are inconsistent: " + *why,
                                x, y);
        }
      }
    }
  }
  Graph out(dim);
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

// Calls visit for every assignment of even permutations to `names`.
void for_each_assignment(const std::vector<Name>& names, int dim, const std::function<void(const RotationAssignment&)>& visit) {
  const auto& evens = Permutation::even(dim);
  std::vector<std::size_t> idx(names.size(), 0);
  while (true) {
    RotationAssignment a;
    for (std::size_t k = 0; k < names.size(); ++k) {
      if (idx[k] != 0) a.emplace(names[k], evens[idx[k]]);
    }
    visit(a);
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == evens.size()) idx[k++] = 0;
    if (k == idx.size()) return;
  }
}

// Facet ports of v in piece order: by neighbor name (semi-edges last),
// ties broken towards the orientation of v, then by port.
std::vector<int> facet_order(const Graph& g, const Name& v) {
  const int n = g.dim();
  const PortSet ps = g.ports(v);
  int missing = 0;
  while (has_port(ps, missing)) ++missing;
  std::vector<int> ports = ports_of(ps);
  auto key = [&](int p) {
    auto l = g.link({v, p});
    return l ? std::pair<int, std::string>{0, l->to.vertex.str()} : std::pair<int, std::string>{1, {}};
  };
  std::optional<std::vector<int>> first;
  do {
    bool sorted = true;
    for (std::size_t k = 1; k < ports.size(); ++k) sorted &= !(key(ports[k]) < key(ports[k - 1]));
    if (!sorted) continue;
    if (!first) first = ports;
    std::vector<int> image{missing};
    image.insert(image.end(), ports.begin(), ports.end());
    if (Permutation(n, image).is_even()) return ports;
  } while (std::next_permutation(ports.begin(), ports.end()));
  return *first;
}

Graph subdivide(const PointedDisk& d) {
  const Graph& g = d.graph;
  if (g.dim() != 2) throw RuleError("subdivision is defined for n = 2");
  if (d.radius < 1) throw RuleError("subdivision needs radius at least 1");
  std::set<Name> targets{d.center};
  for (const auto& y : g.neighbors(d.center)) targets.insert(y);
  std::map<Name, std::vector<int>> orders;
  for (const auto& t : targets) orders.emplace(t, facet_order(g, t));
  Graph h = g;
  for (const auto& t : targets) {
    auto emb = sphere_embedding_for(h, {t});
    if (!emb) throw RuleError("simplex " + t.str() + " is glued to itself");
    const auto& order = orders.at(t);
    std::vector<Name> fresh;
    for (int j : emb->complement) {
      auto rank = std::find(order.begin(), order.end(), j) - order.begin();
      fresh.push_back(Name::derived(t, static_cast<int>(rank) + 1));
    }
    h = bistellar(h, *emb, fresh);
  }
  std::set<Name> keep;
  for (int k = 1; k <= 3; ++k) {
    Name piece = Name::derived(d.center, k);
    keep.insert(piece);
    for (const auto& y : h.neighbors(piece)) keep.insert(y);
  }
  return induced_subgraph(h, keep);
}

// Complex of oriented top cells (corner k at port k), glued along shared facets.
Graph oriented_cells(int n, const std::vector<std::vector<int>>& cells, const std::vector<Name>& names) {
  Graph g(n);
  const PortSet ports = static_cast<PortSet>(full_port_set(n) & ~port_bit(n + 1));
  for (const auto& x : names) g.add_vertex(x, ports);
  std::map<std::vector<int>, std::vector<std::pair<std::size_t, int>>> facets;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    for (int p = 0; p <= n; ++p) {
      std::vector<int> f;
      for (int k = 0; k <= n; ++k) {
        if (k != p) f.push_back(cells[i][static_cast<std::size_t>(k)]);
      }
      std::sort(f.begin(), f.end());
      facets[f].push_back({i, p});
    }
  }
  for (const auto& [f, users] : facets) {
    if (users.size() != 2) continue;
    auto [a, p] = users[0];
    auto [b, q] = users[1];
    std::vector<int> image(static_cast<std::size_t>(n + 2), n + 1);
    for (int k = 0; k <= n; ++k) {
      if (k == p) {
        image[static_cast<std::size_t>(k)] = q;
        continue;
      }
      for (int m = 0; m <= n; ++m) {
        if (cells[b][static_cast<std::size_t>(m)] == cells[a][static_cast<std::size_t>(k)]) image[static_cast<std::size_t>(k)] = m;
      }
    }
    g.add_edge({names[a], p}, Permutation(n, image), {names[b], q});
  }
  return g;
}

}  // namespace

const char* builtin_name(Builtin b) {
  switch (b) {
    case Builtin::None: return "none";
    case Builtin::Identity: return "identity";
    case Builtin::Subdivide: return "subdivide";
  }
  return "none";
}

const char* cert_verdict_name(CertVerdict v) {
  switch (v) {
    case CertVerdict::Pass: return "pass";
    case CertVerdict::Fail: return "fail";
    case CertVerdict::Unknown: return "unknown";
  }
  return "unknown";
}

LocalRule::LocalRule(int dim, int radius, int bound, Builtin fallback)
    : dim_(dim), radius_(radius), bound_(bound), fallback_(fallback) {
  if (dim < 1) throw RuleError("dimension must be positive");
  if (radius < 0) throw RuleError("negative radius");
  if (bound < 0) throw RuleError("negative suffix bound");
}

bool LocalRule::add_entry(const Graph& d, const Name& center, const Graph& output) {
  if (d.dim() != dim_ || output.dim() != dim_) throw RuleError("entry dimension differs from the rule");
  if (!d.has_vertex(center)) throw RuleError("center " + center.str() + " is not a disk vertex");
  if (!is_valid(d)) throw RuleError("entry disk at " + center.str() + " is not a valid graph");
  if (!is_valid(output)) throw RuleError("entry output at " + center.str() + " is not a valid graph");
  if (disk(d, center, radius_).graph != d) {
    throw RuleError("entry disk at " + center.str() + " is not a radius-" + std::to_string(radius_) + " disk");
  }
  for (const auto& v : output.vertex_names()) {
    if (!derived_over(v, [&](const Name& x) { return d.has_vertex(x); }, bound_)) {
      throw RuleError("output name " + v.str() + " is not derived over the disk with suffix <= " + std::to_string(bound_));
    }
  }
  std::string key = pointed_code(d, center);
  auto it = index_.find(key);
  if (it != index_.end()) {
    const RuleEntry& old = entries_[it->second];
    auto iso = pointed_isomorphism(old.disk, old.center, d, center);
    if (iso && rename_output(old.output, *iso) == output) return false;
    throw RuleError("entry at " + center.str() + " repeats an isomorphic disk with an unrelated output");
  }
  index_.emplace(std::move(key), entries_.size());
  shapes_.insert({d.size(), d.links().size(), d.ports(center)});
  entries_.push_back({d, center, output});
  return true;
}

const RuleEntry* LocalRule::find(const Graph& d, const Name& center) const {
  if (!d.has_vertex(center) || !shapes_.count({d.size(), d.links().size(), d.ports(center)})) return nullptr;
  auto it = index_.find(pointed_code(d, center));
  return it == index_.end() ? nullptr : &entries_[it->second];
}

Graph builtin_output(Builtin b, const PointedDisk& d) {
  switch (b) {
    case Builtin::None:
      throw EvaluationError("no entry matches the disk at " + d.center.str(), d.center);
    case Builtin::Identity: {
      Graph inner = disk(d.graph, d.center, 0).graph;
      std::map<Name, Name> renaming;
      for (const auto& x : inner.vertex_names()) renaming.emplace(x, Name::derived(x, 0));
      return rename_vertices(inner, renaming);
    }
    case Builtin::Subdivide:
      return subdivide(d);
  }
  return Graph(d.graph.dim());
}

Graph apply_rule(const LocalRule& f, const PointedDisk& d) {
  if (d.graph.dim() != f.dim()) throw RuleError("disk dimension differs from the rule");
  if (d.radius != f.radius()) throw RuleError("disk radius differs from the rule radius");
  if (const RuleEntry* e = f.find(d.graph, d.center)) {
    auto iso = pointed_isomorphism(e->disk, e->center, d.graph, d.center);
    if (!iso) throw RuleError("canonical key collision at " + d.center.str());
    return rename_output(e->output, *iso);
  }
  return builtin_output(f.fallback(), d);
}

Graph evaluate(const LocalRule& f, const Graph& g) {
  std::vector<Graph> parts;
  std::vector<Name> owners;
  for (const auto& v : g.vertex_names()) {
    try {
      parts.push_back(apply_rule(f, disk(g, v, f.radius())));
    } catch (const EvaluationError& e) {
      throw EvaluationError(e.what(), v);
    }
    owners.push_back(v);
  }
  return checked_union(f.dim(), parts, owners);
}

RotationAssignment follow_rotation(const Graph& output, const RotationAssignment& input) {
  RotationAssignment out;
  for (const auto& v : output.vertex_names()) {
    if (!v.is_derived()) continue;
    auto parts = v.parts();
    if (parts.size() != 1 || parts.front().second != 0) continue;
    auto it = input.find(parts.front().first);
    if (it != input.end()) out.emplace(v, it->second);
  }
  return out;
}

LocalRule rotation_closure(const LocalRule& f) {
  LocalRule out(f.dim(), f.radius(), f.bound(), f.fallback());
  for (const auto& e : f.entries()) {
    for_each_assignment(e.disk.vertex_names(), f.dim(), [&](const RotationAssignment& a) {
      out.add_entry(apply_assignment(e.disk, a), e.center, apply_assignment(e.output, follow_rotation(e.output, a)));
    });
  }
  return out;
}

RuleCertificate check_strongly_rotation_commuting(const LocalRule& f, const std::vector<PointedDisk>& extra) {
  RuleCertificate cert;
  cert.property = "strongly-rotation-commuting";
  std::vector<PointedDisk> disks;
  for (const auto& e : f.entries()) disks.push_back({e.disk, e.center, f.radius()});
  for (const auto& d : extra) disks.push_back({disk(d.graph, d.center, f.radius()).graph, d.center, f.radius()});
  const auto& evens = Permutation::even(f.dim());

  auto fail = [&](const PointedDisk& d, std::string why) {
    cert.verdict = CertVerdict::Fail;
    cert.witness = std::move(why);
    cert.witness_disk = d;
    return cert;
  };
  auto describe = [](const Name& u, const Permutation& r) { return "rotation " + r.to_string() + " at " + u.str(); };

  for (const auto& d : disks) {
    ++cert.checked;
    Graph out;
    try {
      out = apply_rule(f, d);
    } catch (const std::exception& e) {
      return fail(d, std::string("rule does not apply: ") + e.what());
    }
    for (const auto& u : d.graph.vertex_names()) {
      for (std::size_t k = 1; k < evens.size(); ++k) {
        PointedDisk rd{apply_rotation(d.graph, {u, evens[k]}), d.center, d.radius};
        Graph rout = apply_rule(f, rd);
        if (!rotation_equivalent(out, rout)) {
          return fail(d, "(i) " + describe(u, evens[k]) + ": f(rD) is not a rotation of f(D)");
        }
      }
    }
    // (ii) second disks inside the same ambient graph
    for (const auto& w : d.graph.vertex_names()) {
      if (w == d.center) continue;
      PointedDisk d2 = disk(d.graph, w, f.radius());
      Graph u0;
      try {
        u0 = checked_union(f.dim(), {out, apply_rule(f, d2)}, {});
      } catch (const std::exception& e) {
        return fail(d, "(ii) outputs at " + d.center.str() + " and " + w.str() + " are inconsistent: " + e.what());
      }
      for (const auto& x : d.graph.vertex_names()) {
        for (std::size_t k = 1; k < evens.size(); ++k) {
          Graph ambient = apply_rotation(d.graph, {x, evens[k]});
          Graph u1;
          try {
            u1 = checked_union(f.dim(), {apply_rule(f, {ambient, d.center, d.radius}), apply_rule(f, disk(ambient, w, f.radius()))}, {});
          } catch (const std::exception& e) {
            return fail(d, "(ii) after " + describe(x, evens[k]) + ", outputs at " + d.center.str() + " and " + w.str() +
                               " are inconsistent: " + e.what());
          }
          if (!rotation_equivalent(u0, u1)) {
            return fail(d, "(ii) " + describe(x, evens[k]) + ": conjugates at " + d.center.str() + " and " + w.str() +
                               " disagree on the shared output");
          }
        }
      }
    }
  }
  std::ostringstream scope;
  scope << f.entries().size() << " entry disks, " << extra.size() << " extra disks, single rotations, second disks inside each";
  switch (f.fallback()) {
    case Builtin::None:
      cert.verdict = CertVerdict::Pass;
      break;
    case Builtin::Identity:
      scope << "; identity fallback commutes by construction";
      cert.verdict = CertVerdict::Pass;
      break;
    case Builtin::Subdivide:
      scope << "; subdivide fallback covered only on the extra disks";
      cert.verdict = extra.empty() ? CertVerdict::Unknown : CertVerdict::Pass;
      if (extra.empty()) cert.witness = "no disks given for the subdivide fallback";
      break;
  }
  cert.scope = scope.str();
  return cert;
}

LocalRule strongify(const LocalRule& f) {
  LocalRule out(f.dim(), f.radius(), f.bound(), f.fallback());
  std::set<std::string> seen;
  for (const auto& e : f.entries()) {
    if (seen.count(pointed_code(e.disk, e.center))) continue;
    Graph base;
    try {
      base = evaluate(f, e.disk);
    } catch (const EvaluationError& err) {
      throw StrongifyError(std::string("F is undefined on the entry disk at ") + e.center.str() + ": " + err.what());
    }
    std::vector<std::pair<RotationAssignment, RotationAssignment>> conjugates;
    std::vector<Graph> terms;
    std::set<std::string> term_keys;
    for_each_assignment(e.disk.vertex_names(), f.dim(), [&](const RotationAssignment& a) {
      Graph rotated = apply_assignment(e.disk, a);
      Graph image;
      try {
        image = evaluate(f, rotated);
      } catch (const EvaluationError& err) {
        throw StrongifyError(std::string("F is undefined on a rotated entry disk: ") + err.what());
      }
      auto conj = rotation_equivalence_assignment(base, image);
      if (!conj) {
        throw StrongifyError("no conjugate rotation: F(rD) is not a rotation of F(D) at entry " + e.center.str());
      }
      Graph term = apply_assignment(apply_rule(f, {rotated, e.center, f.radius()}), inverse(*conj));
      if (term_keys.insert(fingerprint(term)).second) terms.push_back(std::move(term));
      conjugates.push_back({a, *conj});
    });
    Graph tilde;
    try {
      tilde = checked_union(f.dim(), terms, {});
    } catch (const EvaluationError& err) {
      throw StrongifyError(std::string("pulled-back outputs disagree at entry ") + e.center.str() + ": " + err.what());
    }
    for (const auto& [a, conj] : conjugates) {
      Graph member = apply_assignment(e.disk, a);
      if (!seen.insert(pointed_code(member, e.center)).second) continue;
      Graph output = apply_assignment(tilde, conj);
      PointedDisk pd{member, e.center, f.radius()};
      if (f.fallback() != Builtin::None) {
        try {
          if (builtin_output(f.fallback(), pd) == output) continue;
        } catch (const std::exception&) {
        }
      }
      out.add_entry(member, e.center, output);
    }
  }
  return out;
}

LocalRule identity_rule(int dim, int radius) { return LocalRule(dim, radius, 0, Builtin::Identity); }

LocalRule subdivision_rule() { return LocalRule(2, 1, 3, Builtin::Subdivide); }

LocalRule port_sensitive_rule() {
  LocalRule f(1, 1, 0, Builtin::Identity);
  const PortSet special = static_cast<PortSet>(port_bit(0) | port_bit(1));
  for (const auto& d : enum_disks(1, 1, {}, 100000)) {
    if (d.graph.ports(d.center) != special) continue;
    bool lonely = true;
    for (const auto& y : d.graph.neighbors(d.center)) lonely &= d.graph.ports(y) != special;
    if (!lonely) continue;
    Graph out(1);
    out.add_vertex(Name::derived(d.center, 0), special);
    f.add_entry(d.graph, d.center, out);
  }
  return f;
}

LocalRule collapse_rule() {
  const Name a("a"), c("c"), b("b"), extra("x");
  // three triangles around point 0, and the fourth that closes the fan
  Graph chain = oriented_cells(2, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}}, {a, c, b});
  Graph closed = oriented_cells(2, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 1}}, {a, c, b, extra});
  Graph output = rename_vertices(closed, {{a, Name::derived(a, 0)},
                                          {c, Name::derived(c, 0)},
                                          {b, Name::derived(b, 0)},
                                          {extra, Name::derived(c, 1)}});
  LocalRule base(2, 1, 1, Builtin::Identity);
  base.add_entry(chain, c, output);
  return rotation_closure(base);
}

}  // namespace cdm
