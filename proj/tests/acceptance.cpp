// Acceptance run: one PASS/FAIL line per criterion, with the time limit
// each one must meet. Exit status is nonzero when any criterion fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "fixtures.hpp"

#include "cdm/canonical.hpp"
#include "cdm/dynamics.hpp"
#include "cdm/geometry.hpp"
#include "cdm/io.hpp"
#include "cdm/pachner.hpp"

using namespace cdm;
using fx::N;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failed expectations; the first few are echoed in the detail.
struct Checker {
  std::size_t checks = 0, failures = 0;
  std::string first;
  void expect(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    if (failures++ < 3) first += (first.empty() ? "" : "; ") + what;
  }
  Outcome outcome(const std::string& summary) const {
    std::ostringstream s;
    s << summary << ", " << checks << " checks";
    if (failures) s << ", " << failures << " failed: " << first;
    return {failures == 0, s.str()};
  }
};

Graph braced(const Graph& g) {
  std::map<Name, Name> m;
  for (const auto& x : g.vertex_names()) m.emplace(x, Name::derived(x, 0));
  return rename_vertices(g, m);
}

// ---- criterion 1

Outcome spheres_are_sound() {
  Checker c;
  for (int n = 1; n <= 3; ++n) {
    auto g = fx::sphere(n);
    c.expect(is_valid(g), "sphere " + std::to_string(n) + " invalid");
    c.expect(torsion_scan(g).empty(), "sphere " + std::to_string(n) + " has torsion");
    for (const auto& v : g.vertex_names()) {
      const auto ports = ports_of(g.ports(v));
      for (PortSet mask = 1; mask < (1u << ports.size()); ++mask) {
        PortSet face = 0;
        for (std::size_t k = 0; k < ports.size(); ++k) {
          if ((mask >> k) & 1u) face |= port_bit(ports[k]);
        }
        for (const auto& x : equivalent_faces(g, Face{v, face})) {
          c.expect(is_normal_form(g, x.witness.edges), "hinge not in normal form at " + v.str());
        }
      }
    }
  }
  return c.outcome("n = 1, 2, 3");
}

// ---- criterion 2

Outcome torsion_witness() {
  Checker c;
  c.expect(torsion_free(fx::tetra_ring(false)), "normal closure reports torsion");
  auto w = torsion_scan(fx::tetra_ring(true));
  bool point_pair = false;
  for (const auto& x : w) {
    bool ok = port_count(x.face) == 1 && port_count(x.other) == 1 && x.face != x.other &&
              replay_hinge(fx::tetra_ring(true), x.hinge.start, x.hinge.edges) == x.hinge.end;
    point_pair |= ok;
  }
  c.expect(point_pair, "no witness equating two distinct 0-faces");
  std::string shown;
  if (!w.empty()) shown = to_string(Face{w.front().vertex, w.front().face}) + " ~ " + to_string(Face{w.front().vertex, w.front().other});
  return c.outcome("twisted ring witness " + shown);
}

// ---- criterion 3

Outcome move_algebra() {
  std::mt19937 rng(2024);
  std::vector<Graph> hosts{fx::octahedron(), fx::torus(3, 3), fx::strip(5),     fx::fan(4, true), fx::fan(3, false),
                           fx::sphere(2),    fx::sphere(3),   fx::tetra_ring(false), fx::simplex(3), fx::annulus(3)};
  for (std::size_t i = 0, k = hosts.size(); i < k; ++i) hosts.push_back(fx::scramble(rng, hosts[i]));
  Checker c;
  int shells = 0, flips = 0;
  auto pick = [&](std::size_t size) { return std::uniform_int_distribution<std::size_t>(0, size - 1)(rng); };
  for (int attempt = 0; shells + flips < 200 && attempt < 5000; ++attempt) {
    const Graph& g = hosts[pick(hosts.size())];
    auto names = g.vertex_names();
    const Name u = names[pick(names.size())];
    if (attempt % 2 == 0) {
      std::vector<int> free;
      for (const auto& s : g.semi_edges()) {
        if (s.vertex == u) free.push_back(s.port);
      }
      std::shuffle(free.begin(), free.end(), rng);
      std::size_t take = free.empty() ? 0 : pick(std::min<std::size_t>(free.size(), static_cast<std::size_t>(g.dim())) + 1);
      PortSet s = 0;
      for (std::size_t k = 0; k < take; ++k) s |= port_bit(free[k]);
      auto v = fresh_names(g, u, 1).front();
      auto h = shell_inverse(g, u, s, v);
      c.expect(is_valid(h), "shell_inverse output invalid");
      c.expect(shell(h, v) == g, "shell does not undo shell_inverse at " + u.str());
      ++shells;
    } else {
      auto embs = find_sphere_embeddings(g, u);
      if (embs.empty()) continue;
      MoveRecord m;
      m.kind = MoveRecord::Kind::Bistellar;
      m.site = u;
      m.sphere_map = embs[pick(embs.size())].index;
      auto after = apply_move(g, m);
      auto inv = invert_move(g, m);
      auto back = apply_move(after, inv);
      c.expect(is_valid(after) && is_valid(back), "bistellar output invalid");
      c.expect(rotation_isomorphism(g, back).has_value(), "bistellar twice differs at " + u.str());
      ++flips;
    }
  }
  c.expect(shells + flips == 200, "fewer than 200 round trips");
  return c.outcome(std::to_string(shells) + " shell and " + std::to_string(flips) + " bistellar round trips");
}

// ---- criterion 4

Outcome rotation_lemmas() {
  std::mt19937 rng(77);
  Checker c;
  auto step = [&](const Graph& g) {
    auto names = g.vertex_names();
    return VertexRotation{names[std::uniform_int_distribution<std::size_t>(0, names.size() - 1)(rng)],
                          fx::random_even(rng, g.dim())};
  };
  for (int i = 0; i < 250; ++i) {
    auto g = fx::random_graph(rng, 1 + i % 3, 6, 6);
    auto a = step(g), b = step(g);
    if (a.vertex == b.vertex) b.vertex = g.vertex_names()[(i + 1) % g.size()];
    if (a.vertex == b.vertex) b.vertex = g.vertex_names().front() == a.vertex ? g.vertex_names().back() : g.vertex_names().front();
    c.expect(apply_rotation(apply_rotation(g, a), b) == apply_rotation(apply_rotation(g, b), a), "rotations do not commute");
  }
  for (int i = 0; i < 250; ++i) {
    auto g = fx::random_graph(rng, 1 + i % 3, 6, 6);
    RotationSequence global;
    for (int k = 0; k < 5; ++k) global.push_back(step(g));
    auto net = net_rotations(global);
    std::vector<std::pair<Graph, RotationSequence>> parts;
    for (const auto& v : g.vertex_names()) {
      auto d = disk(g, v, 0).graph;
      RotationAssignment local;
      for (const auto& [x, p] : net) {
        if (d.has_vertex(x)) local.emplace(x, p);
      }
      parts.push_back({d, to_sequence(local)});
    }
    c.expect(apply_rotation_sequence(g, merge_rotations(parts)) == apply_rotation_sequence(g, global),
             "merged rotations differ from direct application");
  }
  return c.outcome("250 commutation + 250 merge");
}

// ---- criterion 5

std::vector<Graph> engine_corpus() {
  std::mt19937 rng(5);
  std::vector<Graph> out{fx::octahedron(), fx::torus(3, 3), fx::strip(5),   fx::fan(4, true), fx::fan(3, false),
                         fx::sphere(2),    fx::annulus(3),  fx::simplex(2), fx::seven_point_torus(),
                         fx::scramble(rng, fx::octahedron()), fx::scramble(rng, fx::strip(6))};
  while (out.size() < 20) {
    auto g = fx::random_graph(rng, 2, 6, 6, "r");
    bool self_glued = false;
    for (const auto& [from, l] : g.links()) self_glued |= from.vertex == l.to.vertex;
    if (!self_glued) out.push_back(g);
  }
  return out;
}

Outcome engine() {
  Checker c;
  auto corpus = engine_corpus();
  auto id = identity_rule(2, 1);
  auto sub = subdivision_rule();
  for (const auto& g : corpus) {
    c.expect(isomorphism(evaluate(id, g), g).has_value(), "identity changed a graph");
    Graph cur = g;
    for (int step = 1; step <= 2; ++step) {
      auto next = evaluate(sub, cur);
      c.expect(next.size() == 3 * cur.size(), "subdivision did not triple");
      c.expect(is_valid(next), "subdivision output invalid");
      if (torsion_free(g)) c.expect(torsion_free(next), "subdivision created torsion");
      cur = next;
    }
  }
  std::size_t inclusions = 0;
  for (const auto* f : {&id, &sub}) {
    for (std::size_t i = 0; i < 8; ++i) {
      const Graph& g = corpus[i];
      auto whole = evaluate(*f, g);
      for (int rp : {1, 2}) {
        const int big = 2 * f->radius() * rp + f->radius() + rp;
        for (const auto& v : g.vertex_names()) {
          auto local = evaluate(*f, disk(g, v, big).graph);
          for (const auto& w : apply_rule(*f, disk(g, v, f->radius())).vertex_names()) {
            c.expect(is_subgraph(disk(whole, w, rp).graph, local), "past subgraph fails at " + w.str());
            ++inclusions;
          }
        }
      }
    }
  }
  return c.outcome("20 graphs, " + std::to_string(inclusions) + " past-subgraph inclusions");
}

// ---- criterion 6

Outcome rotation_decidability() {
  Checker c;
  c.expect(check_strongly_rotation_commuting(identity_rule(2, 1)).verdict == CertVerdict::Pass, "identity rule rejected");
  c.expect(check_strongly_rotation_commuting(identity_rule(1, 1)).verdict == CertVerdict::Pass, "identity rule rejected");
  auto f = port_sensitive_rule();
  auto verdict = check_strongly_rotation_commuting(f);
  c.expect(verdict.verdict == CertVerdict::Fail && verdict.witness_disk, "port-sensitive rule not rejected");
  LocalRule g;
  try {
    g = strongify(f);
  } catch (const std::exception& e) {
    c.expect(false, std::string("strongify failed: ") + e.what());
    return c.outcome("strongify");
  }
  c.expect(check_strongly_rotation_commuting(g).verdict == CertVerdict::Pass, "strongified rule rejected");
  c.expect(g.entries().empty() && g.fallback() == Builtin::Identity, "strongified table is not the plain identity");
  std::mt19937 rng(6);
  for (int i = 0; i < 40; ++i) {
    auto h = fx::random_graph(rng, 1, 3 + i % 6, 5, "p");
    c.expect(evaluate(f, h) == braced(h), "port-sensitive rule is not the identity on a graph");
    c.expect(evaluate(g, h) == braced(h), "strongified rule is not the identity on a graph");
  }
  return c.outcome(std::to_string(f.entries().size()) + " entries -> " + std::to_string(g.entries().size()) +
                   ", witness: " + verdict.witness);
}

// ---- criterion 7

Outcome preservation() {
  Checker c;
  PreservationOptions opt;  // r' = 1, s = 2
  auto id = check_preservation(identity_rule(2, 1),
                               {Property::BoundedStar, Property::TorsionFree, Property::DiscreteManifold}, opt);
  for (const auto& cert : id) {
    c.expect(cert.verdict == CertVerdict::Pass, "identity " + cert.property + " " + cert_verdict_name(cert.verdict));
  }
  auto collapse = collapse_rule();
  auto bs = check_preservation(collapse, Property::BoundedStar, opt);
  c.expect(bs.verdict == CertVerdict::Fail, std::string("collapse bounded-star ") + cert_verdict_name(bs.verdict));
  std::size_t longest = 0;
  if (bs.witness_disk) longest = longest_hinge(evaluate(collapse, bs.witness_disk->graph), 16);
  c.expect(longest > 2, "collapse witness hinge not longer than s");
  return c.outcome(id.front().scope + "; collapse hinge " + std::to_string(longest) + " > 2");
}

// ---- criterion 8

// Points, segments and triangles computed directly from corner
// identifications; a star is a manifold star when it is a 2-disk, or a
// 2-sphere that is its whole component.
struct Oracle {
  const Graph& g;
  std::map<std::pair<Name, int>, std::pair<Name, int>> parent;

  std::pair<Name, int> find(std::pair<Name, int> x) {
    while (parent.at(x) != x) x = parent[x] = parent.at(parent.at(x));
    return x;
  }
  void unite(const std::pair<Name, int>& a, const std::pair<Name, int>& b) { parent[find(a)] = find(b); }

  // Point classes of corners within the complex spanned by `cells`.
  std::map<std::pair<Name, int>, std::pair<Name, int>> points(const std::set<Name>& cells) {
    parent.clear();
    for (const auto& u : cells) {
      for (int k : ports_of(g.ports(u))) parent[{u, k}] = {u, k};
    }
    for (const auto& u : cells) {
      for (int p : ports_of(g.ports(u))) {
        auto l = g.link({u, p});
        if (!l || !cells.count(l->to.vertex)) continue;
        for (int k : ports_of(g.ports(u))) {
          if (k != p) unite({u, k}, {l->to.vertex, l->gluing(k)});
        }
      }
    }
    std::map<std::pair<Name, int>, std::pair<Name, int>> out;
    for (const auto& [x, _] : parent) out[x] = find(x);
    return out;
  }

  bool manifold_star(const Name& u) {
    std::set<Name> all;
    for (const auto& x : g.vertex_names()) all.insert(x);
    auto pts = points(all);
    std::set<std::pair<Name, int>> mine;
    for (int k : ports_of(g.ports(u))) mine.insert(pts.at({u, k}));
    std::set<Name> star{u};
    for (const auto& [corner, cls] : pts) {
      if (mine.count(cls)) star.insert(corner.first);
    }
    auto local = points(star);
    std::set<std::pair<Name, int>> vertices;
    for (const auto& [_, cls] : local) vertices.insert(cls);
    // segments: a segment of triangle x lies in facet p; glued facets share it
    std::size_t segments = 0, border = 0;
    std::size_t edges_inside = 0;
    for (const auto& x : star) {
      for (int p : ports_of(g.ports(x))) {
        auto l = g.link({x, p});
        if (l && star.count(l->to.vertex)) {
          ++edges_inside;
        } else {
          ++border;
        }
      }
    }
    segments = border + edges_inside / 2;
    const long chi = static_cast<long>(vertices.size()) - static_cast<long>(segments) + static_cast<long>(star.size());
    // connectivity through glued facets
    std::set<Name> seen{u};
    std::vector<Name> todo{u};
    while (!todo.empty()) {
      Name x = todo.back();
      todo.pop_back();
      for (int p : ports_of(g.ports(x))) {
        auto l = g.link({x, p});
        if (l && star.count(l->to.vertex) && seen.insert(l->to.vertex).second) todo.push_back(l->to.vertex);
      }
    }
    if (seen.size() != star.size()) return false;
    // no triangle may touch a point twice, and every point link must be a path or a cycle
    std::map<std::pair<Name, int>, std::vector<std::pair<std::pair<Name, int>, std::pair<Name, int>>>> links;
    auto segment = [&](const Name& x, int p) {
      std::pair<Name, int> here{x, p};
      auto l = g.link({x, p});
      if (!l || !star.count(l->to.vertex)) return here;
      std::pair<Name, int> there{l->to.vertex, l->to.port};
      return std::min(here, there);
    };
    for (const auto& x : star) {
      auto ports = ports_of(g.ports(x));
      std::set<std::pair<Name, int>> classes;
      for (int k : ports) classes.insert(local.at({x, k}));
      if (classes.size() != ports.size()) return false;
      for (int k : ports) {
        std::vector<int> sides;
        for (int p : ports) {
          if (p != k) sides.push_back(p);
        }
        links[local.at({x, k})].push_back({segment(x, sides[0]), segment(x, sides[1])});
      }
    }
    for (const auto& [_, edges] : links) {
      std::map<std::pair<Name, int>, std::pair<Name, int>> up;
      std::function<std::pair<Name, int>(std::pair<Name, int>)> root = [&](std::pair<Name, int> a) {
        while (up.at(a) != a) a = up.at(a);
        return a;
      };
      for (const auto& [a, b] : edges) up.emplace(a, a), up.emplace(b, b);
      for (const auto& [a, b] : edges) up[root(a)] = root(b);
      std::size_t roots = 0;
      for (const auto& [a, _] : up) roots += root(a) == a;
      if (roots != 1) return false;
    }
    if (border > 0) return chi == 1;
    // closed: accept only a sphere that is everything reachable from u
    for (const auto& comp : components(g)) {
      if (comp.count(u)) return chi == 2 && comp.size() == star.size();
    }
    return false;
  }
};

Outcome manifold_recognition() {
  std::mt19937 rng(88);
  std::vector<std::pair<std::string, Graph>> corpus{
      {"sphere", fx::sphere(2)},        {"octahedron", fx::octahedron()}, {"fan4c", fx::fan(4, true)},
      {"fan5c", fx::fan(5, true)},      {"fan3", fx::fan(3, false)},      {"fan6", fx::fan(6, false)},
      {"strip3", fx::strip(3)},         {"strip7", fx::strip(7)},         {"simplex", fx::simplex(2)},
      {"annulus3", fx::annulus(3)},     {"annulus5", fx::annulus(5)},     {"torus33", fx::torus(3, 3)},
      {"torus34", fx::torus(3, 4)},     {"torus7", fx::seven_point_torus()}};
  for (std::size_t i = 0, k = corpus.size(); i < 6 && i < k; ++i) {
    corpus.push_back({corpus[i].first + "-scrambled", fx::scramble(rng, corpus[i].second)});
  }
  for (int i = 0; corpus.size() < 30; ++i) corpus.push_back({"random" + std::to_string(i), fx::random_graph(rng, 2, 5 + i % 4, 6, "q")});
  Checker c;
  std::size_t stars = 0, yes = 0, no = 0;
  for (const auto& [label, g] : corpus) {
    auto report = is_discrete_manifold(g);
    Oracle oracle{g, {}};
    bool all = true;
    for (const auto& sv : report.stars) {
      bool expected = oracle.manifold_star(sv.vertex);
      all &= expected;
      ++stars;
      (expected ? yes : no)++;
      c.expect(sv.verdict == (expected ? Verdict::Yes : Verdict::No),
               label + " star of " + sv.vertex.str() + ": " + verdict_name(sv.verdict) + " vs oracle " + (expected ? "yes" : "no"));
    }
    c.expect(report.verdict == (all ? Verdict::Yes : Verdict::No), label + " overall verdict");
  }
  c.expect(is_discrete_manifold(fx::tetra_ring(false)).verdict == Verdict::No, "pinched tetrahedra ring accepted");
  return c.outcome("30 complexes, " + std::to_string(stars) + " stars (" + std::to_string(yes) + " disks, " +
                   std::to_string(no) + " not), pinched ring rejected");
}

// ---- criterion 9

Outcome serialization() {
  Checker c;
  std::vector<Graph> all = engine_corpus();
  for (int n = 1; n <= 3; ++n) all.push_back(fx::sphere(n));
  all.push_back(fx::tetra_ring(true));
  all.push_back(evaluate(subdivision_rule(), fx::octahedron()));
  for (const auto& g : all) {
    auto text = serialize_graph(g);
    auto back = parse_graph(text);
    c.expect(back == g, "round trip changed a graph");
    c.expect(serialize_graph(back) == text, "serialization not byte stable");
  }
  std::mt19937 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    Graph start = trial % 2 ? fx::octahedron() : fx::strip(4);
    Graph cur = start;
    std::vector<MoveRecord> log;
    for (int step = 0; step < 6; ++step) {
      auto names = cur.vertex_names();
      Name seed = names[std::uniform_int_distribution<std::size_t>(0, names.size() - 1)(rng)];
      MoveRecord m;
      auto embs = find_sphere_embeddings(cur, seed);
      if (step % 2 == 0 && !embs.empty()) {
        m.kind = MoveRecord::Kind::Bistellar;
        m.site = seed;
        m.sphere_map = embs.front().index;
      } else {
        m.kind = MoveRecord::Kind::Rotate;
        m.site = seed;
        m.perm = fx::random_even(rng, 2);
      }
      cur = apply_move(cur, m);
      log.push_back(m);
    }
    auto text = serialize_moves(log);
    auto a = parse_moves(text, 2);
    auto b = parse_moves(text, 2);
    auto ga = serialize_graph(apply_moves(start, a));
    auto gb = serialize_graph(apply_moves(start, b));
    c.expect(ga == gb, "replay not deterministic");
    c.expect(ga == serialize_graph(cur), "replay differs from the logged run");
  }
  return c.outcome(std::to_string(all.size()) + " graphs, 10 move logs");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit;  // seconds
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "structural soundness", 1, spheres_are_sound},
      {2, "torsion witness", 1, torsion_witness},
      {3, "move algebra", 30, move_algebra},
      {4, "rotation lemmas", 30, rotation_lemmas},
      {5, "CGD engine", 120, engine},
      {6, "rotation-commutation decidability", 300, rotation_decidability},
      {7, "preservation checkers", 600, preservation},
      {8, "manifold recognition", 120, manifold_recognition},
      {9, "serialization", 10, serialization},
  };
  int failed = 0;
  for (const auto& k : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = k.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool ok = o.pass && secs < k.limit;
    failed += !ok;
    std::printf("criterion %d %-34s %s  %.2fs (limit %.0fs)  %s\n", k.id, k.name, ok ? "PASS" : "FAIL", secs, k.limit,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
