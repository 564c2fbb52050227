// Shared builders for unit and acceptance tests.
#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cdm/graph.hpp"
#include "cdm/pachner.hpp"
#include "cdm/rotation.hpp"

namespace fx {

using cdm::Graph;
using cdm::Name;
using cdm::Permutation;
using cdm::PortSet;

inline Name N(const std::string& s) { return Name(s); }

inline Permutation s(int dim, int i, int j) { return Permutation::transposition(dim, i, j); }

inline PortSet ports(std::initializer_list<int> ps) {
  PortSet out = 0;
  for (int p : ps) out |= cdm::port_bit(p);
  return out;
}

inline PortSet all_but(int dim, int missing) {
  return static_cast<PortSet>(cdm::full_port_set(dim) & ~cdm::port_bit(missing));
}

/// Delta_n: one vertex, every port a semi-edge.
inline Graph simplex(int n, const std::string& name = "u", int missing = -1) {
  Graph g(n);
  g.add_vertex(N(name), all_but(n, missing < 0 ? n + 1 : missing));
  return g;
}

inline std::vector<Name> names(const std::string& prefix, int count) {
  std::vector<Name> out;
  for (int i = 0; i < count; ++i) out.push_back(N(prefix + std::to_string(i)));
  return out;
}

inline Graph sphere(int n, const std::string& prefix = "v") { return cdm::canonical_sphere(n, names(prefix, n + 2)); }

/// Complex from consistently oriented top simplices given by corner labels;
/// corner k of a cell sits at port k. Cells sharing a facet are glued.
inline Graph from_cells(int n, const std::vector<std::vector<int>>& cells, const std::string& prefix = "t") {
  Graph g(n);
  for (std::size_t i = 0; i < cells.size(); ++i) g.add_vertex(N(prefix + std::to_string(i)), all_but(n, n + 1));
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
    if (users.size() == 1) continue;
    if (users.size() > 2) throw std::logic_error("facet shared by more than two cells");
    auto [a, p] = users[0];
    auto [b, q] = users[1];
    std::vector<int> image(static_cast<std::size_t>(n + 2));
    image[static_cast<std::size_t>(n + 1)] = n + 1;
    image[static_cast<std::size_t>(p)] = q;
    for (int k = 0; k <= n; ++k) {
      if (k == p) continue;
      int label = cells[a][static_cast<std::size_t>(k)];
      for (int m = 0; m <= n; ++m) {
        if (cells[b][static_cast<std::size_t>(m)] == label) image[static_cast<std::size_t>(k)] = m;
      }
    }
    Permutation gamma(n, image);
    if (!gamma.is_odd()) throw std::logic_error("cells are not consistently oriented");
    g.add_edge({N(prefix + std::to_string(a)), p}, gamma, {N(prefix + std::to_string(b)), q});
  }
  return g;
}

/// m triangles around point 0, consecutive ones sharing a segment; closed
/// when `closed`. Open fans with m triangles have a longest hinge of m-1.
inline Graph fan(int m, bool closed) {
  std::vector<std::vector<int>> cells;
  for (int i = 0; i < m; ++i) {
    int a = 1 + i;
    int b = closed && i == m - 1 ? 1 : 2 + i;
    cells.push_back({0, a, b});
  }
  return from_cells(2, cells);
}

/// Zigzag strip of m triangles.
inline Graph strip(int m) {
  std::vector<std::vector<int>> cells;
  for (int i = 0; i < m; ++i) {
    if (i % 2 == 0) {
      cells.push_back({i, i + 1, i + 2});
    } else {
      cells.push_back({i + 1, i, i + 2});
    }
  }
  return from_cells(2, cells);
}

/// Closed strip (annulus) of 2k triangles between two circles of k points.
inline Graph annulus(int k) {
  std::vector<std::vector<int>> cells;
  for (int i = 0; i < k; ++i) {
    int a = i, b = (i + 1) % k, c = k + i, d = k + (i + 1) % k;
    cells.push_back({a, b, c});
    cells.push_back({b, d, c});
  }
  return from_cells(2, cells);
}

/// Triangulated torus on a w x h grid of points.
inline Graph torus(int w, int h) {
  std::vector<std::vector<int>> cells;
  auto at = [&](int x, int y) { return ((y + h) % h) * w + (x + w) % w; };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      cells.push_back({at(x, y), at(x + 1, y), at(x, y + 1)});
      cells.push_back({at(x + 1, y), at(x + 1, y + 1), at(x, y + 1)});
    }
  }
  return from_cells(2, cells);
}

/// The seven-point torus; every star wraps around and is not a disk.
inline Graph seven_point_torus() {
  std::vector<std::vector<int>> cells;
  for (int i = 0; i < 7; ++i) {
    cells.push_back({i, (i + 1) % 7, (i + 3) % 7});
    cells.push_back({i, (i + 3) % 7, (i + 2) % 7});
  }
  return from_cells(2, cells);
}

inline Graph octahedron() {
  // top 0, bottom 5, equator 1..4
  return from_cells(2, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 1}, {5, 2, 1}, {5, 3, 2}, {5, 4, 3}, {5, 1, 4}});
}

/// Ring of four tetrahedra around point 0, glued in normal form. With
/// `twisted` the closing gluing is replaced by a non-normal one.
inline Graph tetra_ring(bool twisted) {
  const int n = 3;
  Graph g(n);
  const std::array<int, 4> missing{4, 3, 2, 1};
  for (int i = 0; i < 4; ++i) g.add_vertex(N("u" + std::to_string(i)), all_but(n, missing[static_cast<std::size_t>(i)]));
  for (int i = 0; i < 3; ++i) {
    int a = missing[static_cast<std::size_t>(i + 1)], b = missing[static_cast<std::size_t>(i)];
    g.add_edge({N("u" + std::to_string(i)), a}, s(n, a, b), {N("u" + std::to_string(i + 1)), b});
  }
  if (!twisted) {
    g.add_edge({N("u3"), 4}, s(n, 1, 4), {N("u0"), 1});
  } else {
    // 4->1, 1->4, 0->2, 2->3, 3->0
    g.add_edge({N("u3"), 4}, Permutation(n, {2, 4, 3, 0, 1}), {N("u0"), 1});
  }
  return g;
}

/// Random valid graph: `count` vertices with random port sets, glued at
/// random free ports with random odd gluings.
inline Graph random_graph(std::mt19937& rng, int n, int count, int gluings, const std::string& prefix = "x") {
  Graph g(n);
  std::uniform_int_distribution<int> miss(0, n + 1);
  for (int i = 0; i < count; ++i) g.add_vertex(N(prefix + std::to_string(i)), all_but(n, miss(rng)));
  for (int attempt = 0; attempt < gluings * 4 && static_cast<int>(g.links().size()) < 2 * gluings; ++attempt) {
    auto free = g.semi_edges();
    if (free.size() < 2) break;
    std::uniform_int_distribution<std::size_t> pick(0, free.size() - 1);
    auto a = free[pick(rng)];
    auto b = free[pick(rng)];
    if (a == b) continue;
    std::vector<int> from, to;
    for (int p : cdm::ports_of(g.ports(a.vertex))) {
      if (p != a.port) from.push_back(p);
    }
    for (int q : cdm::ports_of(g.ports(b.vertex))) {
      if (q != b.port) to.push_back(q);
    }
    std::shuffle(to.begin(), to.end(), rng);
    std::vector<int> image(static_cast<std::size_t>(n + 2));
    image[static_cast<std::size_t>(a.port)] = b.port;
    for (std::size_t k = 0; k < from.size(); ++k) image[static_cast<std::size_t>(from[k])] = to[k];
    int ma = cdm::ports_of(static_cast<PortSet>(cdm::full_port_set(n) & ~g.ports(a.vertex))).front();
    int mb = cdm::ports_of(static_cast<PortSet>(cdm::full_port_set(n) & ~g.ports(b.vertex))).front();
    image[static_cast<std::size_t>(ma)] = mb;
    Permutation gamma(n, image);
    if (!gamma.is_odd()) {
      if (from.size() < 2) continue;
      std::swap(image[static_cast<std::size_t>(from[0])], image[static_cast<std::size_t>(from[1])]);
      gamma = Permutation(n, image);
    }
    try {
      g.add_edge(a, gamma, b);
    } catch (const std::exception&) {
    }
  }
  return g;
}

/// Random even permutation.
inline Permutation random_even(std::mt19937& rng, int n) {
  const auto& evens = Permutation::even(n);
  return evens[std::uniform_int_distribution<std::size_t>(0, evens.size() - 1)(rng)];
}

/// Rotates every vertex by a random even permutation.
inline Graph scramble(std::mt19937& rng, const Graph& g) {
  cdm::RotationAssignment a;
  for (const auto& v : g.vertex_names()) a.emplace(v, random_even(rng, g.dim()));
  return cdm::apply_assignment(g, a);
}

}  // namespace fx
