#include "cdm/surface.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace cdm {

namespace {

class DisjointSets {
 public:
  int add() {
    parent_.push_back(static_cast<int>(parent_.size()));
    return parent_.back();
  }
  int find(int x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      auto& p = parent_[static_cast<std::size_t>(x)];
      p = parent_[static_cast<std::size_t>(p)];
      x = p;
    }
    return x;
  }
  void unite(int a, int b) { parent_[static_cast<std::size_t>(find(a))] = find(b); }

 private:
  std::vector<int> parent_;
};

}  // namespace

bool SurfaceSummary::is_ball() const {
  if (!connected || degenerate) return false;
  if (dim == 1) return euler() == 1;
  return euler() == 1 && boundary_components == 1;
}

bool SurfaceSummary::is_sphere() const {
  if (!connected || degenerate || boundary_facets != 0) return false;
  return dim == 1 ? euler() == 0 : euler() == 2;
}

SurfaceSummary classify(const CellComplex& c) {
  if (c.dim != 1 && c.dim != 2) throw std::invalid_argument("surface classification needs dimension 1 or 2");
  SurfaceSummary out;
  out.dim = c.dim;
  out.cells = static_cast<int>(c.cells.size());

  // corner and segment slots per cell
  DisjointSets points, segments, cells;
  std::vector<std::map<int, int>> point_slot(c.cells.size());
  std::vector<std::map<std::pair<int, int>, int>> segment_slot(c.cells.size());
  for (std::size_t i = 0; i < c.cells.size(); ++i) {
    cells.add();
    const auto& corners = c.cells[i];
    for (int x : corners) point_slot[i][x] = points.add();
    for (std::size_t a = 0; a < corners.size(); ++a) {
      for (std::size_t b = a + 1; b < corners.size(); ++b) {
        segment_slot[i][std::minmax(corners[a], corners[b])] = segments.add();
      }
    }
  }
  std::set<std::pair<int, std::vector<int>>> glued;
  for (const auto& g : c.glues) {
    const auto ia = static_cast<std::size_t>(g.a);
    const auto ib = static_cast<std::size_t>(g.b);
    cells.unite(g.a, g.b);
    std::vector<int> fa, fb;
    for (const auto& [x, y] : g.corners) {
      points.unite(point_slot[ia].at(x), point_slot[ib].at(y));
      fa.push_back(x);
      fb.push_back(y);
    }
    std::sort(fa.begin(), fa.end());
    std::sort(fb.begin(), fb.end());
    glued.insert({g.a, fa});
    glued.insert({g.b, fb});
    if (c.dim == 2) {
      std::vector<std::pair<int, int>> pairs(g.corners.begin(), g.corners.end());
      for (std::size_t a = 0; a < pairs.size(); ++a) {
        for (std::size_t b = a + 1; b < pairs.size(); ++b) {
          segments.unite(segment_slot[ia].at(std::minmax(pairs[a].first, pairs[b].first)),
                         segment_slot[ib].at(std::minmax(pairs[a].second, pairs[b].second)));
        }
      }
    }
  }

  std::set<int> point_classes, segment_classes, cell_classes;
  for (std::size_t i = 0; i < c.cells.size(); ++i) {
    std::set<int> own_points, own_segments;
    for (const auto& [_, slot] : point_slot[i]) {
      int r = points.find(slot);
      point_classes.insert(r);
      if (!own_points.insert(r).second) out.degenerate = true;
    }
    for (const auto& [_, slot] : segment_slot[i]) {
      int r = segments.find(slot);
      segment_classes.insert(r);
      if (!own_segments.insert(r).second) out.degenerate = true;
    }
    cell_classes.insert(cells.find(static_cast<int>(i)));
  }
  out.vertices = static_cast<int>(point_classes.size());
  out.edges = c.dim == 2 ? static_cast<int>(segment_classes.size()) : 0;
  out.connected = cell_classes.size() <= 1;

  // free facets and the components they form
  DisjointSets boundary;
  std::map<int, int> boundary_node;
  auto node = [&](int point_class) {
    auto [it, fresh] = boundary_node.emplace(point_class, 0);
    if (fresh) it->second = boundary.add();
    return it->second;
  };
  for (std::size_t i = 0; i < c.cells.size(); ++i) {
    const auto& corners = c.cells[i];
    for (std::size_t skip = 0; skip < corners.size(); ++skip) {
      std::vector<int> facet;
      for (std::size_t j = 0; j < corners.size(); ++j) {
        if (j != skip) facet.push_back(corners[j]);
      }
      std::sort(facet.begin(), facet.end());
      if (glued.count({static_cast<int>(i), facet})) continue;
      ++out.boundary_facets;
      int first = node(points.find(point_slot[i].at(facet.front())));
      for (int x : facet) boundary.unite(first, node(points.find(point_slot[i].at(x))));
    }
  }
  std::set<int> roots;
  for (const auto& [_, n] : boundary_node) roots.insert(boundary.find(n));
  out.boundary_components = c.dim == 1 ? out.boundary_facets : static_cast<int>(roots.size());
  return out;
}

CellComplex complex_of(const Graph& g) {
  CellComplex c;
  c.dim = g.dim();
  std::map<Name, int> index;
  for (const auto& [name, info] : g.vertices()) {
    index.emplace(name, static_cast<int>(c.cells.size()));
    c.cells.push_back(ports_of(info.ports));
  }
  for (const auto& e : g.undirected_edges()) {
    CellComplex::Glue glue{index.at(e.from.vertex), index.at(e.to.vertex), {}};
    for (int x : ports_of(g.ports(e.from.vertex))) {
      if (x != e.from.port) glue.corners.emplace(x, e.gluing(x));
    }
    c.glues.push_back(std::move(glue));
  }
  return c;
}

}  // namespace cdm
