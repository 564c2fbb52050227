#pragma once

#include <map>
#include <vector>

#include "cdm/graph.hpp"

namespace cdm {

/// An abstract gluing of top cells of dimension 1 or 2. Each cell lists its
/// dim+1 corner labels; a glue identifies a facet of cell `a` with a facet of
/// cell `b` through `corners` (a corner of a -> a corner of b).
struct CellComplex {
  int dim = 2;
  std::vector<std::vector<int>> cells;
  struct Glue {
    int a = 0;
    int b = 0;
    std::map<int, int> corners;
  };
  std::vector<Glue> glues;
};

struct SurfaceSummary {
  int dim = 2;
  bool connected = true;
  bool degenerate = false;  // two corners (or segments) of one cell identified
  int vertices = 0;
  int edges = 0;            // 0 when dim == 1
  int cells = 0;
  int boundary_facets = 0;
  int boundary_components = 0;

  int euler() const { return dim == 1 ? vertices - cells : vertices - edges + cells; }
  /// Segment or triangulated disk.
  bool is_ball() const;
  /// Circle or closed surface of Euler characteristic 2.
  bool is_sphere() const;
};

SurfaceSummary classify(const CellComplex& c);

/// The complex of a graph of dimension 1 or 2: one cell per vertex, corners
/// are ports, one glue per undirected edge.
CellComplex complex_of(const Graph& g);

}  // namespace cdm
