#include <random>

#include "doctest.h"
#include "fixtures.hpp"

#include "cdm/rotation.hpp"

using namespace cdm;
using fx::N;

namespace {

VertexRotation random_step(std::mt19937& rng, const Graph& g) {
  auto names = g.vertex_names();
  std::uniform_int_distribution<std::size_t> pick(0, names.size() - 1);
  return {names[pick(rng)], fx::random_even(rng, g.dim())};
}

}  // namespace

TEST_CASE("rotation acts on ports and gluings") {
  Graph g(2);
  g.add_vertex(N("a"), fx::ports({0, 1, 2}));
  g.add_vertex(N("b"), fx::ports({0, 1, 2}));
  g.add_edge({N("a"), 0}, fx::s(2, 0, 1), {N("b"), 1});
  Permutation r(2, {1, 2, 0, 3});
  auto h = apply_rotation(g, {N("a"), r});
  CHECK(is_valid(h));
  CHECK(h.ports(N("a")) == fx::ports({0, 1, 2}));
  auto l = h.link({N("a"), 1});
  REQUIRE(l);
  CHECK(l->to == PortRef{N("b"), 1});
  CHECK(l->gluing == fx::s(2, 0, 1) * r.inverse());
  CHECK_THROWS_AS(apply_rotation(g, {N("a"), fx::s(2, 0, 1)}), ParityError);
}

TEST_CASE("rotations at distinct vertices commute") {
  std::mt19937 rng(21);
  for (int i = 0; i < 200; ++i) {
    int n = 1 + i % 3;
    auto g = fx::random_graph(rng, n, 5, 5);
    auto a = random_step(rng, g);
    auto b = random_step(rng, g);
    auto ab = apply_rotation(apply_rotation(g, a), b);
    auto ba = apply_rotation(apply_rotation(g, b), a);
    if (a.vertex != b.vertex) {
      CHECK(ab == ba);
    } else {
      CHECK(ab == apply_rotation(g, {a.vertex, b.perm * a.perm}));
    }
    CHECK(is_valid(ab));
  }
}

TEST_CASE("net rotations and inverses") {
  std::mt19937 rng(5);
  for (int i = 0; i < 100; ++i) {
    auto g = fx::random_graph(rng, 2, 4, 4);
    RotationSequence seq;
    for (int k = 0; k < 6; ++k) seq.push_back(random_step(rng, g));
    auto direct = apply_rotation_sequence(g, seq);
    auto net = net_rotations(seq);
    CHECK(apply_assignment(g, net) == direct);
    CHECK(apply_rotation_sequence(g, to_sequence(net)) == direct);
    CHECK(apply_assignment(direct, inverse(net)) == g);
    auto found = rotation_equivalent(g, direct);
    REQUIRE(found);
    CHECK(apply_rotation_sequence(g, *found) == direct);
  }
}

TEST_CASE("rotation_equivalent agrees with brute force") {
  std::mt19937 rng(17);
  int equivalent = 0, apart = 0;
  for (int i = 0; i < 150; ++i) {
    int n = 1 + i % 2;
    auto g = fx::random_graph(rng, n, 3, 3);
    // same vertices, independently drawn ports and gluings
    auto h = i % 3 == 0 ? fx::scramble(rng, g) : fx::random_graph(rng, n, 3, 3);
    if (h.links().size() != g.links().size()) continue;
    bool brute = false;
    const auto& evens = Permutation::even(n);
    auto names = g.vertex_names();
    std::vector<std::size_t> idx(names.size(), 0);
    while (!brute) {
      RotationAssignment a;
      for (std::size_t k = 0; k < names.size(); ++k) a.emplace(names[k], evens[idx[k]]);
      brute = apply_assignment(g, a) == h;
      std::size_t k = 0;
      while (k < idx.size() && ++idx[k] == evens.size()) idx[k++] = 0;
      if (k == idx.size()) break;
    }
    auto found = rotation_equivalent(g, h);
    CHECK(found.has_value() == brute);
    if (found) CHECK(apply_rotation_sequence(g, *found) == h);
    (brute ? equivalent : apart)++;
  }
  CHECK(equivalent > 0);
  CHECK(apart > 0);
}

TEST_CASE("simplex with different port sets is rotation equivalent") {
  // (01)(23) is even and carries {0,1,2} onto {0,1,3}
  auto a = fx::simplex(2, "u", 3);
  auto b = fx::simplex(2, "u", 2);
  auto found = rotation_equivalent(a, b);
  REQUIRE(found);
  CHECK(apply_rotation_sequence(a, *found) == b);
}

TEST_CASE("merge_rotations matches direct application") {
  std::mt19937 rng(99);
  for (int i = 0; i < 100; ++i) {
    auto g = fx::random_graph(rng, 2, 6, 6);
    RotationSequence global;
    for (int k = 0; k < 5; ++k) global.push_back(random_step(rng, g));
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
    auto merged = merge_rotations(parts);
    CHECK(apply_rotation_sequence(g, merged) == apply_rotation_sequence(g, global));
  }
}

TEST_CASE("merge_rotations rejects inconsistent inputs") {
  auto g = fx::strip(3);
  auto d0 = disk(g, N("t0"), 0).graph;
  auto d1 = disk(g, N("t1"), 0).graph;
  RotationSequence a{{N("t1"), Permutation(2, {1, 2, 0, 3})}};
  RotationSequence b{{N("t1"), Permutation(2, {2, 0, 1, 3})}};
  CHECK_THROWS_AS(merge_rotations({{d0, a}, {d1, b}}), MergeError);
}
