#include <random>

#include "doctest.h"
#include "fixtures.hpp"

#include "cdm/canonical.hpp"
#include "cdm/geometry.hpp"
#include "cdm/pachner.hpp"

using namespace cdm;
using fx::N;

namespace {

std::vector<Graph> hosts(std::mt19937& rng) {
  std::vector<Graph> out{fx::octahedron(), fx::torus(3, 3), fx::strip(5), fx::fan(4, true), fx::sphere(2),
                         fx::sphere(3), fx::tetra_ring(false), fx::simplex(3)};
  for (int i = 0; i < 4; ++i) out.push_back(fx::scramble(rng, out[static_cast<std::size_t>(i)]));
  return out;
}

MoveRecord bistellar_record(const Name& seed, const SphereEmbedding& emb) {
  MoveRecord m;
  m.kind = MoveRecord::Kind::Bistellar;
  m.site = seed;
  m.sphere_map = emb.index;
  return m;
}

}  // namespace

TEST_CASE("canonical sphere shape") {
  for (int n = 1; n <= 3; ++n) {
    auto g = fx::sphere(n);
    CHECK(g.size() == static_cast<std::size_t>(n + 2));
    CHECK(g.semi_edges().empty());
    CHECK(g.undirected_edges().size() == static_cast<std::size_t>((n + 2) * (n + 1) / 2));
  }
}

TEST_CASE("bistellar on a single simplex gives the complementary ball") {
  auto g = fx::simplex(2);
  auto embs = find_sphere_embeddings(g, N("u"));
  REQUIRE(embs.size() == 1);
  auto h = bistellar(g, embs.front(), fresh_names(g, N("u"), 3));
  CHECK(is_valid(h));
  CHECK(h.size() == 3);
  CHECK(torsion_free(h));
  CHECK(h.semi_edges().size() == 3);
}

TEST_CASE("bistellar twice restores the host") {
  std::mt19937 rng(8);
  int trips = 0;
  for (const auto& g : hosts(rng)) {
    for (const auto& seed : g.vertex_names()) {
      for (const auto& emb : find_sphere_embeddings(g, seed)) {
        auto m = bistellar_record(seed, emb);
        auto after = apply_move(g, m);
        CHECK(is_valid(after));
        CHECK(torsion_free(after) == torsion_free(g));
        auto inv = invert_move(g, m);
        auto back = apply_move(after, inv);
        CHECK(rotation_equivalent(g, back));
        ++trips;
      }
    }
  }
  CHECK(trips > 20);
}

TEST_CASE("bistellar rejects a non-sphere subgraph") {
  auto g = fx::strip(3);
  SphereEmbedding bogus;
  bogus.index = {{N("t0"), 2}, {N("t1"), 2}};
  CHECK_THROWS_AS(bistellar(g, bogus, fresh_names(g, N("t0"), 2)), MoveError);
}

TEST_CASE("shell undoes shell_inverse exactly") {
  std::mt19937 rng(12);
  int trips = 0;
  for (const auto& g : hosts(rng)) {
    for (const auto& u : g.vertex_names()) {
      std::vector<int> free;
      for (const auto& s : g.semi_edges()) {
        if (s.vertex == u) free.push_back(s.port);
      }
      for (PortSet mask = 0; mask < (1u << free.size()); ++mask) {
        PortSet s = 0;
        for (std::size_t k = 0; k < free.size(); ++k) {
          if ((mask >> k) & 1u) s |= port_bit(free[k]);
        }
        if (port_count(s) > g.dim()) continue;
        auto v = fresh_names(g, u, 1).front();
        auto h = shell_inverse(g, u, s, v);
        CHECK(is_valid(h));
        auto site = shell_site(h, v);
        REQUIRE(site);
        CHECK(shell(h, v) == g);
        ++trips;
      }
    }
  }
  CHECK(trips > 20);
}

TEST_CASE("shell normalization of a rotated leaf") {
  std::mt19937 rng(2);
  auto g = fx::strip(2);
  auto h = shell_inverse(g, N("t1"), fx::ports({0}), N("v"));
  for (int i = 0; i < 10; ++i) {
    auto r = apply_rotation(h, {N("v"), fx::random_even(rng, 2)});
    auto fix = shell_normalization(r, N("v"));
    REQUIRE(fix);
    CHECK(shell_site(apply_rotation(r, {N("v"), *fix}), N("v")));
  }
  CHECK(!shell_site(fx::strip(3), N("t1")));
}

TEST_CASE("standard shelling over a segment decomposes into local moves") {
  Graph g(2);
  g.add_vertex(N("u1"), fx::ports({0, 1, 2}));
  g.add_vertex(N("u2"), fx::ports({0, 1, 2}));
  g.add_edge({N("u1"), 2}, fx::s(2, 1, 2), {N("u2"), 1});
  Face f{N("u1"), fx::ports({0})};
  auto cover = covering_semi_edges(g, f);
  CHECK(cover.size() == 2);
  auto target = standard_shell_inverse(g, f, N("v"));
  CHECK(is_valid(target));
  CHECK(target.size() == 3);
  auto moves = decompose_standard_shelling(g, f, 3);
  REQUIRE(moves);
  auto replayed = apply_moves(g, *moves);
  CHECK(rotation_isomorphism(replayed, target));
}

TEST_CASE("standard shelling with one covering simplex is a single unshell") {
  auto g = fx::simplex(2);
  Face f{N("u"), fx::ports({0, 1})};
  auto moves = decompose_standard_shelling(g, f, 1);
  REQUIRE(moves);
  CHECK(moves->size() == 1);
  CHECK(moves->front().kind == MoveRecord::Kind::Unshell);
  CHECK_THROWS_AS(standard_shell_inverse(g, Face{N("u"), fx::ports({0, 1, 2})}, N("v")), MoveError);
}

TEST_CASE("move records round trip through text") {
  std::mt19937 rng(6);
  auto g = fx::octahedron();
  std::vector<MoveRecord> log;
  Graph cur = g;
  for (int step = 0; step < 6; ++step) {
    auto names = cur.vertex_names();
    auto seed = names[std::uniform_int_distribution<std::size_t>(0, names.size() - 1)(rng)];
    auto embs = find_sphere_embeddings(cur, seed);
    REQUIRE(!embs.empty());
    auto m = bistellar_record(seed, embs.back());
    cur = apply_move(cur, m);
    log.push_back(m);
    MoveRecord r;
    r.kind = MoveRecord::Kind::Rotate;
    r.site = seed == names.front() ? names.back() : names.front();
    r.perm = fx::random_even(rng, 2);
    if (cur.has_vertex(r.site)) {
      cur = apply_move(cur, r);
      log.push_back(r);
    }
  }
  std::vector<MoveRecord> parsed;
  for (const auto& m : log) {
    auto back = parse_move(to_string(m), 2);
    CHECK(back == m);
    parsed.push_back(back);
  }
  CHECK(apply_moves(g, parsed) == cur);
  CHECK(apply_moves(g, parsed) == apply_moves(g, parsed));
  CHECK_THROWS(parse_move("teleport v=a", 2));
}

TEST_CASE("manifold verdicts") {
  for (int n = 1; n <= 3; ++n) {
    auto r = is_discrete_manifold(fx::simplex(n));
    CHECK(r.verdict == Verdict::Yes);
  }
  CHECK(is_discrete_manifold(fx::sphere(2)).verdict == Verdict::Yes);
  CHECK(is_discrete_manifold(fx::sphere(3)).verdict == Verdict::Yes);
  CHECK(is_discrete_manifold(fx::octahedron()).verdict == Verdict::Yes);
  CHECK(is_discrete_manifold(fx::fan(5, true)).verdict == Verdict::Yes);
  CHECK(is_discrete_manifold(fx::torus(3, 3)).verdict == Verdict::Yes);
  CHECK(is_discrete_manifold(fx::annulus(3)).verdict == Verdict::Yes);
  CHECK(is_discrete_manifold(fx::seven_point_torus()).verdict == Verdict::No);
  auto pinched = is_discrete_manifold(fx::tetra_ring(false));
  CHECK(pinched.verdict == Verdict::No);
  auto twisted = is_discrete_manifold(fx::tetra_ring(true));
  CHECK(twisted.verdict == Verdict::No);
}
