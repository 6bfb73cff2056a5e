#include "doctest.h"

#include "gsample/kernel_solvers.hpp"
#include "gsample/oracle.hpp"
#include "test_util.hpp"

using namespace gsample;
using testutil::graph_from_mask;
using testutil::petersen;
using testutil::random_graph;
using testutil::random_uniform_hypergraph;

namespace {

SmallGraph cycle(std::uint64_t n) {
  std::vector<Hyperedge> es;
  for (VertexId i = 0; i < n; ++i) {
    Hyperedge e{i, (i + 1) % n};
    std::sort(e.begin(), e.end());
    es.push_back(e);
  }
  return make_graph(n, es);
}

SmallGraph complete(std::uint64_t n) { return graph_from_mask(n, (1ULL << (n * (n - 1) / 2)) - 1); }

}  // namespace

TEST_CASE("make_graph canonicalizes") {
  const auto g = make_graph(5, std::vector<WeightedEdge>{{{3, 1}, 2.0}, {{1, 3}, 5.0}, {{0, 4}, 1.0}});
  REQUIRE(g.edges.size() == 2);
  CHECK(g.edges[0].vertices == Hyperedge{0, 4});
  CHECK(g.edges[1].vertices == Hyperedge{1, 3});
  CHECK(g.edges[1].weight == 5.0);
  CHECK_THROWS_AS(make_graph(3, std::vector<Hyperedge>{{1, 1}}), InputError);
}

TEST_CASE("max_matching") {
  CHECK(max_matching(cycle(4)).size == 2);
  CHECK(max_matching(complete(4)).size == 2);
  CHECK(max_matching(cycle(5)).size == 2);
  CHECK(max_matching(make_graph(3, std::vector<Hyperedge>{})).size == 0);
  const auto p = petersen();
  CHECK(brute_max_matching(p, false).size == 5);
  const auto m = max_matching(p);
  CHECK(m.size == 5);
  CHECK(is_matching(p, m));

  // Odd cycles glued by a path need a blossom contraction to augment.
  const auto g = make_graph(10, std::vector<Hyperedge>{{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {5, 7}, {7, 8}, {8, 9}});
  CHECK(max_matching(g).size == brute_max_matching(g, false).size);

  SplitMix64 gen(1);
  for (int i = 0; i < 300; ++i) {
    const auto r = random_graph(4 + gen.below(11), 0.1 + 0.6 * gen.unit(), gen);
    const auto s = max_matching(r);
    REQUIRE(is_matching(r, s));
    REQUIRE(s.size == brute_max_matching(r, false).size);
  }
  CHECK_THROWS_AS(max_matching(make_graph(5, std::vector<Hyperedge>{{0, 1, 2}})), InputError);
}

TEST_CASE("max_matching never decreases when an edge is added") {
  SplitMix64 gen(2);
  for (int i = 0; i < 200; ++i) {
    auto g = random_graph(10, 0.3, gen);
    const auto before = max_matching(g).size;
    const VertexId u = gen.below(9);
    const VertexId v = u + 1 + gen.below(9 - u);
    g.edges.push_back({{u, v}, 1.0});
    g = make_graph(10, g.edges);
    CHECK(max_matching(g).size >= before);
  }
}

TEST_CASE("max_weight_matching") {
  CHECK(max_weight_matching(make_graph(2, std::vector<WeightedEdge>{{{0, 1}, 3.5}})).total_weight == 3.5);
  const auto path = make_graph(3, std::vector<WeightedEdge>{{{0, 1}, 1.0}, {{1, 2}, 2.0}});
  CHECK(max_weight_matching(path).total_weight == 2.0);
  // Two light edges beat one heavy middle edge.
  const auto p4 = make_graph(4, std::vector<WeightedEdge>{{{0, 1}, 3.0}, {{1, 2}, 5.0}, {{2, 3}, 3.0}});
  const auto s = max_weight_matching(p4);
  CHECK(s.total_weight == 6.0);
  CHECK(s.size == 2);

  SplitMix64 gen(3);
  for (int i = 0; i < 200; ++i) {
    const auto g = random_graph(12, 0.15 + 0.5 * gen.unit(), gen, true);
    const auto k = max_weight_matching(g);
    REQUIRE(is_matching(g, k));
    REQUIRE(k.total_weight == doctest::Approx(brute_max_matching(g, true).total_weight));
  }
}

TEST_CASE("min_vertex_cover") {
  const auto star = make_graph(6, std::vector<Hyperedge>{{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
  auto c = min_vertex_cover(star, 3);
  REQUIRE(c);
  CHECK(c->vertices == std::vector<VertexId>{0});

  c = min_vertex_cover(cycle(3), 3);
  REQUIRE(c);
  CHECK(c->size == 2);
  CHECK(brute_min_hitting_set(cycle(5)).size == 3);
  c = min_vertex_cover(cycle(5), 5);
  REQUIRE(c);
  CHECK(c->size == 3);
  CHECK(is_vertex_cover(cycle(5), *c));
  CHECK_FALSE(min_vertex_cover(cycle(5), 2));

  const auto empty = min_vertex_cover(make_graph(4, std::vector<Hyperedge>{}), 0);
  REQUIRE(empty);
  CHECK(empty->size == 0);

  SplitMix64 gen(4);
  for (int i = 0; i < 300; ++i) {
    const auto g = random_graph(4 + gen.below(11), 0.1 + 0.5 * gen.unit(), gen);
    const auto want = brute_min_hitting_set(g).size;
    const auto got = min_vertex_cover(g, 20);
    REQUIRE(got);
    REQUIRE(is_vertex_cover(g, *got));
    REQUIRE(got->size == want);
    if (want > 0) CHECK_FALSE(min_vertex_cover(g, want - 1));
  }
}

TEST_CASE("min_hitting_set") {
  auto h = min_hitting_set(make_graph(4, std::vector<Hyperedge>{{1, 2, 3}}), 1);
  REQUIRE(h);
  CHECK(h->size == 1);

  const auto three = make_graph(7, std::vector<Hyperedge>{{1, 2, 3}, {3, 4, 5}, {1, 4, 6}});
  CHECK(brute_min_hitting_set(three).size == 2);
  h = min_hitting_set(three, 3);
  REQUIRE(h);
  CHECK(h->size == 2);
  CHECK(is_hitting_set(three, *h));

  // k + 1 disjoint edges with budget k.
  const auto disjoint = make_graph(12, std::vector<Hyperedge>{{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {9, 10, 11}});
  CHECK_FALSE(min_hitting_set(disjoint, 3));
  CHECK(min_hitting_set(disjoint, 4));

  SplitMix64 gen(5);
  for (int i = 0; i < 200; ++i) {
    const auto g = random_uniform_hypergraph(10 + gen.below(5), 5 + gen.below(15), 2 + gen.below(3), gen);
    const auto got = min_hitting_set(g, 14);
    REQUIRE(got);
    REQUIRE(is_hitting_set(g, *got));
    REQUIRE(got->size == brute_min_hitting_set(g).size);
  }
}

TEST_CASE("max_hypergraph_matching") {
  const auto two = make_graph(6, std::vector<Hyperedge>{{0, 1, 2}, {3, 4, 5}});
  CHECK(max_hypergraph_matching(two, 4).size == 2);
  const auto sunflower = make_graph(8, std::vector<Hyperedge>{{1, 2, 3}, {1, 4, 5}, {1, 6, 7}});
  CHECK(max_hypergraph_matching(sunflower, 4).size == 1);

  SplitMix64 gen(6);
  for (int i = 0; i < 200; ++i) {
    const auto g = random_uniform_hypergraph(10, 15, 3, gen);
    const auto s = max_hypergraph_matching(g, 15);
    REQUIRE(is_matching(g, s));
    REQUIRE(s.size == brute_max_matching(g, false).size);
  }
  // The cap stops at a witness of size k + 1.
  const auto many = make_graph(12, std::vector<Hyperedge>{{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {9, 10, 11}});
  CHECK(max_hypergraph_matching(many, 1).size >= 2);
}

TEST_CASE("contraction properties") {
  const PropertySpec one{PropertySpec::Kind::b_matching, 1};
  const PropertySpec two{PropertySpec::Kind::b_matching, 2};
  const PropertySpec forest{PropertySpec::Kind::max_forest, 0};
  const PropertySpec paths{PropertySpec::Kind::disjoint_paths, 0};
  const PropertySpec col2{PropertySpec::Kind::k_colorable, 2};

  CHECK(solve_contraction_property(cycle(4), one).size == 2);
  CHECK(solve_contraction_property(cycle(3), forest).size == 2);
  CHECK(brute_property(complete(4), two).size == 4);
  CHECK(solve_contraction_property(complete(4), two).size == 4);
  CHECK(solve_contraction_property(complete(4), paths).size == 3);
  CHECK(solve_contraction_property(cycle(5), col2).size == 4);

  // Loops in the contracted graph are ignored.
  const auto loopy = make_graph(3, std::vector<Hyperedge>{{0}, {0, 1}, {1, 2}});
  CHECK(solve_contraction_property(loopy, forest).size == 2);

  CHECK(parse_property("b_matching:2") == two);
  CHECK(parse_property("max_forest") == forest);
  CHECK(parse_property("k_colorable:3").param == 3);
  CHECK_THROWS_AS(parse_property("clique"), InputError);
  CHECK_THROWS_AS(parse_property("max_forest:2"), InputError);
  CHECK(to_string(parse_property("disjoint_paths")) == "disjoint_paths");

  SplitMix64 gen(7);
  for (const auto& prop : {one, two, PropertySpec{PropertySpec::Kind::b_matching, 3}, forest, paths, col2,
                           PropertySpec{PropertySpec::Kind::k_colorable, 3}}) {
    for (int i = 0; i < 60; ++i) {
      auto g = random_graph(4 + gen.below(5), 0.5, gen);
      while (g.edges.size() > 14) g.edges.pop_back();
      const auto s = solve_contraction_property(g, prop);
      REQUIRE(satisfies_property(g, s, prop));
      REQUIRE(s.size == brute_property(g, prop).size);
    }
  }
}
