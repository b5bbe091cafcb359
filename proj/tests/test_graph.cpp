#include "doctest.h"

#include "corpus.hpp"
#include "rotor/graph.hpp"

using namespace rotor;

TEST_CASE("parse the file format") {
  SUBCASE("directed 3-cycle") {
    auto g = parse_digraph("3 3\n1: 2\n2: 3\n3: 1\n");
    CHECK(g == gen_cycle(3));
  }
  SUBCASE("two-four chain n=1") {
    auto g = parse_digraph("2 6\n1: 2 2\n2: 1 1 1 1\n");
    CHECK(g == gen_two_four_chain(1));
    CHECK(g.multiplicity(1, 2) == 2);
    CHECK(g.multiplicity(2, 1) == 4);
  }
  SUBCASE("loop") {
    auto g = parse_digraph("1 1\n1: 1\n");
    CHECK(g.out_degree(1) == 1);
    CHECK(g.in_degree(1) == 1);
    CHECK(g.multiplicity(1, 1) == 1);
  }
  SUBCASE("comments, blank lines and sinks") {
    auto g = parse_digraph("# sink graph\n\n2 1\n# rotor order follows\n1: 2\n2:\n");
    CHECK(g.is_sink(2));
    CHECK(g.edge_count() == 1);
  }
  SUBCASE("vertex lines in any order") {
    auto g = parse_digraph("2 2\n2: 1\n1: 2\n");
    CHECK(g == gen_cycle(2));
  }
}

TEST_CASE("parse errors carry the line number") {
  auto line_of = [](const char* text) -> std::size_t {
    try {
      parse_digraph(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("3 3\n1: 2\n2: 4\n3: 1\n") == 3);  // head out of range
  CHECK(line_of("2 2\n1 2\n2: 1\n") == 2);         // missing colon
  CHECK(line_of("2 2\n1: x\n2: 1\n") == 2);        // not a number
  CHECK(line_of("2 2\n3: 1\n2: 1\n") == 2);        // vertex out of range
  CHECK(line_of("2 2\n1: 2\n1: 2\n") == 3);        // duplicate vertex
  CHECK(line_of("# only\n\n") > 0);                // missing header
  CHECK(line_of("2 3\n1: 2\n2: 1\n") > 0);         // m mismatch
  CHECK(line_of("3 2\n1: 2\n2: 1\n") > 0);         // too few vertex lines
  CHECK(line_of("1 0 7\n1:\n") == 1);              // bad header
  CHECK_THROWS_AS(parse_digraph("2 2\n1: 2\n2: 1\n1: 2\n"), ParseError);
}

TEST_CASE("serialize") {
  CHECK(serialize_digraph(gen_cycle(3)) == "3 3\n1: 2\n2: 3\n3: 1\n");
  CHECK(serialize_digraph(parse_digraph("1 1\n1: 1\n")) == "1 1\n1: 1\n");
  CHECK(serialize_digraph(gen_thm2_family(3)) == "3 4\n1: 2\n2: 3 1\n3: 1\n");
  CHECK(serialize_digraph(parse_digraph("2 1\n1: 2\n2:\n")) == "2 1\n1: 2\n2:\n");
}

TEST_CASE("round trip and degree sums over the corpus") {
  std::mt19937_64 rng(11);
  auto corpus = testing::strong_corpus(30, 30);
  for (int i = 0; i < 10; ++i) corpus.push_back({"sink", testing::random_sink_graph(rng, 2 + i % 4)});
  for (const auto& [name, g] : corpus) {
    CAPTURE(name);
    CHECK(parse_digraph(serialize_digraph(g)) == g);
    std::size_t out_sum = 0, in_sum = 0;
    for (Vertex v = 1; v <= g.vertex_count(); ++v) {
      out_sum += g.out_degree(v);
      in_sum += g.in_degree(v);
    }
    CHECK(out_sum == g.edge_count());
    CHECK(in_sum == g.edge_count());
  }
}

TEST_CASE("strong connectivity") {
  CHECK(is_strongly_connected(gen_cycle(3)));
  CHECK_FALSE(is_strongly_connected(parse_digraph("2 1\n1: 2\n2:\n")));
  CHECK(is_strongly_connected(gen_thm2_family(5)));
  CHECK(is_strongly_connected(parse_digraph("1 0\n1:\n")));

  SUBCASE("agrees with transitive closure on random digraphs") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 300; ++trial) {
      const std::size_t n = 1 + trial % 6;
      std::vector<std::vector<Vertex>> lists(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (portable_bernoulli(rng, 0.35)) lists[i].push_back(static_cast<Vertex>(j + 1));
      DirectedMultigraph g(n, std::move(lists));
      CHECK(is_strongly_connected(g) == testing::closure_strongly_connected(g));
    }
  }
}

TEST_CASE("Eulerian predicate") {
  CHECK(is_eulerian(gen_bidirected_complete(3)));
  CHECK_FALSE(is_eulerian(gen_thm2_family(3)));
  CHECK_FALSE(is_eulerian(gen_two_four_chain(1)));
  CHECK(is_eulerian(gen_cycle(4)));
  // Balanced but disconnected.
  CHECK_FALSE(is_eulerian(parse_digraph("2 2\n1: 1\n2: 2\n")));
}

TEST_CASE("global sink") {
  CHECK(global_sink(parse_digraph("2 1\n1: 2\n2:\n")) == Vertex{2});
  CHECK_FALSE(global_sink(gen_cycle(3)).has_value());
  CHECK(global_sink(gen_thm2_family(4).without_out_edges(3)) == Vertex{3});
  // Two sinks: neither is global.
  CHECK_FALSE(global_sink(parse_digraph("3 2\n1: 2 3\n2:\n3:\n")).has_value());
  // A sink not reachable from everything.
  CHECK_FALSE(global_sink(parse_digraph("3 2\n1: 2\n2:\n3: 3\n")).has_value());
}

TEST_CASE("generators") {
  auto t3 = gen_thm2_family(3);
  CHECK(t3.vertex_count() == 3);
  CHECK(t3.edge_count() == 4);
  CHECK(t3.multiplicity(1, 2) == 1);
  CHECK(t3.multiplicity(2, 3) == 1);
  CHECK(t3.multiplicity(2, 1) == 1);
  CHECK(t3.multiplicity(3, 1) == 1);
  CHECK_THROWS_AS(gen_thm2_family(2), GraphError);
  CHECK_THROWS_AS(gen_cycle(0), GraphError);
  CHECK_THROWS_AS(gen_two_four_chain(0), GraphError);

  for (std::size_t n = 3; n <= 12; ++n) {
    auto g = gen_thm2_family(n);
    CHECK(g.out_degree(1) == 1);
    CHECK(g.in_degree(1) == n - 1);
    CHECK(is_strongly_connected(g));
    CHECK_FALSE(is_eulerian(g));
  }
  for (std::size_t n = 1; n <= 10; ++n) {
    auto g = gen_two_four_chain(n);
    CHECK(g.vertex_count() == n + 1);
    CHECK(g.edge_count() == 6 * n);
    CHECK_FALSE(is_eulerian(g));
  }
  auto c4 = gen_cycle(4);
  CHECK(c4.edge_count() == 4);
  CHECK(is_eulerian(c4));
  CHECK(gen_bidirected_complete(4).edge_count() == 12);
}

TEST_CASE("random strongly connected digraphs") {
  auto pair = gen_random_strong_digraph(2, 0.99, 3);
  CHECK(pair == gen_cycle(2));

  auto a = gen_random_strong_digraph(5, 0.5, 7);
  auto b = gen_random_strong_digraph(5, 0.5, 7);
  CHECK(a == b);
  CHECK(testing::closure_strongly_connected(a));

  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto g = gen_random_strong_digraph(2 + seed % 6, 0.4, seed);
    CHECK(testing::closure_strongly_connected(g));
    for (Vertex v = 1; v <= g.vertex_count(); ++v) {
      CHECK(g.multiplicity(v, v) == 0);
      for (Vertex w = 1; w <= g.vertex_count(); ++w) CHECK(g.multiplicity(v, w) <= 1);
      CHECK(std::is_sorted(g.out_edges(v).begin(), g.out_edges(v).end()));
    }
  }

  CHECK_THROWS_AS(gen_random_strong_digraph(30, 0.001, 1, {.max_attempts = 20}), GraphError);
  CHECK_THROWS_AS(gen_random_strong_digraph(1, 0.5, 1), GraphError);
  CHECK_THROWS_AS(gen_random_strong_digraph(3, 1.0, 1), GraphError);
}

TEST_CASE("shuffled rotor orders keep the multiset of heads") {
  std::mt19937_64 rng(9);
  auto g = gen_two_four_chain(3);
  auto s = g.with_shuffled_rotors(rng);
  for (Vertex v = 1; v <= g.vertex_count(); ++v) {
    std::vector<Vertex> a(g.out_edges(v).begin(), g.out_edges(v).end());
    std::vector<Vertex> b(s.out_edges(v).begin(), s.out_edges(v).end());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);
  }
}

TEST_CASE("edge successor is cyclic") {
  auto g = gen_thm2_family(3);
  CHECK(g.next({2, 0}) == EdgeRef{2, 1});
  CHECK(g.next({2, 1}) == EdgeRef{2, 0});
  CHECK(g.head({2, 1}) == 1);
}
