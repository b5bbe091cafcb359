#pragma once

// Test-only graph corpus and independent oracles.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "rotor/graph.hpp"
#include "rotor/linalg.hpp"

namespace rotor::testing {

struct NamedGraph {
  std::string name;
  DirectedMultigraph graph;
};

/// Reachability by transitive closure (Floyd-Warshall), independent of the
/// library's search.
inline bool closure_strongly_connected(const DirectedMultigraph& g) {
  const auto n = g.vertex_count();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t v = 0; v < n; ++v) {
    reach[v][v] = true;
    for (Vertex h : g.out_edges(static_cast<Vertex>(v + 1))) reach[v][h - 1] = true;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (reach[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (reach[k][j]) reach[i][j] = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!reach[i][j]) return false;
  return true;
}

/// Laplace expansion along the first row.
inline BigInt cofactor_det(const IntMatrix& m) {
  const auto n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  BigInt total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m(0, c) == 0) continue;
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t k = 0, o = 0; k < n; ++k) {
        if (k == c) continue;
        minor(r - 1, o++) = m(r, k);
      }
    BigInt term = m(0, c) * cofactor_det(minor);
    total += (c % 2 == 0) ? term : BigInt(-term);
  }
  return total;
}

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t n, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  IntMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = dist(rng);
  return m;
}

/// Strongly connected multigraph with loops and parallel edges: a random
/// Hamiltonian cycle plus extra random edges (heads may repeat or equal the
/// tail).
inline DirectedMultigraph random_multigraph(std::mt19937_64& rng, std::size_t n, std::size_t extra) {
  std::vector<Vertex> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<Vertex>(i + 1);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::vector<Vertex>> lists(n);
  for (std::size_t i = 0; i < n; ++i) lists[perm[i] - 1].push_back(perm[(i + 1) % n]);
  std::uniform_int_distribution<Vertex> pick(1, static_cast<Vertex>(n));
  for (std::size_t e = 0; e < extra; ++e) {
    auto t = pick(rng);
    lists[t - 1].push_back(pick(rng));
  }
  for (auto& l : lists) std::shuffle(l.begin(), l.end(), rng);
  return DirectedMultigraph(n, std::move(lists));
}

/// Graph with a global sink: a strongly connected graph with every out-edge
/// of `sink` removed.
inline DirectedMultigraph random_sink_graph(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<std::size_t> extra(0, n + 2);
  auto g = random_multigraph(rng, n, extra(rng));
  std::uniform_int_distribution<Vertex> pick(1, static_cast<Vertex>(n));
  return g.without_out_edges(pick(rng));
}

/// Family graphs plus random strongly connected graphs; every member is
/// strongly connected and sinkless.
inline std::vector<NamedGraph> strong_corpus(std::size_t random_simple, std::size_t random_multi,
                                             std::uint64_t seed = 2024) {
  std::vector<NamedGraph> out;
  for (std::size_t n = 1; n <= 8; ++n) out.push_back({"cycle(" + std::to_string(n) + ")", gen_cycle(n)});
  for (std::size_t n = 2; n <= 5; ++n)
    out.push_back({"bidirected_complete(" + std::to_string(n) + ")", gen_bidirected_complete(n)});
  for (std::size_t n = 3; n <= 8; ++n)
    out.push_back({"thm2(" + std::to_string(n) + ")", gen_thm2_family(n)});
  for (std::size_t n = 1; n <= 4; ++n)
    out.push_back({"two_four_chain(" + std::to_string(n) + ")", gen_two_four_chain(n)});
  out.push_back({"loop+double", DirectedMultigraph(2, {{1, 2, 2}, {1}})});

  std::mt19937_64 rng(seed);
  const double ps[] = {0.3, 0.5, 0.7, 0.9};
  for (std::size_t i = 0; i < random_simple; ++i) {
    const std::size_t n = 2 + i % 5;  // 2..6
    const double p = ps[(i / 5) % 4];
    out.push_back({"gnp(" + std::to_string(n) + "," + std::to_string(p) + ",#" + std::to_string(i) + ")",
                   gen_random_strong_digraph(n, p, seed * 1000 + i)});
  }
  for (std::size_t i = 0; i < random_multi; ++i) {
    const std::size_t n = 1 + i % 5;
    out.push_back({"multi(" + std::to_string(n) + ",#" + std::to_string(i) + ")",
                   random_multigraph(rng, n, i % 4 + 1)});
  }
  return out;
}

}  // namespace rotor::testing
