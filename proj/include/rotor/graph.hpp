#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rotor {

/// Vertices are numbered 1..n on every public interface.
using Vertex = std::uint32_t;

/// An edge is identified by its tail and its position in the tail's rotor order.
struct EdgeRef {
  Vertex tail = 0;
  std::size_t index = 0;

  friend auto operator<=>(const EdgeRef&, const EdgeRef&) = default;
};

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public GraphError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : GraphError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Finite directed multigraph. Each vertex carries an ordered list of head
/// vertices; the list order is the cyclic rotor order, repeated heads are
/// parallel edges and a head equal to the tail is a loop. Immutable.
class DirectedMultigraph {
 public:
  DirectedMultigraph() = default;

  /// out_edges[v-1] lists the heads of v's out-edges. Throws GraphError if
  /// the list count differs from n or a head is outside 1..n.
  DirectedMultigraph(std::size_t n, std::vector<std::vector<Vertex>> out_edges);

  std::size_t vertex_count() const { return out_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  std::span<const Vertex> out_edges(Vertex v) const { return out_[v - 1]; }
  std::size_t out_degree(Vertex v) const { return out_[v - 1].size(); }
  std::size_t in_degree(Vertex v) const { return in_degree_[v - 1]; }
  /// Number of edges v -> w; for v == w, the number of loops at v.
  std::size_t multiplicity(Vertex v, Vertex w) const;
  bool is_sink(Vertex v) const { return out_[v - 1].empty(); }
  bool has_sink() const;

  Vertex head(EdgeRef e) const { return out_[e.tail - 1][e.index]; }
  /// The rotor successor e+ of e.
  EdgeRef next(EdgeRef e) const {
    return {e.tail, (e.index + 1) % out_degree(e.tail)};
  }

  /// Copy with every out-edge of v removed; v becomes a sink.
  DirectedMultigraph without_out_edges(Vertex v) const;

  /// Copy where each vertex's rotor order is permuted uniformly at random.
  DirectedMultigraph with_shuffled_rotors(std::mt19937_64& rng) const;

  friend bool operator==(const DirectedMultigraph&, const DirectedMultigraph&) = default;

 private:
  std::vector<std::vector<Vertex>> out_;
  std::vector<std::size_t> in_degree_;
  std::size_t edge_count_ = 0;
};

DirectedMultigraph parse_digraph(std::string_view text);
std::string serialize_digraph(const DirectedMultigraph& g);

bool is_strongly_connected(const DirectedMultigraph& g);
bool is_eulerian(const DirectedMultigraph& g);
/// The outdegree-0 vertex reachable from every vertex, if there is one.
std::optional<Vertex> global_sink(const DirectedMultigraph& g);

// Generators. Out-edges are emitted sorted by head, except gen_thm2_family
// which lists (i,i+1) before (i,1).

/// Directed cycle 1 -> 2 -> ... -> n -> 1 (n = 1 is a single loop).
DirectedMultigraph gen_cycle(std::size_t n);
/// Every ordered pair (i, j), i != j, joined by one edge.
DirectedMultigraph gen_bidirected_complete(std::size_t n);
/// Strongly connected non-Eulerian family with a single rotor orbit:
/// edges (i, i+1) for i < n and (i, 1) for i >= 2. Requires n >= 3.
DirectedMultigraph gen_thm2_family(std::size_t n);
/// Path on 1..n+1 with two edges i -> i+1 and four edges i+1 -> i.
DirectedMultigraph gen_two_four_chain(std::size_t n);

struct RandomDigraphOptions {
  std::size_t max_attempts = 10'000;
};

/// Simple digraph with each ordered pair present independently with
/// probability p, resampled until strongly connected. Deterministic in seed.
/// Throws GraphError when the attempt cap is exhausted.
DirectedMultigraph gen_random_strong_digraph(std::size_t n, double p, std::uint64_t seed,
                                             RandomDigraphOptions options = {});

/// Bernoulli(p) draw that depends only on the engine output, so sampling is
/// reproducible across standard library implementations.
bool portable_bernoulli(std::mt19937_64& rng, double p);

}  // namespace rotor
