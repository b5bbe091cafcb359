#include "rotor/graph.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace rotor {

DirectedMultigraph::DirectedMultigraph(std::size_t n, std::vector<std::vector<Vertex>> out_edges)
    : out_(std::move(out_edges)), in_degree_(n, 0) {
  if (out_.size() != n) {
    throw GraphError("expected " + std::to_string(n) + " adjacency lists, got " +
                     std::to_string(out_.size()));
  }
  for (std::size_t v = 0; v < n; ++v) {
    for (Vertex h : out_[v]) {
      if (h < 1 || h > n) {
        throw GraphError("vertex " + std::to_string(v + 1) + " has head " + std::to_string(h) +
                         " outside 1.." + std::to_string(n));
      }
      ++in_degree_[h - 1];
    }
    edge_count_ += out_[v].size();
  }
}

std::size_t DirectedMultigraph::multiplicity(Vertex v, Vertex w) const {
  const auto& heads = out_[v - 1];
  return static_cast<std::size_t>(std::count(heads.begin(), heads.end(), w));
}

bool DirectedMultigraph::has_sink() const {
  return std::any_of(out_.begin(), out_.end(), [](const auto& l) { return l.empty(); });
}

DirectedMultigraph DirectedMultigraph::without_out_edges(Vertex v) const {
  auto lists = out_;
  lists[v - 1].clear();
  const auto n = lists.size();
  return DirectedMultigraph(n, std::move(lists));
}

DirectedMultigraph DirectedMultigraph::with_shuffled_rotors(std::mt19937_64& rng) const {
  auto lists = out_;
  for (auto& l : lists) {
    for (std::size_t i = l.size(); i > 1; --i) {
      std::swap(l[i - 1], l[rng() % i]);
    }
  }
  const auto n = lists.size();
  return DirectedMultigraph(n, std::move(lists));
}

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::size_t parse_count(std::string_view tok, std::size_t line, const char* what) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(line, std::string("invalid ") + what + " '" + std::string(tok) + "'");
  }
  return value;
}

std::vector<std::vector<std::size_t>> reachability_lists(const DirectedMultigraph& g,
                                                         bool reversed) {
  std::vector<std::vector<std::size_t>> adj(g.vertex_count());
  for (Vertex v = 1; v <= g.vertex_count(); ++v) {
    for (Vertex h : g.out_edges(v)) {
      if (reversed)
        adj[h - 1].push_back(v - 1);
      else
        adj[v - 1].push_back(h - 1);
    }
  }
  return adj;
}

std::vector<bool> reachable_from(const std::vector<std::vector<std::size_t>>& adj,
                                 std::size_t start) {
  std::vector<bool> seen(adj.size(), false);
  std::vector<std::size_t> stack{start};
  seen[start] = true;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (auto w : adj[v]) {
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  return seen;
}

bool all_true(const std::vector<bool>& v) {
  return std::all_of(v.begin(), v.end(), [](bool b) { return b; });
}

}  // namespace

DirectedMultigraph parse_digraph(std::string_view text) {
  std::size_t line_no = 0;
  std::size_t n = 0, m = 0;
  bool have_header = false;
  std::vector<std::vector<Vertex>> lists;
  std::vector<bool> seen;
  std::size_t listed = 0;
  std::size_t edges = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;

    if (!have_header) {
      auto toks = split_ws(line);
      if (toks.size() != 2) throw ParseError(line_no, "expected header 'n m'");
      n = parse_count(toks[0], line_no, "vertex count");
      m = parse_count(toks[1], line_no, "edge count");
      if (n == 0) throw ParseError(line_no, "graph must have at least one vertex");
      lists.assign(n, {});
      seen.assign(n, false);
      have_header = true;
      continue;
    }

    auto colon = line.find(':');
    if (colon == std::string_view::npos) throw ParseError(line_no, "expected 'v: heads...'");
    if (listed == n) throw ParseError(line_no, "more than " + std::to_string(n) + " vertex lines");
    auto v = parse_count(trim(line.substr(0, colon)), line_no, "vertex");
    if (v < 1 || v > n) throw ParseError(line_no, "vertex " + std::to_string(v) + " out of range");
    if (seen[v - 1]) throw ParseError(line_no, "vertex " + std::to_string(v) + " listed twice");
    seen[v - 1] = true;
    ++listed;
    for (auto tok : split_ws(line.substr(colon + 1))) {
      auto h = parse_count(tok, line_no, "head");
      if (h < 1 || h > n) throw ParseError(line_no, "head " + std::to_string(h) + " out of range");
      lists[v - 1].push_back(static_cast<Vertex>(h));
      ++edges;
    }
  }
  if (!have_header) throw ParseError(line_no, "missing header 'n m'");
  if (listed != n) {
    throw ParseError(line_no, "expected " + std::to_string(n) + " vertex lines, got " +
                                  std::to_string(listed));
  }
  if (edges != m) {
    throw ParseError(line_no, "declared " + std::to_string(m) + " edges but listed " +
                                  std::to_string(edges));
  }
  return DirectedMultigraph(n, std::move(lists));
}

std::string serialize_digraph(const DirectedMultigraph& g) {
  std::ostringstream os;
  os << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (Vertex v = 1; v <= g.vertex_count(); ++v) {
    os << v << ':';
    for (Vertex h : g.out_edges(v)) os << ' ' << h;
    os << '\n';
  }
  return os.str();
}

bool is_strongly_connected(const DirectedMultigraph& g) {
  if (g.vertex_count() == 0) return false;
  return all_true(reachable_from(reachability_lists(g, false), 0)) &&
         all_true(reachable_from(reachability_lists(g, true), 0));
}

bool is_eulerian(const DirectedMultigraph& g) {
  for (Vertex v = 1; v <= g.vertex_count(); ++v) {
    if (g.out_degree(v) != g.in_degree(v)) return false;
  }
  return is_strongly_connected(g);
}

std::optional<Vertex> global_sink(const DirectedMultigraph& g) {
  std::optional<Vertex> sink;
  for (Vertex v = 1; v <= g.vertex_count(); ++v) {
    if (g.is_sink(v)) {
      // Two sinks cannot both be reachable from each other.
      if (sink) return std::nullopt;
      sink = v;
    }
  }
  if (!sink) return std::nullopt;
  if (!all_true(reachable_from(reachability_lists(g, true), *sink - 1))) return std::nullopt;
  return sink;
}

DirectedMultigraph gen_cycle(std::size_t n) {
  if (n < 1) throw GraphError("cycle needs n >= 1");
  std::vector<std::vector<Vertex>> lists(n);
  for (std::size_t i = 0; i < n; ++i) lists[i] = {static_cast<Vertex>((i + 1) % n + 1)};
  return DirectedMultigraph(n, std::move(lists));
}

DirectedMultigraph gen_bidirected_complete(std::size_t n) {
  if (n < 1) throw GraphError("bidirected complete graph needs n >= 1");
  std::vector<std::vector<Vertex>> lists(n);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      if (i != j) lists[i - 1].push_back(static_cast<Vertex>(j));
    }
  }
  return DirectedMultigraph(n, std::move(lists));
}

DirectedMultigraph gen_thm2_family(std::size_t n) {
  if (n < 3) throw GraphError("thm2 family needs n >= 3");
  std::vector<std::vector<Vertex>> lists(n);
  for (std::size_t i = 1; i <= n; ++i) {
    if (i < n) lists[i - 1].push_back(static_cast<Vertex>(i + 1));
    if (i >= 2) lists[i - 1].push_back(1);
  }
  return DirectedMultigraph(n, std::move(lists));
}

DirectedMultigraph gen_two_four_chain(std::size_t n) {
  if (n < 1) throw GraphError("two-four chain needs n >= 1");
  std::vector<std::vector<Vertex>> lists(n + 1);
  for (std::size_t v = 1; v <= n + 1; ++v) {
    auto& l = lists[v - 1];
    if (v > 1) l.insert(l.end(), 4, static_cast<Vertex>(v - 1));
    if (v <= n) l.insert(l.end(), 2, static_cast<Vertex>(v + 1));
  }
  return DirectedMultigraph(n + 1, std::move(lists));
}

bool portable_bernoulli(std::mt19937_64& rng, double p) {
  // 53 high bits -> uniform double in [0, 1).
  double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return u < p;
}

DirectedMultigraph gen_random_strong_digraph(std::size_t n, double p, std::uint64_t seed,
                                             RandomDigraphOptions options) {
  if (n < 2) throw GraphError("random digraph needs n >= 2");
  if (!(p > 0.0 && p < 1.0)) throw GraphError("random digraph needs 0 < p < 1");
  std::mt19937_64 rng(seed);
  for (std::size_t attempt = 0; attempt < options.max_attempts; ++attempt) {
    std::vector<std::vector<Vertex>> lists(n);
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t j = 1; j <= n; ++j) {
        if (i != j && portable_bernoulli(rng, p)) lists[i - 1].push_back(static_cast<Vertex>(j));
      }
    }
    DirectedMultigraph g(n, std::move(lists));
    if (is_strongly_connected(g)) return g;
  }
  throw GraphError("no strongly connected sample in " + std::to_string(options.max_attempts) +
                   " attempts (n=" + std::to_string(n) + ", p=" + std::to_string(p) + ")");
}

}  // namespace rotor
