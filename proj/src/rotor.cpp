#include "rotor/rotor.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

namespace rotor {

RotorConfiguration initial_configuration(const DirectedMultigraph& g) {
  RotorConfiguration rho;
  rho.rotor.resize(g.vertex_count());
  for (Vertex v = 1; v <= g.vertex_count(); ++v) rho.rotor[v - 1] = g.is_sink(v) ? kNoRotor : 0;
  return rho;
}

void validate(const DirectedMultigraph& g, const RotorConfiguration& config) {
  if (config.rotor.size() != g.vertex_count())
    throw RotorError("rotor configuration has " + std::to_string(config.rotor.size()) +
                     " entries for " + std::to_string(g.vertex_count()) + " vertices");
  for (Vertex v = 1; v <= g.vertex_count(); ++v) {
    const auto r = config[v];
    if (g.is_sink(v) ? r != kNoRotor : r >= g.out_degree(v))
      throw RotorError("invalid rotor at vertex " + std::to_string(v));
  }
}

std::string format_state(const ChipRotorState& state) {
  std::ostringstream os;
  os << "chip=" << state.chip << "; rotors=";
  for (std::size_t i = 0; i < state.config.rotor.size(); ++i) {
    if (i) os << ',';
    if (state.config.rotor[i] == kNoRotor)
      os << '-';
    else
      os << state.config.rotor[i];
  }
  return os.str();
}

namespace {

std::uint32_t parse_u32(std::string_view tok) {
  std::uint32_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || tok.empty())
    throw RotorError("invalid number '" + std::string(tok) + "' in state");
  return value;
}

}  // namespace

ChipRotorState parse_state(std::string_view text) {
  constexpr std::string_view chip_key = "chip=";
  constexpr std::string_view rotors_key = "; rotors=";
  if (!text.starts_with(chip_key)) throw RotorError("state must start with 'chip='");
  auto sep = text.find(rotors_key);
  if (sep == std::string_view::npos) throw RotorError("state is missing '; rotors='");
  ChipRotorState s;
  s.chip = parse_u32(text.substr(chip_key.size(), sep - chip_key.size()));
  if (s.chip == 0) throw RotorError("chip vertex must be >= 1");
  auto rest = text.substr(sep + rotors_key.size());
  while (!rest.empty()) {
    auto comma = rest.find(',');
    auto tok = rest.substr(0, comma);
    s.config.rotor.push_back(tok == "-" ? kNoRotor : parse_u32(tok));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
    if (rest.empty()) throw RotorError("trailing ',' in state");
  }
  return s;
}

void rotor_step_in_place(const DirectedMultigraph& g, ChipRotorState& state) {
  const Vertex v = state.chip;
  const auto deg = g.out_degree(v);
  if (deg == 0) return;
  auto& r = state.config.rotor[v - 1];
  r = static_cast<std::uint32_t>((r + 1) % deg);
  state.chip = g.out_edges(v)[r];
}

ChipRotorState rotor_step(const DirectedMultigraph& g, ChipRotorState state) {
  rotor_step_in_place(g, state);
  return state;
}

std::vector<Vertex> rotor_walk(const DirectedMultigraph& g, ChipRotorState state, std::size_t steps) {
  std::vector<Vertex> walk;
  walk.reserve(steps + 1);
  walk.push_back(state.chip);
  for (std::size_t i = 0; i < steps; ++i) {
    rotor_step_in_place(g, state);
    walk.push_back(state.chip);
  }
  return walk;
}

namespace {

/// Directed cycles of the functional graph v -> head(rho(v)); on_cycle is
/// filled per vertex. Every vertex must have a rotor.
std::size_t functional_cycles(const DirectedMultigraph& g, const RotorConfiguration& rho,
                              std::vector<char>& on_cycle) {
  const auto n = g.vertex_count();
  on_cycle.assign(n, 0);
  // 0 = unvisited, 1 = on current path, 2 = finished.
  std::vector<char> color(n, 0);
  std::size_t cycles = 0;
  for (std::size_t start = 0; start < n; ++start) {
    if (color[start]) continue;
    std::size_t v = start;
    while (color[v] == 0) {
      color[v] = 1;
      v = g.out_edges(static_cast<Vertex>(v + 1))[rho.rotor[v]] - 1;
    }
    if (color[v] == 1) {
      ++cycles;
      std::size_t w = v;
      do {
        on_cycle[w] = 1;
        w = g.out_edges(static_cast<Vertex>(w + 1))[rho.rotor[w]] - 1;
      } while (w != v);
    }
    for (std::size_t w = start; color[w] == 1;
         w = g.out_edges(static_cast<Vertex>(w + 1))[rho.rotor[w]] - 1)
      color[w] = 2;
  }
  return cycles;
}

void require_sinkless(const DirectedMultigraph& g) {
  if (g.has_sink()) throw RotorError("operation requires a graph without sinks");
}

Vertex require_global_sink(const DirectedMultigraph& g) {
  auto s = global_sink(g);
  if (!s) throw RotorError("operation requires a graph with a global sink");
  return *s;
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
    return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

std::uint64_t product_of_degrees(const DirectedMultigraph& g) {
  std::uint64_t c = 1;
  for (Vertex v = 1; v <= g.vertex_count(); ++v)
    c = saturating_mul(c, std::max<std::uint64_t>(1, g.out_degree(v)));
  return c;
}

}  // namespace

bool is_unicycle(const DirectedMultigraph& g, const ChipRotorState& state) {
  require_sinkless(g);
  std::vector<char> on_cycle;
  return functional_cycles(g, state.config, on_cycle) == 1 && on_cycle[state.chip - 1];
}

ChipRotorState find_recurrent(const DirectedMultigraph& g, ChipRotorState state, std::uint64_t budget) {
  for (std::uint64_t i = 0; i <= budget; ++i) {
    if (is_unicycle(g, state)) return state;
    rotor_step_in_place(g, state);
  }
  throw RotorError("no unicycle reached within " + std::to_string(budget) + " steps");
}

std::vector<ChipRotorState> orbit_of(const DirectedMultigraph& g, const ChipRotorState& state,
                                     std::uint64_t budget) {
  if (!is_unicycle(g, state)) throw RotorError("orbit_of requires a unicycle: " + format_state(state));
  std::vector<ChipRotorState> orbit{state};
  auto cur = rotor_step(g, state);
  while (cur != state) {
    if (orbit.size() >= budget) throw RotorError("orbit exceeds budget of " + std::to_string(budget));
    orbit.push_back(cur);
    rotor_step_in_place(g, cur);
  }
  return orbit;
}

std::uint64_t StateSpace::size_of(const DirectedMultigraph& g) {
  return saturating_mul(product_of_degrees(g), g.vertex_count());
}

StateSpace::StateSpace(const DirectedMultigraph& g, std::uint64_t budget) {
  if (size_of(g) > budget)
    throw RotorError("state space of " + std::to_string(size_of(g)) + " exceeds budget of " +
                     std::to_string(budget));
  radix_.resize(g.vertex_count());
  for (Vertex v = 1; v <= g.vertex_count(); ++v)
    radix_[v - 1] = static_cast<std::uint32_t>(g.out_degree(v));
  configs_ = product_of_degrees(g);
  count_ = configs_ * g.vertex_count();
}

std::uint64_t StateSpace::encode(const ChipRotorState& s) const {
  std::uint64_t idx = 0;
  for (std::size_t i = radix_.size(); i-- > 0;) {
    if (radix_[i] == 0) continue;
    idx = idx * radix_[i] + s.config.rotor[i];
  }
  return static_cast<std::uint64_t>(s.chip - 1) * configs_ + idx;
}

RotorConfiguration StateSpace::decode_configuration(std::uint64_t idx) const {
  RotorConfiguration rho;
  rho.rotor.resize(radix_.size());
  for (std::size_t i = 0; i < radix_.size(); ++i) {
    if (radix_[i] == 0) {
      rho.rotor[i] = kNoRotor;
      continue;
    }
    rho.rotor[i] = static_cast<std::uint32_t>(idx % radix_[i]);
    idx /= radix_[i];
  }
  return rho;
}

ChipRotorState StateSpace::decode(std::uint64_t index) const {
  return {static_cast<Vertex>(index / configs_ + 1), decode_configuration(index % configs_)};
}

void for_each_configuration(const DirectedMultigraph& g, std::uint64_t budget,
                            const std::function<void(const RotorConfiguration&)>& fn) {
  if (product_of_degrees(g) > budget)
    throw RotorError("configuration space exceeds budget of " + std::to_string(budget));
  const auto n = g.vertex_count();
  auto rho = initial_configuration(g);
  while (true) {
    fn(rho);
    std::size_t i = 0;
    for (; i < n; ++i) {
      if (rho.rotor[i] == kNoRotor) continue;
      if (++rho.rotor[i] < g.out_degree(static_cast<Vertex>(i + 1))) break;
      rho.rotor[i] = 0;
    }
    if (i == n) return;
  }
}

std::vector<ChipRotorState> enumerate_unicycles(const DirectedMultigraph& g, std::uint64_t budget) {
  require_sinkless(g);
  if (StateSpace::size_of(g) > budget)
    throw RotorError("state space exceeds budget of " + std::to_string(budget));
  std::vector<ChipRotorState> out;
  std::vector<char> on_cycle;
  for_each_configuration(g, budget, [&](const RotorConfiguration& rho) {
    if (functional_cycles(g, rho, on_cycle) != 1) return;
    for (Vertex v = 1; v <= g.vertex_count(); ++v)
      if (on_cycle[v - 1]) out.push_back({v, rho});
  });
  return out;
}

std::vector<std::vector<ChipRotorState>> partition_orbits(const DirectedMultigraph& g,
                                                          std::uint64_t budget) {
  const StateSpace space(g, budget);
  const auto unicycles = enumerate_unicycles(g, budget);
  std::vector<bool> seen(space.count(), false);
  std::vector<std::vector<ChipRotorState>> orbits;
  for (const auto& u : unicycles) {
    if (seen[space.encode(u)]) continue;
    auto orbit = orbit_of(g, u, budget);
    for (const auto& s : orbit) seen[space.encode(s)] = true;
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

namespace {

void route_to_sink(const DirectedMultigraph& g, Vertex v, RotorConfiguration& rho,
                   std::uint64_t budget) {
  ChipRotorState s{v, std::move(rho)};
  std::uint64_t steps = 0;
  while (!g.is_sink(s.chip)) {
    if (steps++ >= budget) throw RotorError("chip did not reach the sink within budget");
    rotor_step_in_place(g, s);
  }
  rho = std::move(s.config);
}

}  // namespace

RotorConfiguration chip_addition(const DirectedMultigraph& g, Vertex v, RotorConfiguration rho,
                                 std::uint64_t budget) {
  require_global_sink(g);
  validate(g, rho);
  route_to_sink(g, v, rho, budget);
  return rho;
}

RotorConfiguration apply_chip_config(const DirectedMultigraph& g, const ChipConfiguration& c,
                                     RotorConfiguration rho, std::span<const Vertex> order) {
  const auto sink = require_global_sink(g);
  validate(g, rho);
  if (c.chips.size() != g.vertex_count()) throw RotorError("chip configuration size mismatch");
  if (c.chips[sink - 1] != 0) throw RotorError("chip configuration places chips on the sink");
  for (Vertex v : order) {
    for (std::uint64_t k = 0; k < c.chips[v - 1]; ++k) route_to_sink(g, v, rho, kDefaultRoutingBudget);
  }
  return rho;
}

RotorConfiguration apply_chip_config(const DirectedMultigraph& g, const ChipConfiguration& c,
                                     RotorConfiguration rho) {
  std::vector<Vertex> order(g.vertex_count());
  std::iota(order.begin(), order.end(), Vertex{1});
  return apply_chip_config(g, c, std::move(rho), order);
}

bool is_acyclic_config(const DirectedMultigraph& g, const RotorConfiguration& rho) {
  require_global_sink(g);
  validate(g, rho);
  const auto n = g.vertex_count();
  // 0 = unvisited, 1 = on current path, 2 = reaches the sink.
  std::vector<char> color(n, 0);
  for (std::size_t start = 0; start < n; ++start) {
    std::size_t v = start;
    while (color[v] == 0) {
      if (rho.rotor[v] == kNoRotor) {
        color[v] = 2;
        break;
      }
      color[v] = 1;
      v = g.out_edges(static_cast<Vertex>(v + 1))[rho.rotor[v]] - 1;
    }
    if (color[v] == 1) return false;
    for (std::size_t w = start; color[w] == 1;
         w = g.out_edges(static_cast<Vertex>(w + 1))[rho.rotor[w]] - 1)
      color[w] = 2;
  }
  return true;
}

RotorConfiguration restrict_to_sink(const RotorConfiguration& rho, Vertex v) {
  auto out = rho;
  out.rotor[v - 1] = kNoRotor;
  return out;
}

}  // namespace rotor
