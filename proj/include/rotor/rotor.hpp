#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rotor/graph.hpp"

namespace rotor {

class RotorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Marks a sink vertex, which carries no rotor.
inline constexpr std::uint32_t kNoRotor = std::numeric_limits<std::uint32_t>::max();

/// rotor[v-1] is the index of the current edge in v's rotor order, or
/// kNoRotor for sinks.
struct RotorConfiguration {
  std::vector<std::uint32_t> rotor;

  std::uint32_t operator[](Vertex v) const { return rotor[v - 1]; }
  friend auto operator<=>(const RotorConfiguration&, const RotorConfiguration&) = default;
};

struct ChipRotorState {
  Vertex chip = 1;
  RotorConfiguration config;

  friend auto operator<=>(const ChipRotorState&, const ChipRotorState&) = default;
};

/// chips[v-1] is the number of chips on v; sink entries must be zero.
struct ChipConfiguration {
  std::vector<std::uint64_t> chips;
};

/// All rotors at index 0 (the first listed edge), sinks marked.
RotorConfiguration initial_configuration(const DirectedMultigraph& g);
/// Throws RotorError unless config fits g.
void validate(const DirectedMultigraph& g, const RotorConfiguration& config);

/// Serialized as "chip=v; rotors=i1,i2,...,in" with '-' for sinks.
std::string format_state(const ChipRotorState& state);
ChipRotorState parse_state(std::string_view text);

/// Advance the rotor at the chip, then move the chip along the new edge.
/// A chip at a sink stays put.
ChipRotorState rotor_step(const DirectedMultigraph& g, ChipRotorState state);
void rotor_step_in_place(const DirectedMultigraph& g, ChipRotorState& state);

/// Chip positions v_0..v_t.
std::vector<Vertex> rotor_walk(const DirectedMultigraph& g, ChipRotorState state, std::size_t steps);

/// The rotor edges form a functional graph with exactly one directed cycle
/// and the chip lies on it. Throws RotorError when g has a sink.
bool is_unicycle(const DirectedMultigraph& g, const ChipRotorState& state);

inline constexpr std::uint64_t kDefaultStateBudget = 1'000'000;

/// Iterate rotor_step until the state is a unicycle. Throws RotorError
/// after `budget` steps.
ChipRotorState find_recurrent(const DirectedMultigraph& g, ChipRotorState state,
                              std::uint64_t budget = kDefaultStateBudget);

/// States from `state` up to (excluding) its first return. Requires a
/// unicycle; throws RotorError otherwise or when the orbit exceeds budget.
std::vector<ChipRotorState> orbit_of(const DirectedMultigraph& g, const ChipRotorState& state,
                                     std::uint64_t budget = kDefaultStateBudget);

/// Bijection between states and 0..count()-1 (mixed radix over the rotor
/// indices, chip as the most significant digit).
class StateSpace {
 public:
  /// Throws RotorError when n * prod(outdeg) exceeds budget.
  explicit StateSpace(const DirectedMultigraph& g, std::uint64_t budget = kDefaultStateBudget);

  std::uint64_t count() const { return count_; }
  std::uint64_t configuration_count() const { return configs_; }
  std::uint64_t encode(const ChipRotorState& s) const;
  ChipRotorState decode(std::uint64_t index) const;
  RotorConfiguration decode_configuration(std::uint64_t index) const;

  /// Product of outdegrees (sinks count 1) times n; saturates at uint64 max.
  static std::uint64_t size_of(const DirectedMultigraph& g);

 private:
  std::vector<std::uint32_t> radix_;
  std::uint64_t configs_ = 1;
  std::uint64_t count_ = 0;
};

/// Visit every rotor configuration of g (sinks marked kNoRotor). Throws
/// RotorError when prod(outdeg) exceeds budget.
void for_each_configuration(const DirectedMultigraph& g, std::uint64_t budget,
                            const std::function<void(const RotorConfiguration&)>& fn);

/// Every unicycle of a sinkless graph. Throws RotorError over budget.
std::vector<ChipRotorState> enumerate_unicycles(const DirectedMultigraph& g,
                                                std::uint64_t budget = kDefaultStateBudget);

/// Split all unicycles into rotor-router orbits, in order of first
/// discovery.
std::vector<std::vector<ChipRotorState>> partition_orbits(const DirectedMultigraph& g,
                                                          std::uint64_t budget = kDefaultStateBudget);

inline constexpr std::uint64_t kDefaultRoutingBudget = 100'000'000;

/// E_v: drop a chip on v and route it until it reaches the global sink.
/// Throws RotorError when g has no global sink or routing exceeds budget.
RotorConfiguration chip_addition(const DirectedMultigraph& g, Vertex v, RotorConfiguration rho,
                                 std::uint64_t budget = kDefaultRoutingBudget);

/// Apply E_v c(v) times for each v, visiting vertices in `order`.
RotorConfiguration apply_chip_config(const DirectedMultigraph& g, const ChipConfiguration& c,
                                     RotorConfiguration rho, std::span<const Vertex> order);
/// Same with vertices in increasing order.
RotorConfiguration apply_chip_config(const DirectedMultigraph& g, const ChipConfiguration& c,
                                     RotorConfiguration rho);

/// Rotor edges of non-sink vertices form no directed cycle. Throws
/// RotorError when g has no global sink.
bool is_acyclic_config(const DirectedMultigraph& g, const RotorConfiguration& rho);

/// Copy of rho as a configuration on g.without_out_edges(v).
RotorConfiguration restrict_to_sink(const RotorConfiguration& rho, Vertex v);

}  // namespace rotor

template <>
struct std::hash<rotor::ChipRotorState> {
  std::size_t operator()(const rotor::ChipRotorState& s) const noexcept {
    std::size_t h = s.chip;
    for (auto r : s.config.rotor) h = h * 1000003u ^ r;
    return h;
  }
};
