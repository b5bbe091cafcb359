#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include "json.hpp"

#include "rotor/graph.hpp"
#include "rotor/linalg.hpp"
#include "rotor/rotor.hpp"

namespace rotor {

using Rational = boost::multiprecision::cpp_rational;

class AnalysisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Brute-force orbit data from exhaustive unicycle enumeration.
struct SimulatedOrbits {
  std::uint64_t unicycle_count = 0;
  std::vector<std::uint64_t> orbit_sizes;
  /// per_orbit_visits[k][v-1]: chip visits to v within orbit k.
  std::vector<std::vector<std::uint64_t>> per_orbit_visits;
};

struct OrbitReport {
  TreeCountVector trees;
  BigInt orbit_size_formula;
  /// Equals M.
  BigInt orbit_count_formula;
  BigInt unicycle_count;
  /// per_vertex_visits[v-1] = deg+(v) T(v) / M.
  std::vector<BigInt> per_vertex_visits;
  std::optional<SimulatedOrbits> simulated;
  /// Set when the simulation was requested but the graph was over budget.
  bool simulation_skipped = false;

  /// True when no simulation ran or every simulated quantity equals its
  /// formula value.
  bool matches() const;
};

struct OrbitReportOptions {
  bool simulate = true;
  /// Simulation runs only if the unicycle count and the state space are
  /// both within this budget.
  std::uint64_t simulation_budget = 1'000'000;
};

/// Throws AnalysisError unless g is strongly connected and sinkless.
OrbitReport orbit_report(const DirectedMultigraph& g, OrbitReportOptions options = {});

SimulatedOrbits simulate_orbits(const DirectedMultigraph& g, std::uint64_t budget = kDefaultStateBudget);

struct StationaryDistribution {
  std::vector<Rational> probs;
};

/// pi(v) = T(v) deg+(v) / sum_w T(w) deg+(w), exactly.
StationaryDistribution stationary_exact(const DirectedMultigraph& g);

struct PowerIterationOptions {
  std::size_t iterations = 100'000;
  double tolerance = 1e-10;
};

/// Stationary vector of the simple random walk by power iteration of the
/// lazy chain (I + P) / 2. Throws AnalysisError without convergence.
std::vector<double> stationary_power_iteration(const DirectedMultigraph& g,
                                               PowerIterationOptions options = {});

/// Visit frequencies of v_0..v_{t-1} along the rotor walk from start.
std::vector<Rational> empirical_frequency(const DirectedMultigraph& g, const ChipRotorState& start,
                                          std::size_t steps);

/// Exact check that the tree-count vector annihilates the Laplacian from
/// the left.
bool verify_markov_tree(const DirectedMultigraph& g);

/// "p/q" with q > 0 (integers print as "p/1").
std::string format_rational(const Rational& r);
double to_double(const Rational& r);
Rational max_abs_difference(const std::vector<Rational>& a, const std::vector<Rational>& b);

nlohmann::json to_json(const OrbitReport& report);
nlohmann::json to_json(const StationaryDistribution& dist);

}  // namespace rotor
