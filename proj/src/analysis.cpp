#include "rotor/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rotor {

namespace {

void require_strong_sinkless(const DirectedMultigraph& g) {
  if (!is_strongly_connected(g)) throw AnalysisError("graph is not strongly connected");
  // A strongly connected graph with n >= 2 has no sinks; n = 1 needs a loop.
  if (g.has_sink()) throw AnalysisError("graph has a sink");
}

std::string to_decimal(const BigInt& x) { return x.str(); }

}  // namespace

bool OrbitReport::matches() const {
  if (!simulated) return true;
  const auto& sim = *simulated;
  if (BigInt(sim.unicycle_count) != unicycle_count) return false;
  if (BigInt(sim.orbit_sizes.size()) != orbit_count_formula) return false;
  for (auto size : sim.orbit_sizes)
    if (BigInt(size) != orbit_size_formula) return false;
  for (const auto& visits : sim.per_orbit_visits) {
    if (visits.size() != per_vertex_visits.size()) return false;
    for (std::size_t v = 0; v < visits.size(); ++v)
      if (BigInt(visits[v]) != per_vertex_visits[v]) return false;
  }
  return true;
}

SimulatedOrbits simulate_orbits(const DirectedMultigraph& g, std::uint64_t budget) {
  SimulatedOrbits sim;
  for (const auto& orbit : partition_orbits(g, budget)) {
    sim.unicycle_count += orbit.size();
    sim.orbit_sizes.push_back(orbit.size());
    std::vector<std::uint64_t> visits(g.vertex_count(), 0);
    for (const auto& s : orbit) ++visits[s.chip - 1];
    sim.per_orbit_visits.push_back(std::move(visits));
  }
  return sim;
}

OrbitReport orbit_report(const DirectedMultigraph& g, OrbitReportOptions options) {
  require_strong_sinkless(g);
  OrbitReport report;
  report.trees = tree_counts(g);
  const auto& m = report.trees.m_gcd;
  report.unicycle_count = 0;
  for (Vertex v = 1; v <= g.vertex_count(); ++v) {
    BigInt weighted = report.trees.counts[v - 1] * g.out_degree(v);
    report.unicycle_count += weighted;
    report.per_vertex_visits.push_back(weighted / m);
  }
  report.orbit_count_formula = m;
  report.orbit_size_formula = report.unicycle_count / m;

  if (options.simulate) {
    if (report.unicycle_count <= options.simulation_budget &&
        StateSpace::size_of(g) <= options.simulation_budget) {
      report.simulated = simulate_orbits(g, options.simulation_budget);
    } else {
      report.simulation_skipped = true;
    }
  }
  return report;
}

StationaryDistribution stationary_exact(const DirectedMultigraph& g) {
  if (!is_strongly_connected(g)) throw AnalysisError("graph is not strongly connected");
  const auto trees = tree_counts(g);
  std::vector<BigInt> weights;
  BigInt total = 0;
  for (Vertex v = 1; v <= g.vertex_count(); ++v) {
    weights.push_back(trees.counts[v - 1] * g.out_degree(v));
    total += weights.back();
  }
  if (total == 0) throw AnalysisError("graph has no edges");
  StationaryDistribution dist;
  for (const auto& w : weights) dist.probs.emplace_back(w, total);
  return dist;
}

std::vector<double> stationary_power_iteration(const DirectedMultigraph& g, PowerIterationOptions options) {
  if (!is_strongly_connected(g)) throw AnalysisError("graph is not strongly connected");
  if (g.has_sink()) throw AnalysisError("graph has a sink");
  const auto n = g.vertex_count();
  std::vector<double> pi(n, 1.0 / static_cast<double>(n)), next(n);
  for (std::size_t it = 0; it < options.iterations; ++it) {
    for (std::size_t v = 0; v < n; ++v) next[v] = 0.5 * pi[v];
    for (Vertex v = 1; v <= n; ++v) {
      const double share = 0.5 * pi[v - 1] / static_cast<double>(g.out_degree(v));
      for (Vertex h : g.out_edges(v)) next[h - 1] += share;
    }
    double sum = 0.0;
    for (double x : next) sum += x;
    double residual = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      next[v] /= sum;
      residual = std::max(residual, std::abs(next[v] - pi[v]));
    }
    pi.swap(next);
    if (residual < options.tolerance) return pi;
  }
  throw AnalysisError("power iteration did not converge in " + std::to_string(options.iterations) +
                      " iterations");
}

std::vector<Rational> empirical_frequency(const DirectedMultigraph& g, const ChipRotorState& start,
                                          std::size_t steps) {
  if (steps == 0) throw AnalysisError("empirical frequency needs at least one step");
  std::vector<std::uint64_t> visits(g.vertex_count(), 0);
  auto s = start;
  for (std::size_t i = 0; i < steps; ++i) {
    ++visits[s.chip - 1];
    rotor_step_in_place(g, s);
  }
  std::vector<Rational> freq;
  freq.reserve(visits.size());
  for (auto c : visits) freq.emplace_back(BigInt(c), BigInt(steps));
  return freq;
}

bool verify_markov_tree(const DirectedMultigraph& g) {
  const auto trees = tree_counts(g);
  const auto product = row_times(trees.counts, laplacian(g));
  return std::all_of(product.begin(), product.end(), [](const BigInt& x) { return x == 0; });
}

std::string format_rational(const Rational& r) {
  return to_decimal(numerator(r)) + "/" + to_decimal(denominator(r));
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

Rational max_abs_difference(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  if (a.size() != b.size()) throw AnalysisError("distribution size mismatch");
  Rational best = 0;
  for (std::size_t i = 0; i < a.size(); ++i) best = std::max<Rational>(best, abs(a[i] - b[i]));
  return best;
}

nlohmann::json to_json(const OrbitReport& report) {
  nlohmann::json j;
  j["orbit_size_formula"] = to_decimal(report.orbit_size_formula);
  j["orbit_count_formula"] = to_decimal(report.orbit_count_formula);
  j["unicycle_count"] = to_decimal(report.unicycle_count);
  nlohmann::json tree = nlohmann::json::array();
  for (const auto& t : report.trees.counts) tree.push_back(to_decimal(t));
  j["tree_counts"] = tree;
  nlohmann::json visits = nlohmann::json::object();
  for (std::size_t v = 0; v < report.per_vertex_visits.size(); ++v)
    visits[std::to_string(v + 1)] = to_decimal(report.per_vertex_visits[v]);
  j["per_vertex_visits"] = visits;
  if (report.simulated) {
    const auto& sim = *report.simulated;
    nlohmann::json s;
    s["unicycle_count"] = std::to_string(sim.unicycle_count);
    s["orbit_count"] = std::to_string(sim.orbit_sizes.size());
    nlohmann::json sizes = nlohmann::json::array();
    for (auto x : sim.orbit_sizes) sizes.push_back(std::to_string(x));
    s["orbit_sizes"] = sizes;
    s["match"] = report.matches();
    j["simulated"] = s;
  } else {
    j["simulated"] = nullptr;
  }
  j["simulation_skipped"] = report.simulation_skipped;
  return j;
}

nlohmann::json to_json(const StationaryDistribution& dist) {
  nlohmann::json probs = nlohmann::json::array();
  for (const auto& p : dist.probs) probs.push_back(format_rational(p));
  return {{"probs", probs}};
}

}  // namespace rotor
