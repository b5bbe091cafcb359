#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "rotor/graph.hpp"
#include "rotor/linalg.hpp"

namespace rotor {

class ExperimentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Family { thm2, two_four_chain, cycle, bidirected_complete };

Family parse_family(std::string_view name);
std::string_view family_name(Family f);
/// Smallest n the generator accepts.
std::size_t family_min_n(Family f);
DirectedMultigraph generate_family(Family f, std::size_t n);

/// Frequency of M = 1 over random strongly connected digraphs.
struct ExperimentRecord {
  std::size_t n = 0;
  double p = 0.0;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::size_t m1_count = 0;
  std::map<BigInt, std::size_t> m_histogram;
  double elapsed_s = 0.0;
};

struct ExperimentOptions {
  /// Worker threads; results never depend on this.
  std::size_t threads = 1;
  RandomDigraphOptions sampler;
};

/// Trial i samples with seed + i.
ExperimentRecord run_m1_experiment(std::size_t n, double p, std::size_t trials, std::uint64_t seed,
                                   ExperimentOptions options = {});

struct FamilySweepRow {
  Family family{};
  std::size_t n = 0;
  std::vector<BigInt> tree_counts;
  BigInt m;
  BigInt orbit_size;
  BigInt orbit_count;
  std::size_t edges = 0;
  bool eulerian = false;
  /// Set when the brute-force cross-check ran; true on agreement.
  std::optional<bool> simulation_match;
};

struct SweepOptions {
  bool simulate = true;
  std::uint64_t simulation_budget = 1'000'000;
};

std::vector<FamilySweepRow> run_family_sweep(Family family, std::size_t n_from, std::size_t n_to,
                                             SweepOptions options = {});

/// CSV with header `experiment,n,p,seed,trials,m1_count,m_histogram_json,elapsed_s`.
/// elapsed_s is left blank unless include_timing is set, so that repeated
/// runs produce identical bytes.
std::string experiment_csv(const ExperimentRecord& r, bool include_timing = false);
nlohmann::json experiment_json(const ExperimentRecord& r, bool include_timing = false);

/// CSV with header `family,n,tree_counts,M,orbit_size,orbit_count,edges,eulerian`;
/// tree counts are ';'-separated decimals.
std::string sweep_csv(const std::vector<FamilySweepRow>& rows);
nlohmann::json sweep_json(const std::vector<FamilySweepRow>& rows);

/// RFC 4180 quoting when the field contains a comma, quote or newline.
std::string csv_field(std::string_view s);

}  // namespace rotor
