#include "doctest.h"

#include <numeric>

#include "rotor/experiments.hpp"

using namespace rotor;

TEST_CASE("family names") {
  for (auto f : {Family::thm2, Family::two_four_chain, Family::cycle, Family::bidirected_complete})
    CHECK(parse_family(family_name(f)) == f);
  CHECK_THROWS_AS(parse_family("petersen"), ExperimentError);
  CHECK(family_min_n(Family::thm2) == 3);
  CHECK(generate_family(Family::cycle, 4) == gen_cycle(4));
}

TEST_CASE("M = 1 experiment") {
  SUBCASE("dense pairs are always the 2-cycle") {
    const auto r = run_m1_experiment(2, 0.9, 100, 1);
    CHECK(r.m1_count == 100);
    CHECK(r.m_histogram.size() == 1);
    CHECK(r.m_histogram.at(1) == 100);
  }
  SUBCASE("histogram against brute-force gcds") {
    const std::uint64_t seed = 77;
    const auto r = run_m1_experiment(4, 0.5, 60, seed);
    std::map<BigInt, std::size_t> oracle;
    for (std::size_t i = 0; i < 60; ++i) {
      const auto counts = brute_force_tree_counts(gen_random_strong_digraph(4, 0.5, seed + i));
      BigInt m = 0;
      for (const auto& t : counts.counts) m = gcd(m, t);
      ++oracle[m];
    }
    CHECK(r.m_histogram == oracle);
    CHECK(r.m1_count == oracle[1]);
  }
  SUBCASE("deterministic and thread independent") {
    const auto a = run_m1_experiment(6, 0.4, 200, 9);
    const auto b = run_m1_experiment(6, 0.4, 200, 9);
    const auto c = run_m1_experiment(6, 0.4, 200, 9, {.threads = 4});
    CHECK(experiment_csv(a) == experiment_csv(b));
    CHECK(experiment_csv(a) == experiment_csv(c));
    std::size_t total = 0;
    for (const auto& [m, k] : a.m_histogram) total += k;
    CHECK(total == 200);
  }
  CHECK_THROWS_AS(run_m1_experiment(1, 0.5, 10, 0), ExperimentError);
  CHECK_THROWS_AS(run_m1_experiment(3, 0.0, 10, 0), ExperimentError);
  CHECK_THROWS_AS(run_m1_experiment(3, 0.5, 0, 0), ExperimentError);
  CHECK_THROWS_AS(run_m1_experiment(30, 0.001, 2, 0, {.threads = 2, .sampler = {.max_attempts = 5}}),
                  GraphError);
}

TEST_CASE("experiment output") {
  ExperimentRecord r{5, 0.5, 42, 10, 7, {{BigInt(1), 7}, {BigInt(2), 2}, {BigInt(10), 1}}, 1.25};
  CHECK(experiment_csv(r) ==
        "experiment,n,p,seed,trials,m1_count,m_histogram_json,elapsed_s\n"
        "m1,5,0.5,42,10,7,\"{\"\"1\"\":7,\"\"2\"\":2,\"\"10\"\":1}\",\n");
  CHECK(experiment_csv(r, true).ends_with(",1.25\n"));
  const auto j = experiment_json(r);
  CHECK(j["m1_count"] == 7);
  CHECK(j["m_histogram"]["10"] == 1);
  CHECK(j["elapsed_s"].is_null());
  CHECK(experiment_json(r, true)["elapsed_s"] == 1.25);
}

TEST_CASE("family sweeps") {
  SUBCASE("thm2 has M = 1") {
    const auto rows = run_family_sweep(Family::thm2, 3, 8);
    REQUIRE(rows.size() == 6);
    for (const auto& row : rows) {
      CAPTURE(row.n);
      CHECK(row.m == 1);
      CHECK(row.orbit_count == 1);
      CHECK(row.simulation_match == true);
    }
  }
  SUBCASE("two-four chain has M = 2^n") {
    const auto rows = run_family_sweep(Family::two_four_chain, 1, 4);
    for (const auto& row : rows) {
      CHECK(row.m == BigInt(1) << row.n);
      CHECK(row.orbit_count == BigInt(1) << row.n);
      CHECK(row.simulation_match == true);
    }
  }
  SUBCASE("cycles are a single orbit of length n") {
    for (const auto& row : run_family_sweep(Family::cycle, 3, 6)) {
      CHECK(row.orbit_size == row.n);
      CHECK(row.orbit_count == 1);
      CHECK(row.eulerian);
    }
  }
  SUBCASE("no simulation") {
    const auto rows = run_family_sweep(Family::bidirected_complete, 2, 3, {.simulate = false});
    CHECK_FALSE(rows[0].simulation_match.has_value());
  }
  CHECK_THROWS_AS(run_family_sweep(Family::cycle, 5, 4), ExperimentError);
  CHECK_THROWS_AS(run_family_sweep(Family::thm2, 2, 4), ExperimentError);
}

TEST_CASE("sweep output") {
  const auto rows = run_family_sweep(Family::thm2, 3, 4);
  CHECK(sweep_csv(rows) ==
        "family,n,tree_counts,M,orbit_size,orbit_count,edges,eulerian\n"
        "thm2,3,2;1;1,1,5,1,4,false\n"
        "thm2,4,4;2;1;1,1,11,1,6,false\n");
  const auto j = sweep_json(rows);
  CHECK(j.size() == 2);
  CHECK(j[0]["tree_counts"] == nlohmann::json({"2", "1", "1"}));
  CHECK(j[1]["orbit_size"] == "11");
  CHECK(j[0]["simulation_match"] == true);
}

TEST_CASE("csv quoting") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_field("x\ny") == "\"x\ny\"");
}
