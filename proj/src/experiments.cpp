#include "rotor/experiments.hpp"

#include <charconv>
#include <chrono>
#include <sstream>
#include <thread>

#include "rotor/analysis.hpp"

namespace rotor {

Family parse_family(std::string_view name) {
  if (name == "thm2") return Family::thm2;
  if (name == "two_four_chain") return Family::two_four_chain;
  if (name == "cycle") return Family::cycle;
  if (name == "bidirected_complete") return Family::bidirected_complete;
  throw ExperimentError("unknown family '" + std::string(name) + "'");
}

std::string_view family_name(Family f) {
  switch (f) {
    case Family::thm2: return "thm2";
    case Family::two_four_chain: return "two_four_chain";
    case Family::cycle: return "cycle";
    case Family::bidirected_complete: return "bidirected_complete";
  }
  return "?";
}

std::size_t family_min_n(Family f) { return f == Family::thm2 ? 3 : 1; }

DirectedMultigraph generate_family(Family f, std::size_t n) {
  switch (f) {
    case Family::thm2: return gen_thm2_family(n);
    case Family::two_four_chain: return gen_two_four_chain(n);
    case Family::cycle: return gen_cycle(n);
    case Family::bidirected_complete: return gen_bidirected_complete(n);
  }
  throw ExperimentError("unknown family");
}

ExperimentRecord run_m1_experiment(std::size_t n, double p, std::size_t trials, std::uint64_t seed,
                                   ExperimentOptions options) {
  if (n < 2) throw ExperimentError("experiment needs n >= 2");
  if (!(p > 0.0 && p < 1.0)) throw ExperimentError("experiment needs 0 < p < 1");
  if (trials < 1) throw ExperimentError("experiment needs at least one trial");

  const auto start = std::chrono::steady_clock::now();
  std::vector<BigInt> ms(trials);
  std::vector<std::exception_ptr> errors(trials);
  auto run_range = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < trials; i += stride) {
      try {
        auto g = gen_random_strong_digraph(n, p, seed + i, options.sampler);
        ms[i] = tree_counts(g).m_gcd;
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const auto threads = std::max<std::size_t>(1, std::min(options.threads, trials));
  if (threads == 1) {
    run_range(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(run_range, t, threads);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  ExperimentRecord r{n, p, seed, trials, 0, {}, 0.0};
  for (const auto& m : ms) {
    ++r.m_histogram[m];
    if (m == 1) ++r.m1_count;
  }
  r.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<FamilySweepRow> run_family_sweep(Family family, std::size_t n_from, std::size_t n_to,
                                             SweepOptions options) {
  if (n_from > n_to) throw ExperimentError("empty sweep range");
  if (n_from < family_min_n(family))
    throw ExperimentError(std::string(family_name(family)) + " needs n >= " +
                          std::to_string(family_min_n(family)));
  std::vector<FamilySweepRow> rows;
  for (std::size_t n = n_from; n <= n_to; ++n) {
    const auto g = generate_family(family, n);
    const auto report =
        orbit_report(g, {.simulate = options.simulate, .simulation_budget = options.simulation_budget});
    FamilySweepRow row;
    row.family = family;
    row.n = n;
    row.tree_counts = report.trees.counts;
    row.m = report.trees.m_gcd;
    row.orbit_size = report.orbit_size_formula;
    row.orbit_count = report.orbit_count_formula;
    row.edges = g.edge_count();
    row.eulerian = is_eulerian(g);
    if (report.simulated) row.simulation_match = report.matches();
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

namespace {

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

nlohmann::ordered_json histogram_json(const ExperimentRecord& r) {
  nlohmann::ordered_json h = nlohmann::ordered_json::object();
  for (const auto& [m, count] : r.m_histogram) h[m.str()] = count;
  return h;
}

}  // namespace

std::string experiment_csv(const ExperimentRecord& r, bool include_timing) {
  std::ostringstream os;
  os << "experiment,n,p,seed,trials,m1_count,m_histogram_json,elapsed_s\n";
  os << "m1," << r.n << ',' << format_double(r.p) << ',' << r.seed << ',' << r.trials << ','
     << r.m1_count << ',' << csv_field(histogram_json(r).dump()) << ',';
  if (include_timing) os << format_double(r.elapsed_s);
  os << '\n';
  return os.str();
}

nlohmann::json experiment_json(const ExperimentRecord& r, bool include_timing) {
  nlohmann::json j;
  j["experiment"] = "m1";
  j["n"] = r.n;
  j["p"] = r.p;
  j["seed"] = r.seed;
  j["trials"] = r.trials;
  j["m1_count"] = r.m1_count;
  j["m_histogram"] = nlohmann::json::object();
  for (const auto& [m, count] : r.m_histogram) j["m_histogram"][m.str()] = count;
  j["elapsed_s"] = include_timing ? nlohmann::json(r.elapsed_s) : nlohmann::json(nullptr);
  return j;
}

namespace {

std::string joined_counts(const std::vector<BigInt>& counts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (i) out += sep;
    out += counts[i].str();
  }
  return out;
}

}  // namespace

std::string sweep_csv(const std::vector<FamilySweepRow>& rows) {
  std::ostringstream os;
  os << "family,n,tree_counts,M,orbit_size,orbit_count,edges,eulerian\n";
  for (const auto& r : rows) {
    os << family_name(r.family) << ',' << r.n << ',' << joined_counts(r.tree_counts, ";") << ','
       << r.m << ',' << r.orbit_size << ',' << r.orbit_count << ',' << r.edges << ','
       << (r.eulerian ? "true" : "false") << '\n';
  }
  return os.str();
}

nlohmann::json sweep_json(const std::vector<FamilySweepRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json counts = nlohmann::json::array();
    for (const auto& t : r.tree_counts) counts.push_back(t.str());
    nlohmann::json j{{"family", std::string(family_name(r.family))},
                     {"n", r.n},
                     {"tree_counts", counts},
                     {"M", r.m.str()},
                     {"orbit_size", r.orbit_size.str()},
                     {"orbit_count", r.orbit_count.str()},
                     {"edges", r.edges},
                     {"eulerian", r.eulerian}};
    j["simulation_match"] = r.simulation_match ? nlohmann::json(*r.simulation_match) : nlohmann::json(nullptr);
    arr.push_back(j);
  }
  return arr;
}

}  // namespace rotor
