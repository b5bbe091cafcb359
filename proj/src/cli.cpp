#include "rotor/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "rotor/analysis.hpp"
#include "rotor/experiments.hpp"

namespace rotor {

namespace {

constexpr int kExitMismatch = 1;
constexpr int kExitError = 2;

struct GraphSource {
  std::string file;
  std::string family;
  std::size_t n = 0;

  void attach(CLI::App* cmd) {
    auto* f = cmd->add_option("--file", file, "graph file");
    auto* fam = cmd->add_option("--family", family, "generator family")
                    ->check(CLI::IsMember({"thm2", "two_four_chain", "cycle", "bidirected_complete"}));
    auto* nn = cmd->add_option("--n", n, "generator size");
    f->excludes(fam);
    f->excludes(nn);
    fam->needs(nn);
  }

  DirectedMultigraph load() const {
    if (!file.empty()) {
      std::ifstream in(file);
      if (!in) throw std::runtime_error("cannot open " + file);
      std::stringstream buf;
      buf << in.rdbuf();
      return parse_digraph(buf.str());
    }
    if (family.empty()) throw std::runtime_error("one of --file or --family is required");
    return generate_family(parse_family(family), n);
  }
};

template <class Seq>
std::string bracketed(const Seq& items) {
  std::ostringstream os;
  os << '[';
  bool first = true;
  for (const auto& x : items) {
    os << (first ? "" : ", ") << x;
    first = false;
  }
  os << ']';
  return os.str();
}

std::string rational_list(const std::vector<Rational>& v) {
  std::vector<std::string> parts;
  for (const auto& r : v) parts.push_back(format_rational(r));
  return bracketed(parts);
}

/// Writes to --out when given, otherwise to out.
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

std::vector<std::uint32_t> parse_rotor_list(const std::string& text) {
  std::vector<std::uint32_t> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok == "-")
      out.push_back(kNoRotor);
    else
      out.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
  }
  return out;
}

int cmd_trees(const DirectedMultigraph& g, const std::string& format, std::ostream& out) {
  const auto t = tree_counts(g);
  if (format == "json") {
    nlohmann::json counts = nlohmann::json::array();
    for (const auto& c : t.counts) counts.push_back(c.str());
    out << nlohmann::json{{"tree_counts", counts}, {"M", t.m_gcd.str()}}.dump() << '\n';
  } else if (format == "csv") {
    out << "vertex,tree_count\n";
    for (std::size_t v = 0; v < t.counts.size(); ++v) out << v + 1 << ',' << t.counts[v] << '\n';
    out << "M," << t.m_gcd << '\n';
  } else {
    out << "T = " << bracketed(t.counts) << ", M = " << t.m_gcd << '\n';
  }
  return 0;
}

int cmd_orbits(const DirectedMultigraph& g, bool simulate, std::uint64_t budget, const std::string& format,
               std::ostream& out, std::ostream& err) {
  const auto report = orbit_report(g, {.simulate = simulate, .simulation_budget = budget});
  const bool ok = report.matches();
  if (format == "json") {
    out << to_json(report).dump() << '\n';
  } else {
    out << "T = " << bracketed(report.trees.counts) << ", M = " << report.trees.m_gcd << '\n';
    out << "orbit size = " << report.orbit_size_formula << '\n';
    out << "orbit count = " << report.orbit_count_formula << '\n';
    out << "unicycles = " << report.unicycle_count << '\n';
    out << "visits per orbit = " << bracketed(report.per_vertex_visits) << '\n';
    if (report.simulated) {
      const auto& sim = *report.simulated;
      out << "simulated: unicycles = " << sim.unicycle_count << ", orbits = " << sim.orbit_sizes.size()
          << ", sizes = " << bracketed(sim.orbit_sizes) << '\n';
      out << (ok ? "MATCH" : "MISMATCH") << '\n';
    } else if (report.simulation_skipped) {
      out << "simulation skipped: over budget\n";
    }
  }
  if (!ok) err << "simulation disagrees with the orbit formula\n";
  return ok ? 0 : kExitMismatch;
}

int cmd_walk(const DirectedMultigraph& g, std::size_t steps, Vertex chip, const std::string& rotors,
             bool show_walk, const std::string& format, std::ostream& out, std::ostream& err) {
  if (steps < 1) throw std::runtime_error("--steps must be >= 1");
  if (chip < 1 || chip > g.vertex_count()) throw std::runtime_error("--chip out of range");
  ChipRotorState start{chip, initial_configuration(g)};
  if (!rotors.empty()) start.config.rotor = parse_rotor_list(rotors);
  validate(g, start.config);

  const auto freq = empirical_frequency(g, start, steps);
  const auto exact = stationary_exact(g);
  const auto deviation = max_abs_difference(freq, exact.probs);
  const bool recurrent = !g.has_sink() && is_unicycle(g, start);
  const auto report = orbit_report(g, {.simulate = false});
  const Rational bound(report.orbit_size_formula, BigInt(steps));
  const bool within = deviation <= bound;

  std::vector<BigInt> visits;
  for (const auto& f : freq) visits.push_back(numerator(Rational(f * BigInt(steps))));

  if (format == "json") {
    nlohmann::json j;
    j["start"] = format_state(start);
    j["steps"] = steps;
    j["visits"] = nlohmann::json::array();
    for (const auto& v : visits) j["visits"].push_back(v.str());
    j["empirical"] = nlohmann::json::array();
    for (const auto& f : freq) j["empirical"].push_back(format_rational(f));
    j["exact"] = to_json(exact)["probs"];
    j["max_deviation"] = format_rational(deviation);
    j["bound"] = format_rational(bound);
    j["recurrent_start"] = recurrent;
    j["within_bound"] = within;
    if (show_walk) j["walk"] = rotor_walk(g, start, steps);
    out << j.dump() << '\n';
  } else {
    out << "start = " << format_state(start) << (recurrent ? " (recurrent)" : " (transient)") << '\n';
    if (show_walk) out << "walk = " << bracketed(rotor_walk(g, start, steps)) << '\n';
    out << "visits = " << bracketed(visits) << " / " << steps << '\n';
    out << "empirical = " << rational_list(freq) << '\n';
    out << "exact = " << rational_list(exact.probs) << '\n';
    out << "max deviation = " << format_rational(deviation) << '\n';
    out << "bound = " << format_rational(bound) << (within ? " (within)" : " (exceeded)") << '\n';
  }
  // The orbit-size bound is only guaranteed from a recurrent start.
  if (recurrent && !within) {
    err << "deviation exceeds the orbit-size bound\n";
    return kExitMismatch;
  }
  return 0;
}

int cmd_stationary(const DirectedMultigraph& g, double tolerance, const std::string& format,
                   std::ostream& out, std::ostream& err) {
  const auto exact = stationary_exact(g);
  const auto approx = stationary_power_iteration(g);
  double dev = 0.0;
  for (std::size_t v = 0; v < approx.size(); ++v)
    dev = std::max(dev, std::abs(approx[v] - to_double(exact.probs[v])));
  const bool ok = dev <= tolerance;
  if (format == "json") {
    auto j = to_json(exact);
    j["power_iteration"] = approx;
    j["max_deviation"] = dev;
    j["match"] = ok;
    out << j.dump() << '\n';
  } else {
    out << "exact = " << rational_list(exact.probs) << '\n';
    std::ostringstream os;
    os.precision(12);
    os << '[';
    for (std::size_t v = 0; v < approx.size(); ++v) os << (v ? ", " : "") << approx[v];
    os << ']';
    out << "power iteration = " << os.str() << '\n';
    out << "max deviation = " << dev << '\n';
    out << (ok ? "MATCH" : "MISMATCH") << '\n';
  }
  if (!ok) err << "power iteration disagrees with the exact distribution\n";
  return ok ? 0 : kExitMismatch;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rotor-router orbits and arborescence counts on directed multigraphs", "rotorctl"};
  app.require_subcommand(1);

  std::string format = "text";
  std::string out_path;
  auto add_format = [&](CLI::App* cmd, std::vector<std::string> allowed) {
    cmd->add_option("--format", format, "output format")->check(CLI::IsMember(allowed));
  };

  GraphSource src;

  auto* trees = app.add_subcommand("trees", "arborescence counts T(v) and their gcd M");
  src.attach(trees);
  add_format(trees, {"text", "json", "csv"});

  bool simulate = false;
  std::uint64_t budget = 1'000'000;
  auto* orbits = app.add_subcommand("orbits", "orbit size and count, optionally verified by simulation");
  src.attach(orbits);
  orbits->add_flag("--simulate", simulate, "enumerate unicycles and compare");
  orbits->add_option("--budget", budget, "state budget for simulation");
  add_format(orbits, {"text", "json"});

  std::size_t steps = 0;
  Vertex chip = 1;
  std::string rotors;
  bool show_walk = false;
  auto* walk = app.add_subcommand("walk", "rotor walk visit frequencies vs stationary distribution");
  src.attach(walk);
  walk->add_option("--steps", steps, "number of steps")->required();
  walk->add_option("--chip", chip, "starting vertex");
  walk->add_option("--rotors", rotors, "initial rotor indices, comma separated ('-' for sinks)");
  walk->add_flag("--show-walk", show_walk, "print the vertex sequence");
  add_format(walk, {"text", "json"});

  double tolerance = 1e-8;
  auto* stationary = app.add_subcommand("stationary", "exact stationary distribution and power iteration");
  src.attach(stationary);
  stationary->add_option("--tolerance", tolerance, "max-norm agreement tolerance");
  add_format(stationary, {"text", "json"});

  std::string kind;
  std::size_t exp_n = 0, trials = 0, threads = 1;
  double p = 0.0;
  std::uint64_t seed = 0;
  bool timing = false;
  auto* experiment = app.add_subcommand("experiment", "Monte Carlo frequency of M = 1");
  experiment->add_option("kind", kind, "experiment kind")->required()->check(CLI::IsMember({"m1"}));
  experiment->add_option("--n", exp_n, "vertex count")->required();
  experiment->add_option("--p", p, "edge probability")->required();
  experiment->add_option("--trials", trials, "number of sampled graphs")->required();
  experiment->add_option("--seed", seed, "base seed");
  experiment->add_option("--threads", threads, "worker threads");
  experiment->add_option("--out", out_path, "output file");
  experiment->add_flag("--timing", timing, "fill the elapsed_s column");
  add_format(experiment, {"csv", "json"});

  std::string sweep_family;
  std::size_t from = 0, to = 0;
  bool no_simulate = false;
  auto* sweep = app.add_subcommand("sweep", "closed-form values across a graph family");
  sweep->add_option("--family", sweep_family, "family")
      ->required()
      ->check(CLI::IsMember({"thm2", "two_four_chain", "cycle", "bidirected_complete"}));
  sweep->add_option("--from", from, "first n")->required();
  sweep->add_option("--to", to, "last n")->required();
  sweep->add_option("--out", out_path, "output file");
  sweep->add_flag("--no-simulate", no_simulate, "skip the brute-force cross-check");
  add_format(sweep, {"text", "csv", "json"});

  auto* gen = app.add_subcommand("gen", "emit a family graph in the graph file format");
  src.attach(gen);
  gen->add_option("--out", out_path, "output file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : kExitError;
  }

  try {
    if (*trees) return cmd_trees(src.load(), format, out);
    if (*orbits) return cmd_orbits(src.load(), simulate, budget, format, out, err);
    if (*walk) return cmd_walk(src.load(), steps, chip, rotors, show_walk, format, out, err);
    if (*stationary) return cmd_stationary(src.load(), tolerance, format, out, err);
    if (*experiment) {
      ExperimentOptions opts;
      opts.threads = threads;
      const auto rec = run_m1_experiment(exp_n, p, trials, seed, opts);
      const auto text = format == "json" ? experiment_json(rec, timing).dump() + "\n" : experiment_csv(rec, timing);
      emit(out_path, text, out);
      err << "m1 frequency: " << rec.m1_count << "/" << rec.trials << '\n';
      return 0;
    }
    if (*sweep) {
      const auto rows = run_family_sweep(parse_family(sweep_family), from, to, {.simulate = !no_simulate});
      std::string text;
      if (format == "csv") {
        text = sweep_csv(rows);
      } else if (format == "json") {
        text = sweep_json(rows).dump() + "\n";
      } else {
        std::ostringstream os;
        for (const auto& r : rows) {
          os << family_name(r.family) << " n=" << r.n << ": T = " << bracketed(r.tree_counts) << ", M = " << r.m
             << ", orbit size = " << r.orbit_size << ", orbits = " << r.orbit_count << ", |E| = " << r.edges
             << (r.eulerian ? ", eulerian" : "");
          if (r.simulation_match) os << (*r.simulation_match ? ", MATCH" : ", MISMATCH");
          os << '\n';
        }
        text = os.str();
      }
      emit(out_path, text, out);
      const bool ok = std::all_of(rows.begin(), rows.end(),
                                  [](const auto& r) { return r.simulation_match.value_or(true); });
      if (!ok) err << "simulation disagrees with the orbit formula\n";
      return ok ? 0 : kExitMismatch;
    }
    if (*gen) {
      emit(out_path, serialize_digraph(src.load()), out);
      return 0;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace rotor
