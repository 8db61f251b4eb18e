// submod_swarm: experiment runner for the multi-agent submodular planning
// library. Subcommands: coverage, probsense, track, commstudy, compare,
// tinycheck. Every run writes results.csv, bounds.csv, messages.csv, and a
// manifest.json echoing the resolved parameters; identical manifests yield
// byte-identical outputs.
#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "submod/experiments.hpp"

using namespace submod;
using nlohmann::json;

namespace {

struct RunOptions {
  std::string family;
  int n_agents = 50;
  int trials = 50;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int jobs = 0;
  std::string out_dir = ".";
  std::vector<std::string> solvers;
  int rounds = 4;
  double gamma = -1.0;       // <0: scenario default
  double comm_range = -1.0;  // <0: scenario default
  int samples = 50;
  std::string config_path;
  std::map<std::string, double> overrides;
};

[[noreturn]] void die_config(const std::string& msg) {
  std::fprintf(stderr, "error: %s\n", msg.c_str());
  std::exit(2);
}

void load_config(RunOptions& opt, const CLI::App& cmd) {
  if (opt.config_path.empty()) return;
  const auto flag_given = [&cmd](const std::string& name) { return cmd.count(name) > 0; };
  std::ifstream in(opt.config_path);
  if (!in) die_config("cannot open config " + opt.config_path);
  json cfg;
  try {
    in >> cfg;
  } catch (const json::exception& e) {
    die_config(std::string("bad config JSON: ") + e.what());
  }
  if (!cfg.is_object()) die_config("config must be a JSON object");
  // Flags override file values, so only fill fields still at their defaults.
  if (cfg.contains("family")) opt.family = cfg["family"].get<std::string>();
  if (cfg.contains("n_agents") && !flag_given("--agents")) opt.n_agents = cfg["n_agents"].get<int>();
  if (cfg.contains("trials") && !flag_given("--trials")) opt.trials = cfg["trials"].get<int>();
  if (cfg.contains("seed") && !opt.seed_given) {
    opt.seed = cfg["seed"].get<std::uint64_t>();
    opt.seed_given = true;
  }
  if (cfg.contains("solver")) {
    if (opt.solvers.empty()) {
      if (cfg["solver"].is_string()) {
        opt.solvers.push_back(cfg["solver"].get<std::string>());
      } else if (cfg["solver"].is_array()) {
        for (const auto& s : cfg["solver"]) opt.solvers.push_back(s.get<std::string>());
      } else {
        die_config("config solver must be a string or array of strings");
      }
    }
  }
  if (cfg.contains("overrides")) {
    if (!cfg["overrides"].is_object()) die_config("config overrides must be an object");
    for (const auto& [k, v] : cfg["overrides"].items()) {
      if (!v.is_number()) die_config("override " + k + " must be numeric");
      if (opt.overrides.find(k) == opt.overrides.end()) opt.overrides[k] = v.get<double>();
    }
  }
}

void resolve_seed(RunOptions& opt) {
  if (opt.seed_given) return;
  if (const char* env = std::getenv("SUBMOD_SWARM_SEED")) {
    opt.seed = std::strtoull(env, nullptr, 10);
    opt.seed_given = true;
    return;
  }
  opt.seed = 0;
}

std::vector<SolverSpec> parse_specs(const std::vector<std::string>& texts) {
  std::vector<SolverSpec> specs;
  for (const auto& t : texts) {
    try {
      specs.push_back(parse_solver_spec(t));
    } catch (const std::invalid_argument& e) {
      die_config(e.what());
    }
  }
  return specs;
}

double override_or(const RunOptions& opt, const std::string& key, double fallback) {
  const auto it = opt.overrides.find(key);
  return it == opt.overrides.end() ? fallback : it->second;
}

void write_manifest(const RunOptions& opt, const std::string& command, const std::string& git) {
  json m;
  m["command"] = command;
  m["family"] = opt.family;
  m["n_agents"] = opt.n_agents;
  m["trials"] = opt.trials;
  m["seed"] = opt.seed;
  m["jobs"] = opt.jobs;
  m["solvers"] = opt.solvers;
  m["rounds"] = opt.rounds;
  m["gamma"] = opt.gamma;
  m["comm_range"] = opt.comm_range;
  m["samples"] = opt.samples;
  m["git"] = git;
  json ov = json::object();
  for (const auto& [k, v] : opt.overrides) ov[k] = v;
  m["overrides"] = ov;
  if (opt.family == "prob_sensing") {
    const EventMixture mix;
    json means = json::array();
    for (const auto& mu : mix.means) means.push_back({mu.x, mu.y});
    m["mixture"] = {{"means", means}, {"sigma", mix.sigma}};
  }
  std::ofstream out(opt.out_dir + "/manifest.json");
  if (!out) die_config("cannot write to " + opt.out_dir);
  out << m.dump(2) << "\n";
}

void write_empty(const std::string& path, const std::string& provenance,
                 const std::string& header) {
  CsvWriter w(path, provenance, header);
}

std::string opt_str(const std::optional<double>& v) {
  return v.has_value() ? format_double(*v) : "";
}

int run_coverage_cmd(RunOptions opt, CoverageFamily family) {
  opt.family = family == CoverageFamily::Area ? "area_coverage" : "prob_sensing";
  if (opt.solvers.empty()) {
    opt.solvers = {"random", "myopic", "rsp:" + std::to_string(opt.rounds), "sequential"};
    if (family == CoverageFamily::Prob) {
      const double g = opt.gamma > 0.0 ? opt.gamma : 0.4 / opt.n_agents;
      opt.solvers.push_back("rsp:global:" + format_double(g));
    }
  }
  auto specs = parse_specs(opt.solvers);

  CoverageStudyOptions study;
  study.family = family;
  study.n_agents = opt.n_agents;
  study.trials = opt.trials;
  study.seed = opt.seed;
  study.jobs = opt.jobs;
  study.grid = static_cast<int>(override_or(opt, "grid", 512));
  study.with_bounds = override_or(opt, "bounds", 1.0) != 0.0;
  if (opt.comm_range > 0.0) study.comm_range = opt.comm_range;
  if (family == CoverageFamily::Area) {
    study.area_radius_scale = override_or(opt, "radius_scale", study.area_radius_scale);
    if (!(study.area_radius_scale > 0.0)) die_config("radius_scale must be > 0");
    opt.overrides["radius_scale"] = study.area_radius_scale;  // record the effective value
  }

  const auto rows = run_coverage_study(specs, study);
  const std::string prov = provenance_line(opt.seed, git_describe());

  CsvWriter results(opt.out_dir + "/results.csv", prov,
                    "n_agents,trial,solver,value,rounds_used,psi,converged");
  CsvWriter bounds(opt.out_dir + "/bounds.csv", prov,
                   "n_agents,trial,solver,objective,deleted_weight,posthoc,online,oblivious,"
                   "subopt_lb");
  for (const auto& r : rows) {
    results.row({std::to_string(opt.n_agents), std::to_string(r.trial), r.solver,
                 format_double(r.value), std::to_string(r.rounds_used), opt_str(r.psi),
                 r.converged ? "1" : "0"});
    if (r.bounds) {
      const auto& b = *r.bounds;
      bounds.row({std::to_string(opt.n_agents), std::to_string(r.trial), r.solver,
                  format_double(b.objective_value), format_double(b.deleted_edge_weight),
                  format_double(b.posthoc_upper_bound), format_double(b.online_upper_bound),
                  format_double(b.oblivious_upper_bound),
                  format_double(b.suboptimality_lower_bound)});
    }
  }
  write_empty(opt.out_dir + "/messages.csv", prov,
              "n_agents,trial,solver,messages,volume,span,converged");
  write_manifest(opt, family == CoverageFamily::Area ? "coverage" : "probsense", git_describe());
  return 0;
}

int run_track_cmd(RunOptions opt) {
  opt.family = "tracking";
  if (opt.solvers.empty())
    opt.solvers = {"myopic", "sequential", "rsp:" + std::to_string(opt.rounds)};
  const auto specs = parse_specs(opt.solvers);

  TrackingStudyOptions study;
  study.n_robots = opt.n_agents;
  study.trials = opt.trials;
  study.seed = opt.seed;
  study.jobs = opt.jobs;
  study.n_samples = opt.samples;
  study.trial_length = static_cast<int>(override_or(opt, "trial_length", 100));
  study.burn_in = static_cast<int>(override_or(opt, "burn_in", 20));

  const auto rows = run_tracking_study(specs, study);
  const std::string prov = provenance_line(opt.seed, git_describe());

  CsvWriter results(opt.out_dir + "/results.csv", prov,
                    "n_agents,trial,solver,value,rounds_used,psi,converged");
  for (const auto& r : rows)
    results.row({std::to_string(opt.n_agents), std::to_string(r.trial), r.solver,
                 format_double(r.result.mean_entropy_bits), "0", "", "1"});
  write_empty(opt.out_dir + "/bounds.csv", prov,
              "n_agents,trial,solver,objective,deleted_weight,posthoc,online,oblivious,subopt_lb");
  write_empty(opt.out_dir + "/messages.csv", prov,
              "n_agents,trial,solver,messages,volume,span,converged");
  write_manifest(opt, "track", git_describe());
  return 0;
}

int run_commstudy_cmd(RunOptions opt) {
  opt.family = "comm_study";
  if (opt.solvers.empty())
    opt.solvers = {"sequential", "rrsp:" + std::to_string(opt.rounds) + ":1.0", "auction:local"};
  const auto specs = parse_specs(opt.solvers);

  CommStudyOptions study;
  for (int n = 10; n <= opt.n_agents; n += 10) study.team_sizes.push_back(n);
  if (study.team_sizes.empty()) study.team_sizes.push_back(opt.n_agents);
  study.trials = opt.trials;
  study.seed = opt.seed;
  study.jobs = opt.jobs;
  study.grid = static_cast<int>(override_or(opt, "grid", 256));

  const auto rows = run_comm_study(specs, study);
  const std::string prov = provenance_line(opt.seed, git_describe());

  CsvWriter results(opt.out_dir + "/results.csv", prov,
                    "n_agents,trial,solver,value,rounds_used,psi,converged");
  CsvWriter messages(opt.out_dir + "/messages.csv", prov,
                     "n_agents,trial,solver,messages,volume,span,converged");
  for (const auto& r : rows) {
    results.row({std::to_string(r.n_agents), std::to_string(r.trial), r.solver,
                 format_double(r.objective), "0", "", r.converged ? "1" : "0"});
    messages.row({std::to_string(r.n_agents), std::to_string(r.trial), r.solver,
                  std::to_string(r.stats.messages), std::to_string(r.stats.volume),
                  std::to_string(r.stats.span), r.converged ? "1" : "0"});
  }
  write_empty(opt.out_dir + "/bounds.csv", prov,
              "n_agents,trial,solver,objective,deleted_weight,posthoc,online,oblivious,subopt_lb");
  write_manifest(opt, "commstudy", git_describe());
  return 0;
}

std::uint64_t provenance_seed(const CsvTable& t, const std::string& path) {
  const auto pos = t.provenance.find("seed=");
  if (pos == std::string::npos) die_config(path + " carries no seed provenance");
  return std::strtoull(t.provenance.c_str() + pos + 5, nullptr, 10);
}

int run_compare_cmd(const std::vector<std::string>& files, const std::string& out_dir) {
  if (files.size() != 2) die_config("compare needs exactly two results.csv files");
  const auto a = read_csv(files[0]);
  const auto b = read_csv(files[1]);
  if (provenance_seed(a, files[0]) != provenance_seed(b, files[1]))
    die_config("seed mismatch between " + files[0] + " and " + files[1]);

  const int an = a.column("n_agents"), at = a.column("trial"), as = a.column("solver"),
            av = a.column("value");
  const int bn = b.column("n_agents"), bt = b.column("trial"), bs = b.column("solver"),
            bv = b.column("value");

  // Index file B and the per-trial sequential baselines.
  std::map<std::tuple<std::string, std::string, std::string>, double> b_value;
  std::map<std::pair<std::string, std::string>, double> a_seq, b_seq;
  for (const auto& r : b.rows) {
    b_value[{r[bn], r[bt], r[bs]}] = std::stod(r[bv]);
    if (r[bs] == "sequential") b_seq[{r[bn], r[bt]}] = std::stod(r[bv]);
  }
  for (const auto& r : a.rows)
    if (r[as] == "sequential") a_seq[{r[an], r[at]}] = std::stod(r[av]);

  CsvWriter out(out_dir + "/comparison.csv", a.provenance,
                "n_agents,trial,solver,value_a,value_b,delta,ratio_to_sequential_a,"
                "ratio_to_sequential_b");
  for (const auto& r : a.rows) {
    const auto it = b_value.find({r[an], r[at], r[as]});
    if (it == b_value.end()) continue;  // join on (n_agents, trial, solver)
    const double va = std::stod(r[av]);
    const double vb = it->second;
    const auto sa = a_seq.find({r[an], r[at]});
    const auto sb = b_seq.find({r[an], r[at]});
    out.row({r[an], r[at], r[as], format_double(va), format_double(vb), format_double(vb - va),
             sa != a_seq.end() && sa->second != 0.0 ? format_double(va / sa->second) : "",
             sb != b_seq.end() && sb->second != 0.0 ? format_double(vb / sb->second) : ""});
  }
  return 0;
}

int run_tinycheck_cmd(std::uint64_t seed) {
  const auto checks = run_tinycheck(seed);
  int fails = 0;
  for (const auto& c : checks) {
    std::printf("%-40s %s  %s\n", c.name.c_str(), c.passed ? "PASS" : "FAIL", c.detail.c_str());
    fails += c.passed ? 0 : 1;
  }
  return std::min(fails, 125);
}

void add_common_flags(CLI::App* cmd, RunOptions& opt) {
  cmd->add_option("--config", opt.config_path, "JSON config file; flags override its values");
  cmd->add_option("--solver", opt.solvers, "solver spec (repeatable)");
  cmd->add_option("--agents", opt.n_agents, "team size");
  cmd->add_option("--trials", opt.trials, "number of trials");
  cmd->add_option("--seed", opt.seed, "rng seed")->each([&](const std::string&) {
    opt.seed_given = true;
  });
  cmd->add_option("--jobs", opt.jobs, "worker threads (0 = logical cores)");
  cmd->add_option("--out", opt.out_dir, "output directory");
  cmd->add_option("--rounds", opt.rounds, "n_d for default solver lists");
  cmd->add_option("--gamma", opt.gamma, "suboptimality budget for adaptive policies");
  cmd->add_option("--comm-range", opt.comm_range, "communication range override");
  cmd->add_option("--samples", opt.samples, "Monte-Carlo samples (tracking)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed submodular planning experiment runner"};
  app.require_subcommand(1);

  RunOptions opt;
  auto* coverage = app.add_subcommand("coverage", "area-coverage study");
  auto* probsense = app.add_subcommand("probsense", "probabilistic-sensing study");
  auto* track = app.add_subcommand("track", "target-tracking study");
  auto* commstudy = app.add_subcommand("commstudy", "communication-cost study");
  for (auto* cmd : {coverage, probsense, track, commstudy}) add_common_flags(cmd, opt);

  std::vector<std::string> compare_files;
  std::string compare_out = ".";
  auto* compare = app.add_subcommand("compare", "join two results files on (n_agents, trial)");
  compare->add_option("files", compare_files, "two results.csv files")->expected(2);
  compare->add_option("--out", compare_out, "output directory");

  auto* tinycheck = app.add_subcommand("tinycheck", "run the oracle property batteries");
  std::uint64_t tiny_seed = 0;
  bool tiny_seed_given = false;
  tinycheck->add_option("--seed", tiny_seed, "rng seed")->each([&](const std::string&) {
    tiny_seed_given = true;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (compare->parsed()) return run_compare_cmd(compare_files, compare_out);
    if (tinycheck->parsed()) {
      if (!tiny_seed_given)
        if (const char* env = std::getenv("SUBMOD_SWARM_SEED"))
          tiny_seed = std::strtoull(env, nullptr, 10);
      return run_tinycheck_cmd(tiny_seed);
    }

    const CLI::App* active = coverage->parsed()    ? coverage
                             : probsense->parsed() ? probsense
                             : track->parsed()     ? track
                                                   : commstudy;
    load_config(opt, *active);
    resolve_seed(opt);
    if (opt.n_agents < 1 || opt.trials < 1) die_config("agents and trials must be positive");
    std::filesystem::create_directories(opt.out_dir);

    if (coverage->parsed()) return run_coverage_cmd(opt, CoverageFamily::Area);
    if (probsense->parsed()) return run_coverage_cmd(opt, CoverageFamily::Prob);
    if (track->parsed()) return run_track_cmd(opt);
    if (commstudy->parsed()) return run_commstudy_cmd(opt);
  } catch (const std::length_error& e) {
    std::fprintf(stderr, "error: enumeration cap exceeded: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
