// loopsoup: reproducible experiment runner for the cycle/loop models.
//
// Every run requires an explicit --seed and writes, next to its outputs, a
// manifest.json echoing the effective configuration; re-running with the
// same configuration and library version reproduces every output byte.
//
// Exit codes: 0 ok, 1 a gated statistical check failed, 2 usage error.

#include <atomic>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "loopsoup/bridges.hpp"
#include "loopsoup/decomposition.hpp"
#include "loopsoup/estimators.hpp"
#include "loopsoup/graph.hpp"
#include "loopsoup/mcmc.hpp"
#include "loopsoup/oracle.hpp"
#include "loopsoup/pd.hpp"
#include "loopsoup/splitmerge.hpp"
#include "loopsoup/stats.hpp"
#include "loopsoup/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace loopsoup;

namespace {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << content;
}

struct CommonOpts {
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  int workers = 1;
};

fs::path resolve_out_dir(const CommonOpts& c) {
  // env var override for the output directory only
  const char* env = std::getenv("LOOPSOUP_OUTDIR");
  fs::path dir = env != nullptr ? fs::path(env) : fs::path(c.out_dir);
  fs::create_directories(dir);
  return dir;
}

void write_manifest(const fs::path& dir, const std::string& subcommand, const json& config) {
  json m;
  m["version"] = kVersion;
  m["subcommand"] = subcommand;
  m["config"] = config;
  char hex[32];
  std::snprintf(hex, sizeof(hex), "%016llx",
                static_cast<unsigned long long>(fnv1a(subcommand + config.dump())));
  m["config_hash"] = hex;
  write_file(dir / "manifest.json", m.dump(2) + "\n");
}

struct GraphOpts {
  std::string kind = "lattice";  // edge|path3|triangle|cycle4|lattice|complete|file
  int dim = 2;
  int side = 4;
  bool periodic = false;
  int n = 4;
  std::string file;
};

void add_graph_flags(CLI::App* cmd, GraphOpts& g) {
  cmd->add_option("--graph", g.kind, "edge|path3|triangle|cycle4|lattice|complete|file")
      ->default_val(g.kind);
  cmd->add_option("--dim", g.dim, "lattice dimension (1..4)");
  cmd->add_option("--side", g.side, "lattice side length");
  cmd->add_flag("--periodic", g.periodic, "periodic boundary conditions");
  cmd->add_option("--n", g.n, "vertex count for the complete graph");
  cmd->add_option("--graph-file", g.file, "JSON graph description");
}

Graph make_graph(const GraphOpts& g) {
  if (g.kind == "edge") return cubic_lattice(1, 2, false);
  if (g.kind == "path3")
    return Graph(3, {{0, 1}, {1, 2}},
                 std::vector<Sublattice>{Sublattice::A, Sublattice::B, Sublattice::A});
  if (g.kind == "triangle") return Graph(3, {{0, 1}, {1, 2}, {0, 2}});
  if (g.kind == "cycle4") return cubic_lattice(2, 2, false);
  if (g.kind == "lattice") return cubic_lattice(g.dim, g.side, g.periodic);
  if (g.kind == "complete") return complete_graph(g.n);
  if (g.kind == "file") {
    std::ifstream in(g.file);
    if (!in) throw CLI::ValidationError("--graph-file", "cannot open " + g.file);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return Graph::from_json(text);
  }
  throw CLI::ValidationError("--graph", "unknown graph kind " + g.kind);
}

json graph_config(const GraphOpts& g) {
  json j{{"graph", g.kind}};
  if (g.kind == "lattice") {
    j["dim"] = g.dim;
    j["side"] = g.side;
    j["periodic"] = g.periodic;
  } else if (g.kind == "complete") {
    j["n"] = g.n;
  } else if (g.kind == "file") {
    j["graph_file"] = g.file;
  }
  return j;
}

Model parse_model(const std::string& s) {
  if (s == "cycles") return Model::cycles;
  if (s == "loops") return Model::loops;
  throw CLI::ValidationError("--model", "must be cycles or loops");
}

// Fan replicas out over worker threads; each replica gets the sub-seeded
// stream Rng::for_replica(seed, index) and writes into its own slot, so the
// merged output is independent of scheduling.
template <typename Fn>
std::vector<std::string> run_replicas(int workers, int replicas, Fn fn) {
  std::vector<std::string> parts(static_cast<std::size_t>(replicas));
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  const int n_threads = std::max(1, std::min(workers, replicas));
  for (int w = 0; w < n_threads; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= replicas) return;
        parts[static_cast<std::size_t>(i)] = fn(i);
      }
    });
  }
  for (auto& t : pool) t.join();
  return parts;
}

// ---------------------------------------------------------------- sample --

int cmd_sample(const CommonOpts& common, const GraphOpts& gopts, double beta,
               const std::string& model_s, std::uint64_t n_samples, bool dump_bridges) {
  const auto g = make_graph(gopts);
  const auto model = parse_model(model_s);
  const auto dir = resolve_out_dir(common);

  const int replicas = std::max(1, common.workers);
  const auto base = n_samples / static_cast<std::uint64_t>(replicas);
  const auto extra = n_samples % static_cast<std::uint64_t>(replicas);

  const auto parts = run_replicas(common.workers, replicas, [&](int rep) {
    auto rng = Rng::for_replica(common.seed, static_cast<std::uint64_t>(rep));
    const auto quota = base + (static_cast<std::uint64_t>(rep) < extra ? 1 : 0);
    std::string rows;
    for (std::uint64_t s = 0; s < quota; ++s) {
      const auto w = sample_rho(g, beta, rng);
      const auto dec = decompose(w, g, model);
      const auto& objs = dec.objects();
      for (std::size_t i = 0; i < objs.size(); ++i) {
        rows += std::to_string(rep) + "," + std::to_string(s) + "," + std::to_string(i) + "," +
                fmt17(objs[i].length) + "," + std::to_string(objs[i].winding) + "," +
                std::to_string(objs[i].strands) + "\n";
      }
    }
    return rows;
  });

  std::string csv = "replica,sample,cycle_id,length,winding,n_strands\n";
  for (const auto& p : parts) csv += p;
  write_file(dir / "decompositions.csv", csv);

  if (dump_bridges) {
    auto rng = Rng::for_replica(common.seed, 0);
    const auto w = sample_rho(g, beta, rng);
    write_file(dir / "bridges.csv", w.to_csv(g));
    write_file(dir / "bridges.json", w.to_json(g) + "\n");
  }

  json cfg = graph_config(gopts);
  cfg["beta"] = beta;
  cfg["model"] = model_s;
  cfg["samples"] = n_samples;
  cfg["seed"] = common.seed;
  cfg["workers"] = common.workers;
  cfg["dump_bridges"] = dump_bridges;
  write_manifest(dir, "sample", cfg);
  return 0;
}

// ------------------------------------------------------------------ mcmc --

int cmd_mcmc(const CommonOpts& common, const GraphOpts& gopts, double beta, double theta,
             const std::string& model_s, const std::string& sampler_s, std::uint64_t steps,
             std::uint64_t burn_in, std::uint64_t thin) {
  const auto g = make_graph(gopts);
  const auto model = parse_model(model_s);
  SamplerKind sampler;
  if (sampler_s == "mh")
    sampler = SamplerKind::mh;
  else if (sampler_s == "ct")
    sampler = SamplerKind::ct;
  else
    throw CLI::ValidationError("--sampler", "must be mh or ct");
  const auto dir = resolve_out_dir(common);

  const int replicas = std::max(1, common.workers);
  const auto parts = run_replicas(common.workers, replicas, [&](int rep) {
    auto rng = Rng::for_replica(common.seed, static_cast<std::uint64_t>(rep));
    const auto samples = run_chain(g, beta, theta, model, sampler, {steps, burn_in, thin}, rng);
    std::string rows;
    for (const auto& s : samples) {
      rows += std::to_string(s.step) + "," + std::to_string(s.n_bridges) + "," +
              std::to_string(s.n_objects);
      for (std::size_t i = 0; i < 10; ++i)
        rows += "," + fmt17(i < s.objects.size() ? s.objects[i].length : 0.0);
      rows += "\n";
    }
    return rows;
  });

  std::string csv = "step,n_bridges,n_objects";
  for (int i = 1; i <= 10; ++i) csv += ",len_" + std::to_string(i);
  csv += "\n";
  for (const auto& p : parts) csv += p;
  write_file(dir / "chain.csv", csv);

  json cfg = graph_config(gopts);
  cfg["beta"] = beta;
  cfg["theta"] = theta;
  cfg["model"] = model_s;
  cfg["sampler"] = sampler_s;
  cfg["steps"] = steps;
  cfg["burn_in"] = burn_in;
  cfg["thin"] = thin;
  cfg["seed"] = common.seed;
  cfg["workers"] = common.workers;
  write_manifest(dir, "mcmc", cfg);
  return 0;
}

// ---------------------------------------------------------- oracle-check --

int cmd_oracle_check(const CommonOpts& common, const GraphOpts& gopts, double beta, double h,
                     std::uint64_t n_samples, const std::string& model_s) {
  const auto g = make_graph(gopts);
  const auto dir = resolve_out_dir(common);
  auto rng = Rng::for_replica(common.seed, 0);

  json reports = json::array();
  bool pass = true;
  const bool do_cycles = model_s == "cycles" || model_s == "both";
  const bool do_loops = (model_s == "loops" || model_s == "both") && g.bipartite();
  if (model_s == "loops" && !g.bipartite())
    throw std::invalid_argument("loop identity needs a bipartite graph");
  if (do_cycles) {
    const auto rep = oracle::verify_cycle_identity(g, beta, h, n_samples, rng);
    reports.push_back(json::parse(rep.to_json()));
    reports.back()["model"] = "cycles";
    pass = pass && std::abs(rep.z_score) < 3.0;
  }
  if (do_loops) {
    const auto rep = oracle::verify_loop_identity(g, beta, h, n_samples, rng);
    reports.push_back(json::parse(rep.to_json()));
    reports.back()["model"] = "loops";
    pass = pass && std::abs(rep.z_score) < 3.0;
  }
  json out{{"reports", reports}, {"pass", pass}};
  write_file(dir / "oracle_check.json", out.dump(2) + "\n");
  std::cout << out.dump(2) << "\n";

  json cfg = graph_config(gopts);
  cfg["beta"] = beta;
  cfg["h"] = h;
  cfg["samples"] = n_samples;
  cfg["model"] = model_s;
  cfg["seed"] = common.seed;
  write_manifest(dir, "oracle-check", cfg);
  return pass ? 0 : 1;
}

// --------------------------------------------------------------- schramm --

int cmd_schramm(const CommonOpts& common, int n, double c, std::uint64_t n_samples) {
  const auto dir = resolve_out_dir(common);
  auto rng = Rng::for_replica(common.seed, 0);
  const auto rep = schramm_experiment(n, c, 1.0, n_samples, rng);
  write_file(dir / "schramm.json", rep.to_json() + "\n");
  std::cout << rep.to_json() << "\n";

  json cfg{{"n", n}, {"c", c}, {"samples", n_samples}, {"seed", common.seed}};
  write_manifest(dir, "schramm", cfg);
  return 0;
}

// ----------------------------------------------------------- split-merge --

int cmd_split_merge(const CommonOpts& common, double beta_s, double beta_m, std::uint64_t steps,
                    double horizon, const std::string& init, double theta_init,
                    std::uint64_t record_every) {
  const auto dir = resolve_out_dir(common);
  auto rng = Rng::for_replica(common.seed, 0);
  Partition p = init == "pd" ? sample_pd_stick(theta_init, 1e-8, rng) : Partition::single();

  std::string csv = "t_or_step,n_parts";
  for (int i = 1; i <= 10; ++i) csv += ",p" + std::to_string(i);
  csv += "\n";
  const auto record = [&](double t) {
    csv += fmt17(t) + "," + std::to_string(p.size());
    for (std::size_t i = 0; i < 10; ++i) csv += "," + fmt17(i < p.size() ? p[i] : 0.0);
    csv += "\n";
  };

  if (horizon > 0.0) {
    const auto chunks = std::max<std::uint64_t>(1, steps);
    const double dt = horizon / static_cast<double>(chunks);
    record(0.0);
    for (std::uint64_t i = 1; i <= chunks; ++i) {
      p = run_continuous(p, beta_s, beta_m, dt, rng);
      record(dt * static_cast<double>(i));
    }
  } else {
    record(0.0);
    for (std::uint64_t s = 1; s <= steps; ++s) {
      p = step_discrete(p, beta_s, beta_m, rng);
      if (s % std::max<std::uint64_t>(1, record_every) == 0) record(static_cast<double>(s));
    }
  }
  write_file(dir / "splitmerge.csv", csv);

  json cfg{{"beta_s", beta_s},
           {"beta_m", beta_m},
           {"steps", steps},
           {"horizon", horizon},
           {"init", init},
           {"theta_init", theta_init},
           {"record_every", record_every},
           {"seed", common.seed}};
  write_manifest(dir, "split-merge", cfg);
  return 0;
}

// --------------------------------------------------------------- pd-test --

int cmd_pd_test(const CommonOpts& common, double theta, std::uint64_t n) {
  const auto dir = resolve_out_dir(common);
  auto rng = Rng::for_replica(common.seed, 0);
  json tests = json::array();
  bool pass = true;
  const auto push = [&](const std::string& name, std::size_t nn, double stat, double p_value,
                        bool ok) {
    tests.push_back(
        {{"test", name}, {"n", nn}, {"statistic", stat}, {"p_value", p_value}, {"pass", ok}});
    pass = pass && ok;
  };

  {
    const auto ks = size_biased_pick_test(theta, n, rng);
    push("size_biased_pick_beta", ks.n, ks.d, ks.p, ks.p > 0.01);
  }
  {
    std::vector<double> stick, ppp;
    for (std::uint64_t i = 0; i < n; ++i) {
      stick.push_back(sample_pd_stick(theta, 1e-8, rng)[0]);
      ppp.push_back(sample_pd_ppp(theta, 1e-10, rng).first[0]);
    }
    const auto ks = ks_test(std::move(stick), std::move(ppp));
    push("stick_vs_ppp_largest", ks.n, ks.d, ks.p, ks.p > 0.01);
  }
  {
    std::vector<double> totals;
    for (std::uint64_t i = 0; i < n; ++i)
      totals.push_back(sample_ppp_atoms(theta, 1e-10, rng).total);
    const auto mv = mean_var(totals);
    const double z = (mv.mean - theta) / mv.stderr_mean();
    push("ppp_total_gamma_mean", mv.n, z, 0.0, std::abs(z) < 3.0);
    const double mu4 = 3.0 * theta * theta + 6.0 * theta;
    const double zv =
        (mv.var - theta) / std::sqrt((mu4 - theta * theta) / static_cast<double>(mv.n));
    push("ppp_total_gamma_var", mv.n, zv, 0.0, std::abs(zv) < 3.0);
  }
  {
    const auto res = campbell_check([](double x) { return 0.5 * x; }, theta, n, rng);
    push("campbell_linear", res.n, res.z, 0.0, std::abs(res.z) < 3.0);
  }
  {
    std::vector<double> sums, ratios;
    for (std::uint64_t i = 0; i < n; ++i) {
      const double x = rng.gamma(1.0), y = rng.gamma(theta);
      sums.push_back(x + y);
      ratios.push_back(x / (x + y));
    }
    const double corr = pearson_correlation(sums, ratios);
    const double bound = std::max(0.01, 3.0 / std::sqrt(static_cast<double>(n)));
    push("beta_gamma_independence", n, corr, 0.0, std::abs(corr) < bound);
  }

  json out{{"theta", theta}, {"tests", tests}, {"pass", pass}};
  write_file(dir / "pd_test.json", out.dump(2) + "\n");
  std::cout << out.dump(2) << "\n";

  json cfg{{"theta", theta}, {"n", n}, {"seed", common.seed}};
  write_manifest(dir, "pd-test", cfg);
  return pass ? 0 : 1;
}

// ----------------------------------------------------------------- bound --

int cmd_bound(const CommonOpts& common, double theta, double beta, int kappa, int k,
              const std::string& model_s) {
  const auto dir = resolve_out_dir(common);
  const auto res = high_temp_bound(theta, beta, kappa, k, parse_model(model_s));
  json out{{"theta", theta},   {"beta", beta}, {"kappa", kappa},     {"k", k},
           {"model", model_s}, {"a", res.a},   {"bound", res.value}, {"vacuous", res.vacuous}};
  write_file(dir / "bound.json", out.dump(2) + "\n");
  std::cout << out.dump(2) << "\n";

  json cfg{{"theta", theta}, {"beta", beta},     {"kappa", kappa},
           {"k", k},         {"model", model_s}, {"seed", common.seed}};
  write_manifest(dir, "bound", cfg);
  return 0;
}

// --------------------------------------------------------------- contact --

int cmd_contact(const CommonOpts& common, const GraphOpts& gopts, double beta,
                std::uint64_t n_samples) {
  const auto g = make_graph(gopts);
  const auto dir = resolve_out_dir(common);
  auto rng = Rng::for_replica(common.seed, 0);
  const auto rep = contact_scaling_experiment(g, beta, 1.0, n_samples, rng);
  write_file(dir / "contact.json", rep.to_json() + "\n");
  std::cout << rep.to_json() << "\n";

  json cfg = graph_config(gopts);
  cfg["beta"] = beta;
  cfg["samples"] = n_samples;
  cfg["seed"] = common.seed;
  write_manifest(dir, "contact", cfg);
  return 0;
}

// A single JSON config file can stand in for the flags: its "subcommand"
// key selects the command and every other key K becomes --K <value>.
// Explicit command-line flags are appended afterwards and win.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args;
  std::optional<std::string> config_path;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--config") {
      if (i + 1 >= argc) throw std::runtime_error("--config needs a file");
      config_path = argv[++i];
    } else if (a.rfind("--config=", 0) == 0) {
      config_path = a.substr(9);
    } else {
      args.push_back(a);
    }
  }
  if (!config_path) return args;
  std::ifstream in(*config_path);
  if (!in) throw std::runtime_error("cannot open config " + *config_path);
  const auto j = json::parse(in);
  std::vector<std::string> expanded;
  if (j.contains("subcommand")) expanded.push_back(j.at("subcommand").get<std::string>());
  for (const auto& [key, value] : j.items()) {
    if (key == "subcommand") continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) expanded.push_back("--" + key);
      continue;
    }
    expanded.push_back("--" + key);
    if (value.is_string())
      expanded.push_back(value.get<std::string>());
    else
      expanded.push_back(value.dump());
  }
  expanded.insert(expanded.end(), args.begin(), args.end());
  return expanded;
}

void take_last_everywhere(CLI::App* app) {
  for (auto* opt : app->get_options()) opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  for (auto* sub : app->get_subcommands({})) take_last_everywhere(sub);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cycle and loop representations of quantum Heisenberg models"};
  app.require_subcommand(1);

  CommonOpts common;
  GraphOpts gopts;
  double beta = 1.0, theta = 1.0, h = 0.0, c = 1.0;
  double beta_s = 1.0, beta_m = 1.0, horizon = 0.0, theta_init = 1.0;
  std::uint64_t n_samples = 1000, steps = 100000, burn_in = 0, thin = 0, pd_n = 100000,
                record_every = 1;
  int kn = 200, kappa = 4, k = 2;
  std::string model_s = "cycles", sampler_s = "mh", init = "single", oracle_model = "both";
  bool dump_bridges = false;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", common.seed, "random seed (required; no wall-clock default)")
        ->required();
    cmd->add_option("--out", common.out_dir, "output directory")->default_val(".");
    cmd->add_option("--workers", common.workers, "independent replicas")->default_val(1);
  };

  auto* sample = app.add_subcommand("sample", "direct rho samples and their decompositions");
  add_graph_flags(sample, gopts);
  sample->add_option("--beta", beta)->required();
  sample->add_option("--model", model_s)->default_val("cycles");
  sample->add_option("--samples", n_samples)->default_val(1000);
  sample->add_flag("--dump-bridges", dump_bridges, "also dump one bridge configuration");
  add_common(sample);

  auto* mcmc = app.add_subcommand("mcmc", "theta-weighted chain sampling");
  add_graph_flags(mcmc, gopts);
  mcmc->add_option("--beta", beta)->required();
  mcmc->add_option("--theta", theta)->default_val(1.0);
  mcmc->add_option("--model", model_s)->default_val("cycles");
  mcmc->add_option("--sampler", sampler_s)->default_val("mh");
  mcmc->add_option("--steps", steps)->default_val(100000);
  mcmc->add_option("--burn-in", burn_in, "0 = default 10 beta |E|")->default_val(0);
  mcmc->add_option("--thin", thin, "0 = default beta |E|")->default_val(0);
  add_common(mcmc);

  auto* oracle_cmd =
      app.add_subcommand("oracle-check", "representation identities vs exact traces");
  add_graph_flags(oracle_cmd, gopts);
  oracle_cmd->add_option("--beta", beta)->required();
  oracle_cmd->add_option("--h", h)->default_val(0.0);
  oracle_cmd->add_option("--samples", n_samples)->default_val(100000);
  oracle_cmd->add_option("--model", oracle_model, "cycles|loops|both")->default_val("both");
  add_common(oracle_cmd);

  auto* schramm = app.add_subcommand("schramm", "complete-graph cycle lengths vs PD_1");
  schramm->add_option("--n", kn)->default_val(200);
  schramm->add_option("--c", c)->default_val(1.0);
  schramm->add_option("--samples", n_samples)->default_val(10000);
  add_common(schramm);

  auto* sm = app.add_subcommand("split-merge", "uniform split-merge chain on partitions");
  sm->add_option("--beta-s", beta_s)->default_val(1.0);
  sm->add_option("--beta-m", beta_m)->default_val(1.0);
  sm->add_option("--steps", steps)->default_val(1000);
  sm->add_option("--horizon", horizon, "> 0 switches to the continuous-time chain")
      ->default_val(0.0);
  sm->add_option("--init", init, "single|pd")->default_val("single");
  sm->add_option("--theta-init", theta_init)->default_val(1.0);
  sm->add_option("--record-every", record_every)->default_val(1);
  add_common(sm);

  auto* pd = app.add_subcommand("pd-test", "Poisson-Dirichlet sampler test battery");
  pd->add_option("--theta", theta)->default_val(1.0);
  pd->add_option("--n", pd_n)->default_val(100000);
  add_common(pd);

  auto* bound = app.add_subcommand("bound", "high-temperature exponential-decay bound");
  bound->add_option("--theta", theta)->required();
  bound->add_option("--beta", beta)->required();
  bound->add_option("--kappa", kappa, "maximal degree")->required();
  bound->add_option("--k", k)->required();
  bound->add_option("--model", model_s)->default_val("cycles");
  add_common(bound);

  auto* contact = app.add_subcommand("contact", "contact zones/bridges scaling experiment");
  add_graph_flags(contact, gopts);
  contact->add_option("--beta", beta)->required();
  contact->add_option("--samples", n_samples)->default_val(100);
  add_common(contact);

  take_last_everywhere(&app);

  std::vector<std::string> args;
  try {
    args = expand_config(argc, argv);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
  try {
    // CLI11 wants reversed argument order when parsing a vector
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the message
    return 2;
  }

  try {
    if (sample->parsed())
      return cmd_sample(common, gopts, beta, model_s, n_samples, dump_bridges);
    if (mcmc->parsed())
      return cmd_mcmc(common, gopts, beta, theta, model_s, sampler_s, steps, burn_in, thin);
    if (oracle_cmd->parsed())
      return cmd_oracle_check(common, gopts, beta, h, n_samples, oracle_model);
    if (schramm->parsed()) return cmd_schramm(common, kn, c, n_samples);
    if (sm->parsed())
      return cmd_split_merge(common, beta_s, beta_m, steps, horizon, init, theta_init,
                             record_every);
    if (pd->parsed()) return cmd_pd_test(common, theta, pd_n);
    if (bound->parsed()) return cmd_bound(common, theta, beta, kappa, k, model_s);
    if (contact->parsed()) return cmd_contact(common, gopts, beta, n_samples);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
  return 2;
}
