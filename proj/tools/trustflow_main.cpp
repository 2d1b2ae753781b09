#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "trustflow/allocator.hpp"
#include "trustflow/ism.hpp"
#include "trustflow/network.hpp"
#include "trustflow/scenario.hpp"
#include "trustflow/sim.hpp"
#include "trustflow/social.hpp"
#include "trustflow/trust.hpp"

namespace {

constexpr const char* kVersion = "trustflow 0.1.0";

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  out << body;
  if (!out) throw std::invalid_argument("write failed: " + path);
}

void write_manifest(const std::string& out_path, const std::string& body) {
  std::ostringstream m;
  m << "# " << kVersion << " run manifest\n" << body;
  write_file(out_path + ".manifest", m.str());
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::map<std::string, double> load_contacts(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open contacts file: " + path);
  std::map<std::string, double> contacts;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string user;
    if (!(ls >> user) || user[0] == '#') continue;
    double count;
    if (!(ls >> count) || count < 0)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": expected `user count`");
    contacts[user] = count;
  }
  return contacts;
}

std::vector<double> parse_values(const std::string& csv) {
  std::vector<double> values;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    std::size_t pos = 0;
    values.push_back(std::stod(tok, &pos));
    if (pos != tok.size()) throw std::invalid_argument("bad value in --values: '" + tok + "'");
  }
  if (values.empty()) throw std::invalid_argument("--values requires at least one number");
  return values;
}

struct CommonTrustFlags {
  std::string trust_mode;
  std::string ism;
  double tau_t = -1.0, tau_s = -1.0, mu = -1.0;

  void add_to(CLI::App* app) {
    app->add_option("--trust-mode", trust_mode, "social+behavioral | behavioral | none")
        ->check(CLI::IsMember({"social+behavioral", "behavioral", "none"}));
    app->add_option("--ism", ism, "identity verification: on | off")
        ->check(CLI::IsMember({"on", "off"}));
    app->add_option("--tau-t", tau_t, "path-trust admission threshold");
    app->add_option("--tau-s", tau_s, "spoof-probability admission threshold");
    app->add_option("--mu", mu, "diversity weight (selects the combined utility)");
  }

  void apply(trustflow::ScenarioConfig& cfg) const {
    if (!trust_mode.empty()) trustflow::apply_override(cfg, "trust_mode", trust_mode);
    if (!ism.empty()) cfg.ism_enabled = (ism == "on");
    if (tau_t >= 0) cfg.tau_t = tau_t;
    if (tau_s >= 0) cfg.tau_s = tau_s;
    if (mu >= 0) {
      cfg.mu = mu;
      cfg.utility = trustflow::UtilityKind::combined;
    }
  }
};

int cmd_trust_demo(double true_rate, int observations, std::uint64_t seed,
                   double prior_social, double prior_strength, const std::string& out) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  trustflow::EvidenceRecord ev;
  auto st = trustflow::CombinedTrustState::from_social_prior(prior_social, prior_strength);
  std::ostringstream o;
  o << "observation,outcome,belief,disbelief,uncertainty,combined_trust\n";
  for (int t = 1; t <= observations; ++t) {
    auto outcome = u01(rng) < true_rate ? trustflow::Outcome::positive
                                        : trustflow::Outcome::negative;
    ev = trustflow::record_observation(ev, outcome);
    st.observe(outcome);
    auto op = trustflow::opinion_from_evidence(ev);
    o << t << ',' << (outcome == trustflow::Outcome::positive ? 1 : 0) << ','
      << fmt(op.belief) << ',' << fmt(op.disbelief) << ',' << fmt(op.uncertainty) << ','
      << fmt(st.value()) << '\n';
  }
  write_file(out, o.str());
  std::ostringstream m;
  m << "subcommand = trust-demo\ntrue_rate = " << fmt(true_rate)
    << "\nobservations = " << observations << "\nseed = " << seed
    << "\nprior_social = " << fmt(prior_social)
    << "\nprior_strength = " << fmt(prior_strength) << "\n";
  write_manifest(out, m.str());
  return 0;
}

int cmd_social_trust(const std::string& wallposts, const std::string& contacts_path,
                     const std::vector<std::string>& pair, double decay,
                     const std::string& out) {
  std::ifstream in(wallposts);
  if (!in) throw std::invalid_argument("cannot open wall-post file: " + wallposts);
  auto parsed = trustflow::parse_wallposts(in);
  for (const auto& issue : parsed.issues)
    std::cerr << wallposts << ":" << issue.line << ": " << issue.message << "\n";
  std::map<std::string, double> contacts;
  if (!contacts_path.empty()) contacts = load_contacts(contacts_path);
  else contacts = trustflow::distinct_partner_counts(parsed.records);

  auto series = trustflow::trust_timeseries(parsed.records, pair[0], pair[1], contacts, decay);
  std::ostringstream o;
  o << "month,wallpost_trust\n";
  for (const auto& row : series) o << row.month << ',' << fmt(row.trust) << '\n';
  write_file(out, o.str());
  std::ostringstream m;
  m << "subcommand = social-trust\nwallposts = " << wallposts
    << "\ncontacts = " << (contacts_path.empty() ? "(distinct partners)" : contacts_path)
    << "\npair = " << pair[0] << ' ' << pair[1] << "\ndecay = " << fmt(decay) << "\n";
  write_manifest(out, m.str());
  return 0;
}

int cmd_ism(const std::string& topology, std::string observer, const std::string& out) {
  auto spec = trustflow::load_network_file(topology);
  if (observer.empty()) {
    if (spec.voucher_graph.seeds.empty())
      throw std::invalid_argument("no --observer given and no seed records in " + topology);
    observer = spec.voucher_graph.seeds.begin()->first;
  }
  auto ism = trustflow::compute_ism(spec.voucher_graph, observer);
  std::ostringstream o;
  o << "node,spoof_probability\n";
  for (const auto& [node, value] : ism.values) o << node << ',' << fmt(value) << '\n';
  write_file(out, o.str());
  std::ostringstream m;
  m << "subcommand = ism\ntopology = " << topology << "\nobserver = " << observer
    << "\niterations = " << ism.iterations << "\n";
  write_manifest(out, m.str());
  return 0;
}

int cmd_allocate(const std::string& topology, double capacity, int k_paths,
                 const CommonTrustFlags& flags, const std::string& out) {
  auto spec = trustflow::load_network_file(topology);
  if (spec.sources.empty())
    throw std::invalid_argument("no source records in " + topology);
  auto topo = spec.make_topology(capacity);

  trustflow::ScenarioConfig knobs;  // defaults for tau/mu/utility/ism
  flags.apply(knobs);
  bool use_ism = !flags.ism.empty() ? (flags.ism == "on") : false;

  trustflow::AllocationProblem problem;
  problem.kind = knobs.utility;
  problem.mu = knobs.mu;
  for (const auto& link : topo.links) problem.capacities.push_back(link.capacity);

  std::vector<trustflow::PathSet> kept;
  for (const auto& [s, d] : spec.sources) {
    auto ps = trustflow::discover_paths(topo, s, d, k_paths);
    const trustflow::IsmMap* ism_ptr = nullptr;
    trustflow::IsmMap ism;
    if (use_ism) {
      ism = trustflow::compute_ism(spec.voucher_graph, s);
      ism_ptr = &ism;
    }
    auto adm = trustflow::admissible_paths(ps, spec.trust, ism_ptr, knobs.tau_t, knobs.tau_s);
    if (adm.paths.empty()) {
      kept.push_back(adm);
      continue;
    }
    trustflow::SourceProblem sp;
    sp.source = s;
    sp.dest = d;
    for (const auto& path : adm.paths) {
      std::vector<int> links;
      for (std::size_t h = 0; h + 1 < path.size(); ++h)
        links.push_back(topo.link_index.at({path[h], path[h + 1]}));
      sp.path_links.push_back(std::move(links));
      sp.path_trusts.push_back(std::max(trustflow::path_trust(path, spec.trust), 1e-9));
    }
    problem.sources.push_back(std::move(sp));
    kept.push_back(adm);
  }

  trustflow::FlowAllocation alloc;
  if (!problem.sources.empty()) {
    auto solved = trustflow::solve_distributed(problem);
    alloc = solved.allocation;
  }

  std::ostringstream o;
  o << "source,dest,path_index,path,rate,path_trust\n";
  std::size_t si = 0;
  for (const auto& adm : kept) {
    if (adm.paths.empty()) continue;
    for (std::size_t q = 0; q < adm.paths.size(); ++q) {
      std::string joined;
      for (const auto& node : adm.paths[q]) {
        if (!joined.empty()) joined += '-';
        joined += node;
      }
      o << adm.source << ',' << adm.dest << ',' << q << ',' << joined << ','
        << fmt(alloc.rates[si][q]) << ','
        << fmt(trustflow::path_trust(adm.paths[q], spec.trust)) << '\n';
    }
    ++si;
  }
  write_file(out, o.str());
  std::ostringstream m;
  m << "subcommand = allocate\ntopology = " << topology << "\ncapacity = " << fmt(capacity)
    << "\nk_paths = " << k_paths << "\ntau_t = " << fmt(knobs.tau_t)
    << "\ntau_s = " << fmt(knobs.tau_s) << "\nism = " << (use_ism ? "on" : "off")
    << "\nutility = " << trustflow::to_string(knobs.utility) << "\nmu = " << fmt(knobs.mu)
    << "\n";
  write_manifest(out, m.str());
  return 0;
}

trustflow::ScenarioConfig scenario_from_flags(const std::string& config_path,
                                              const std::vector<std::string>& sets,
                                              const CommonTrustFlags& flags,
                                              std::int64_t seed) {
  trustflow::ScenarioConfig cfg;
  if (!config_path.empty()) cfg = trustflow::load_scenario_file(config_path);
  for (const auto& kv : sets) {
    auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
    trustflow::apply_override(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  flags.apply(cfg);
  if (seed >= 0) cfg.rng_seed = static_cast<std::uint64_t>(seed);
  cfg.validate();
  return cfg;
}

int cmd_simulate(const trustflow::ScenarioConfig& cfg, const std::string& out,
                 const std::string& trust_out) {
  auto result = trustflow::run_simulation(cfg);
  write_file(out, trustflow::metrics_csv(result.rounds));
  write_manifest(out, trustflow::dump_scenario(cfg));
  if (!trust_out.empty()) {
    write_file(trust_out, trustflow::trust_csv(result.final_trust));
    write_manifest(trust_out, trustflow::dump_scenario(cfg));
  }
  std::cerr << "delivered " << result.total_delivered << "/" << result.total_sent
            << " packets over " << cfg.rounds << " rounds\n";
  return 0;
}

int cmd_sweep(const trustflow::ScenarioConfig& cfg, const std::string& axis_name,
              const std::string& values_csv, int seeds, int jobs, const std::string& out) {
  auto axis = trustflow::sweep_axis_from_string(axis_name);
  auto values = parse_values(values_csv);
  auto rows = trustflow::parameter_sweep(cfg, axis, values, seeds, jobs);
  write_file(out, trustflow::sweep_csv(axis, rows));
  std::ostringstream m;
  m << "# axis = " << trustflow::to_string(axis) << ", values = " << values_csv
    << ", seeds = " << seeds << "\n"
    << trustflow::dump_scenario(cfg);
  write_manifest(out, m.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"trust-aware flow allocation and ad hoc network simulation"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  // trust-demo
  auto* demo = app.add_subcommand("trust-demo", "behavioral trust convergence trace");
  double demo_rate = 0.8, demo_prior = 0.5, demo_strength = 0.0;
  int demo_obs = 50;
  std::int64_t demo_seed = 1;
  std::string demo_out;
  demo->add_option("--true-rate", demo_rate, "true forwarding probability")->check(CLI::Range(0.0, 1.0));
  demo->add_option("--observations", demo_obs)->check(CLI::PositiveNumber);
  demo->add_option("--seed", demo_seed);
  demo->add_option("--prior-social", demo_prior)->check(CLI::Range(0.0, 1.0));
  demo->add_option("--prior-strength", demo_strength)->check(CLI::NonNegativeNumber);
  demo->add_option("--out", demo_out)->required();

  // social-trust
  auto* social = app.add_subcommand("social-trust", "monthly wall-post trust series");
  std::string so_posts, so_contacts, so_out;
  std::vector<std::string> so_pair;
  double so_decay = 1.0;
  social->add_option("--wallposts", so_posts)->required();
  social->add_option("--contacts", so_contacts);
  social->add_option("--pair", so_pair, "poster and wall owner")->expected(2)->required();
  social->add_option("--decay", so_decay, "saturation rate constant");
  social->add_option("--out", so_out)->required();

  // ism
  auto* ismc = app.add_subcommand("ism", "identity spoof probabilities from a voucher graph");
  std::string is_topo, is_observer, is_out;
  ismc->add_option("--topology", is_topo)->required();
  ismc->add_option("--observer", is_observer);
  ismc->add_option("--out", is_out)->required();

  // allocate
  auto* alloc = app.add_subcommand("allocate", "solve one flow-allocation instance");
  std::string al_topo, al_out;
  double al_capacity = 50.0;
  int al_k = 3;
  CommonTrustFlags al_flags;
  alloc->add_option("--topology", al_topo)->required();
  alloc->add_option("--capacity", al_capacity, "default link capacity")->check(CLI::PositiveNumber);
  alloc->add_option("--k", al_k, "paths per source")->check(CLI::PositiveNumber);
  al_flags.add_to(alloc);
  alloc->add_option("--out", al_out)->required();

  // simulate
  auto* sim = app.add_subcommand("simulate", "run one seeded simulation");
  std::string si_config, si_out, si_trust_out;
  std::vector<std::string> si_sets;
  std::int64_t si_seed = -1;
  CommonTrustFlags si_flags;
  sim->add_option("--config", si_config, "scenario config file");
  sim->add_option("--set", si_sets, "key=value config override")->take_all();
  sim->add_option("--seed", si_seed, "rng seed override");
  si_flags.add_to(sim);
  sim->add_option("--out", si_out, "per-round metrics CSV")->required();
  sim->add_option("--trust-out", si_trust_out, "final pairwise trust CSV");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "aggregate metric vs. one parameter axis");
  std::string sw_config, sw_axis, sw_values, sw_out;
  std::vector<std::string> sw_sets;
  std::int64_t sw_seed = -1;
  int sw_seeds = 5, sw_jobs = 1;
  CommonTrustFlags sw_flags;
  sweep->add_option("--config", sw_config);
  sweep->add_option("--set", sw_sets, "key=value config override")->take_all();
  sweep->add_option("--seed", sw_seed, "base rng seed");
  sweep->add_option("--axis", sw_axis, "speed | malicious | tau-t | mu")->required();
  sweep->add_option("--values", sw_values, "comma-separated axis values")->required();
  sweep->add_option("--seeds", sw_seeds, "replicates per value")->check(CLI::PositiveNumber);
  sweep->add_option("--jobs", sw_jobs, "concurrent replicates")->check(CLI::PositiveNumber);
  sw_flags.add_to(sweep);
  sweep->add_option("--out", sw_out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the usage message
    return 2;
  }

  try {
    if (demo->parsed())
      return cmd_trust_demo(demo_rate, demo_obs, static_cast<std::uint64_t>(demo_seed),
                            demo_prior, demo_strength, demo_out);
    if (social->parsed())
      return cmd_social_trust(so_posts, so_contacts, so_pair, so_decay, so_out);
    if (ismc->parsed()) return cmd_ism(is_topo, is_observer, is_out);
    if (alloc->parsed()) return cmd_allocate(al_topo, al_capacity, al_k, al_flags, al_out);
    if (sim->parsed())
      return cmd_simulate(scenario_from_flags(si_config, si_sets, si_flags, si_seed),
                          si_out, si_trust_out);
    if (sweep->parsed())
      return cmd_sweep(scenario_from_flags(sw_config, sw_sets, sw_flags, sw_seed),
                       sw_axis, sw_values, sw_seeds, sw_jobs, sw_out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
