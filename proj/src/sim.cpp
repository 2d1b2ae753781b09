#include "trustflow/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <numeric>
#include <queue>
#include <random>
#include <sstream>
#include <stdexcept>

#include "trustflow/ism.hpp"
#include "trustflow/network.hpp"

namespace trustflow {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

struct SimNode {
  NodeId id;
  Vec2 pos;
  Vec2 waypoint;
  double speed = 0.0;
  bool malicious = false;
  bool spoofed = false;
  double social = 1.0;  // profile-derived trust others hold in this node
};

// Trust one node holds in another: corrected behavioural evidence plus
// either a social pseudo-count prior or the recursive bootstrap value.
struct PairTrust {
  EvidenceRecord ev;
  double prior_alpha = 1.0;
  double prior_beta = 1.0;
  double boot_value = 0.0;
};

class Simulation {
 public:
  explicit Simulation(const ScenarioConfig& cfg) : cfg_(cfg) { cfg_.validate(); }

  SimResult run();

 private:
  void init(std::mt19937_64& rng);
  void pick_source_pairs(std::mt19937_64& rng, const Topology& boot_topo);
  void step_mobility(std::mt19937_64& rng);
  double current_trust(int i, int j) const;
  void observe(int i, int j, Outcome outcome);
  Topology topology_now() const;

  ScenarioConfig cfg_;
  std::vector<SimNode> nodes_;
  std::vector<std::pair<int, int>> pairs_;
  std::vector<std::vector<PairTrust>> trust_;  // [observer][subject]
  VoucherGraph vouchers_;                      // bootstrap voucher/seed structure
  std::map<NodeId, int> index_of_;
};

void Simulation::init(std::mt19937_64& rng) {
  const int n = cfg_.node_count;
  int width = static_cast<int>(std::to_string(n - 1).size());
  std::uniform_real_distribution<double> ux(0.0, cfg_.area_width);
  std::uniform_real_distribution<double> uy(0.0, cfg_.area_height);
  std::uniform_real_distribution<double> uspeed(cfg_.speed_min, cfg_.speed_max);

  // Initial positions follow the waypoint model's stationary spatial law
  // (approximately Beta(2,2) per axis, drawn as the median of three
  // uniforms). A uniform start would leave static runs systematically less
  // connected than mobile ones, which drift toward the centre-biased
  // stationary density.
  auto stationary = [&rng](std::uniform_real_distribution<double>& u) {
    double a = u(rng), b = u(rng), c = u(rng);
    return std::max(std::min(a, b), std::min(std::max(a, b), c));
  };

  nodes_.resize(n);
  for (int i = 0; i < n; ++i) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "n%0*d", width, i);
    nodes_[i].id = buf;
    nodes_[i].pos = {stationary(ux), stationary(uy)};
    nodes_[i].waypoint = {ux(rng), uy(rng)};
    nodes_[i].speed = uspeed(rng);
    index_of_[nodes_[i].id] = i;
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  for (int k = 0; k < cfg_.malicious_count; ++k) {
    nodes_[order[k]].malicious = true;
    if (k < cfg_.spoofed_count) nodes_[order[k]].spoofed = true;
  }

  std::uniform_real_distribution<double> uvalid(cfg_.social_valid_min, cfg_.social_valid_max);
  for (auto& node : nodes_) {
    // A spoofed attacker presents a cloned valid profile, so its
    // profile-derived score looks legitimate; only vouching exposes it.
    node.social = (node.malicious && !node.spoofed) ? cfg_.social_malicious : uvalid(rng);
  }

  trust_.assign(n, std::vector<PairTrust>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      double s;
      switch (cfg_.trust_mode) {
        case TrustMode::social_behavioral: s = nodes_[j].social; break;
        // Without profiles every node starts fully trusted so that
        // behavioural evidence can accumulate at all.
        case TrustMode::behavioral_only: s = 1.0; break;
        case TrustMode::none: s = 1.0; break;
      }
      trust_[i][j].prior_alpha = 1.0 + s * cfg_.prior_strength;
      trust_[i][j].prior_beta = 1.0 + (1.0 - s) * cfg_.prior_strength;
      trust_[i][j].boot_value = bootstrap_init(s);
    }
  }

  Topology boot_topo = topology_now();
  pick_source_pairs(rng, boot_topo);

  // Identity vouchers are exchanged once, at bootstrap: every neighbour
  // with a certificate vouches. Spoofed nodes have none to offer and none
  // to receive.
  for (const auto& node : nodes_) {
    std::vector<NodeId> rs;
    if (!node.spoofed) {
      for (const auto& nb : boot_topo.adjacency[node.id]) {
        if (!nodes_[index_of_[nb]].spoofed) rs.push_back(nb);
      }
    }
    vouchers_.vouchers[node.id] = std::move(rs);
  }
  for (const auto& [s, d] : pairs_) {
    std::set<NodeId> seed;
    seed.insert(nodes_[s].id);
    for (const auto& node : nodes_) {
      if (!node.malicious && !node.spoofed && node.social >= cfg_.seed_social_threshold)
        seed.insert(node.id);
    }
    vouchers_.seeds[nodes_[s].id] = std::move(seed);
  }
}

void Simulation::pick_source_pairs(std::mt19937_64& rng, const Topology& boot_topo) {
  std::vector<int> candidates;
  for (int i = 0; i < cfg_.node_count; ++i) {
    if (!nodes_[i].malicious) candidates.push_back(i);
  }
  if (static_cast<int>(candidates.size()) < 2 * cfg_.source_pairs)
    throw std::invalid_argument("config: not enough honest nodes for the requested source pairs");

  auto reachable = [&](int s, int d) {
    return !discover_paths(boot_topo, nodes_[s].id, nodes_[d].id, 1).paths.empty();
  };

  // Pairs are drawn uniformly from the honest population, constrained only
  // to be reachable at bootstrap. A hop-count preference here would bias
  // static runs toward permanently long (and adversary-exposed) routes.
  std::vector<char> used(cfg_.node_count, 0);
  std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
  for (int p = 0; p < cfg_.source_pairs; ++p) {
    int s = -1, d = -1;
    for (int attempt = 0; attempt < 500 && s < 0; ++attempt) {
      int a = candidates[pick(rng)], b = candidates[pick(rng)];
      if (a == b || used[a] || used[b]) continue;
      if (reachable(a, b)) { s = a; d = b; }
    }
    if (s < 0) {
      // disconnected bootstrap layout: fall back to any unused honest pair
      for (int a : candidates) {
        if (used[a]) continue;
        for (int b : candidates) {
          if (b == a || used[b]) continue;
          s = a; d = b; break;
        }
        if (s >= 0) break;
      }
    }
    used[s] = used[d] = 1;
    pairs_.emplace_back(s, d);
  }
}

void Simulation::step_mobility(std::mt19937_64& rng) {
  if (cfg_.mobility != MobilityModel::random_waypoint) return;
  std::uniform_real_distribution<double> ux(0.0, cfg_.area_width);
  std::uniform_real_distribution<double> uy(0.0, cfg_.area_height);
  std::uniform_real_distribution<double> uspeed(cfg_.speed_min, cfg_.speed_max);
  for (auto& node : nodes_) {
    double step = node.speed;  // one second per round
    double d = distance(node.pos, node.waypoint);
    if (d <= step || d == 0.0) {
      node.pos = node.waypoint;
      node.waypoint = {ux(rng), uy(rng)};
      node.speed = uspeed(rng);
    } else {
      node.pos.x += (node.waypoint.x - node.pos.x) * step / d;
      node.pos.y += (node.waypoint.y - node.pos.y) * step / d;
    }
  }
}

Topology Simulation::topology_now() const {
  std::vector<std::pair<NodeId, Vec2>> positions;
  positions.reserve(nodes_.size());
  for (const auto& node : nodes_) positions.emplace_back(node.id, node.pos);
  return build_topology(positions, cfg_.radio_range, cfg_.link_capacity);
}

double Simulation::current_trust(int i, int j) const {
  if (cfg_.trust_mode == TrustMode::none) return 1.0;
  const PairTrust& pt = trust_[i][j];
  if (cfg_.trust_scheme == TrustScheme::bootstrap) return pt.boot_value;
  double a = pt.ev.alpha + pt.prior_alpha - 1.0;
  double b = pt.ev.beta + pt.prior_beta - 1.0;
  double den = a + b - 2.0;
  if (den <= 0.0) return 0.5;
  return (a - 1.0) / den;
}

void Simulation::observe(int i, int j, Outcome outcome) {
  PairTrust& pt = trust_[i][j];
  pt.ev = record_observation(pt.ev, outcome, cfg_.plr);
  if (cfg_.trust_scheme == TrustScheme::bootstrap) {
    BootstrapParams bp{cfg_.epsilon, cfg_.zeta, cfg_.rho};
    pt.boot_value = bootstrap_update(pt.boot_value, opinion_from_evidence(pt.ev).belief, bp);
  }
}

SimResult Simulation::run() {
  std::mt19937_64 init_rng(splitmix64(cfg_.rng_seed));
  init(init_rng);

  SimResult result;
  result.rounds.reserve(cfg_.rounds);

  const bool trust_on = cfg_.trust_mode != TrustMode::none;
  const double tau_t = trust_on ? cfg_.tau_t : 0.0;
  const double tau_s = trust_on ? cfg_.tau_s : 0.0;
  const bool use_ism = trust_on && cfg_.ism_enabled;

  for (int round = 1; round <= cfg_.rounds; ++round) {
    std::mt19937_64 rng(splitmix64(cfg_.rng_seed) ^ splitmix64(0x726f756e64ULL + round));
    step_mobility(rng);
    Topology topo = topology_now();

    TrustMap tm;
    for (int i = 0; i < cfg_.node_count; ++i) {
      for (int j = 0; j < cfg_.node_count; ++j) {
        if (i != j) tm[{nodes_[i].id, nodes_[j].id}] = current_trust(i, j);
      }
    }

    std::map<NodeId, IsmMap> ism_by_source;
    if (use_ism) {
      VoucherGraph g = vouchers_;
      for (const auto& [s, d] : pairs_) {
        for (int r = 0; r < cfg_.node_count; ++r) {
          if (r != s) g.trust[{nodes_[s].id, nodes_[r].id}] = current_trust(s, r);
        }
      }
      for (const auto& [s, d] : pairs_) {
        const NodeId& sid = nodes_[s].id;
        if (!ism_by_source.count(sid)) ism_by_source.emplace(sid, compute_ism(g, sid));
      }
    }

    AllocationProblem problem;
    problem.kind = cfg_.utility;
    problem.mu = cfg_.mu;
    for (const auto& link : topo.links) problem.capacities.push_back(link.capacity);

    std::vector<PathSet> pair_paths(pairs_.size());
    std::vector<int> source_of_pair(pairs_.size(), -1);
    for (std::size_t p = 0; p < pairs_.size(); ++p) {
      const auto [s, d] = pairs_[p];
      PathSet ps = discover_paths(topo, nodes_[s].id, nodes_[d].id, cfg_.k_paths);
      const IsmMap* ism = nullptr;
      if (use_ism) ism = &ism_by_source.at(nodes_[s].id);
      pair_paths[p] = admissible_paths(ps, tm, ism, tau_t, tau_s);
      if (pair_paths[p].paths.empty()) continue;
      SourceProblem sp;
      sp.source = nodes_[s].id;
      sp.dest = nodes_[d].id;
      for (const auto& path : pair_paths[p].paths) {
        std::vector<int> links;
        for (std::size_t h = 0; h + 1 < path.size(); ++h)
          links.push_back(topo.link_index.at({path[h], path[h + 1]}));
        sp.path_links.push_back(std::move(links));
        // floor keeps the diversity utility defined when tau_t is 0
        sp.path_trusts.push_back(std::max(path_trust(path, tm), 1e-9));
      }
      source_of_pair[p] = static_cast<int>(problem.sources.size());
      problem.sources.push_back(std::move(sp));
    }

    FlowAllocation alloc;
    if (!problem.sources.empty()) {
      SolveOptions opts;
      opts.max_iter = cfg_.alloc_max_iter;
      opts.tol = cfg_.alloc_tol;
      opts.t0 = cfg_.alloc_t0;
      opts.rate_cap = cfg_.rate_cap;
      opts.keep_trace = false;
      alloc = solve_distributed(problem, opts).allocation;
    }

    RoundMetrics m;
    m.round = round;
    long delivered_clean = 0, spoof_touched = 0;

    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (std::size_t p = 0; p < pairs_.size(); ++p) {
      m.sent += cfg_.packets_per_round;
      int si = source_of_pair[p];
      if (si < 0) continue;  // no admissible path: offered packets are lost
      const auto& rates = alloc.rates[si];
      double total = std::accumulate(rates.begin(), rates.end(), 0.0);
      if (total <= 1e-12) continue;

      for (std::size_t q = 0; q < pair_paths[p].paths.size(); ++q) {
        if (rates[q] > 1e-12) {
          double pt = path_trust(pair_paths[p].paths[q], tm);
          result.min_allocated_path_trust = std::min(result.min_allocated_path_trust, pt);
        }
      }

      for (int pkt = 0; pkt < cfg_.packets_per_round; ++pkt) {
        double z = u01(rng) * total, acc = 0.0;
        std::size_t chosen = 0;
        for (std::size_t q = 0; q < rates.size(); ++q) {
          acc += rates[q];
          if (z <= acc) { chosen = q; break; }
          chosen = q;
        }
        const auto& path = pair_paths[p].paths[chosen];

        bool has_malicious = false, has_spoofed = false;
        for (std::size_t h = 1; h + 1 < path.size(); ++h) {
          const SimNode& f = nodes_[index_of_.at(path[h])];
          has_malicious |= f.malicious;
          has_spoofed |= f.spoofed;
        }
        if (has_spoofed) ++spoof_touched;

        bool delivered = true;
        for (std::size_t h = 1; h + 1 < path.size(); ++h) {
          int fi = index_of_.at(path[h]);
          int upstream = index_of_.at(path[h - 1]);
          double pd = nodes_[fi].malicious ? cfg_.drop_probability : cfg_.plr;
          bool dropped = u01(rng) < pd;
          bool watched = u01(rng) < cfg_.observe_probability;
          if (watched && trust_on)
            observe(upstream, fi, dropped ? Outcome::negative : Outcome::positive);
          if (dropped) { delivered = false; break; }
        }
        if (delivered) {
          ++m.delivered;
          if (!has_malicious) ++delivered_clean;
        }
      }
    }

    if (trust_on && cfg_.trust_scheme == TrustScheme::bootstrap &&
        cfg_.trust_mode == TrustMode::social_behavioral &&
        cfg_.social_refresh_period > 0 && round % cfg_.social_refresh_period == 0) {
      for (int i = 0; i < cfg_.node_count; ++i) {
        for (int j = 0; j < cfg_.node_count; ++j) {
          if (i != j)
            trust_[i][j].boot_value =
                social_refresh(trust_[i][j].boot_value, nodes_[j].social, cfg_.rho);
        }
      }
    }

    for (int j = 0; j < cfg_.node_count; ++j) {
      if (!nodes_[j].malicious) continue;
      for (int i = 0; i < cfg_.node_count; ++i) {
        if (i == j || nodes_[i].malicious) continue;
        if (current_trust(i, j) < cfg_.tau_t) { ++m.detected_malicious; break; }
      }
    }

    m.delivery_ratio = m.sent > 0 ? static_cast<double>(m.delivered) / m.sent : 0.0;
    m.throughput = static_cast<double>(m.delivered);
    m.avoid_probability =
        m.delivered > 0 ? static_cast<double>(delivered_clean) / m.delivered : 0.0;
    m.spoofed_fraction = m.sent > 0 ? static_cast<double>(spoof_touched) / m.sent : 0.0;
    result.total_sent += m.sent;
    result.total_delivered += m.delivered;
    result.rounds.push_back(m);
  }

  for (int i = 0; i < cfg_.node_count; ++i) {
    for (int j = 0; j < cfg_.node_count; ++j) {
      if (i == j) continue;
      TrustDumpEntry e;
      e.observer = nodes_[i].id;
      e.subject = nodes_[j].id;
      e.value = current_trust(i, j);
      e.observations = trust_[i][j].ev.observations();
      e.subject_malicious = nodes_[j].malicious;
      result.final_trust.push_back(std::move(e));
    }
  }
  return result;
}

double settled_mean(const SimResult& result, double (*pick)(const RoundMetrics&)) {
  if (result.rounds.empty()) return 0.0;
  std::size_t window = std::max<std::size_t>(1, result.rounds.size() / 5);
  double sum = 0.0;
  for (std::size_t i = result.rounds.size() - window; i < result.rounds.size(); ++i)
    sum += pick(result.rounds[i]);
  return sum / static_cast<double>(window);
}

}  // namespace

SimResult run_simulation(const ScenarioConfig& cfg) { return Simulation(cfg).run(); }

double settled_delivery(const SimResult& r) {
  return settled_mean(r, [](const RoundMetrics& m) { return m.delivery_ratio; });
}

double settled_throughput(const SimResult& r) {
  return settled_mean(r, [](const RoundMetrics& m) { return m.throughput; });
}

double settled_avoidance(const SimResult& r) {
  return settled_mean(r, [](const RoundMetrics& m) { return m.avoid_probability; });
}

std::string metrics_csv(const std::vector<RoundMetrics>& rounds) {
  std::ostringstream o;
  o << "round,sent,delivered,delivery_ratio,throughput,avoid_probability,"
       "detected_malicious,spoofed_fraction\n";
  for (const auto& m : rounds) {
    o << m.round << ',' << m.sent << ',' << m.delivered << ',' << fmt(m.delivery_ratio)
      << ',' << fmt(m.throughput) << ',' << fmt(m.avoid_probability) << ','
      << m.detected_malicious << ',' << fmt(m.spoofed_fraction) << '\n';
  }
  return o.str();
}

std::string trust_csv(const std::vector<TrustDumpEntry>& entries) {
  std::ostringstream o;
  o << "observer,subject,trust,observations\n";
  for (const auto& e : entries) {
    o << e.observer << ',' << e.subject << ',' << fmt(e.value) << ',' << e.observations
      << '\n';
  }
  return o.str();
}

SweepAxis sweep_axis_from_string(const std::string& name) {
  if (name == "speed") return SweepAxis::speed;
  if (name == "malicious") return SweepAxis::malicious;
  if (name == "tau_t" || name == "tau-t") return SweepAxis::tau_t;
  if (name == "mu") return SweepAxis::mu;
  throw std::invalid_argument("unknown sweep axis '" + name + "'");
}

std::string to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::speed: return "speed";
    case SweepAxis::malicious: return "malicious";
    case SweepAxis::tau_t: return "tau_t";
    case SweepAxis::mu: return "mu";
  }
  return "?";
}

namespace {

ScenarioConfig apply_axis(ScenarioConfig cfg, SweepAxis axis, double value) {
  switch (axis) {
    case SweepAxis::speed:
      cfg.speed_min = cfg.speed_max = value;
      cfg.mobility = value > 0.0 ? MobilityModel::random_waypoint : MobilityModel::static_nodes;
      break;
    case SweepAxis::malicious:
      cfg.malicious_count = static_cast<int>(std::lround(value));
      cfg.spoofed_count = std::min(cfg.spoofed_count, cfg.malicious_count);
      break;
    case SweepAxis::tau_t:
      cfg.tau_t = value;
      break;
    case SweepAxis::mu:
      cfg.mu = value;
      cfg.utility = UtilityKind::combined;
      break;
  }
  cfg.validate();
  return cfg;
}

struct ReplicateOutcome {
  double delivery, throughput, avoidance, detected;
};

ReplicateOutcome run_replicate(const ScenarioConfig& cfg) {
  SimResult r = run_simulation(cfg);
  ReplicateOutcome out;
  out.delivery = settled_delivery(r);
  out.throughput = settled_throughput(r);
  out.avoidance = settled_avoidance(r);
  out.detected = r.rounds.empty() ? 0.0 : r.rounds.back().detected_malicious;
  return out;
}

void mean_std(const std::vector<double>& xs, double& mean, double& sd) {
  mean = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
  double acc = 0.0;
  for (double x : xs) acc += (x - mean) * (x - mean);
  sd = xs.size() > 1 ? std::sqrt(acc / (xs.size() - 1)) : 0.0;
}

}  // namespace

std::vector<SweepRow> parameter_sweep(const ScenarioConfig& base, SweepAxis axis,
                                      const std::vector<double>& values, int seeds,
                                      int jobs) {
  if (seeds < 1) throw std::invalid_argument("sweep needs at least one seed");
  if (jobs < 1) jobs = 1;

  struct Task { std::size_t vi; int seed; ScenarioConfig cfg; };
  std::vector<Task> tasks;
  for (std::size_t vi = 0; vi < values.size(); ++vi) {
    ScenarioConfig cfg = apply_axis(base, axis, values[vi]);
    for (int s = 0; s < seeds; ++s) {
      Task t{vi, s, cfg};
      t.cfg.rng_seed = base.rng_seed + static_cast<std::uint64_t>(s);
      tasks.push_back(std::move(t));
    }
  }

  std::vector<ReplicateOutcome> outcomes(tasks.size());
  if (jobs == 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) outcomes[i] = run_replicate(tasks[i].cfg);
  } else {
    std::size_t next = 0;
    std::vector<std::pair<std::size_t, std::future<ReplicateOutcome>>> inflight;
    while (next < tasks.size() || !inflight.empty()) {
      while (next < tasks.size() && inflight.size() < static_cast<std::size_t>(jobs)) {
        const ScenarioConfig cfg = tasks[next].cfg;
        inflight.emplace_back(next, std::async(std::launch::async,
                                               [cfg] { return run_replicate(cfg); }));
        ++next;
      }
      auto [idx, fut] = std::move(inflight.front());
      inflight.erase(inflight.begin());
      outcomes[idx] = fut.get();
    }
  }

  std::vector<SweepRow> rows;
  for (std::size_t vi = 0; vi < values.size(); ++vi) {
    std::vector<double> del, thr, avd, det;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      if (tasks[i].vi != vi) continue;
      del.push_back(outcomes[i].delivery);
      thr.push_back(outcomes[i].throughput);
      avd.push_back(outcomes[i].avoidance);
      det.push_back(outcomes[i].detected);
    }
    SweepRow row;
    row.axis_value = values[vi];
    row.seeds = static_cast<int>(del.size());
    mean_std(del, row.mean_delivery, row.std_delivery);
    mean_std(thr, row.mean_throughput, row.std_throughput);
    mean_std(avd, row.mean_avoidance, row.std_avoidance);
    mean_std(det, row.mean_detected, row.std_detected);
    rows.push_back(row);
  }
  return rows;
}

std::string sweep_csv(SweepAxis axis, const std::vector<SweepRow>& rows) {
  std::ostringstream o;
  o << to_string(axis)
    << ",seeds,mean_delivery,std_delivery,mean_throughput,std_throughput,"
       "mean_avoidance,std_avoidance,mean_detected,std_detected\n";
  for (const auto& r : rows) {
    o << fmt(r.axis_value) << ',' << r.seeds << ',' << fmt(r.mean_delivery) << ','
      << fmt(r.std_delivery) << ',' << fmt(r.mean_throughput) << ',' << fmt(r.std_throughput)
      << ',' << fmt(r.mean_avoidance) << ',' << fmt(r.std_avoidance) << ','
      << fmt(r.mean_detected) << ',' << fmt(r.std_detected) << '\n';
  }
  return o.str();
}

}  // namespace trustflow
