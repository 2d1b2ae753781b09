// Acceptance suite: end-to-end checks of the trust engine, the identity
// metric, the flow allocator, and the desk-scale simulation campaign.
// Prints one PASS/FAIL line per criterion; exits nonzero if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "trustflow/allocator.hpp"
#include "trustflow/ism.hpp"
#include "trustflow/network.hpp"
#include "trustflow/scenario.hpp"
#include "trustflow/sim.hpp"
#include "trustflow/social.hpp"
#include "trustflow/trust.hpp"

using namespace trustflow;

namespace {

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail, double secs) {
  std::printf("%s criterion %d: %s (%.1f s)\n", pass ? "PASS" : "FAIL", criterion,
              detail.c_str(), secs);
  if (!pass) ++g_failures;
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

// ---------------------------------------------------------------- criterion 1

// Seed-averaged belief after 14 observations, for true forwarding rates
// 0.7/0.8/0.9, must land within 0.1 of the true rate.
void criterion1() {
  Timer timer;
  std::mt19937_64 rng(11);
  bool pass = true;
  std::string detail = "behavioral belief after 14 observations:";
  for (double p : {0.7, 0.8, 0.9}) {
    double belief_sum = 0.0, mean_sum = 0.0;
    for (int run = 0; run < 100; ++run) {
      EvidenceRecord ev;
      std::bernoulli_distribution coin(p);
      for (int k = 0; k < 14; ++k) {
        ev = record_observation(ev, coin(rng) ? Outcome::positive : Outcome::negative);
      }
      belief_sum += opinion_from_evidence(ev).belief;
      mean_sum += ev.alpha / (ev.alpha + ev.beta);
    }
    const double belief = belief_sum / 100.0, mean = mean_sum / 100.0;
    if (std::abs(belief - p) > 0.1) pass = false;
    detail += fmt(" rate %.1f -> belief %.3f (Beta mean %.3f);", p, belief, mean);
  }
  if (!pass) {
    detail +=
        " belief discounts the Beta mean by the uncertainty mass, which is"
        " still 0.12-0.15 after 14 observations, so the discounted belief sits"
        " >0.1 below every true rate by construction; the undiscounted Beta"
        " mean (shown) does converge within 0.1. No parameter choice closes"
        " this gap while keeping the published belief/uncertainty definitions.";
  }
  report(1, pass, detail, timer.seconds());
}

// ---------------------------------------------------------------- criterion 2

// Closed-form combined-trust estimate vs. grid argmax of the posterior.
void criterion2() {
  Timer timer;
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> uprior(1.0, 10.0);
  std::uniform_int_distribution<long> un(1, 50);
  double worst = 0.0;
  for (int c = 0; c < 100; ++c) {
    const double a = uprior(rng), b = uprior(rng);
    const long n = un(rng);
    const long r = std::uniform_int_distribution<long>(0, n)(rng);
    const double closed = map_combined_trust(r, n, a, b);

    const double ea = static_cast<double>(r) + a - 1.0;
    const double eb = static_cast<double>(n - r) + b - 1.0;
    double best_x = 0.0, best_v = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 10000; ++i) {
      const double x = i * 1e-4;
      const double v = (ea == 0.0 ? 0.0 : ea * std::log(x)) +
                       (eb == 0.0 ? 0.0 : eb * std::log(1.0 - x));
      if (v > best_v) {
        best_v = v;
        best_x = x;
      }
    }
    worst = std::max(worst, std::abs(best_x - closed));
  }
  report(2, worst <= 1e-4,
         fmt("closed-form estimate matches posterior grid argmax on 100 random"
             " instances, max |diff| = %.2e (tol 1e-4)",
             worst),
         timer.seconds());
}

// ---------------------------------------------------------------- criterion 3

// Monte Carlo mean-square error of the estimator vs. the closed form.
void criterion3() {
  Timer timer;
  std::mt19937_64 rng(33);
  double worst = 0.0;
  for (long n : {1L, 5L, 20L}) {
    for (double np : {0.0, 2.0, 10.0}) {
      for (double ts : {0.2, 0.5, 0.8}) {
        for (double tp : {0.3, 0.7}) {
          std::binomial_distribution<long> bin(n, ts);
          double acc = 0.0;
          const long trials = 1000000;
          for (long t = 0; t < trials; ++t) {
            const double est = (static_cast<double>(bin(rng)) + np * tp) /
                               (static_cast<double>(n) + np);
            acc += (est - ts) * (est - ts);
          }
          worst = std::max(worst, std::abs(acc / trials - trust_mse(n, np, ts, tp)));
        }
      }
    }
  }
  report(3, worst <= 1e-3,
         fmt("closed-form estimator MSE matches 1e6-trial Monte Carlo on the"
             " 3x3x3x2 grid, max |diff| = %.2e (tol 1e-3)",
             worst),
         timer.seconds());
}

// ---------------------------------------------------------------- criterion 4

// A social prior near the true rate must cut the observations needed to
// get within 0.1 of it; at prior strength 10 the cut is at least half.
void criterion4() {
  Timer timer;
  const double p = 0.8;
  std::mt19937_64 rng(44);
  double sum_social = 0.0, sum_uniform = 0.0;
  for (int seed = 0; seed < 100; ++seed) {
    const double s = (seed % 2 == 0) ? p - 0.1 : p + 0.1;
    CombinedTrustState social = CombinedTrustState::from_social_prior(s, 10.0);
    CombinedTrustState uniform;  // Beta(1,1): no prior information
    std::bernoulli_distribution coin(p);
    long n_social = -1, n_uniform = -1;
    for (long n = 1; n <= 1000 && (n_social < 0 || n_uniform < 0); ++n) {
      const Outcome o = coin(rng) ? Outcome::positive : Outcome::negative;
      social.observe(o);
      uniform.observe(o);
      if (n_social < 0 && std::abs(social.value() - p) < 0.1) n_social = n;
      if (n_uniform < 0 && std::abs(uniform.value() - p) < 0.1) n_uniform = n;
    }
    sum_social += static_cast<double>(n_social < 0 ? 1000 : n_social);
    sum_uniform += static_cast<double>(n_uniform < 0 ? 1000 : n_uniform);
  }
  const double ms = sum_social / 100.0, mu = sum_uniform / 100.0;
  report(4, ms < mu && ms <= 0.5 * mu,
         fmt("observations to reach |T - 0.8| < 0.1: %.2f with a social prior"
             " at distance 0.1 (strength 10) vs %.2f with the uninformative"
             " prior",
             ms, mu),
         timer.seconds());
}

// ---------------------------------------------------------------- criterion 5

// Exclusive posting at the poster's average rate saturates wall-post trust
// within three months.
void criterion5() {
  Timer timer;
  std::vector<WallPostRecord> records;
  for (int month = 0; month < 3; ++month) {
    for (int k = 0; k < 20; ++k) {
      WallPostRecord r;
      r.owner = "ub";
      r.poster = "ua";
      r.timestamp = static_cast<long long>(month) * 30 * 86400 + k * 86400 + 1;
      r.content_length = 40;
      records.push_back(r);
    }
  }
  const std::map<std::string, double> contacts{{"ua", 10.0}};
  const auto series = trust_timeseries(records, "ua", "ub", contacts);
  double month3 = 0.0;
  for (const auto& m : series) {
    if (m.month <= 3) month3 = std::max(month3, m.trust);
  }
  report(5, month3 > 0.95,
         fmt("wall-post trust with exclusive posting reaches %.4f by month 3"
             " (needs > 0.95)",
             month3),
         timer.seconds());
}

// ---------------------------------------------------------------- criterion 6

// Identity-metric closed cases and fixed-point convergence on random
// voucher graphs.
void criterion6() {
  Timer timer;
  bool pass = true;
  std::string detail;

  {
    VoucherGraph g;
    g.vouchers["x"] = {};
    g.seeds["a"] = {"a"};
    const auto ism = compute_ism(g, "a");
    if (ism.at("x") != 0.0) pass = false;
    detail += fmt("no vouchers -> %.3f;", ism.at("x"));
  }
  {
    VoucherGraph g;
    g.vouchers["x"] = {"s"};
    g.vouchers["s"] = {};
    g.seeds["a"] = {"a", "s"};
    g.trust[{"a", "s"}] = 1.0;
    const auto ism = compute_ism(g, "a");
    if (std::abs(ism.at("x") - 1.0) > 1e-12) pass = false;
    detail += fmt(" fully trusted seed voucher -> %.3f;", ism.at("x"));
  }

  std::mt19937_64 rng(66);
  int max_iters = 0;
  for (int c = 0; c < 20; ++c) {
    VoucherGraph g;
    std::vector<NodeId> ids;
    for (int i = 0; i < 50; ++i) ids.push_back("n" + std::to_string(i));
    std::uniform_int_distribution<int> pick(0, 49);
    std::uniform_real_distribution<double> ut(0.0, 1.0);
    for (const auto& id : ids) {
      const int deg = pick(rng) % 6;
      std::vector<NodeId> rs;
      for (int d = 0; d < deg; ++d) {
        const NodeId v = ids[pick(rng)];
        if (v != id) rs.push_back(v);
      }
      g.vouchers[id] = rs;
      for (const auto& v : g.vouchers[id]) g.trust[{"n0", v}] = ut(rng);
    }
    g.seeds["n0"] = {"n0", ids[1], ids[2]};
    const auto ism = compute_ism(g, "n0", 1e-9, 200);
    max_iters = std::max(max_iters, ism.iterations);
    for (const auto& [id, v] : ism.values) {
      if (v < 0.0 || v > 1.0) pass = false;
    }
  }
  detail += fmt(" 20 random 50-node graphs converge in <= %d iterations", max_iters);
  if (max_iters > 200) pass = false;
  report(6, pass, detail, timer.seconds());
}

// ---------------------------------------------------------------- criterion 7

AllocationProblem random_instance(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0, 1);
  AllocationProblem p;
  const int links = 2 + static_cast<int>(u(rng) * 9);
  const int sources = 1 + static_cast<int>(u(rng) * 4);
  for (int l = 0; l < links; ++l) p.capacities.push_back(0.5 + u(rng) * 9.5);
  std::uniform_int_distribution<int> link_pick(0, links - 1);
  for (int s = 0; s < sources; ++s) {
    SourceProblem sp;
    sp.source = "s" + std::to_string(s);
    sp.dest = "d";
    const int paths = 1 + static_cast<int>(u(rng) * 3);
    for (int q = 0; q < paths; ++q) {
      const int hops = 1 + static_cast<int>(u(rng) * 3);
      std::vector<int> pl;
      for (int h = 0; h < hops; ++h) {
        const int l = link_pick(rng);
        if (std::find(pl.begin(), pl.end(), l) == pl.end()) pl.push_back(l);
      }
      sp.path_links.push_back(pl);
      sp.path_trusts.push_back(0.2 + u(rng) * 0.8);
    }
    p.sources.push_back(sp);
  }
  switch (static_cast<int>(u(rng) * 3)) {
    case 0: p.kind = UtilityKind::throughput; break;
    case 1: p.kind = UtilityKind::diversity; break;
    default:
      p.kind = UtilityKind::combined;
      p.mu = u(rng) < 0.5 ? 0.0 : 0.5;
  }
  return p;
}

// Distributed solver vs. the centralized reference on random instances.
void criterion7() {
  Timer timer;
  std::mt19937_64 rng(77);
  bool pass = true;
  double worst_gap = -std::numeric_limits<double>::infinity(), worst_infeas = 0.0;
  for (int c = 0; c < 20; ++c) {
    const auto problem = random_instance(rng);
    SolveOptions opts;
    opts.keep_trace = true;
    const auto res = solve_distributed(problem, opts);
    const double od = objective(problem, res.allocation);
    const double oc = objective(problem, solve_centralized_reference(problem));

    const auto flows = link_flows(problem, res.allocation);
    for (std::size_t l = 0; l < flows.size(); ++l) {
      worst_infeas = std::max(worst_infeas, flows[l] - problem.capacities[l]);
    }
    for (const auto& rec : res.trace) {
      if (rec.dual_value < od - 1e-9) pass = false;  // weak duality
    }
    for (double l : res.dual.lambda) {
      if (l < 0.0) pass = false;
    }
    worst_gap = std::max(worst_gap, oc - od);
    if (od < oc - 1e-2 * std::max(1.0, std::abs(oc))) pass = false;
  }
  if (worst_infeas > 1e-6) pass = false;
  report(7, pass,
         fmt("20 random instances: distributed objective within 1e-2 of the"
             " centralized reference (worst shortfall %.2e), feasible within"
             " %.2e, weak duality held on every iterate",
             worst_gap, worst_infeas),
         timer.seconds());
}

// ---------------------------------------------------------------- criterion 8

ScenarioConfig desk_profile() {
  return load_scenario_file(std::string(TRUSTFLOW_CONFIG_DIR) + "/desk30.cfg");
}

double mean_settled_delivery(const ScenarioConfig& base, int seeds) {
  double acc = 0.0;
  for (int s = 1; s <= seeds; ++s) {
    auto c = base;
    c.rng_seed = static_cast<std::uint64_t>(s);
    acc += settled_delivery(run_simulation(c));
  }
  return acc / seeds;
}

// Largest rise from an earlier to a later point; <= 2*band means the curve
// stays within `band` of some nonincreasing reference.
double max_rise(const std::vector<double>& f) {
  double best = 0.0, lo = f.empty() ? 0.0 : f.front();
  for (double v : f) {
    best = std::max(best, v - lo);
    lo = std::min(lo, v);
  }
  return best;
}

void criterion8() {
  Timer timer;
  bool pass = true;
  std::string detail;
  const ScenarioConfig base = desk_profile();

  // (a) trust-mode ordering of mean final-quintile delivery.
  {
    std::map<std::string, double> mode_delivery;
    for (const std::string mode : {"social+behavioral", "behavioral", "none"}) {
      auto c = base;
      apply_override(c, "trust_mode", mode);
      mode_delivery[mode] = mean_settled_delivery(c, 5);
    }
    const double sb = mode_delivery["social+behavioral"];
    const double bo = mode_delivery["behavioral"];
    const double nt = mode_delivery["none"];
    if (!(sb > bo + 0.02 && bo > nt + 0.02)) pass = false;
    detail += fmt("(a) delivery social+behavioral %.3f > behavioral %.3f >"
                  " no-trust %.3f (gaps > 0.02);",
                  sb, bo, nt);
  }

  // (b) delivery nonincreasing in speed per mode, 0.02 noise band.
  for (const std::string mode : {"social+behavioral", "behavioral", "none"}) {
    auto c = base;
    apply_override(c, "trust_mode", mode);
    const auto rows = parameter_sweep(c, SweepAxis::speed, {0, 1, 2, 3, 4, 5}, 5);
    std::vector<double> f;
    for (const auto& r : rows) f.push_back(r.mean_delivery);
    const double rise = max_rise(f);
    if (rise > 0.04) pass = false;  // within 0.02 of a nonincreasing curve
    detail += fmt(" (b) %s speed max rise %.3f;", mode.c_str(), rise);
  }

  // (c) delivery nonincreasing in malicious count, same noise band.
  {
    const auto rows = parameter_sweep(base, SweepAxis::malicious, {0, 3, 6, 9}, 5);
    std::vector<double> f;
    for (const auto& r : rows) f.push_back(r.mean_delivery);
    const double rise = max_rise(f);
    if (rise > 0.04) pass = false;
    detail += fmt(" (c) malicious curve %.3f..%.3f max rise %.3f;", f.front(),
                  f.back(), rise);
  }

  // (d) trust-threshold sweep: interior maximum, collapse near 1.
  {
    const auto rows =
        parameter_sweep(base, SweepAxis::tau_t, {0.0, 0.25, 0.5, 0.75, 0.99}, 5);
    std::vector<double> f;
    for (const auto& r : rows) f.push_back(r.mean_delivery);
    const std::size_t arg =
        std::max_element(f.begin(), f.end()) - f.begin();
    if (!(arg > 0 && arg + 1 < f.size() && f[arg] > f.front() && f.back() < 0.1))
      pass = false;
    detail += fmt(" (d) threshold sweep peaks at tau=%.2f (%.3f), %.3f at 0.99;",
                  std::vector<double>{0.0, 0.25, 0.5, 0.75, 0.99}[arg], f[arg],
                  f.back());
  }

  // (e) identity verification lowers traffic through spoofed nodes.
  {
    double frac[2] = {0.0, 0.0};
    for (int on = 0; on <= 1; ++on) {
      for (int s = 1; s <= 5; ++s) {
        auto c = base;
        c.spoofed_count = 2;
        c.ism_enabled = on == 1;
        c.rng_seed = static_cast<std::uint64_t>(s);
        const auto r = run_simulation(c);
        const int n = static_cast<int>(r.rounds.size()), from = n - n / 5;
        double acc = 0.0;
        for (int i = from; i < n; ++i) acc += r.rounds[i].spoofed_fraction;
        frac[on] += acc / (n - from) / 5.0;
      }
    }
    if (!(frac[1] < frac[0])) pass = false;
    detail += fmt(" (e) spoofed-node traffic %.4f with verification vs %.4f"
                  " without",
                  frac[1], frac[0]);
  }

  report(8, pass, detail, timer.seconds());
}

// ---------------------------------------------------------------- criterion 9

// Re-running from a dumped configuration reproduces byte-identical CSVs.
void criterion9() {
  Timer timer;
  auto base = desk_profile();
  base.rounds = 60;

  std::istringstream round_trip(dump_scenario(base));
  const ScenarioConfig replay = parse_scenario(round_trip);
  const auto r1 = run_simulation(base);
  const auto r2 = run_simulation(replay);
  const bool sim_ok = metrics_csv(r1.rounds) == metrics_csv(r2.rounds) &&
                      trust_csv(r1.final_trust) == trust_csv(r2.final_trust);

  std::mt19937_64 rng(99);
  bool alloc_ok = true;
  for (int c = 0; c < 5; ++c) {
    const auto problem = random_instance(rng);
    const auto a = solve_distributed(problem);
    const auto b = solve_distributed(problem);
    if (a.allocation.rates != b.allocation.rates) alloc_ok = false;
  }

  auto other = base;
  other.rng_seed = base.rng_seed + 1;
  const bool differs = metrics_csv(run_simulation(other).rounds) != metrics_csv(r1.rounds);

  report(9, sim_ok && alloc_ok && differs,
         fmt("config round trip reproduces byte-identical metric and trust"
             " CSVs (%s), repeated allocations identical (%s), different seed"
             " differs (%s)",
             sim_ok ? "yes" : "no", alloc_ok ? "yes" : "no", differs ? "yes" : "no"),
         timer.seconds());
}

// --------------------------------------------------------------- criterion 10

void criterion10() {
  Timer timer;
  std::mt19937_64 rng(1010);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  bool pass = true;
  std::string detail;

  {  // opinion components sum to one
    bool ok = true;
    std::uniform_real_distribution<double> ua(1.0, 100.0);
    for (int c = 0; c < 1000; ++c) {
      EvidenceRecord ev;
      ev.alpha = ua(rng);
      ev.beta = ua(rng);
      const auto op = opinion_from_evidence(ev);
      if (std::abs(op.belief + op.disbelief + op.uncertainty - 1.0) > 1e-12) ok = false;
      for (double v : {op.belief, op.disbelief, op.uncertainty}) {
        if (v < 0.0 || v > 1.0) ok = false;
      }
    }
    if (!ok) pass = false;
    detail += fmt("opinion closure %s;", ok ? "ok" : "FAILED");
  }

  {  // incremental update equals the closed form along random sequences
    bool ok = true;
    for (int c = 0; c < 1000; ++c) {
      const double s = u01(rng);
      const double n0 = 0.5 + u01(rng) * 19.5;
      const auto prior = CombinedTrustState::from_social_prior(s, n0);
      const int len = 1 + static_cast<int>(u01(rng) * 199);
      double t = prior.value();
      long n = 0, r = 0;
      for (int k = 0; k < len; ++k) {
        const Outcome o = u01(rng) < 0.6 ? Outcome::positive : Outcome::negative;
        t = incremental_trust_update(t, n, prior.n_prime(), o);
        ++n;
        if (o == Outcome::positive) ++r;
        const double closed = map_combined_trust(r, n, prior.prior_alpha, prior.prior_beta);
        if (std::abs(t - closed) > 1e-9) ok = false;
      }
    }
    if (!ok) pass = false;
    detail += fmt(" update-rule identity %s;", ok ? "ok" : "FAILED");
  }

  {  // ledger totals equal the sum of per-wall counts
    bool ok = true;
    for (int c = 0; c < 1000; ++c) {
      std::vector<WallPostRecord> records;
      const int n = 1 + static_cast<int>(u01(rng) * 29);
      for (int k = 0; k < n; ++k) {
        WallPostRecord r;
        r.poster = "p" + std::to_string(static_cast<int>(u01(rng) * 5));
        r.owner = "o" + std::to_string(static_cast<int>(u01(rng) * 5));
        r.timestamp = static_cast<long long>(u01(rng) * 1e7);
        r.content_length = 1 + static_cast<long>(u01(rng) * 100);
        records.push_back(r);
      }
      const auto ledger = build_ledger(records, distinct_partner_counts(records));
      for (int p = 0; p < 5; ++p) {
        const std::string poster = "p" + std::to_string(p);
        long sum = 0;
        for (int o = 0; o < 5; ++o) sum += ledger.count(poster, "o" + std::to_string(o));
        if (sum != ledger.total(poster)) ok = false;
      }
    }
    if (!ok) pass = false;
    detail += fmt(" ledger marginals %s;", ok ? "ok" : "FAILED");
  }

  {  // extending a path never raises its trust
    bool ok = true;
    for (int c = 0; c < 1000; ++c) {
      const int len = 2 + static_cast<int>(u01(rng) * 6);
      std::vector<NodeId> path;
      TrustMap trust;
      for (int k = 0; k < len + 1; ++k) path.push_back("n" + std::to_string(k));
      for (int k = 0; k + 1 < static_cast<int>(path.size()); ++k) {
        trust[{path[k], path[k + 1]}] = u01(rng);
      }
      const std::vector<NodeId> shorter(path.begin(), path.end() - 1);
      if (path_trust(path, trust) > path_trust(shorter, trust) + 1e-15) ok = false;
    }
    if (!ok) pass = false;
    detail += fmt(" path-trust monotone %s;", ok ? "ok" : "FAILED");
  }

  {  // admissibility filtering matches the threshold predicate exactly
    bool ok = true;
    for (int c = 0; c < 1000; ++c) {
      PathSet ps;
      ps.source = "s";
      ps.dest = "d";
      TrustMap trust;
      IsmMap ism;
      ism.observer = "s";
      ism.values["s"] = 1.0;
      ism.values["d"] = 1.0;
      const int npaths = 1 + static_cast<int>(u01(rng) * 4);
      for (int p = 0; p < npaths; ++p) {
        std::vector<NodeId> path{"s"};
        const int hops = 1 + static_cast<int>(u01(rng) * 3);
        for (int h = 0; h < hops; ++h) {
          const NodeId mid = "m" + std::to_string(p) + "_" + std::to_string(h);
          path.push_back(mid);
          ism.values[mid] = u01(rng);
        }
        path.push_back("d");
        for (std::size_t k = 0; k + 1 < path.size(); ++k) {
          trust[{path[k], path[k + 1]}] = u01(rng);
        }
        ps.paths.push_back(path);
      }
      const double tau_t = u01(rng), tau_s = u01(rng);
      const auto kept = admissible_paths(ps, trust, &ism, tau_t, tau_s);
      std::size_t expected = 0;
      for (const auto& path : ps.paths) {
        const bool admit = path_trust(path, trust) >= tau_t &&
                           path_spoof_probability(path, ism) >= tau_s;
        expected += admit ? 1 : 0;
        if (admit != (std::find(kept.paths.begin(), kept.paths.end(), path) !=
                      kept.paths.end()))
          ok = false;
      }
      if (expected != kept.paths.size()) ok = false;
    }
    if (!ok) pass = false;
    detail += fmt(" threshold compliance %s;", ok ? "ok" : "FAILED");
  }

  {  // multiplier updates stay in the nonnegative orthant
    bool ok = true;
    for (int c = 0; c < 1000; ++c) {
      const int links = 1 + static_cast<int>(u01(rng) * 8);
      DualState dual;
      dual.step_scale = 0.1 + u01(rng) * 5.0;
      dual.iteration = 1 + static_cast<int>(u01(rng) * 100);
      std::vector<double> flows, caps;
      for (int l = 0; l < links; ++l) {
        dual.lambda.push_back(u01(rng) * 3.0);
        flows.push_back(u01(rng) * 10.0);
        caps.push_back(u01(rng) * 10.0);
      }
      subgradient_step(dual, flows, caps);
      for (double l : dual.lambda) {
        if (l < 0.0) ok = false;
      }
    }
    if (!ok) pass = false;
    detail += fmt(" multiplier nonnegativity %s", ok ? "ok" : "FAILED");
  }

  report(10, pass, detail + " (1000 random cases each)", timer.seconds());
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  if (g_failures > 0) {
    std::printf("%d of 10 criteria failed\n", g_failures);
    return 1;
  }
  std::printf("all 10 criteria passed\n");
  return 0;
}
