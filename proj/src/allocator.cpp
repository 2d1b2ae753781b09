#include "trustflow/allocator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace trustflow {

namespace {

double xlogx_over_t(double r, double t) {
  // -(r/t) log(r/t) with the continuous extension at r = 0.
  if (r == 0.0) return 0.0;
  if (t <= 0.0) {
    throw std::domain_error("diversity utility: positive rate on a zero-trust path");
  }
  const double z = r / t;
  return -z * std::log(z);
}

}  // namespace

double utility_throughput(const std::vector<double>& rates) {
  double u = 0.0;
  for (double r : rates) {
    if (r < 0.0) throw std::domain_error("utility_throughput: negative rate");
    u += std::log1p(r);
  }
  return u;
}

double utility_diversity(const std::vector<double>& rates,
                         const std::vector<double>& trusts) {
  if (rates.size() != trusts.size()) {
    throw std::invalid_argument("utility_diversity: size mismatch");
  }
  double u = 0.0;
  for (std::size_t i = 0; i < rates.size(); ++i) {
    if (rates[i] < 0.0) throw std::domain_error("utility_diversity: negative rate");
    u += xlogx_over_t(rates[i], trusts[i]);
  }
  return u;
}

double source_utility(const SourceProblem& src, const std::vector<double>& rates,
                      UtilityKind kind, double mu) {
  switch (kind) {
    case UtilityKind::throughput:
      return utility_throughput(rates);
    case UtilityKind::diversity:
      return utility_diversity(rates, src.path_trusts);
    case UtilityKind::combined:
      return utility_throughput(rates) + mu * utility_diversity(rates, src.path_trusts);
  }
  return 0.0;
}

double objective(const AllocationProblem& problem, const FlowAllocation& alloc) {
  double u = 0.0;
  for (std::size_t s = 0; s < problem.sources.size(); ++s) {
    u += source_utility(problem.sources[s], alloc.rates[s], problem.kind, problem.mu);
  }
  return u;
}

double FlowAllocation::source_rate(std::size_t s) const {
  return std::accumulate(rates[s].begin(), rates[s].end(), 0.0);
}

double FlowAllocation::total_rate() const {
  double sum = 0.0;
  for (std::size_t s = 0; s < rates.size(); ++s) sum += source_rate(s);
  return sum;
}

double default_rate_cap(const AllocationProblem& problem) {
  const double total =
      std::accumulate(problem.capacities.begin(), problem.capacities.end(), 0.0);
  return 10.0 * total;
}

namespace {

// Root of the strictly decreasing derivative of the combined per-path
// objective log(1+r) + mu * (-(r/t) log(r/t)) - q r.
double combined_best_rate(double t, double q, double mu, double cap) {
  auto deriv = [&](double r) {
    return 1.0 / (1.0 + r) - (mu / t) * (std::log(r / t) + 1.0) - q;
  };
  if (cap <= 0.0) return 0.0;
  if (deriv(cap) >= 0.0) return cap;
  // deriv -> +inf as r -> 0+, so the root is bracketed by construction.
  double lo = t * std::exp(-2.0 - q * t / mu);
  lo = std::min(lo, cap * 0.5);
  double hi = cap;
  for (int i = 0; i < 200 && hi - lo > 1e-10 * std::max(1.0, hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    (deriv(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> per_source_best_response(const SourceProblem& src,
                                             const std::vector<double>& q,
                                             UtilityKind kind, double mu,
                                             double rate_cap) {
  if (q.size() != src.path_links.size()) {
    throw std::invalid_argument("best_response: multiplier size mismatch");
  }
  std::vector<double> rates(q.size(), 0.0);
  for (std::size_t p = 0; p < q.size(); ++p) {
    const double qp = std::max(q[p], 0.0);
    const double t = src.path_trusts[p];
    double r = 0.0;
    if (kind == UtilityKind::throughput || (kind == UtilityKind::combined && mu == 0.0)) {
      r = qp <= 0.0 ? rate_cap : std::clamp(1.0 / qp - 1.0, 0.0, rate_cap);
    } else if (kind == UtilityKind::diversity) {
      r = std::min(t * std::exp(-(1.0 + qp * t)), rate_cap);
    } else {
      r = combined_best_rate(t, qp, mu, rate_cap);
    }
    rates[p] = r;
  }
  return rates;
}

std::vector<double> link_flows(const AllocationProblem& problem,
                               const FlowAllocation& alloc) {
  std::vector<double> flows(problem.capacities.size(), 0.0);
  for (std::size_t s = 0; s < problem.sources.size(); ++s) {
    const auto& src = problem.sources[s];
    for (std::size_t p = 0; p < src.path_links.size(); ++p) {
      for (int l : src.path_links[p]) flows[l] += alloc.rates[s][p];
    }
  }
  return flows;
}

void subgradient_step(DualState& dual, const std::vector<double>& flows,
                      const std::vector<double>& capacities) {
  if (dual.iteration < 1) throw std::invalid_argument("subgradient_step: iteration < 1");
  const double step = dual.step_scale / static_cast<double>(dual.iteration);
  for (std::size_t l = 0; l < dual.lambda.size(); ++l) {
    dual.lambda[l] =
        std::max(0.0, dual.lambda[l] - step * (capacities[l] - flows[l]));
  }
  ++dual.iteration;
}

void repair_feasibility(const AllocationProblem& problem, FlowAllocation& alloc,
                        double tol) {
  const std::size_t link_count = problem.capacities.size();
  for (std::size_t pass = 0; pass <= link_count + 1; ++pass) {
    const auto flows = link_flows(problem, alloc);
    int worst = -1;
    double worst_excess = tol;
    for (std::size_t l = 0; l < link_count; ++l) {
      const double excess = flows[l] - problem.capacities[l];
      if (excess > worst_excess) {
        worst_excess = excess;
        worst = static_cast<int>(l);
      }
    }
    if (worst < 0) return;
    const double scale =
        flows[worst] > 0.0 ? problem.capacities[worst] / flows[worst] : 0.0;
    for (std::size_t s = 0; s < problem.sources.size(); ++s) {
      const auto& src = problem.sources[s];
      for (std::size_t p = 0; p < src.path_links.size(); ++p) {
        const auto& links = src.path_links[p];
        if (std::find(links.begin(), links.end(), worst) != links.end()) {
          alloc.rates[s][p] *= scale;
        }
      }
    }
  }
}

namespace {

FlowAllocation zero_allocation(const AllocationProblem& problem) {
  FlowAllocation alloc;
  alloc.rates.resize(problem.sources.size());
  for (std::size_t s = 0; s < problem.sources.size(); ++s) {
    alloc.rates[s].assign(problem.sources[s].path_links.size(), 0.0);
  }
  return alloc;
}

std::size_t total_paths(const AllocationProblem& problem) {
  std::size_t n = 0;
  for (const auto& s : problem.sources) n += s.path_links.size();
  return n;
}

double polish_sweep(const AllocationProblem& problem, FlowAllocation& alloc,
                    double cap);
std::vector<double> path_gradient(const SourceProblem& src,
                                  const std::vector<double>& rates, UtilityKind kind,
                                  double mu);

}  // namespace

SolveResult solve_distributed(const AllocationProblem& problem, const SolveOptions& opts) {
  SolveResult result;
  result.allocation = zero_allocation(problem);
  // Start multipliers at the marginal-utility scale of each link rather than
  // zero: a zero start makes every best response hit the rate cap, and the
  // diminishing 1/t steps recover from that overshoot only logarithmically.
  result.dual.lambda.resize(problem.capacities.size());
  for (std::size_t l = 0; l < problem.capacities.size(); ++l) {
    result.dual.lambda[l] = 1.0 / std::max(problem.capacities[l], 1e-9);
  }
  result.dual.step_scale = opts.t0;
  result.dual.iteration = 1;
  if (total_paths(problem) == 0) {
    result.converged = true;
    return result;
  }
  const double cap = opts.rate_cap > 0.0 ? opts.rate_cap : default_rate_cap(problem);

  FlowAllocation best = result.allocation;
  double best_obj = objective(problem, best);
  FlowAllocation avg = zero_allocation(problem);
  long avg_count = 0;

  FlowAllocation current = zero_allocation(problem);
  double best_dual = std::numeric_limits<double>::infinity();
  for (long t = 1; t <= opts.max_iter; ++t) {
    double dual_value = 0.0;
    for (std::size_t s = 0; s < problem.sources.size(); ++s) {
      const auto& src = problem.sources[s];
      std::vector<double> q(src.path_links.size(), 0.0);
      for (std::size_t p = 0; p < q.size(); ++p) {
        for (int l : src.path_links[p]) q[p] += result.dual.lambda[l];
      }
      current.rates[s] = per_source_best_response(src, q, problem.kind, problem.mu, cap);
      dual_value += source_utility(src, current.rates[s], problem.kind, problem.mu);
      for (std::size_t p = 0; p < q.size(); ++p) {
        dual_value -= q[p] * current.rates[s][p];
      }
    }
    for (std::size_t l = 0; l < problem.capacities.size(); ++l) {
      dual_value += result.dual.lambda[l] * problem.capacities[l];
    }

    const auto flows = link_flows(problem, current);
    double residual = 0.0;
    for (std::size_t l = 0; l < flows.size(); ++l) {
      residual = std::max(residual, flows[l] - problem.capacities[l]);
    }
    residual = std::max(residual, 0.0);

    result.dual.dual_value = dual_value;
    result.dual.primal_residual = residual;
    if (opts.keep_trace) result.trace.push_back({t, dual_value, residual});

    FlowAllocation repaired = current;
    repair_feasibility(problem, repaired);
    const double obj = objective(problem, repaired);
    if (obj > best_obj) {
      best_obj = obj;
      best = repaired;
    }
    if (t > opts.max_iter / 2) {
      for (std::size_t s = 0; s < avg.rates.size(); ++s) {
        for (std::size_t p = 0; p < avg.rates[s].size(); ++p) {
          avg.rates[s][p] += current.rates[s][p];
        }
      }
      ++avg_count;
    }

    // the duality gap between the best dual bound and the best feasible
    // primal certifies optimality; dual-value stalls do not
    best_dual = std::min(best_dual, dual_value);
    if (residual < opts.tol &&
        best_dual - best_obj <= opts.tol * std::max(1.0, std::abs(best_dual))) {
      result.converged = true;
      break;
    }
    subgradient_step(result.dual, flows, problem.capacities);
  }

  if (avg_count > 0) {
    for (auto& per_source : avg.rates) {
      for (auto& r : per_source) r /= static_cast<double>(avg_count);
    }
    repair_feasibility(problem, avg);
    const double obj = objective(problem, avg);
    if (obj > best_obj) {
      best_obj = obj;
      best = avg;
    }
  }
  // Recovery refinement: the averaged/repaired subgradient iterate can
  // plateau a few percent below the optimum. Ascend from the best feasible
  // point with a short projected-gradient run (which can move coupled rates
  // jointly) followed by coordinate sweeps, keeping the best point found.
  {
    FlowAllocation refined = best;
    FlowAllocation iterate = best;
    double refined_obj = best_obj;
    long last_gain = 0;
    for (long t = 1; t <= 2000; ++t) {
      if (t - last_gain > 100) break;  // ascent has stalled
      const double step = 0.25 / std::sqrt(static_cast<double>(t));
      for (std::size_t s = 0; s < problem.sources.size(); ++s) {
        const auto grad =
            path_gradient(problem.sources[s], iterate.rates[s], problem.kind, problem.mu);
        for (std::size_t p = 0; p < grad.size(); ++p) {
          iterate.rates[s][p] = std::clamp(iterate.rates[s][p] + step * grad[p], 0.0, cap);
        }
      }
      repair_feasibility(problem, iterate);
      const double obj = objective(problem, iterate);
      if (obj > refined_obj + 1e-10 * std::max(1.0, std::abs(refined_obj))) {
        refined_obj = obj;
        refined = iterate;
        last_gain = t;
      } else if (obj > refined_obj) {
        refined_obj = obj;
        refined = iterate;
      }
    }
    for (int sweep = 0; sweep < 200; ++sweep) {
      if (polish_sweep(problem, refined, cap) < opts.tol * 1e-3) break;
    }
    repair_feasibility(problem, refined);
    if (objective(problem, refined) > best_obj) best = refined;
  }
  result.allocation = best;
  return result;
}

namespace {

std::vector<double> path_gradient(const SourceProblem& src,
                                  const std::vector<double>& rates, UtilityKind kind,
                                  double mu) {
  std::vector<double> grad(rates.size(), 0.0);
  for (std::size_t p = 0; p < rates.size(); ++p) {
    const double r = std::max(rates[p], 1e-12);
    const double t = src.path_trusts[p];
    double g = 0.0;
    if (kind == UtilityKind::throughput || kind == UtilityKind::combined) {
      g += 1.0 / (1.0 + r);
    }
    if (kind == UtilityKind::diversity) {
      g += -(1.0 / t) * (std::log(r / t) + 1.0);
    } else if (kind == UtilityKind::combined && mu > 0.0) {
      g += -(mu / t) * (std::log(r / t) + 1.0);
    }
    grad[p] = g;
  }
  return grad;
}

// One coordinate-ascent sweep: each path takes its unconstrained optimum
// clipped to the residual capacity of its links.
double polish_sweep(const AllocationProblem& problem, FlowAllocation& alloc,
                    double cap) {
  auto flows = link_flows(problem, alloc);
  double max_change = 0.0;
  for (std::size_t s = 0; s < problem.sources.size(); ++s) {
    const auto& src = problem.sources[s];
    for (std::size_t p = 0; p < src.path_links.size(); ++p) {
      const double old = alloc.rates[s][p];
      double ub = cap;
      for (int l : src.path_links[p]) {
        ub = std::min(ub, problem.capacities[l] - flows[l] + old);
      }
      ub = std::max(ub, 0.0);
      double target = 0.0;
      const double t = src.path_trusts[p];
      switch (problem.kind) {
        case UtilityKind::throughput:
          target = ub;
          break;
        case UtilityKind::diversity:
          target = std::min(t / std::exp(1.0), ub);
          break;
        case UtilityKind::combined:
          target = problem.mu == 0.0 ? ub : combined_best_rate(t, 0.0, problem.mu, ub);
          break;
      }
      alloc.rates[s][p] = target;
      for (int l : src.path_links[p]) flows[l] += target - old;
      max_change = std::max(max_change, std::abs(target - old));
    }
  }
  return max_change;
}

}  // namespace

FlowAllocation solve_centralized_reference(const AllocationProblem& problem, double tol) {
  FlowAllocation best = zero_allocation(problem);
  if (total_paths(problem) == 0) return best;
  const double cap = default_rate_cap(problem);
  double best_obj = objective(problem, best);

  std::vector<FlowAllocation> starts;
  starts.push_back(zero_allocation(problem));
  {
    FlowAllocation ones = zero_allocation(problem);
    for (auto& per_source : ones.rates) std::fill(per_source.begin(), per_source.end(), 1.0);
    repair_feasibility(problem, ones);
    starts.push_back(ones);
  }

  for (auto start : starts) {
    FlowAllocation alloc = start;
    for (long t = 1; t <= 4000; ++t) {
      const double step = 0.25 / std::sqrt(static_cast<double>(t));
      for (std::size_t s = 0; s < problem.sources.size(); ++s) {
        const auto grad =
            path_gradient(problem.sources[s], alloc.rates[s], problem.kind, problem.mu);
        for (std::size_t p = 0; p < grad.size(); ++p) {
          alloc.rates[s][p] =
              std::clamp(alloc.rates[s][p] + step * grad[p], 0.0, cap);
        }
      }
      repair_feasibility(problem, alloc);
      const double obj = objective(problem, alloc);
      if (obj > best_obj) {
        best_obj = obj;
        best = alloc;
      }
    }
  }

  // Coordinate polish from the best point found.
  FlowAllocation polished = best;
  for (int sweep = 0; sweep < 500; ++sweep) {
    if (polish_sweep(problem, polished, cap) < tol) break;
  }
  repair_feasibility(problem, polished);
  if (objective(problem, polished) > best_obj) best = polished;
  return best;
}

}  // namespace trustflow
