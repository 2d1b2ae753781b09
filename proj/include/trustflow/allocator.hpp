#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "trustflow/network.hpp"

namespace trustflow {

enum class UtilityKind { throughput, diversity, combined };

// One source's share of the allocation problem: paths as link-index lists
// against the shared capacity vector, with the trust of each path.
struct SourceProblem {
  NodeId source;
  NodeId dest;
  std::vector<std::vector<int>> path_links;
  std::vector<double> path_trusts;
};

struct AllocationProblem {
  std::vector<SourceProblem> sources;
  std::vector<double> capacities;
  UtilityKind kind = UtilityKind::throughput;
  double mu = 0.0;  // diversity weight for the combined utility
};

struct FlowAllocation {
  std::vector<std::vector<double>> rates;  // [source][path]

  double source_rate(std::size_t s) const;
  double total_rate() const;
};

struct DualState {
  std::vector<double> lambda;
  long iteration = 0;
  double step_scale = 1.0;  // t0
  double dual_value = 0.0;
  double primal_residual = 0.0;
};

struct IterationRecord {
  long iteration;
  double dual_value;
  double primal_residual;
};

double utility_throughput(const std::vector<double>& rates);
double utility_diversity(const std::vector<double>& rates,
                         const std::vector<double>& trusts);
double source_utility(const SourceProblem& src, const std::vector<double>& rates,
                      UtilityKind kind, double mu);
double objective(const AllocationProblem& problem, const FlowAllocation& alloc);

// max_r U(r) - sum_pi q_pi r_pi over [0, rate_cap] per path; closed form for
// the pure utilities, derivative bisection for the combined one.
std::vector<double> per_source_best_response(const SourceProblem& src,
                                             const std::vector<double>& q,
                                             UtilityKind kind, double mu,
                                             double rate_cap);

std::vector<double> link_flows(const AllocationProblem& problem,
                               const FlowAllocation& alloc);

// lambda_l <- max(0, lambda_l - (t0/t)(c_l - flow_l))
void subgradient_step(DualState& dual, const std::vector<double>& flows,
                      const std::vector<double>& capacities);

// Scales path rates link by link until no capacity is violated.
void repair_feasibility(const AllocationProblem& problem, FlowAllocation& alloc,
                        double tol = 1e-12);

struct SolveResult {
  FlowAllocation allocation;
  DualState dual;
  std::vector<IterationRecord> trace;
  bool converged = false;
};

struct SolveOptions {
  long max_iter = 5000;
  double tol = 1e-6;
  double t0 = 1.0;
  double rate_cap = 0.0;  // 0 = 10x total capacity
  bool keep_trace = true;
};

SolveResult solve_distributed(const AllocationProblem& problem,
                              const SolveOptions& opts = {});

// Projected gradient ascent with per-link scaling projection; the oracle the
// distributed solver is validated against.
FlowAllocation solve_centralized_reference(const AllocationProblem& problem,
                                           double tol = 1e-6);

double default_rate_cap(const AllocationProblem& problem);

}  // namespace trustflow
