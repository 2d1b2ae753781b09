#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace trustflow {

using NodeId = std::string;

// Identity-voucher graph: R_j is the set of nodes willing to vouch for j's
// identity, seeds are nodes an observer has verified out of band, and trust
// holds the observer's combined trust in each voucher.
struct VoucherGraph {
  std::map<NodeId, std::vector<NodeId>> vouchers;   // j -> R_j
  std::map<NodeId, std::set<NodeId>> seeds;         // observer -> verified ids
  std::map<std::pair<NodeId, NodeId>, double> trust;  // (i, r) -> T_{i,r}

  double trust_of(const NodeId& observer, const NodeId& voucher) const;
};

struct IsmMap {
  NodeId observer;
  std::map<NodeId, double> values;
  int iterations = 0;

  double at(const NodeId& node) const;  // throws std::out_of_range when absent
};

// Least fixed point of ISM(i,j) = 1 - prod_{r in R_j} (1 - T_{i,r} ISM(i,r)),
// iterated from seeds = 1 and everything else = 0.
IsmMap compute_ism(const VoucherGraph& graph, const NodeId& observer,
                   double tol = 1e-9, int max_iter = 200);

// Product of ISM over the intermediate nodes of a path (source's view).
double path_spoof_probability(const std::vector<NodeId>& path, const IsmMap& ism);

}  // namespace trustflow
