#include "trustflow/ism.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace trustflow {

double VoucherGraph::trust_of(const NodeId& observer, const NodeId& voucher) const {
  const auto it = trust.find({observer, voucher});
  return it == trust.end() ? 0.0 : it->second;
}

double IsmMap::at(const NodeId& node) const {
  const auto it = values.find(node);
  if (it == values.end()) {
    throw std::out_of_range("IsmMap: no entry for node " + node);
  }
  return it->second;
}

IsmMap compute_ism(const VoucherGraph& graph, const NodeId& observer,
                   double tol, int max_iter) {
  if (tol <= 0.0) throw std::invalid_argument("compute_ism: tol must be positive");
  const auto seed_it = graph.seeds.find(observer);
  if (seed_it == graph.seeds.end() || seed_it->second.empty()) {
    throw std::invalid_argument("compute_ism: observer " + observer + " has no seeds");
  }
  const std::set<NodeId>& seeds = seed_it->second;

  IsmMap out;
  out.observer = observer;
  auto& ism = out.values;
  ism[observer] = 1.0;  // ISM(i,i) = 1 by definition
  for (const auto& [j, r_j] : graph.vouchers) {
    ism.emplace(j, 0.0);
    for (const auto& r : r_j) ism.emplace(r, 0.0);
  }
  for (const auto& s : seeds) ism[s] = 1.0;

  auto fixed = [&](const NodeId& j) { return j == observer || seeds.count(j) > 0; };

  double residual = 0.0;
  for (int iter = 1; iter <= max_iter; ++iter) {
    residual = 0.0;
    for (auto& [j, value] : ism) {
      if (fixed(j)) continue;
      double prod = 1.0;
      const auto vit = graph.vouchers.find(j);
      if (vit != graph.vouchers.end()) {
        for (const auto& r : vit->second) {
          if (r == j) continue;  // no self-vouching
          const auto rit = ism.find(r);
          const double r_ism = rit == ism.end() ? 0.0 : rit->second;
          prod *= 1.0 - graph.trust_of(observer, r) * r_ism;
        }
      }
      const double next = 1.0 - prod;
      residual = std::max(residual, std::abs(next - value));
      value = next;
    }
    out.iterations = iter;
    if (residual < tol) return out;
  }
  std::ostringstream msg;
  msg << "compute_ism: no convergence after " << max_iter
      << " iterations, residual " << residual;
  throw std::runtime_error(msg.str());
}

double path_spoof_probability(const std::vector<NodeId>& path, const IsmMap& ism) {
  if (path.empty()) throw std::invalid_argument("path_spoof_probability: empty path");
  double prod = 1.0;
  for (std::size_t k = 1; k + 1 < path.size(); ++k) {
    prod *= ism.at(path[k]);
  }
  return prod;
}

}  // namespace trustflow
