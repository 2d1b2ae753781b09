#include "trustflow/network.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

namespace trustflow {

double distance(const Vec2& a, const Vec2& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

bool Topology::has_link(const NodeId& a, const NodeId& b) const {
  return link_index.count({a, b}) > 0;
}

void Topology::rebuild_index() {
  std::sort(links.begin(), links.end(), [](const Link& a, const Link& b) {
    return std::tie(a.src, a.dst) < std::tie(b.src, b.dst);
  });
  link_index.clear();
  adjacency.clear();
  for (const auto& n : nodes) adjacency[n];
  for (std::size_t i = 0; i < links.size(); ++i) {
    const auto& l = links[i];
    if (link_index.count({l.src, l.dst})) {
      throw std::invalid_argument("duplicate link " + l.src + " -> " + l.dst);
    }
    link_index[{l.src, l.dst}] = static_cast<int>(i);
    adjacency[l.src].push_back(l.dst);
  }
  for (auto& [id, neigh] : adjacency) std::sort(neigh.begin(), neigh.end());
}

namespace {

std::vector<NodeId> sorted_unique_ids(const std::vector<std::pair<NodeId, Vec2>>& positions) {
  std::vector<NodeId> ids;
  ids.reserve(positions.size());
  for (const auto& [id, pos] : positions) ids.push_back(id);
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw std::invalid_argument("duplicate node id in topology");
  }
  return ids;
}

}  // namespace

Topology build_topology(const std::vector<std::pair<NodeId, Vec2>>& positions,
                        double radio_range, double link_capacity) {
  if (radio_range <= 0.0) throw std::invalid_argument("radio range must be positive");
  Topology topo;
  topo.radio_range = radio_range;
  topo.nodes = sorted_unique_ids(positions);
  for (const auto& [id, pos] : positions) topo.positions[id] = pos;
  for (const auto& a : topo.nodes) {
    for (const auto& b : topo.nodes) {
      if (a == b) continue;
      if (distance(topo.positions[a], topo.positions[b]) <= radio_range) {
        topo.links.push_back({a, b, link_capacity});
      }
    }
  }
  topo.rebuild_index();
  return topo;
}

Topology topology_from_links(const std::vector<std::pair<NodeId, Vec2>>& positions,
                             std::vector<Link> links, double radio_range) {
  Topology topo;
  topo.radio_range = radio_range;
  topo.nodes = sorted_unique_ids(positions);
  for (const auto& [id, pos] : positions) topo.positions[id] = pos;
  topo.links = std::move(links);
  for (const auto& l : topo.links) {
    if (!topo.positions.count(l.src) || !topo.positions.count(l.dst)) {
      throw std::invalid_argument("link references unknown node " + l.src + "/" + l.dst);
    }
    if (l.capacity < 0.0) throw std::invalid_argument("negative link capacity");
  }
  topo.rebuild_index();
  return topo;
}

namespace {

// Lexicographically smallest shortest path s -> d over the links not in
// `removed`. Empty result when d is unreachable.
std::vector<NodeId> shortest_path(const Topology& topo, const NodeId& s, const NodeId& d,
                                  const std::set<std::pair<NodeId, NodeId>>& removed) {
  // Hop distance to d over the reversed graph.
  std::map<NodeId, int> dist_to_d;
  std::map<NodeId, std::vector<NodeId>> rev;
  for (const auto& l : topo.links) {
    if (removed.count({l.src, l.dst})) continue;
    rev[l.dst].push_back(l.src);
  }
  std::deque<NodeId> queue{d};
  dist_to_d[d] = 0;
  while (!queue.empty()) {
    const NodeId u = queue.front();
    queue.pop_front();
    for (const auto& v : rev[u]) {
      if (!dist_to_d.count(v)) {
        dist_to_d[v] = dist_to_d[u] + 1;
        queue.push_back(v);
      }
    }
  }
  if (!dist_to_d.count(s)) return {};

  // Greedy forward walk: always the smallest neighbor that stays on a
  // shortest path, which yields the lexicographically smallest sequence.
  std::vector<NodeId> path{s};
  NodeId cur = s;
  while (cur != d) {
    const int want = dist_to_d[cur] - 1;
    bool advanced = false;
    const auto adj_it = topo.adjacency.find(cur);
    if (adj_it != topo.adjacency.end()) {
      for (const auto& v : adj_it->second) {  // sorted
        if (removed.count({cur, v})) continue;
        const auto dit = dist_to_d.find(v);
        if (dit != dist_to_d.end() && dit->second == want) {
          path.push_back(v);
          cur = v;
          advanced = true;
          break;
        }
      }
    }
    if (!advanced) return {};
  }
  return path;
}

}  // namespace

PathSet discover_paths(const Topology& topo, const NodeId& s, const NodeId& d, int k) {
  if (s == d) throw std::invalid_argument("discover_paths: source equals destination");
  if (k < 1) throw std::invalid_argument("discover_paths: k must be >= 1");
  PathSet out;
  out.source = s;
  out.dest = d;
  std::set<std::pair<NodeId, NodeId>> removed;
  for (int i = 0; i < k; ++i) {
    auto path = shortest_path(topo, s, d, removed);
    if (path.empty()) break;
    for (std::size_t h = 0; h + 1 < path.size(); ++h) {
      removed.insert({path[h], path[h + 1]});
    }
    out.paths.push_back(std::move(path));
  }
  return out;
}

double path_trust(const std::vector<NodeId>& path, const TrustMap& trust) {
  double prod = 1.0;
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    const auto it = trust.find({path[k], path[k + 1]});
    if (it == trust.end()) {
      throw std::out_of_range("path_trust: no trust entry for " + path[k] + " -> " +
                              path[k + 1]);
    }
    prod *= it->second;
  }
  return prod;
}

RoutingMatrix routing_matrix(const PathSet& paths, const Topology& topo) {
  RoutingMatrix m;
  m.link_count = topo.links.size();
  m.path_count = paths.paths.size();
  m.entries.assign(m.link_count, std::vector<std::uint8_t>(m.path_count, 0));
  for (std::size_t p = 0; p < paths.paths.size(); ++p) {
    const auto& path = paths.paths[p];
    for (std::size_t h = 0; h + 1 < path.size(); ++h) {
      const auto it = topo.link_index.find({path[h], path[h + 1]});
      if (it == topo.link_index.end()) {
        throw std::invalid_argument("routing_matrix: path uses nonexistent link");
      }
      m.entries[it->second][p] = 1;
    }
  }
  return m;
}

PathSet admissible_paths(const PathSet& paths, const TrustMap& trust,
                         const IsmMap* ism, double tau_t, double tau_s) {
  PathSet out;
  out.source = paths.source;
  out.dest = paths.dest;
  for (const auto& path : paths.paths) {
    if (path_trust(path, trust) < tau_t) continue;
    if (ism != nullptr && path_spoof_probability(path, *ism) < tau_s) continue;
    out.paths.push_back(path);
  }
  return out;
}

Topology NetworkSpec::make_topology(double default_capacity) const {
  if (!explicit_links.empty()) {
    return topology_from_links(positions, explicit_links, radio_range);
  }
  return build_topology(positions, radio_range, default_capacity);
}

NetworkSpec load_network(std::istream& in) {
  NetworkSpec spec;
  std::string line;
  int line_no = 0;
  std::set<NodeId> seen;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind)) continue;
    auto fail = [&](const std::string& what) {
      std::ostringstream msg;
      msg << "topology file line " << line_no << ": " << what;
      throw std::invalid_argument(msg.str());
    };
    if (kind == "node") {
      NodeId id;
      double x, y;
      if (!(ls >> id >> x >> y)) fail("expected: node <id> <x_m> <y_m>");
      if (!seen.insert(id).second) fail("duplicate node " + id);
      spec.positions.push_back({id, {x, y}});
    } else if (kind == "link") {
      Link l;
      if (!(ls >> l.src >> l.dst >> l.capacity)) {
        fail("expected: link <src> <dst> <capacity>");
      }
      spec.explicit_links.push_back(l);
    } else if (kind == "range") {
      if (!(ls >> spec.radio_range)) fail("expected: range <meters>");
    } else if (kind == "source") {
      NodeId s, d;
      if (!(ls >> s >> d)) fail("expected: source <id> <dest-id>");
      spec.sources.push_back({s, d});
    } else if (kind == "voucher") {
      NodeId subject, v;
      if (!(ls >> subject)) fail("expected: voucher <subject> <voucher...>");
      auto& list = spec.voucher_graph.vouchers[subject];
      while (ls >> v) list.push_back(v);
      if (list.empty()) fail("voucher record without vouchers");
    } else if (kind == "seed") {
      NodeId observer, trusted;
      if (!(ls >> observer >> trusted)) fail("expected: seed <observer> <trusted-id>");
      spec.voucher_graph.seeds[observer].insert(trusted);
    } else if (kind == "trust") {
      NodeId i, j;
      double value;
      if (!(ls >> i >> j >> value)) fail("expected: trust <i> <j> <value>");
      spec.trust[{i, j}] = value;
      spec.voucher_graph.trust[{i, j}] = value;
    } else {
      fail("unknown record '" + kind + "'");
    }
  }
  return spec;
}

NetworkSpec load_network_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open topology file " + path);
  return load_network(in);
}

}  // namespace trustflow
