#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "trustflow/ism.hpp"

namespace trustflow {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

double distance(const Vec2& a, const Vec2& b);

struct Link {
  NodeId src;
  NodeId dst;
  double capacity = 0.0;
};

// Per observer-subject trust values used for path admission.
using TrustMap = std::map<std::pair<NodeId, NodeId>, double>;

struct Topology {
  std::vector<NodeId> nodes;  // sorted
  std::map<NodeId, Vec2> positions;
  std::vector<Link> links;  // sorted by (src, dst)
  double radio_range = 0.0;

  std::map<std::pair<NodeId, NodeId>, int> link_index;
  std::map<NodeId, std::vector<NodeId>> adjacency;  // sorted neighbor lists

  bool has_link(const NodeId& a, const NodeId& b) const;
  void rebuild_index();
};

// Symmetric link set: (i,j) and (j,i) whenever the nodes are within range.
Topology build_topology(const std::vector<std::pair<NodeId, Vec2>>& positions,
                        double radio_range, double link_capacity);

Topology topology_from_links(const std::vector<std::pair<NodeId, Vec2>>& positions,
                             std::vector<Link> links, double radio_range);

struct PathSet {
  NodeId source;
  NodeId dest;
  std::vector<std::vector<NodeId>> paths;
};

// Up to k link-disjoint shortest paths (hop count, lexicographic tie-break).
PathSet discover_paths(const Topology& topo, const NodeId& s, const NodeId& d, int k);

// Product of the per-link trust entries along the path.
double path_trust(const std::vector<NodeId>& path, const TrustMap& trust);

struct RoutingMatrix {
  std::size_t link_count = 0;
  std::size_t path_count = 0;
  std::vector<std::vector<std::uint8_t>> entries;  // [link][path]

  std::uint8_t at(std::size_t link, std::size_t path) const {
    return entries[link][path];
  }
};

RoutingMatrix routing_matrix(const PathSet& paths, const Topology& topo);

// Retains paths with path_trust >= tau_t and, when an ISM map is supplied,
// spoof probability >= tau_s.
PathSet admissible_paths(const PathSet& paths, const TrustMap& trust,
                         const IsmMap* ism, double tau_t, double tau_s);

// Parsed topology description file.
struct NetworkSpec {
  std::vector<std::pair<NodeId, Vec2>> positions;
  std::vector<Link> explicit_links;
  double radio_range = 400.0;
  std::vector<std::pair<NodeId, NodeId>> sources;
  VoucherGraph voucher_graph;  // includes seeds and the (i,j) trust map
  TrustMap trust;

  Topology make_topology(double default_capacity) const;
};

NetworkSpec load_network(std::istream& in);
NetworkSpec load_network_file(const std::string& path);

}  // namespace trustflow
