#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "trustflow/allocator.hpp"
#include "trustflow/trust.hpp"

namespace trustflow {

enum class TrustMode { social_behavioral, behavioral_only, none };
enum class TrustScheme { map_prior, bootstrap };
enum class MobilityModel { static_nodes, random_waypoint };

struct ScenarioConfig {
  // [network]
  int node_count = 70;
  double area_width = 1500.0;
  double area_height = 1500.0;
  double radio_range = 400.0;
  double link_capacity = 50.0;
  double plr = 0.0;

  // [adversary]
  int malicious_count = 10;
  int spoofed_count = 0;  // malicious nodes masquerading with a valid profile
  double drop_probability = 0.8;

  // [trust]
  TrustMode trust_mode = TrustMode::social_behavioral;
  TrustScheme trust_scheme = TrustScheme::bootstrap;
  double observe_probability = 0.1;
  double prior_strength = 10.0;  // n0 for the map-prior scheme
  double epsilon = 0.7;
  double zeta = 0.1;
  double rho = 0.9;
  int social_refresh_period = 0;  // rounds; 0 = never
  bool ism_enabled = true;
  double social_malicious = 0.6;
  double social_valid_min = 0.85;
  double social_valid_max = 1.0;
  double seed_social_threshold = 0.85;
  double tau_t = 0.4;
  double tau_s = 0.5;

  // [allocation]
  UtilityKind utility = UtilityKind::throughput;
  double mu = 0.0;
  int k_paths = 3;
  long alloc_max_iter = 250;
  double alloc_tol = 1e-5;
  double alloc_t0 = 1.0;
  double rate_cap = 0.0;  // 0 = solver default

  // [simulation]
  MobilityModel mobility = MobilityModel::random_waypoint;
  double speed_min = 1.0;
  double speed_max = 5.0;
  int source_pairs = 4;
  int rounds = 200;
  int packets_per_round = 100;
  std::uint64_t rng_seed = 1;

  void validate() const;  // throws std::invalid_argument
};

ScenarioConfig parse_scenario(std::istream& in);
ScenarioConfig load_scenario_file(const std::string& path);

// key=value override; same keys as the config file.
void apply_override(ScenarioConfig& cfg, const std::string& key, const std::string& value);

// Reloadable dump of every setting; also serves as the run manifest body.
std::string dump_scenario(const ScenarioConfig& cfg);

std::string to_string(TrustMode mode);
std::string to_string(TrustScheme scheme);
std::string to_string(MobilityModel mobility);
std::string to_string(UtilityKind kind);

}  // namespace trustflow
