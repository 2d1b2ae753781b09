#include "trustflow/scenario.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

namespace trustflow {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double x;
  try {
    x = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad numeric value for " + key + ": '" + v + "'");
  }
  if (pos != v.size()) throw std::invalid_argument("bad numeric value for " + key + ": '" + v + "'");
  return x;
}

long parse_long(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  long x;
  try {
    x = std::stol(v, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad integer value for " + key + ": '" + v + "'");
  }
  if (pos != v.size()) throw std::invalid_argument("bad integer value for " + key + ": '" + v + "'");
  return x;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw std::invalid_argument("bad boolean value for " + key + ": '" + v + "'");
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::string to_string(TrustMode mode) {
  switch (mode) {
    case TrustMode::social_behavioral: return "social+behavioral";
    case TrustMode::behavioral_only: return "behavioral";
    case TrustMode::none: return "none";
  }
  return "?";
}

std::string to_string(TrustScheme scheme) {
  return scheme == TrustScheme::map_prior ? "map-prior" : "bootstrap";
}

std::string to_string(MobilityModel mobility) {
  return mobility == MobilityModel::static_nodes ? "static" : "waypoint";
}

std::string to_string(UtilityKind kind) {
  switch (kind) {
    case UtilityKind::throughput: return "throughput";
    case UtilityKind::diversity: return "diversity";
    case UtilityKind::combined: return "combined";
  }
  return "?";
}

void apply_override(ScenarioConfig& c, const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  if (key == "node_count") c.node_count = static_cast<int>(parse_long(key, v));
  else if (key == "area_width") c.area_width = parse_double(key, v);
  else if (key == "area_height") c.area_height = parse_double(key, v);
  else if (key == "radio_range") c.radio_range = parse_double(key, v);
  else if (key == "link_capacity") c.link_capacity = parse_double(key, v);
  else if (key == "plr") c.plr = parse_double(key, v);
  else if (key == "malicious_count") c.malicious_count = static_cast<int>(parse_long(key, v));
  else if (key == "spoofed_count") c.spoofed_count = static_cast<int>(parse_long(key, v));
  else if (key == "drop_probability") c.drop_probability = parse_double(key, v);
  else if (key == "trust_mode") {
    if (v == "social+behavioral") c.trust_mode = TrustMode::social_behavioral;
    else if (v == "behavioral") c.trust_mode = TrustMode::behavioral_only;
    else if (v == "none") c.trust_mode = TrustMode::none;
    else throw std::invalid_argument("unknown trust_mode '" + v + "'");
  } else if (key == "trust_scheme") {
    if (v == "map-prior") c.trust_scheme = TrustScheme::map_prior;
    else if (v == "bootstrap") c.trust_scheme = TrustScheme::bootstrap;
    else throw std::invalid_argument("unknown trust_scheme '" + v + "'");
  } else if (key == "observe_probability") c.observe_probability = parse_double(key, v);
  else if (key == "prior_strength") c.prior_strength = parse_double(key, v);
  else if (key == "epsilon") c.epsilon = parse_double(key, v);
  else if (key == "zeta") c.zeta = parse_double(key, v);
  else if (key == "rho") c.rho = parse_double(key, v);
  else if (key == "social_refresh_period") c.social_refresh_period = static_cast<int>(parse_long(key, v));
  else if (key == "ism_enabled") c.ism_enabled = parse_bool(key, v);
  else if (key == "social_malicious") c.social_malicious = parse_double(key, v);
  else if (key == "social_valid_min") c.social_valid_min = parse_double(key, v);
  else if (key == "social_valid_max") c.social_valid_max = parse_double(key, v);
  else if (key == "seed_social_threshold") c.seed_social_threshold = parse_double(key, v);
  else if (key == "tau_t") c.tau_t = parse_double(key, v);
  else if (key == "tau_s") c.tau_s = parse_double(key, v);
  else if (key == "utility") {
    if (v == "throughput") c.utility = UtilityKind::throughput;
    else if (v == "diversity") c.utility = UtilityKind::diversity;
    else if (v == "combined") c.utility = UtilityKind::combined;
    else throw std::invalid_argument("unknown utility '" + v + "'");
  } else if (key == "mu") c.mu = parse_double(key, v);
  else if (key == "k_paths") c.k_paths = static_cast<int>(parse_long(key, v));
  else if (key == "alloc_max_iter") c.alloc_max_iter = parse_long(key, v);
  else if (key == "alloc_tol") c.alloc_tol = parse_double(key, v);
  else if (key == "alloc_t0") c.alloc_t0 = parse_double(key, v);
  else if (key == "rate_cap") c.rate_cap = parse_double(key, v);
  else if (key == "mobility") {
    if (v == "static") c.mobility = MobilityModel::static_nodes;
    else if (v == "waypoint") c.mobility = MobilityModel::random_waypoint;
    else throw std::invalid_argument("unknown mobility '" + v + "'");
  } else if (key == "speed_min") c.speed_min = parse_double(key, v);
  else if (key == "speed_max") c.speed_max = parse_double(key, v);
  else if (key == "source_pairs") c.source_pairs = static_cast<int>(parse_long(key, v));
  else if (key == "rounds") c.rounds = static_cast<int>(parse_long(key, v));
  else if (key == "packets_per_round") c.packets_per_round = static_cast<int>(parse_long(key, v));
  else if (key == "rng_seed") c.rng_seed = static_cast<std::uint64_t>(parse_long(key, v));
  else throw std::invalid_argument("unknown config key '" + key + "'");
}

ScenarioConfig parse_scenario(std::istream& in) {
  ScenarioConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = trim(line);
    if (s.empty() || s[0] == '#' || s[0] == ';') continue;
    if (s.front() == '[') {
      if (s.back() != ']')
        throw std::invalid_argument("line " + std::to_string(lineno) + ": malformed section header");
      continue;  // sections are organizational only
    }
    auto eq = s.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("line " + std::to_string(lineno) + ": expected key=value");
    try {
      apply_override(cfg, trim(s.substr(0, eq)), s.substr(eq + 1));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  cfg.validate();
  return cfg;
}

ScenarioConfig load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  return parse_scenario(in);
}

void ScenarioConfig::validate() const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument("config: " + msg); };
  if (node_count < 2) fail("node_count must be at least 2");
  if (area_width <= 0 || area_height <= 0) fail("area dimensions must be positive");
  if (radio_range <= 0) fail("radio_range must be positive");
  if (link_capacity <= 0) fail("link_capacity must be positive");
  if (plr < 0 || plr >= 1) fail("plr must be in [0,1)");
  if (malicious_count < 0 || malicious_count >= node_count) fail("malicious_count out of range");
  if (spoofed_count < 0 || spoofed_count > malicious_count) fail("spoofed_count out of range");
  if (drop_probability < 0 || drop_probability > 1) fail("drop_probability must be in [0,1]");
  if (observe_probability < 0 || observe_probability > 1) fail("observe_probability must be in [0,1]");
  if (prior_strength < 0) fail("prior_strength must be non-negative");
  if (epsilon < zeta) fail("epsilon must be at least zeta");
  if (epsilon < 0 || epsilon > 1 || zeta < 0 || zeta > 1) fail("epsilon/zeta must be in [0,1]");
  if (rho < 0 || rho > 1) fail("rho must be in [0,1]");
  if (social_refresh_period < 0) fail("social_refresh_period must be non-negative");
  if (social_malicious < 0 || social_malicious > 1) fail("social_malicious must be in [0,1]");
  if (social_valid_min < 0 || social_valid_max > 1 || social_valid_min > social_valid_max)
    fail("social_valid range must satisfy 0 <= min <= max <= 1");
  if (tau_t < 0 || tau_t > 1) fail("tau_t must be in [0,1]");
  if (tau_s < 0 || tau_s > 1) fail("tau_s must be in [0,1]");
  if (mu < 0) fail("mu must be non-negative");
  if (k_paths < 1) fail("k_paths must be at least 1");
  if (alloc_max_iter < 1) fail("alloc_max_iter must be positive");
  if (alloc_tol <= 0) fail("alloc_tol must be positive");
  if (alloc_t0 <= 0) fail("alloc_t0 must be positive");
  if (rate_cap < 0) fail("rate_cap must be non-negative");
  if (speed_min < 0 || speed_max < speed_min) fail("speeds must satisfy 0 <= speed_min <= speed_max");
  if (source_pairs < 1) fail("source_pairs must be at least 1");
  if (2 * source_pairs > node_count) fail("source_pairs needs 2 distinct nodes per pair");
  if (rounds < 1) fail("rounds must be at least 1");
  if (packets_per_round < 1) fail("packets_per_round must be at least 1");
}

std::string dump_scenario(const ScenarioConfig& c) {
  std::ostringstream o;
  o << "[network]\n";
  o << "node_count = " << c.node_count << "\n";
  o << "area_width = " << fmt(c.area_width) << "\n";
  o << "area_height = " << fmt(c.area_height) << "\n";
  o << "radio_range = " << fmt(c.radio_range) << "\n";
  o << "link_capacity = " << fmt(c.link_capacity) << "\n";
  o << "plr = " << fmt(c.plr) << "\n";
  o << "\n[adversary]\n";
  o << "malicious_count = " << c.malicious_count << "\n";
  o << "spoofed_count = " << c.spoofed_count << "\n";
  o << "drop_probability = " << fmt(c.drop_probability) << "\n";
  o << "\n[trust]\n";
  o << "trust_mode = " << to_string(c.trust_mode) << "\n";
  o << "trust_scheme = " << to_string(c.trust_scheme) << "\n";
  o << "observe_probability = " << fmt(c.observe_probability) << "\n";
  o << "prior_strength = " << fmt(c.prior_strength) << "\n";
  o << "epsilon = " << fmt(c.epsilon) << "\n";
  o << "zeta = " << fmt(c.zeta) << "\n";
  o << "rho = " << fmt(c.rho) << "\n";
  o << "social_refresh_period = " << c.social_refresh_period << "\n";
  o << "ism_enabled = " << (c.ism_enabled ? "true" : "false") << "\n";
  o << "social_malicious = " << fmt(c.social_malicious) << "\n";
  o << "social_valid_min = " << fmt(c.social_valid_min) << "\n";
  o << "social_valid_max = " << fmt(c.social_valid_max) << "\n";
  o << "seed_social_threshold = " << fmt(c.seed_social_threshold) << "\n";
  o << "tau_t = " << fmt(c.tau_t) << "\n";
  o << "tau_s = " << fmt(c.tau_s) << "\n";
  o << "\n[allocation]\n";
  o << "utility = " << to_string(c.utility) << "\n";
  o << "mu = " << fmt(c.mu) << "\n";
  o << "k_paths = " << c.k_paths << "\n";
  o << "alloc_max_iter = " << c.alloc_max_iter << "\n";
  o << "alloc_tol = " << fmt(c.alloc_tol) << "\n";
  o << "alloc_t0 = " << fmt(c.alloc_t0) << "\n";
  o << "rate_cap = " << fmt(c.rate_cap) << "\n";
  o << "\n[simulation]\n";
  o << "mobility = " << to_string(c.mobility) << "\n";
  o << "speed_min = " << fmt(c.speed_min) << "\n";
  o << "speed_max = " << fmt(c.speed_max) << "\n";
  o << "source_pairs = " << c.source_pairs << "\n";
  o << "rounds = " << c.rounds << "\n";
  o << "packets_per_round = " << c.packets_per_round << "\n";
  o << "rng_seed = " << c.rng_seed << "\n";
  return o.str();
}

}  // namespace trustflow
