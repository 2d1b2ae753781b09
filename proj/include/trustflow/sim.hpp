#pragma once

#include <string>
#include <vector>

#include "trustflow/scenario.hpp"

namespace trustflow {

struct RoundMetrics {
  int round = 0;
  long sent = 0;
  long delivered = 0;
  double delivery_ratio = 0.0;
  double throughput = 0.0;       // delivered packets this round
  double avoid_probability = 0.0;  // delivered without a malicious forwarder
  int detected_malicious = 0;    // malicious nodes below tau_t for some valid observer
  double spoofed_fraction = 0.0;  // sent packets whose path crossed a spoofed node
};

struct TrustDumpEntry {
  std::string observer;
  std::string subject;
  double value = 0.0;
  long observations = 0;
  bool subject_malicious = false;
};

struct SimResult {
  std::vector<RoundMetrics> rounds;
  std::vector<TrustDumpEntry> final_trust;
  double min_allocated_path_trust = 1.0;  // over all rounds, paths given positive rate
  long total_sent = 0;
  long total_delivered = 0;
};

SimResult run_simulation(const ScenarioConfig& cfg);

std::string metrics_csv(const std::vector<RoundMetrics>& rounds);
std::string trust_csv(const std::vector<TrustDumpEntry>& entries);

// Mean delivery ratio over the last fifth of the run (settled behaviour).
double settled_delivery(const SimResult& result);
double settled_throughput(const SimResult& result);
double settled_avoidance(const SimResult& result);

enum class SweepAxis { speed, malicious, tau_t, mu };

SweepAxis sweep_axis_from_string(const std::string& name);
std::string to_string(SweepAxis axis);

struct SweepRow {
  double axis_value = 0.0;
  int seeds = 0;
  double mean_delivery = 0.0, std_delivery = 0.0;
  double mean_throughput = 0.0, std_throughput = 0.0;
  double mean_avoidance = 0.0, std_avoidance = 0.0;
  double mean_detected = 0.0, std_detected = 0.0;
};

// Runs `seeds` independent replicates per axis value (rng_seed, rng_seed+1, ...)
// and aggregates settled metrics. `jobs` > 1 runs replicates concurrently;
// results are identical regardless of job count.
std::vector<SweepRow> parameter_sweep(const ScenarioConfig& base, SweepAxis axis,
                                      const std::vector<double>& values, int seeds,
                                      int jobs = 1);

std::string sweep_csv(SweepAxis axis, const std::vector<SweepRow>& rows);

}  // namespace trustflow
