#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace trustflow {

enum class Outcome { positive, negative };

// Evidence counters behind a Beta-reputation opinion. Counters start at
// (1,1) so the Beta density stays proper and uncertainty starts at 1.
struct EvidenceRecord {
  double alpha = 1.0;    // positive evidence after channel correction
  double beta = 1.0;     // negative evidence after channel correction
  long raw_alpha = 1;    // integer count before channel correction
  long raw_beta = 1;     // integer count before channel correction
  bool clamped = false;  // channel correction hit the beta floor

  long observations() const { return raw_alpha + raw_beta - 2; }
};

struct TrustOpinion {
  double belief = 0.0;
  double disbelief = 0.0;
  double uncertainty = 1.0;
};

// u = 12 * Var(Beta(alpha, beta)). Equals 1 only at (1,1).
double beta_uncertainty(double alpha, double beta);

TrustOpinion opinion_from_evidence(const EvidenceRecord& ev);

struct ChannelCorrection {
  double alpha = 0.0;
  double beta = 0.0;
  bool clamped = false;
};

// Shifts evidence mass from beta to alpha to compensate genuine channel
// losses: alpha1 = alpha0 + plr*(alpha0+beta0), beta1 likewise reduced but
// never below the prior floor of 1.
ChannelCorrection adjust_for_channel_loss(double alpha0, double beta0, double plr);

EvidenceRecord record_observation(EvidenceRecord ev, Outcome outcome, double plr = 0.0);

// ---- social trust ----------------------------------------------------

struct Profile {
  std::vector<std::string> activities;
  std::vector<std::string> interests;
  std::vector<std::string> affiliations;
  std::string gender;
};

struct FeatureScore {
  std::string feature;
  double score = 0.0;
  bool missing = false;
};

struct ProfileSimilarityEvidence {
  int alpha_s = 0;  // features scoring above 0.5
  int beta_s = 0;   // features scoring at or below 0.5
  std::vector<FeatureScore> per_feature;
};

struct IpsResult {
  ProfileSimilarityEvidence evidence;
  double trust = 0.0;
};

// Token-overlap similarity over the four profile features; evidence is fed
// through Beta(alpha_s+1, beta_s+1).
IpsResult ips_trust(const Profile& a, const Profile& b);

struct InteractionLedger {
  // (poster i, wall owner j) -> accumulated posts N_ij
  std::map<std::pair<std::string, std::string>, long> posts;
  // poster -> total posts N_i
  std::map<std::string, long> totals;
  // poster -> contact count C
  std::map<std::string, double> contacts;
  double decay_rate = 1.0;  // the exponent constant a

  long count(const std::string& poster, const std::string& owner) const;
  long total(const std::string& poster) const;
  double contact_count(const std::string& poster) const;
};

// W = 1 - exp(-a * x), x = N_ij / (N_i / C).  Zero history yields 0.
double wallpost_trust(const InteractionLedger& ledger, const std::string& i,
                      const std::string& j);

double social_trust(double ips, double wall, double eta);

struct EtaParams {
  double ramp_seconds = 90.0 * 86400.0;  // time to full wall-post weighting
  double activity_ref = 50.0;            // posts considered "active"
};

// Nondecreasing in both time and activity; 0 at the origin, saturates at 1.
double eta_schedule(double t_seconds, double activity, const EtaParams& params = {});

// ---- combined trust --------------------------------------------------

// MAP estimate of a Bernoulli rate under a Beta(alpha, beta) prior:
// T = (r + alpha - 1) / (n + alpha + beta - 2).
double map_combined_trust(long r, long n, double prior_alpha, double prior_beta);

// One-step recursion equivalent to recomputing map_combined_trust with the
// incremented counts.
double incremental_trust_update(double t_n, long n, double n_prime, Outcome outcome);

// MSE of the MAP estimator under Bernoulli(t_star) observations.
double trust_mse(long n, double n_prime, double t_star, double t_prime);

struct BootstrapParams {
  double epsilon = 0.7;
  double zeta = 0.1;
  double rho = 0.9;
};

double bootstrap_init(double s0);
double bootstrap_update(double t_t, double b_hat, const BootstrapParams& params);
double social_refresh(double t_t, double s_t, double rho);

// Per-(observer, subject) trust under the MAP scheme. The social prior is
// mapped to pseudo-counts alpha = 1 + s*n0, beta = 1 + (1-s)*n0.
struct CombinedTrustState {
  long n = 0;
  long positives = 0;
  double prior_alpha = 1.0;
  double prior_beta = 1.0;

  static CombinedTrustState from_social_prior(double s, double prior_strength);

  double n_prime() const { return prior_alpha + prior_beta - 2.0; }
  bool defined() const { return n + n_prime() > 0.0; }
  double value() const;  // throws std::domain_error when !defined()
  double value_or(double fallback) const { return defined() ? value() : fallback; }
  void observe(Outcome outcome);
};

}  // namespace trustflow
