#include "trustflow/trust.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <sstream>

namespace trustflow {

double beta_uncertainty(double alpha, double beta) {
  if (alpha < 1.0 || beta < 1.0) {
    throw std::domain_error("beta_uncertainty: parameters below the prior floor of 1");
  }
  const double s = alpha + beta;
  return 12.0 * alpha * beta / (s * s * (s + 1.0));
}

TrustOpinion opinion_from_evidence(const EvidenceRecord& ev) {
  const double u = beta_uncertainty(ev.alpha, ev.beta);
  const double s = ev.alpha + ev.beta;
  TrustOpinion op;
  op.uncertainty = u;
  op.belief = ev.alpha * (1.0 - u) / s;
  op.disbelief = ev.beta * (1.0 - u) / s;
  return op;
}

ChannelCorrection adjust_for_channel_loss(double alpha0, double beta0, double plr) {
  if (plr < 0.0 || plr >= 1.0) {
    throw std::domain_error("adjust_for_channel_loss: plr must be in [0,1)");
  }
  const double shift = plr * (alpha0 + beta0);
  ChannelCorrection out;
  out.alpha = alpha0 + shift;
  out.beta = beta0 - shift;
  if (out.beta < 1.0) {
    out.beta = 1.0;
    out.clamped = true;
  }
  return out;
}

EvidenceRecord record_observation(EvidenceRecord ev, Outcome outcome, double plr) {
  if (outcome == Outcome::positive) {
    ++ev.raw_alpha;
  } else {
    ++ev.raw_beta;
  }
  const ChannelCorrection c =
      adjust_for_channel_loss(static_cast<double>(ev.raw_alpha),
                              static_cast<double>(ev.raw_beta), plr);
  ev.alpha = c.alpha;
  ev.beta = c.beta;
  ev.clamped = c.clamped;
  return ev;
}

namespace {

std::set<std::string> token_set(const std::vector<std::string>& tokens) {
  std::set<std::string> out;
  for (const auto& t : tokens) {
    std::string lower(t);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (!lower.empty()) out.insert(lower);
  }
  return out;
}

double jaccard(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  const auto sa = token_set(a);
  const auto sb = token_set(b);
  if (sa.empty() && sb.empty()) return 0.0;
  std::size_t inter = 0;
  for (const auto& t : sa) inter += sb.count(t);
  const std::size_t uni = sa.size() + sb.size() - inter;
  return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

std::string lower_copy(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace

IpsResult ips_trust(const Profile& a, const Profile& b) {
  IpsResult out;
  auto push = [&out](const std::string& name, double score, bool missing) {
    out.evidence.per_feature.push_back({name, score, missing});
    if (score > 0.5) {
      ++out.evidence.alpha_s;
    } else {
      ++out.evidence.beta_s;
    }
  };

  push("activities", jaccard(a.activities, b.activities),
       a.activities.empty() || b.activities.empty());
  push("interests", jaccard(a.interests, b.interests),
       a.interests.empty() || b.interests.empty());
  {
    const bool missing = a.gender.empty() || b.gender.empty();
    const double score =
        (!missing && lower_copy(a.gender) == lower_copy(b.gender)) ? 1.0 : 0.0;
    push("gender", score, missing);
  }
  push("affiliations", jaccard(a.affiliations, b.affiliations),
       a.affiliations.empty() || b.affiliations.empty());

  // Prior floor: alpha_s or beta_s can be 0, so feed Beta(a+1, b+1).
  const double alpha = out.evidence.alpha_s + 1.0;
  const double beta = out.evidence.beta_s + 1.0;
  const double u = beta_uncertainty(alpha, beta);
  out.trust = alpha / (alpha + beta) * (1.0 - u);
  return out;
}

long InteractionLedger::count(const std::string& poster, const std::string& owner) const {
  const auto it = posts.find({poster, owner});
  return it == posts.end() ? 0 : it->second;
}

long InteractionLedger::total(const std::string& poster) const {
  const auto it = totals.find(poster);
  return it == totals.end() ? 0 : it->second;
}

double InteractionLedger::contact_count(const std::string& poster) const {
  const auto it = contacts.find(poster);
  return it == contacts.end() ? 0.0 : it->second;
}

double wallpost_trust(const InteractionLedger& ledger, const std::string& i,
                      const std::string& j) {
  const long n_i = ledger.total(i);
  const double c = ledger.contact_count(i);
  if (n_i <= 0 || c <= 0.0) return 0.0;  // no interaction history
  const double x = static_cast<double>(ledger.count(i, j)) /
                   (static_cast<double>(n_i) / c);
  return 1.0 - std::exp(-ledger.decay_rate * x);
}

double social_trust(double ips, double wall, double eta) {
  return eta * wall + (1.0 - eta) * ips;
}

double eta_schedule(double t_seconds, double activity, const EtaParams& params) {
  if (t_seconds <= 0.0) return 0.0;
  const double time_factor = t_seconds / params.ramp_seconds;
  const double activity_factor =
      params.activity_ref <= 0.0 ? 1.0 : std::min(1.0, activity / params.activity_ref);
  return std::min(1.0, time_factor * activity_factor);
}

double map_combined_trust(long r, long n, double prior_alpha, double prior_beta) {
  if (r < 0 || r > n) throw std::domain_error("map_combined_trust: need 0 <= r <= n");
  if (prior_alpha < 1.0 || prior_beta < 1.0) {
    throw std::domain_error("map_combined_trust: prior parameters below 1");
  }
  const double denom = n + prior_alpha + prior_beta - 2.0;
  if (denom <= 0.0) {
    throw std::domain_error("map_combined_trust: no prior and no data");
  }
  return (r + prior_alpha - 1.0) / denom;
}

double incremental_trust_update(double t_n, long n, double n_prime, Outcome outcome) {
  const double m = n + n_prime;
  if (outcome == Outcome::positive) {
    return (t_n * m + 1.0) / (m + 1.0);
  }
  return t_n * m / (m + 1.0);
}

double trust_mse(long n, double n_prime, double t_star, double t_prime) {
  if (n < 0 || n_prime < 0.0 || n + n_prime <= 0.0) {
    throw std::domain_error("trust_mse: need n + n' > 0");
  }
  const double m = n + n_prime;
  const double bias = t_star - t_prime;
  return (n * t_star * (1.0 - t_star) + n_prime * n_prime * bias * bias) / (m * m);
}

double bootstrap_init(double s0) { return s0; }

double bootstrap_update(double t_t, double b_hat, const BootstrapParams& params) {
  if (params.epsilon < params.zeta) {
    throw std::invalid_argument("bootstrap_update: epsilon < zeta");
  }
  // step(1/2 - B) is 1 only for B strictly below 1/2.
  const double coeff = params.epsilon - (b_hat < 0.5 ? params.zeta : 0.0);
  return coeff * t_t + (1.0 - params.epsilon) * b_hat;
}

double social_refresh(double t_t, double s_t, double rho) {
  return rho * t_t + (1.0 - rho) * s_t;
}

CombinedTrustState CombinedTrustState::from_social_prior(double s, double prior_strength) {
  if (s < 0.0 || s > 1.0) throw std::domain_error("social prior outside [0,1]");
  CombinedTrustState st;
  st.prior_alpha = 1.0 + s * prior_strength;
  st.prior_beta = 1.0 + (1.0 - s) * prior_strength;
  return st;
}

double CombinedTrustState::value() const {
  return map_combined_trust(positives, n, prior_alpha, prior_beta);
}

void CombinedTrustState::observe(Outcome outcome) {
  ++n;
  if (outcome == Outcome::positive) ++positives;
}

}  // namespace trustflow
