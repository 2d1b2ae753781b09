#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "trustflow/trust.hpp"

namespace trustflow {

struct WallPostRecord {
  std::string owner;   // whose wall
  std::string poster;  // who posted
  long long timestamp = 0;
  long content_length = 0;
};

struct ParseIssue {
  int line = 0;
  std::string message;
};

struct WallPostParse {
  std::vector<WallPostRecord> records;
  std::vector<ParseIssue> issues;
};

// `owner poster timestamp content_length` per line, '#' comments. Malformed
// lines are reported, not fatal.
WallPostParse parse_wallposts(std::istream& in);
std::string serialize_wallposts(const std::vector<WallPostRecord>& records);

InteractionLedger build_ledger(const std::vector<WallPostRecord>& records,
                               const std::map<std::string, double>& contact_counts,
                               double decay_rate = 1.0);

// Distinct wall partners per poster; the fallback when contact counts are
// not supplied.
std::map<std::string, double> distinct_partner_counts(
    const std::vector<WallPostRecord>& records);

struct MonthlyTrust {
  int month = 0;  // 30-day buckets from the first record
  double trust = 0.0;
};

std::vector<MonthlyTrust> trust_timeseries(std::vector<WallPostRecord> records,
                                           const std::string& i, const std::string& j,
                                           const std::map<std::string, double>& contacts,
                                           double decay_rate = 1.0);

struct ProfileRecord {
  std::string user;
  Profile profile;
  std::vector<std::string> missing_sections;
};

// `user <id>` blocks with `activities:`, `interests:`, `affiliations:`,
// `gender:` lines. Duplicate user blocks are a format error.
std::vector<ProfileRecord> parse_profiles(std::istream& in);

struct SyntheticLedgerConfig {
  int users = 2;
  int months = 6;
  double posts_per_month = 20.0;
  double concentration = 1.0;  // fraction of user 0's posts aimed at user 1
  double contact_count = 20.0;
  std::uint64_t seed = 1;
};

// Synthetic wall-post trace for the saturation experiment: user u0 posts on
// u1's wall at the configured rate, the rest of the population posts
// uniformly at random.
std::vector<WallPostRecord> synthetic_wallposts(const SyntheticLedgerConfig& cfg);

}  // namespace trustflow
