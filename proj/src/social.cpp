#include "trustflow/social.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace trustflow {

WallPostParse parse_wallposts(std::istream& in) {
  WallPostParse out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    WallPostRecord rec;
    if (!(ls >> rec.owner)) continue;  // blank line
    if (!(ls >> rec.poster >> rec.timestamp >> rec.content_length) ||
        rec.timestamp < 0 || rec.content_length < 0) {
      out.issues.push_back({line_no, "malformed wall-post record"});
      continue;
    }
    std::string extra;
    if (ls >> extra) {
      out.issues.push_back({line_no, "trailing fields on wall-post record"});
      continue;
    }
    out.records.push_back(std::move(rec));
  }
  return out;
}

std::string serialize_wallposts(const std::vector<WallPostRecord>& records) {
  std::ostringstream out;
  for (const auto& r : records) {
    out << r.owner << ' ' << r.poster << ' ' << r.timestamp << ' '
        << r.content_length << '\n';
  }
  return out.str();
}

InteractionLedger build_ledger(const std::vector<WallPostRecord>& records,
                               const std::map<std::string, double>& contact_counts,
                               double decay_rate) {
  InteractionLedger ledger;
  ledger.decay_rate = decay_rate;
  ledger.contacts = contact_counts;
  for (const auto& r : records) {
    ++ledger.posts[{r.poster, r.owner}];
    ++ledger.totals[r.poster];
  }
  for (const auto& [poster, total] : ledger.totals) {
    const auto it = ledger.contacts.find(poster);
    if (it == ledger.contacts.end() || it->second <= 0.0) {
      throw std::invalid_argument("build_ledger: no contact count for poster " + poster);
    }
  }
  return ledger;
}

std::map<std::string, double> distinct_partner_counts(
    const std::vector<WallPostRecord>& records) {
  std::map<std::string, std::set<std::string>> partners;
  for (const auto& r : records) partners[r.poster].insert(r.owner);
  std::map<std::string, double> out;
  for (const auto& [poster, owners] : partners) {
    out[poster] = static_cast<double>(owners.size());
  }
  return out;
}

std::vector<MonthlyTrust> trust_timeseries(std::vector<WallPostRecord> records,
                                           const std::string& i, const std::string& j,
                                           const std::map<std::string, double>& contacts,
                                           double decay_rate) {
  std::vector<MonthlyTrust> series;
  if (records.empty()) return series;
  std::stable_sort(records.begin(), records.end(),
                   [](const WallPostRecord& a, const WallPostRecord& b) {
                     return a.timestamp < b.timestamp;
                   });
  constexpr long long kMonth = 30LL * 86400LL;
  const long long t0 = records.front().timestamp;
  const long long span = records.back().timestamp - t0;
  const int months = static_cast<int>(span / kMonth) + 1;

  InteractionLedger ledger;
  ledger.decay_rate = decay_rate;
  ledger.contacts = contacts;
  std::size_t next = 0;
  for (int m = 1; m <= months; ++m) {
    const long long cutoff = t0 + static_cast<long long>(m) * kMonth;
    for (; next < records.size() && records[next].timestamp < cutoff; ++next) {
      ++ledger.posts[{records[next].poster, records[next].owner}];
      ++ledger.totals[records[next].poster];
    }
    series.push_back({m, wallpost_trust(ledger, i, j)});
  }
  return series;
}

namespace {

std::vector<std::string> lower_tokens(std::istringstream& ls) {
  std::vector<std::string> out;
  std::string tok;
  while (ls >> tok) {
    std::transform(tok.begin(), tok.end(), tok.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    out.push_back(tok);
  }
  return out;
}

}  // namespace

std::vector<ProfileRecord> parse_profiles(std::istream& in) {
  std::vector<ProfileRecord> out;
  std::set<std::string> seen;
  ProfileRecord* current = nullptr;
  std::string line;
  int line_no = 0;
  std::set<std::string> sections_seen;
  auto finalize = [&]() {
    if (current == nullptr) return;
    for (const char* s : {"activities", "interests", "affiliations", "gender"}) {
      if (!sections_seen.count(s)) current->missing_sections.push_back(s);
    }
    sections_seen.clear();
  };
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "user") {
      std::string id;
      if (!(ls >> id)) {
        throw std::invalid_argument("profile file line " + std::to_string(line_no) +
                                    ": user block without id");
      }
      if (!seen.insert(id).second) {
        throw std::invalid_argument("profile file line " + std::to_string(line_no) +
                                    ": duplicate user block " + id);
      }
      finalize();
      out.emplace_back();
      current = &out.back();
      current->user = id;
      continue;
    }
    if (current == nullptr) {
      throw std::invalid_argument("profile file line " + std::to_string(line_no) +
                                  ": section before any user block");
    }
    if (head == "activities:") {
      current->profile.activities = lower_tokens(ls);
      sections_seen.insert("activities");
    } else if (head == "interests:") {
      current->profile.interests = lower_tokens(ls);
      sections_seen.insert("interests");
    } else if (head == "affiliations:") {
      current->profile.affiliations = lower_tokens(ls);
      sections_seen.insert("affiliations");
    } else if (head == "gender:") {
      const auto toks = lower_tokens(ls);
      current->profile.gender = toks.empty() ? "" : toks.front();
      sections_seen.insert("gender");
    } else {
      throw std::invalid_argument("profile file line " + std::to_string(line_no) +
                                  ": unknown section '" + head + "'");
    }
  }
  finalize();
  return out;
}

std::vector<WallPostRecord> synthetic_wallposts(const SyntheticLedgerConfig& cfg) {
  if (cfg.users < 2) throw std::invalid_argument("synthetic_wallposts: need >= 2 users");
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  constexpr long long kMonth = 30LL * 86400LL;
  std::vector<WallPostRecord> records;
  auto user_id = [](int u) { return "u" + std::to_string(u); };
  for (int m = 0; m < cfg.months; ++m) {
    for (int u = 0; u < cfg.users; ++u) {
      const int posts = static_cast<int>(cfg.posts_per_month);
      for (int p = 0; p < posts; ++p) {
        WallPostRecord rec;
        rec.poster = user_id(u);
        const long long offset =
            static_cast<long long>(unit(rng) * static_cast<double>(kMonth - 1));
        rec.timestamp = static_cast<long long>(m) * kMonth + offset;
        rec.content_length = 1 + static_cast<long>(unit(rng) * 200.0);
        if (u == 0 && unit(rng) < cfg.concentration) {
          rec.owner = user_id(1);
        } else {
          int other = static_cast<int>(unit(rng) * (cfg.users - 1));
          if (other >= u) ++other;
          rec.owner = user_id(other);
        }
        records.push_back(std::move(rec));
      }
    }
  }
  std::stable_sort(records.begin(), records.end(),
                   [](const WallPostRecord& a, const WallPostRecord& b) {
                     return a.timestamp < b.timestamp;
                   });
  return records;
}

}  // namespace trustflow
