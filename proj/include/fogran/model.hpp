#pragma once
// Network model: parameter tuple, demand vectors, subfile labels and the
// per-class subfile size profile every other module consumes.

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fogran/rational.hpp"

namespace fogran {

enum class ConfigIssueCode { InvalidParameter, LibraryTooSmall };

struct ConfigIssue {
  ConfigIssueCode code = ConfigIssueCode::InvalidParameter;
  std::string param;
  std::string reason;
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<ConfigIssue> issues)
      : std::runtime_error(join(issues)), issues_(std::move(issues)) {}

  const std::vector<ConfigIssue>& issues() const { return issues_; }

  bool library_too_small() const {
    for (const auto& i : issues_)
      if (i.code == ConfigIssueCode::LibraryTooSmall) return true;
    return false;
  }

 private:
  static std::string join(const std::vector<ConfigIssue>& issues) {
    std::string msg = "invalid configuration:";
    for (const auto& i : issues) msg += " [" + i.param + ": " + i.reason + "]";
    return msg;
  }
  std::vector<ConfigIssue> issues_;
};

/// Full parameter tuple. Cache sizes and the fronthaul gain are exact
/// rationals; binary floating point never enters this type.
struct NetworkConfig {
  int kt = 1;          // edge node count
  int kr = 1;          // user count
  std::int64_t n = 1;  // library size (files)
  Rational mt;         // per-EN cache size, files
  Rational mr;         // per-user cache size, files
  Rational r;          // fronthaul multiplexing gain

  /// Global normalized EN cache size, kt*mt/n.
  Rational tt() const { return mt * Rational(kt) / Rational(n); }
  /// Global normalized user cache size, kr*mr/n. Reported only; no delivery
  /// formula consumes it.
  Rational tr() const { return mr * Rational(kr) / Rational(n); }
};

inline std::vector<ConfigIssue> config_issues(const NetworkConfig& cfg) {
  std::vector<ConfigIssue> issues;
  auto bad = [&](const std::string& param, const std::string& reason) {
    issues.push_back({ConfigIssueCode::InvalidParameter, param, reason});
  };
  if (cfg.kt < 1) bad("kt", "edge node count must be >= 1");
  if (cfg.kr < 1) bad("kr", "user count must be >= 1");
  if (cfg.n < 1) bad("n", "library must hold at least one file");
  if (cfg.kr >= 1 && cfg.n >= 1 && cfg.n < cfg.kr)
    issues.push_back({ConfigIssueCode::LibraryTooSmall, "n",
                      "library must hold at least one file per user (n >= kr)"});
  if (cfg.mt.is_negative()) bad("mt", "EN cache size must be >= 0");
  if (cfg.n >= 1 && cfg.mt > Rational(cfg.n)) bad("mt", "EN cache cannot exceed the library size");
  if (cfg.mr.is_negative()) bad("mr", "user cache size must be >= 0");
  if (cfg.n >= 1 && cfg.mr > Rational(cfg.n)) bad("mr", "user cache cannot exceed the library size");
  if (cfg.r.is_negative()) bad("r", "fronthaul gain must be >= 0");
  return issues;
}

/// Returns cfg unchanged when every invariant holds; otherwise throws a
/// ConfigError listing every violated constraint.
inline NetworkConfig validate_config(const NetworkConfig& cfg) {
  auto issues = config_issues(cfg);
  if (!issues.empty()) throw ConfigError(std::move(issues));
  return cfg;
}

struct DemandVector {
  std::vector<std::int64_t> files;  // files[u-1] = demand of user u, in [1, n]

  /// All-distinct demands d_u = u: the worst case under n >= kr.
  static DemandVector worst_case(const NetworkConfig& cfg) {
    DemandVector d;
    d.files.reserve(static_cast<std::size_t>(cfg.kr));
    for (int u = 1; u <= cfg.kr; ++u) d.files.push_back(u);
    return d;
  }
};

inline void validate_demand(const NetworkConfig& cfg, const DemandVector& demand) {
  if (static_cast<int>(demand.files.size()) != cfg.kr)
    throw std::invalid_argument("demand vector length must equal kr");
  for (std::int64_t f : demand.files)
    if (f < 1 || f > cfg.n) throw std::invalid_argument("demanded file index out of range");
}

enum class EnTagKind : std::uint8_t { Exclusive, Shared, CloudOnly };

/// Transmitter-side home of a subfile: one EN, all ENs, or the cloud only.
struct EnTag {
  EnTagKind kind = EnTagKind::Exclusive;
  int en = 0;  // 1-based, Exclusive only

  static EnTag exclusive(int en) { return {EnTagKind::Exclusive, en}; }
  static EnTag shared() { return {EnTagKind::Shared, 0}; }
  static EnTag cloud_only() { return {EnTagKind::CloudOnly, 0}; }

  friend bool operator==(const EnTag& a, const EnTag& b) { return a.kind == b.kind && a.en == b.en; }
  friend bool operator!=(const EnTag& a, const EnTag& b) { return !(a == b); }
  // Exclusives in EN order, then the collective tags.
  friend bool operator<(const EnTag& a, const EnTag& b) {
    if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
    return a.en < b.en;
  }

  std::string str() const {
    switch (kind) {
      case EnTagKind::Exclusive: return "EN" + std::to_string(en);
      case EnTagKind::Shared: return "shared";
      default: return "cloud";
    }
  }
};

/// Label of subfile W_{file, tag, users}: users is a bit set over [1, kr]
/// (bit u-1 for user u).
struct SubfileId {
  std::int64_t file = 0;
  EnTag tag;
  std::uint32_t users = 0;

  int class_j() const { return std::popcount(users); }
  bool cached_at(int user) const { return (users >> (user - 1)) & 1u; }

  friend bool operator==(const SubfileId& a, const SubfileId& b) {
    return a.file == b.file && a.tag == b.tag && a.users == b.users;
  }
  friend bool operator!=(const SubfileId& a, const SubfileId& b) { return !(a == b); }
  friend bool operator<(const SubfileId& a, const SubfileId& b) {
    if (a.file != b.file) return a.file < b.file;
    if (a.tag != b.tag) return a.tag < b.tag;
    return a.users < b.users;
  }

  std::string str() const {
    std::string s = "W[" + std::to_string(file) + "|" + tag.str() + "|{";
    bool first = true;
    for (int u = 1; u <= 32; ++u) {
      if ((users >> (u - 1)) & 1u) {
        if (!first) s += ",";
        s += std::to_string(u);
        first = false;
      }
    }
    return s + "}]";
  }
};

/// Normalized per-class subfile sizes f(j) and the residual a requesting
/// user still needs.
struct ClassSizeProfile {
  std::vector<Rational> fraction;  // index j = 0..kr
  Rational residual;               // sum_{j<kr} C(kr-1,j) f(j)
};

inline ClassSizeProfile class_profile(const NetworkConfig& cfg) {
  const Rational p = cfg.mr / Rational(cfg.n);
  const Rational q = Rational(1) - p;
  ClassSizeProfile profile;
  profile.fraction.reserve(static_cast<std::size_t>(cfg.kr) + 1);
  for (int j = 0; j <= cfg.kr; ++j) profile.fraction.push_back(p.pow(j) * q.pow(cfg.kr - j));
  profile.residual = Rational(0);
  for (int j = 0; j <= cfg.kr - 1; ++j)
    profile.residual += Rational(binomial(cfg.kr - 1, j)) * profile.fraction[static_cast<std::size_t>(j)];
  return profile;
}

/// Tag set of the placement regime. With a single EN holding the whole
/// library (kt = 1, t_T = 1) every bit is at "all ENs", so only the shared
/// tag exists; at t_T = 1 with kt >= 2 the shared part has size zero and is
/// omitted.
inline std::vector<EnTag> en_tags(const NetworkConfig& cfg) {
  const Rational tt = cfg.tt();
  std::vector<EnTag> tags;
  if (cfg.kt == 1 && tt == Rational(1)) {
    tags.push_back(EnTag::shared());
    return tags;
  }
  for (int i = 1; i <= cfg.kt; ++i) tags.push_back(EnTag::exclusive(i));
  if (tt > Rational(1)) tags.push_back(EnTag::shared());
  if (tt < Rational(1)) tags.push_back(EnTag::cloud_only());
  return tags;
}

/// Analytic per-file fraction held under a tag (sizes only; positions are a
/// placement concern).
inline Rational tag_fraction(const NetworkConfig& cfg, const EnTag& tag) {
  const Rational tt = cfg.tt();
  const Rational one(1);
  if (cfg.kt == 1 && tt == one) return tag.kind == EnTagKind::Shared ? one : Rational(0);
  if (tt >= one) {
    const Rational den(cfg.kt - 1);
    switch (tag.kind) {
      case EnTagKind::Exclusive: return (one - cfg.mt / Rational(cfg.n)) / den;
      case EnTagKind::Shared: return (tt - one) / den;
      default: return Rational(0);
    }
  }
  switch (tag.kind) {
    case EnTagKind::Exclusive: return cfg.mt / Rational(cfg.n);
    case EnTagKind::CloudOnly: return one - tt;
    default: return Rational(0);
  }
}

/// All subfile labels, ordered by (file, tag, user set as integer). With
/// empty user caches the only user set is the empty one.
inline std::vector<SubfileId> enumerate_subfiles(const NetworkConfig& cfg) {
  if (cfg.kr > 16) throw std::length_error("subfile enumeration supports kr <= 16");
  const auto tags = en_tags(cfg);
  const std::uint32_t mask_end = cfg.mr.is_zero() ? 1u : (1u << cfg.kr);
  std::vector<SubfileId> out;
  out.reserve(static_cast<std::size_t>(cfg.n) * tags.size() * mask_end);
  for (std::int64_t file = 1; file <= cfg.n; ++file)
    for (const auto& tag : tags)
      for (std::uint32_t users = 0; users < mask_end; ++users) out.push_back({file, tag, users});
  return out;
}

}  // namespace fogran
