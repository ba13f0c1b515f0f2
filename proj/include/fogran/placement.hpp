#pragma once
// Placement phase at finite file size F: deterministic centralized EN cache
// layout, decentralized random user caches, and the bit classification the
// scheduler and Monte Carlo harness consume.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fogran/model.hpp"
#include "fogran/rng.hpp"

namespace fogran {

class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::uint64_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

  std::uint64_t size() const { return bits_; }
  bool test(std::uint64_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::uint64_t i) { words_[i >> 6] |= std::uint64_t(1) << (i & 63); }

  void set_all() {
    for (auto& w : words_) w = ~std::uint64_t(0);
    const std::uint64_t tail = bits_ & 63;
    if (tail != 0 && !words_.empty()) words_.back() = (std::uint64_t(1) << tail) - 1;
  }

  std::uint64_t count() const {
    std::uint64_t c = 0;
    for (auto w : words_) c += static_cast<std::uint64_t>(std::popcount(w));
    return c;
  }

  const std::vector<std::uint64_t>& words() const { return words_; }

  friend bool operator==(const BitVec& a, const BitVec& b) { return a.bits_ == b.bits_ && a.words_ == b.words_; }

 private:
  std::uint64_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

struct BitRange {
  std::uint64_t begin = 0;
  std::uint64_t end = 0;
  std::uint64_t size() const { return end - begin; }
  bool empty() const { return begin == end; }
};

enum class EnRegime { Fractional, Split };

/// Per-file EN layout: shared part first, then one exclusive range per EN,
/// then the cloud-only remainder. Ranges partition [0, F) exactly.
struct FilePlacement {
  BitRange shared;
  std::vector<BitRange> exclusive;  // one per EN
  BitRange cloud;
};

struct EnPlacement {
  EnRegime regime = EnRegime::Fractional;
  int kt = 1;
  std::uint64_t file_bits = 0;
  std::vector<FilePlacement> files;  // index file-1
};

class CapacityViolation : public std::runtime_error {
 public:
  CapacityViolation(std::string node, std::uint64_t used, std::uint64_t limit)
      : std::runtime_error("cache capacity violated at " + node + ": used " + std::to_string(used) +
                           " of " + std::to_string(limit) + " bits"),
        node_(std::move(node)), used_(used), limit_(limit) {}
  const std::string& node() const { return node_; }
  std::uint64_t used() const { return used_; }
  std::uint64_t limit() const { return limit_; }

 private:
  std::string node_;
  std::uint64_t used_, limit_;
};

class PartitionViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {
inline std::uint64_t floor_bits(const Rational& x, std::uint64_t file_bits) {
  const Rational scaled = x * Rational(static_cast<std::int64_t>(file_bits));
  const std::int64_t f = scaled.floor();
  return f < 0 ? 0 : static_cast<std::uint64_t>(f);
}
}  // namespace detail

/// Deterministic centralized EN placement. Per-file rounding uses floors
/// with the remainder rotated across ENs file by file, so each EN stays
/// within one bit of its exact share in total.
inline EnPlacement place_en_caches(const NetworkConfig& cfg, std::uint64_t file_bits) {
  if (file_bits < 1) throw std::invalid_argument("file size must be >= 1 bit");
  const Rational tt = cfg.tt();
  const Rational one(1);
  EnPlacement placement;
  placement.kt = cfg.kt;
  placement.file_bits = file_bits;
  placement.regime = tt < one ? EnRegime::Fractional : EnRegime::Split;
  if (cfg.kt >= 2 && tt == one) placement.regime = EnRegime::Fractional;  // boundary canonicalization

  placement.files.reserve(static_cast<std::size_t>(cfg.n));
  for (std::int64_t file = 0; file < cfg.n; ++file) {
    FilePlacement fp;
    fp.exclusive.assign(static_cast<std::size_t>(cfg.kt), BitRange{});
    std::vector<std::uint64_t> excl_size(static_cast<std::size_t>(cfg.kt), 0);
    std::uint64_t shared_size = 0;

    if (cfg.kt == 1 && tt >= one) {
      // t_T = 1 is forced (mt = n): the whole library is shared.
      shared_size = file_bits;
    } else if (tt < one) {
      const std::uint64_t ex = detail::floor_bits(cfg.mt / Rational(cfg.n), file_bits);
      excl_size.assign(static_cast<std::size_t>(cfg.kt), ex);
    } else if (tt == one) {
      const std::uint64_t q = file_bits / static_cast<std::uint64_t>(cfg.kt);
      const std::uint64_t rem = file_bits % static_cast<std::uint64_t>(cfg.kt);
      const std::uint64_t start = (static_cast<std::uint64_t>(file) * rem) % static_cast<std::uint64_t>(cfg.kt);
      for (int i = 0; i < cfg.kt; ++i) excl_size[static_cast<std::size_t>(i)] = q;
      for (std::uint64_t b = 0; b < rem; ++b)
        ++excl_size[static_cast<std::size_t>((start + b) % static_cast<std::uint64_t>(cfg.kt))];
    } else {
      const Rational den(cfg.kt - 1);
      shared_size = detail::floor_bits((tt - one) / den, file_bits);
      const std::uint64_t e = detail::floor_bits((one - cfg.mt / Rational(cfg.n)) / den, file_bits);
      std::uint64_t deficit = file_bits - shared_size - static_cast<std::uint64_t>(cfg.kt) * e;
      const std::uint64_t start =
          deficit == 0 ? 0 : (static_cast<std::uint64_t>(file) * deficit) % static_cast<std::uint64_t>(cfg.kt);
      for (int i = 0; i < cfg.kt; ++i) excl_size[static_cast<std::size_t>(i)] = e;
      for (std::uint64_t b = 0; b < deficit; ++b)
        ++excl_size[static_cast<std::size_t>((start + b) % static_cast<std::uint64_t>(cfg.kt))];
    }

    std::uint64_t cursor = 0;
    fp.shared = {cursor, cursor + shared_size};
    cursor += shared_size;
    for (int i = 0; i < cfg.kt; ++i) {
      fp.exclusive[static_cast<std::size_t>(i)] = {cursor, cursor + excl_size[static_cast<std::size_t>(i)]};
      cursor += excl_size[static_cast<std::size_t>(i)];
    }
    fp.cloud = {cursor, file_bits};
    placement.files.push_back(std::move(fp));
  }
  return placement;
}

/// Decentralized user placement: per (user, file), a uniform random
/// floor(mr*F/n)-subset of [0, F) drawn from the (user, file) substream of
/// the master seed. Bit-identical for identical inputs.
struct UserPlacement {
  int kr = 0;
  std::int64_t n = 0;
  std::uint64_t file_bits = 0;
  std::uint64_t seed = 0;
  std::uint64_t bits_per_file = 0;  // floor(mr*F/n)
  std::vector<BitVec> sets;         // (user-1)*n + (file-1)

  const BitVec& set_for(int user, std::int64_t file) const {
    return sets[static_cast<std::size_t>(user - 1) * static_cast<std::size_t>(n) +
                static_cast<std::size_t>(file - 1)];
  }
  bool cached(int user, std::int64_t file, std::uint64_t bit) const { return set_for(user, file).test(bit); }
};

inline UserPlacement place_user_caches(const NetworkConfig& cfg, std::uint64_t file_bits, std::uint64_t seed) {
  if (file_bits < 1) throw std::invalid_argument("file size must be >= 1 bit");
  UserPlacement up;
  up.kr = cfg.kr;
  up.n = cfg.n;
  up.file_bits = file_bits;
  up.seed = seed;
  up.bits_per_file = detail::floor_bits(cfg.mr / Rational(cfg.n), file_bits);
  up.sets.reserve(static_cast<std::size_t>(cfg.kr) * static_cast<std::size_t>(cfg.n));
  for (int user = 1; user <= cfg.kr; ++user) {
    for (std::int64_t file = 1; file <= cfg.n; ++file) {
      BitVec bv(file_bits);
      if (up.bits_per_file == file_bits) {
        bv.set_all();
      } else if (up.bits_per_file > 0) {
        SplitMix64 rng(substream_seed(seed, static_cast<std::uint64_t>(user), static_cast<std::uint64_t>(file)));
        // Floyd's algorithm: uniform m-subset in O(m) draws.
        for (std::uint64_t j = file_bits - up.bits_per_file; j < file_bits; ++j) {
          const std::uint64_t t = rng.bounded(j + 1);
          if (bv.test(t)) bv.set(j); else bv.set(t);
        }
      }
      up.sets.push_back(std::move(bv));
    }
  }
  return up;
}

/// Observed bit counts per (file, EN tag, user set). Slot layout: 0..kt-1
/// exclusive, kt shared, kt+1 cloud.
struct EmpiricalProfile {
  int kt = 0;
  int kr = 0;
  std::int64_t n = 0;
  std::uint64_t file_bits = 0;
  std::vector<std::vector<std::vector<std::uint64_t>>> counts;  // [file][slot][mask]

  static int slot_of(const EnTag& tag, int kt) {
    switch (tag.kind) {
      case EnTagKind::Exclusive: return tag.en - 1;
      case EnTagKind::Shared: return kt;
      default: return kt + 1;
    }
  }

  std::uint64_t cell(std::int64_t file, const EnTag& tag, std::uint32_t users) const {
    return counts[static_cast<std::size_t>(file - 1)][static_cast<std::size_t>(slot_of(tag, kt))][users];
  }

  /// Bits of a file cached at exactly the given user set, over all tags.
  std::uint64_t file_class_cell(std::int64_t file, std::uint32_t users) const {
    std::uint64_t total = 0;
    for (const auto& slot : counts[static_cast<std::size_t>(file - 1)]) total += slot[users];
    return total;
  }

  /// Bits across all files cached at exactly-j user sets.
  std::uint64_t class_total(int j) const {
    std::uint64_t total = 0;
    for (const auto& file : counts)
      for (const auto& slot : file)
        for (std::uint32_t mask = 0; mask < slot.size(); ++mask)
          if (std::popcount(mask) == j) total += slot[mask];
    return total;
  }
};

/// Assigns every bit of every file to exactly one (tag, user set) cell.
inline EmpiricalProfile classify_bits(const NetworkConfig& cfg, const EnPlacement& en, const UserPlacement& users) {
  if (cfg.kr > 16) throw std::length_error("bit classification supports kr <= 16");
  if (en.file_bits != users.file_bits) throw std::invalid_argument("placements disagree on file size");
  const std::uint64_t file_bits = en.file_bits;
  EmpiricalProfile profile;
  profile.kt = cfg.kt;
  profile.kr = cfg.kr;
  profile.n = cfg.n;
  profile.file_bits = file_bits;
  const std::size_t masks = std::size_t(1) << cfg.kr;
  profile.counts.assign(static_cast<std::size_t>(cfg.n),
                        std::vector<std::vector<std::uint64_t>>(static_cast<std::size_t>(cfg.kt) + 2,
                                                                std::vector<std::uint64_t>(masks, 0)));

  std::vector<const std::vector<std::uint64_t>*> user_words(static_cast<std::size_t>(cfg.kr));
  for (std::int64_t file = 1; file <= cfg.n; ++file) {
    for (int u = 1; u <= cfg.kr; ++u)
      user_words[static_cast<std::size_t>(u - 1)] = &users.set_for(u, file).words();
    const FilePlacement& fp = en.files[static_cast<std::size_t>(file - 1)];
    auto& file_counts = profile.counts[static_cast<std::size_t>(file - 1)];

    auto scan = [&](const BitRange& range, int slot) {
      auto& slot_counts = file_counts[static_cast<std::size_t>(slot)];
      for (std::uint64_t b = range.begin; b < range.end; ++b) {
        std::uint32_t mask = 0;
        const std::uint64_t word = b >> 6;
        const std::uint64_t bit = b & 63;
        for (int u = 0; u < cfg.kr; ++u)
          mask |= static_cast<std::uint32_t>(((*user_words[static_cast<std::size_t>(u)])[word] >> bit) & 1u) << u;
        ++slot_counts[mask];
      }
    };

    scan(fp.shared, cfg.kt);
    for (int i = 0; i < cfg.kt; ++i) scan(fp.exclusive[static_cast<std::size_t>(i)], i);
    scan(fp.cloud, cfg.kt + 1);
  }
  return profile;
}

struct CapacityReport {
  struct Node {
    std::string name;
    std::uint64_t used = 0;
    std::uint64_t limit = 0;
    double utilization = 0.0;
  };
  std::vector<Node> nodes;
};

/// Checks the per-file partition, per-EN capacity (within rounding slack)
/// and per-user capacity; returns per-node utilization.
inline CapacityReport verify_capacity(const EnPlacement& en, const UserPlacement& users,
                                      const NetworkConfig& cfg, std::uint64_t file_bits) {
  CapacityReport report;
  if (en.file_bits != file_bits || users.file_bits != file_bits)
    throw std::invalid_argument("placements disagree on file size");

  for (std::int64_t file = 1; file <= cfg.n; ++file) {
    const FilePlacement& fp = en.files[static_cast<std::size_t>(file - 1)];
    std::vector<BitRange> ranges;
    if (!fp.shared.empty()) ranges.push_back(fp.shared);
    for (const auto& r : fp.exclusive)
      if (!r.empty()) ranges.push_back(r);
    if (!fp.cloud.empty()) ranges.push_back(fp.cloud);
    std::sort(ranges.begin(), ranges.end(), [](const BitRange& a, const BitRange& b) { return a.begin < b.begin; });
    std::uint64_t cursor = 0;
    for (const auto& r : ranges) {
      if (r.begin != cursor || r.end < r.begin)
        throw PartitionViolation("EN ranges of file " + std::to_string(file) +
                                 " do not partition the file (gap or overlap at bit " + std::to_string(cursor) + ")");
      cursor = r.end;
    }
    if (cursor != file_bits)
      throw PartitionViolation("EN ranges of file " + std::to_string(file) + " cover " + std::to_string(cursor) +
                               " of " + std::to_string(file_bits) + " bits");
  }

  const Rational per_file_exact = cfg.mt * Rational(static_cast<std::int64_t>(file_bits)) / Rational(cfg.n);
  const std::uint64_t per_file_ceil = per_file_exact.is_negative() ? 0 : static_cast<std::uint64_t>(per_file_exact.ceil());
  const Rational en_total_exact = cfg.mt * Rational(static_cast<std::int64_t>(file_bits));
  // Rounding slack: < kt bits per file, <= n*kt bits per EN in total.
  const Rational en_slack = Rational(cfg.n) * Rational(cfg.kt);

  for (int i = 1; i <= cfg.kt; ++i) {
    std::uint64_t total = 0;
    for (std::int64_t file = 1; file <= cfg.n; ++file) {
      const FilePlacement& fp = en.files[static_cast<std::size_t>(file - 1)];
      const std::uint64_t used = fp.shared.size() + fp.exclusive[static_cast<std::size_t>(i - 1)].size();
      if (used > per_file_ceil)
        throw CapacityViolation("EN" + std::to_string(i) + "/file" + std::to_string(file), used, per_file_ceil);
      total += used;
    }
    if (Rational(static_cast<std::int64_t>(total)) > en_total_exact + en_slack)
      throw CapacityViolation("EN" + std::to_string(i), total,
                              static_cast<std::uint64_t>((en_total_exact + en_slack).floor()));
    CapacityReport::Node node;
    node.name = "EN" + std::to_string(i);
    node.used = total;
    node.limit = en_total_exact.is_zero() ? 0 : static_cast<std::uint64_t>(en_total_exact.ceil());
    node.utilization = en_total_exact.is_zero() ? 0.0 : static_cast<double>(total) / en_total_exact.to_double();
    report.nodes.push_back(std::move(node));
  }

  const std::uint64_t user_limit =
      detail::floor_bits(cfg.mr, file_bits);  // floor(mr*F)
  for (int u = 1; u <= cfg.kr; ++u) {
    std::uint64_t total = 0;
    for (std::int64_t file = 1; file <= cfg.n; ++file) total += users.set_for(u, file).count();
    if (total > user_limit) throw CapacityViolation("U" + std::to_string(u), total, user_limit);
    CapacityReport::Node node;
    node.name = "U" + std::to_string(u);
    node.used = total;
    node.limit = user_limit;
    node.utilization = user_limit == 0 ? 0.0 : static_cast<double>(total) / static_cast<double>(user_limit);
    report.nodes.push_back(std::move(node));
  }
  return report;
}

}  // namespace fogran
