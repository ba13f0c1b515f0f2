#pragma once
// DoF-level transmission schedules: cyclic IC groupings and ZF cache-cover
// blocks built against an inventory (analytic fractions or classified bits),
// interference-compatibility validation, and reconciliation of achieved
// delivery time against the analytic NDT.

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fogran/ndt.hpp"
#include "fogran/placement.hpp"

namespace fogran {

enum class Technique { IaIc, ZfIc, SoftTransfer };
enum class TxSet { SingleEn, AllEns, CloudViaEns };

inline const char* technique_name(Technique t) {
  switch (t) {
    case Technique::IaIc: return "IA-IC";
    case Technique::ZfIc: return "ZF-IC";
    default: return "SoftTransfer";
  }
}

class RegimeMismatch : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Internal bug signal: a constructed schedule failed its own checks.
class ValidationFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ReconcileFailure : public std::runtime_error {
 public:
  ReconcileFailure(std::string component, const Rational& achieved, const Rational& analytic)
      : std::runtime_error("reconciliation failed for " + component + ": achieved " + achieved.str() +
                           " vs analytic " + analytic.str()),
        component_(std::move(component)), achieved_(achieved), analytic_(analytic) {}
  const std::string& component() const { return component_; }
  const Rational& achieved() const { return achieved_; }
  const Rational& analytic() const { return analytic_; }

 private:
  std::string component_;
  Rational achieved_, analytic_;
};

/// One scheduled unit: a subfile (or the part_index-th of part_count equal
/// slices of it) sent to rx. A receiver is never scheduled for content it
/// caches.
struct Stream {
  SubfileId subfile;
  int rx = 0;
  TxSet tx = TxSet::SingleEn;
  int tx_en = 0;  // 1-based, SingleEn only
  int part_index = 0;
  int part_count = 1;
  Rational size;  // normalized bits (fraction of one file)
};

struct TransmissionBlock {
  Technique technique = Technique::IaIc;
  int class_j = 0;
  bool aligned = false;  // X-channel IA regime, DoF credited analytically
  Rational dof;
  std::vector<Stream> streams;

  Rational total_size() const {
    Rational t(0);
    for (const auto& s : streams) t += s.size;
    return t;
  }
  Rational duration() const { return total_size() / dof; }
};

/// Pass/fail with the violating (stream, receiver) pair as witness.
struct BlockCheck {
  bool pass = true;
  int stream_index = -1;
  int receiver = 0;
  std::string detail;
};

/// A block is compatible when every receiver's interference is removed by
/// its cache or by transmitter-side nulling: no nulls for pure-IC blocks,
/// at most min(kt, receivers)-1 per stream for ZF and soft-transfer blocks.
/// Aligned IA blocks carry an imported DoF and are checked structurally.
inline BlockCheck validate_block(const NetworkConfig& cfg, const TransmissionBlock& block) {
  auto fail = [](int stream, int receiver, std::string detail) {
    return BlockCheck{false, stream, receiver, std::move(detail)};
  };
  for (std::size_t i = 0; i < block.streams.size(); ++i) {
    const Stream& s = block.streams[i];
    if (s.rx >= 1 && s.subfile.cached_at(s.rx))
      return fail(static_cast<int>(i), s.rx, "receiver already caches its stream");
  }
  if (!block.aligned) {
    std::vector<int> receivers;
    for (const auto& s : block.streams)
      if (!s.size.is_zero()) receivers.push_back(s.rx);
    std::sort(receivers.begin(), receivers.end());
    receivers.erase(std::unique(receivers.begin(), receivers.end()), receivers.end());
    const int null_budget = block.technique == Technique::IaIc
                                ? 0
                                : std::max(0, std::min(cfg.kt, static_cast<int>(receivers.size())) - 1);
    for (std::size_t i = 0; i < block.streams.size(); ++i) {
      const Stream& s = block.streams[i];
      if (s.size.is_zero()) continue;
      std::vector<int> uncovered;
      for (int u : receivers)
        if (u != s.rx && !s.subfile.cached_at(u)) uncovered.push_back(u);
      if (static_cast<int>(uncovered.size()) > null_budget)
        return fail(static_cast<int>(i), uncovered[static_cast<std::size_t>(null_budget)],
                    "interference not cancellable at receiver");
    }
  }
  for (std::size_t i = 0; i < block.streams.size(); ++i) {
    const Stream& s = block.streams[i];
    if (s.subfile.class_j() != block.class_j)
      return fail(static_cast<int>(i), s.rx, "stream class does not match block class");
  }
  return {};
}

/// Subfile sizes seen by the scheduler: exact analytic fractions, or the
/// classified bit counts of a finite-F placement normalized by F.
class Inventory {
 public:
  static Inventory analytic(const NetworkConfig& cfg) {
    Inventory inv;
    inv.cfg_ = cfg;
    inv.profile_ = class_profile(cfg);
    return inv;
  }

  static Inventory empirical(const NetworkConfig& cfg, const EmpiricalProfile& profile) {
    Inventory inv;
    inv.cfg_ = cfg;
    inv.bit_level_ = true;
    inv.file_bits_ = profile.file_bits;
    inv.counts_ = profile.counts;
    return inv;
  }

  const NetworkConfig& cfg() const { return cfg_; }
  bool bit_level() const { return bit_level_; }
  std::uint64_t file_bits() const { return file_bits_; }

  std::uint64_t bits(const SubfileId& id) const {
    return counts_[static_cast<std::size_t>(id.file - 1)]
                  [static_cast<std::size_t>(EmpiricalProfile::slot_of(id.tag, cfg_.kt))][id.users];
  }

  Rational size(const SubfileId& id) const {
    if (!bit_level_) return tag_fraction(cfg_, id.tag) * profile_.fraction[static_cast<std::size_t>(id.class_j())];
    return Rational(static_cast<std::int64_t>(bits(id)), static_cast<std::int64_t>(file_bits_));
  }

 private:
  NetworkConfig cfg_;
  bool bit_level_ = false;
  std::uint64_t file_bits_ = 0;
  ClassSizeProfile profile_;
  std::vector<std::vector<std::vector<std::uint64_t>>> counts_;
};

struct NeededSubfile {
  SubfileId subfile;
  int rx = 0;
};

/// Every subfile a user still needs: labels of its demanded file whose user
/// set excludes it. Empty caches leave only the empty user set; full caches
/// leave nothing.
inline std::vector<NeededSubfile> needed_subfiles(const NetworkConfig& cfg, const DemandVector& demand) {
  if (cfg.kr > 16) throw std::length_error("schedule construction supports kr <= 16");
  std::vector<NeededSubfile> needed;
  if (cfg.mr == Rational(cfg.n)) return needed;
  const auto tags = en_tags(cfg);
  const std::uint32_t mask_end = cfg.mr.is_zero() ? 1u : (1u << cfg.kr);
  for (int u = 1; u <= cfg.kr; ++u) {
    const std::int64_t file = demand.files[static_cast<std::size_t>(u - 1)];
    for (const auto& tag : tags)
      for (std::uint32_t mask = 0; mask < mask_end; ++mask)
        if (!((mask >> (u - 1)) & 1u)) needed.push_back({{file, tag, mask}, u});
  }
  return needed;
}

namespace detail {

inline bool pure_ic_regime(const NetworkConfig& cfg, int j) {
  return Rational(j + 1) >= Rational(static_cast<std::int64_t>(cfg.kt) * cfg.kr, cfg.kt + cfg.kr - j);
}

inline std::vector<std::uint32_t> class_masks_excluding(int kr, int j, int user) {
  std::vector<std::uint32_t> masks;
  for (std::uint32_t mask = 0; mask < (1u << kr); ++mask)
    if (std::popcount(mask) == j && !((mask >> (user - 1)) & 1u)) masks.push_back(mask);
  return masks;
}

// All m-subsets of {1..kr}, ascending.
inline std::vector<std::vector<int>> subsets(int kr, int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> pick(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) pick[static_cast<std::size_t>(i)] = i + 1;
  while (true) {
    out.push_back(pick);
    int i = m - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == kr - (m - 1 - i)) --i;
    if (i < 0) break;
    ++pick[static_cast<std::size_t>(i)];
    for (int k = i + 1; k < m; ++k) pick[static_cast<std::size_t>(k)] = pick[static_cast<std::size_t>(k - 1)] + 1;
  }
  return out;
}

// Cyclic m-tuples over {1..kr}, one representative per rotation class:
// the smallest member leads, the rest permute.
inline std::vector<std::vector<int>> cyclic_tuples(int kr, int m) {
  std::vector<std::vector<int>> out;
  for (const auto& base : subsets(kr, m)) {
    std::vector<int> rest(base.begin() + 1, base.end());
    std::sort(rest.begin(), rest.end());
    do {
      std::vector<int> tuple;
      tuple.reserve(static_cast<std::size_t>(m));
      tuple.push_back(base[0]);
      tuple.insert(tuple.end(), rest.begin(), rest.end());
      out.push_back(std::move(tuple));
    } while (std::next_permutation(rest.begin(), rest.end()));
  }
  return out;
}

inline std::uint64_t tuple_cover_multiplicity(int kr, int j, int m) {
  // Patterns covering one (receiver, set) pair: j! orderings of the set as
  // successors times (kr-1-j)!/(kr-m)! fillers.
  unsigned __int128 lambda = 1;
  for (int i = 2; i <= j; ++i) lambda *= static_cast<unsigned>(i);
  for (int v = kr - m + 1; v <= kr - 1 - j; ++v) lambda *= static_cast<unsigned>(v);
  if (lambda > 1000000) throw std::length_error("schedule construction grid too large");
  return static_cast<std::uint64_t>(lambda);
}

struct PartLedger {
  // (rx, mask) -> parts consumed so far for one (tag, class) inventory.
  std::map<std::pair<int, std::uint32_t>, std::uint64_t> used;
};

inline Rational part_size(const Inventory& inv, const SubfileId& id, std::uint64_t lambda, std::uint64_t index) {
  if (lambda == 1) return inv.size(id);
  if (!inv.bit_level()) return inv.size(id) / Rational(static_cast<std::int64_t>(lambda));
  const std::uint64_t bits = inv.bits(id);
  const std::uint64_t base = bits / lambda;
  const std::uint64_t part = base + (index < bits % lambda ? 1 : 0);
  return Rational(static_cast<std::int64_t>(part), static_cast<std::int64_t>(inv.file_bits()));
}

}  // namespace detail

/// Pure-IC cyclic grouping for class j over the given tags: for each
/// (j+1)-subset of users every member's stream is cached by all the others,
/// and tag assignments rotate so each (user, tag, set) label lands in
/// exactly one block. Requires the regime where the block DoF is j+1.
inline std::vector<TransmissionBlock> build_ic_blocks(const NetworkConfig& cfg, const Inventory& inv,
                                                      const DemandVector& demand, int j,
                                                      const std::vector<EnTag>& tags) {
  if (!detail::pure_ic_regime(cfg, j))
    throw RegimeMismatch("class " + std::to_string(j) + " is IA-dominated; pure-IC grouping does not apply");
  std::vector<TransmissionBlock> blocks;
  if (j > cfg.kr - 1 || tags.empty()) return blocks;
  const int ntags = static_cast<int>(tags.size());
  for (const auto& group : detail::subsets(cfg.kr, j + 1)) {
    std::uint32_t group_mask = 0;
    for (int u : group) group_mask |= 1u << (u - 1);
    for (int rotation = 0; rotation < ntags; ++rotation) {
      TransmissionBlock block;
      block.technique = Technique::IaIc;
      block.class_j = j;
      block.dof = Rational(j + 1);
      for (int p = 0; p <= j; ++p) {
        const int rx = group[static_cast<std::size_t>(p)];
        const EnTag& tag = tags[static_cast<std::size_t>((p + rotation) % ntags)];
        Stream s;
        s.subfile = {demand.files[static_cast<std::size_t>(rx - 1)], tag, group_mask & ~(1u << (rx - 1))};
        s.rx = rx;
        s.tx = TxSet::SingleEn;
        s.tx_en = tag.kind == EnTagKind::Exclusive ? tag.en : 1;
        s.size = inv.size(s.subfile);
        block.streams.push_back(std::move(s));
      }
      if (!block.total_size().is_zero()) blocks.push_back(std::move(block));
    }
  }
  return blocks;
}

/// Default IC grouping over the EN-distributed (exclusive) inventory.
inline std::vector<TransmissionBlock> build_ic_blocks(const NetworkConfig& cfg, const Inventory& inv,
                                                      const DemandVector& demand, int j) {
  std::vector<EnTag> tags;
  for (const auto& tag : en_tags(cfg))
    if (tag.kind == EnTagKind::Exclusive) tags.push_back(tag);
  return build_ic_blocks(cfg, inv, demand, j, tags);
}

/// Single accounting block for an IA-dominated class: every class-j label of
/// the EN-distributed inventory at the X-channel sum DoF.
inline TransmissionBlock build_aligned_block(const NetworkConfig& cfg, const Inventory& inv,
                                             const DemandVector& demand, int j) {
  TransmissionBlock block;
  block.technique = Technique::IaIc;
  block.class_j = j;
  block.aligned = true;
  block.dof = Rational(static_cast<std::int64_t>(cfg.kt) * cfg.kr, cfg.kt + cfg.kr - j);
  for (int rx = 1; rx <= cfg.kr; ++rx) {
    for (const std::uint32_t mask : detail::class_masks_excluding(cfg.kr, j, rx)) {
      for (int en = 1; en <= cfg.kt; ++en) {
        Stream s;
        s.subfile = {demand.files[static_cast<std::size_t>(rx - 1)], EnTag::exclusive(en), mask};
        s.rx = rx;
        s.tx = TxSet::SingleEn;
        s.tx_en = en;
        s.size = inv.size(s.subfile);
        block.streams.push_back(std::move(s));
      }
    }
  }
  return block;
}

/// ZF / soft-transfer cyclic cache-cover blocks for class j over the given
/// tags: blocks of m = min(kt+j, kr) receivers where each receiver's stream
/// is cached at its j cyclic successors and nulled at the rest. Every
/// (receiver, set) label is covered by splitting it equally across the
/// cyclic patterns that contain it, so class duration is exactly
/// (class bits)/m in both inventory modes.
inline std::vector<TransmissionBlock> build_zf_blocks(const NetworkConfig& cfg, const Inventory& inv,
                                                      const DemandVector& demand, int j, Technique technique,
                                                      const std::vector<EnTag>& tags) {
  if (technique == Technique::IaIc) throw std::invalid_argument("cache-cover grouping is for ZF and soft-transfer");
  const int m = static_cast<int>(std::min<std::int64_t>(cfg.kt + j, cfg.kr));
  const std::uint64_t lambda = detail::tuple_cover_multiplicity(cfg.kr, j, m);
  const auto patterns = detail::cyclic_tuples(cfg.kr, m);
  std::vector<TransmissionBlock> blocks;
  for (const auto& tag : tags) {
    detail::PartLedger ledger;
    for (const auto& tuple : patterns) {
      TransmissionBlock block;
      block.technique = technique;
      block.class_j = j;
      block.dof = Rational(m);
      for (int i = 0; i < m; ++i) {
        const int rx = tuple[static_cast<std::size_t>(i)];
        std::uint32_t mask = 0;
        for (int step = 1; step <= j; ++step)
          mask |= 1u << (tuple[static_cast<std::size_t>((i + step) % m)] - 1);
        Stream s;
        s.subfile = {demand.files[static_cast<std::size_t>(rx - 1)], tag, mask};
        s.rx = rx;
        s.tx = technique == Technique::ZfIc ? TxSet::AllEns : TxSet::CloudViaEns;
        const std::uint64_t index = ledger.used[{rx, mask}]++;
        s.part_index = static_cast<int>(index);
        s.part_count = static_cast<int>(lambda);
        s.size = detail::part_size(inv, s.subfile, lambda, index);
        block.streams.push_back(std::move(s));
      }
      if (!block.total_size().is_zero()) blocks.push_back(std::move(block));
    }
    for (const auto& [key, used] : ledger.used)
      if (used != lambda)
        throw ValidationFailure("cache-cover pattern sweep left subfile parts unconsumed");
  }
  return blocks;
}

/// Ordered transmission blocks plus fronthaul accounting for one delivery.
struct Schedule {
  NetworkConfig cfg;
  Scheme scheme = Scheme::EdgeOnly;
  TxMode mode = TxMode::Serial;
  bool bit_level = false;
  std::uint64_t file_bits = 0;
  std::vector<TransmissionBlock> blocks;
  std::vector<Rational> fronthaul_load;  // per EN, normalized bits

  Rational achieved_delta_e() const {
    Rational t(0);
    for (const auto& b : blocks) t += b.duration();
    return t;
  }

  Delay achieved_delta_f() const {
    Rational max_load(0);
    for (const auto& l : fronthaul_load) max_load = Rational::max(max_load, l);
    if (max_load.is_zero()) return Delay::of(Rational(0));
    if (cfg.r.is_zero()) return Delay::inf();
    return Delay::of(max_load / cfg.r);
  }

  Delay achieved_total() const {
    const Delay e = Delay::of(achieved_delta_e());
    return mode == TxMode::Serial ? achieved_delta_f() + e : Delay::max(achieved_delta_f(), e);
  }

  Rational technique_class_total(Technique technique, int j) const {
    Rational t(0);
    for (const auto& b : blocks)
      if (b.technique == technique && b.class_j == j) t += b.duration();
    return t;
  }
};

/// Builds the full schedule for one (scheme, mode): IA-IC blocks for the
/// EN-distributed inventory, ZF-IC for the shared part, soft-transfer for
/// whatever the cloud must push. Every block passes validate_block.
inline Schedule build_schedule(const NetworkConfig& cfg, const Inventory& inv, const DemandVector& demand,
                               Scheme scheme, TxMode mode) {
  validate_demand(cfg, demand);
  const Rational tt = cfg.tt();
  const Rational one(1);
  const auto tags = en_tags(cfg);

  std::vector<EnTag> exclusive_tags, shared_tags, cloud_tags;
  for (const auto& tag : tags) {
    if (tag.kind == EnTagKind::Exclusive) exclusive_tags.push_back(tag);
    if (tag.kind == EnTagKind::Shared) shared_tags.push_back(tag);
    if (tag.kind == EnTagKind::CloudOnly) cloud_tags.push_back(tag);
  }

  const auto needed = needed_subfiles(cfg, demand);
  auto needed_total = [&](const std::vector<EnTag>& subset) {
    Rational t(0);
    for (const auto& item : needed)
      for (const auto& tag : subset)
        if (item.subfile.tag == tag) t += inv.size(item.subfile);
    return t;
  };

  if (scheme == Scheme::EdgeOnly && tt < one)
    throw InfeasibleEdgeOnly("requires t_T >= 1 (EN caches must collectively hold the library)");
  if (scheme == Scheme::Hybrid && tt > one) throw InfeasibleHybrid("applies only when t_T <= 1");
  if (scheme == Scheme::CloudOnly && cfg.r.is_zero() && !needed_total(tags).is_zero())
    throw InfeasibleCloudOnly("requires fronthaul capacity r > 0");
  if (scheme == Scheme::Hybrid && cfg.r.is_zero() && !needed_total(cloud_tags).is_zero())
    throw InfeasibleHybrid("requires fronthaul capacity r > 0 when t_T < 1");

  Schedule schedule;
  schedule.cfg = cfg;
  schedule.scheme = scheme;
  schedule.mode = mode;
  schedule.bit_level = inv.bit_level();
  schedule.file_bits = inv.file_bits();

  // The IA-carried inventory for the hybrid scheme is the EN-cached part.
  // With a single EN at t_T = 1 the whole (shared-tagged) library plays that
  // role, and the joint IC DoF j+1 coincides with the per-class formula.
  const std::vector<EnTag>& hybrid_ia_tags =
      (cfg.kt == 1 && tt == one) ? shared_tags : exclusive_tags;
  auto add_ia = [&](int j, const std::vector<EnTag>& tags) {
    if (tags.empty()) return;
    if (detail::pure_ic_regime(cfg, j)) {
      auto blocks = build_ic_blocks(cfg, inv, demand, j, tags);
      for (auto& b : blocks) schedule.blocks.push_back(std::move(b));
    } else {
      auto block = build_aligned_block(cfg, inv, demand, j);
      if (!block.total_size().is_zero()) schedule.blocks.push_back(std::move(block));
    }
  };
  auto add_cover = [&](int j, Technique technique, const std::vector<EnTag>& subset) {
    if (subset.empty()) return;
    auto blocks = build_zf_blocks(cfg, inv, demand, j, technique, subset);
    for (auto& b : blocks) schedule.blocks.push_back(std::move(b));
  };

  const int max_class = cfg.mr.is_zero() ? 0 : cfg.kr - 1;
  const bool nothing_needed = cfg.mr == Rational(cfg.n);
  for (int j = 0; j <= max_class && !nothing_needed; ++j) {
    switch (scheme) {
      case Scheme::EdgeOnly:
        add_ia(j, exclusive_tags);
        add_cover(j, Technique::ZfIc, shared_tags);
        break;
      case Scheme::CloudOnly:
        add_cover(j, Technique::SoftTransfer, tags);
        break;
      case Scheme::Hybrid:
        add_ia(j, hybrid_ia_tags);
        add_cover(j, Technique::SoftTransfer, cloud_tags);
        break;
    }
  }

  Rational soft_total(0);
  for (const auto& b : schedule.blocks)
    if (b.technique == Technique::SoftTransfer) soft_total += b.total_size();
  schedule.fronthaul_load.assign(static_cast<std::size_t>(cfg.kt), soft_total / Rational(cfg.kt));

  for (const auto& b : schedule.blocks) {
    const auto check = validate_block(cfg, b);
    if (!check.pass)
      throw ValidationFailure("constructed block failed validation: " + check.detail + " (stream " +
                              std::to_string(check.stream_index + 1) + ", receiver U" +
                              std::to_string(check.receiver) + ")");
  }
  return schedule;
}

/// Verifies that stream sizes cover every needed subfile exactly once and
/// touch nothing else. Throws ValidationFailure with a description.
inline void verify_coverage(const NetworkConfig& cfg, const Inventory& inv, const DemandVector& demand,
                            const Schedule& schedule) {
  std::map<std::pair<int, SubfileId>, Rational> covered;
  for (const auto& b : schedule.blocks)
    for (const auto& s : b.streams) covered[{s.rx, s.subfile}] += s.size;

  std::map<std::pair<int, SubfileId>, Rational> required;
  for (const auto& item : needed_subfiles(cfg, demand)) {
    const Rational size = inv.size(item.subfile);
    if (!size.is_zero()) required[{item.rx, item.subfile}] = size;
  }

  for (const auto& [key, size] : covered) {
    if (size.is_zero()) continue;
    auto it = required.find(key);
    if (it == required.end())
      throw ValidationFailure("schedule delivers a subfile nobody needs: " + key.second.str() + " to U" +
                              std::to_string(key.first));
    if (it->second != size)
      throw ValidationFailure("coverage mismatch for " + key.second.str() + " to U" + std::to_string(key.first) +
                              ": delivered " + size.str() + " of " + it->second.str());
    required.erase(it);
  }
  if (!required.empty()) {
    const auto& [key, size] = *required.begin();
    throw ValidationFailure("schedule misses " + key.second.str() + " for U" + std::to_string(key.first) +
                            " (size " + size.str() + ")");
  }
}

struct ReconcileRow {
  Technique technique = Technique::IaIc;
  int j = 0;
  Rational achieved;
  Rational analytic;
};

struct ReconcileReport {
  bool bit_level = false;
  std::vector<ReconcileRow> rows;
  Rational achieved_e, analytic_e;
  Rational achieved_f, analytic_f;
  double rel_gap_e = 0.0;
  double rel_gap_f = 0.0;
};

namespace detail {
// |achieved - analytic| <= c * analytic / sqrt(F), checked exactly as
// (diff^2 * F) <= c^2 * analytic^2.
inline bool within_statistical(const Rational& achieved, const Rational& analytic, std::uint64_t file_bits,
                               std::int64_t c = 10) {
  const Rational diff = achieved - analytic;
  return diff * diff * Rational(static_cast<std::int64_t>(file_bits)) <= Rational(c * c) * analytic * analytic;
}
inline double rel_gap(const Rational& achieved, const Rational& analytic) {
  if (analytic.is_zero()) return achieved.is_zero() ? 0.0 : 1.0;
  return ((achieved - analytic) / analytic).to_double();
}
}  // namespace detail

/// Compares achieved against analytic deltas: exact equality for analytic
/// inventories, a 10*F^(-1/2) relative bound for bit-level ones. Throws
/// ReconcileFailure on breach; per-class rows are informational.
inline ReconcileReport reconcile(const Schedule& schedule, const SchemeNdt& analytic) {
  if (!analytic.feasible) throw std::invalid_argument("cannot reconcile against an infeasible scheme");
  ReconcileReport report;
  report.bit_level = schedule.bit_level;

  for (const auto& c : analytic.per_class) {
    auto push = [&](Technique technique, const Rational& value) {
      ReconcileRow row;
      row.technique = technique;
      row.j = c.j;
      row.analytic = value;
      row.achieved = schedule.technique_class_total(technique, c.j);
      report.rows.push_back(std::move(row));
    };
    push(Technique::IaIc, c.ia_ic);
    push(Technique::ZfIc, c.zf_ic);
    push(Technique::SoftTransfer, c.soft_edge);
  }

  report.achieved_e = schedule.achieved_delta_e();
  report.analytic_e = analytic.delta_e.value;
  const Delay achieved_f = schedule.achieved_delta_f();
  if (!achieved_f.finite()) throw ReconcileFailure("delta_f", Rational(-1), analytic.delta_f.value);
  report.achieved_f = achieved_f.value;
  report.analytic_f = analytic.delta_f.value;
  report.rel_gap_e = detail::rel_gap(report.achieved_e, report.analytic_e);
  report.rel_gap_f = detail::rel_gap(report.achieved_f, report.analytic_f);

  if (!schedule.bit_level) {
    if (report.achieved_e != report.analytic_e)
      throw ReconcileFailure("delta_e", report.achieved_e, report.analytic_e);
    if (report.achieved_f != report.analytic_f)
      throw ReconcileFailure("delta_f", report.achieved_f, report.analytic_f);
    for (const auto& row : report.rows)
      if (row.achieved != row.analytic)
        throw ReconcileFailure(std::string(technique_name(row.technique)) + " class " + std::to_string(row.j),
                               row.achieved, row.analytic);
  } else {
    if (!detail::within_statistical(report.achieved_e, report.analytic_e, schedule.file_bits))
      throw ReconcileFailure("delta_e", report.achieved_e, report.analytic_e);
    if (!detail::within_statistical(report.achieved_f, report.analytic_f, schedule.file_bits))
      throw ReconcileFailure("delta_f", report.achieved_f, report.analytic_f);
  }
  return report;
}

}  // namespace fogran
