#pragma once
// Achievable normalized delivery time: per-class IA-IC / ZF-IC formulas,
// per-scheme fronthaul and edge components, and scheme selection for serial
// and pipelined transmission. Exact rational arithmetic throughout;
// infeasible schemes are +infinity inside minima.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fogran/model.hpp"

namespace fogran {

enum class Scheme { EdgeOnly, CloudOnly, Hybrid };
enum class TxMode { Serial, Pipelined };

inline const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::EdgeOnly: return "EdgeOnly";
    case Scheme::CloudOnly: return "CloudOnly";
    default: return "Hybrid";
  }
}

inline const char* mode_name(TxMode m) { return m == TxMode::Serial ? "serial" : "pipelined"; }

class SchemeInfeasible : public std::runtime_error {
 public:
  SchemeInfeasible(Scheme scheme, const std::string& reason)
      : std::runtime_error(std::string(scheme_name(scheme)) + " infeasible: " + reason), scheme_(scheme) {}
  Scheme scheme() const { return scheme_; }

 private:
  Scheme scheme_;
};

class InfeasibleEdgeOnly : public SchemeInfeasible {
 public:
  explicit InfeasibleEdgeOnly(const std::string& reason) : SchemeInfeasible(Scheme::EdgeOnly, reason) {}
};
class InfeasibleCloudOnly : public SchemeInfeasible {
 public:
  explicit InfeasibleCloudOnly(const std::string& reason) : SchemeInfeasible(Scheme::CloudOnly, reason) {}
};
class InfeasibleHybrid : public SchemeInfeasible {
 public:
  explicit InfeasibleHybrid(const std::string& reason) : SchemeInfeasible(Scheme::Hybrid, reason) {}
};

class NoFeasibleScheme : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Nonnegative delay that may be +infinity (an infeasible candidate inside
/// a minimum).
struct Delay {
  bool infinite = false;
  Rational value;

  static Delay inf() { return {true, Rational(0)}; }
  static Delay of(Rational v) { return {false, std::move(v)}; }

  bool finite() const { return !infinite; }

  friend Delay operator+(const Delay& a, const Delay& b) {
    if (a.infinite || b.infinite) return inf();
    return of(a.value + b.value);
  }
  static Delay max(const Delay& a, const Delay& b) {
    if (a.infinite || b.infinite) return inf();
    return of(Rational::max(a.value, b.value));
  }
  static bool less(const Delay& a, const Delay& b) {
    if (a.infinite) return false;
    if (b.infinite) return true;
    return a.value < b.value;
  }
  friend bool operator==(const Delay& a, const Delay& b) {
    return a.infinite == b.infinite && (a.infinite || a.value == b.value);
  }

  std::string str() const { return infinite ? "inf" : value.str(); }
  std::string decimal(int sig = 12) const { return infinite ? "inf" : value.decimal(sig); }
};

/// One class's contribution to a scheme's NDT, split by technique.
struct ClassNdt {
  int j = 0;
  Rational ia_ic;
  Rational zf_ic;
  Rational soft_edge;
  Rational soft_fronthaul;
};

struct SchemeNdt {
  Scheme scheme = Scheme::EdgeOnly;
  bool feasible = false;
  std::string infeasible_reason;
  Delay delta_f = Delay::inf();
  Delay delta_e = Delay::inf();
  std::vector<ClassNdt> per_class;

  Delay total(TxMode mode) const {
    return mode == TxMode::Serial ? delta_f + delta_e : Delay::max(delta_f, delta_e);
  }
};

namespace detail {
// IA-IC sum DoF for class j: the X-channel gain reduced by j cached
// interference dimensions, or joint transmission of j+1 mutually cached
// streams, whichever is larger.
inline Rational ia_dof(const NetworkConfig& cfg, int j) {
  return Rational::max(Rational(static_cast<std::int64_t>(cfg.kt) * cfg.kr, cfg.kt + cfg.kr - j), Rational(j + 1));
}
inline Rational zf_dof(const NetworkConfig& cfg, int j) {
  return Rational(std::min<std::int64_t>(cfg.kt + j, cfg.kr));
}
inline Rational class_load(const NetworkConfig& cfg, const ClassSizeProfile& profile, int j) {
  return Rational(binomial(cfg.kr - 1, j)) * Rational(cfg.kr) * profile.fraction[static_cast<std::size_t>(j)];
}
}  // namespace detail

/// NDT of delivering the class-j subfiles of a fully EN-distributed library
/// with IA and cache-side IC.
inline Rational delta_ia(const NetworkConfig& cfg, int j) {
  if (j < 0 || j > cfg.kr - 1) throw std::out_of_range("class index out of range");
  const auto profile = class_profile(cfg);
  return detail::class_load(cfg, profile, j) / detail::ia_dof(cfg, j);
}

/// NDT of delivering the class-j subfiles shared by all ENs with ZF and IC.
inline Rational delta_zf(const NetworkConfig& cfg, int j) {
  if (j < 0 || j > cfg.kr - 1) throw std::out_of_range("class index out of range");
  const auto profile = class_profile(cfg);
  return detail::class_load(cfg, profile, j) / detail::zf_dof(cfg, j);
}

/// Edge delivery NDT for t_T >= 1: IA-IC on the distributed part, ZF-IC on
/// the shared part. With kt = 1 (t_T = 1 forced) the library is fully
/// shared and the ZF sum applies.
inline Rational delta_zf_ia(const NetworkConfig& cfg) {
  const Rational tt = cfg.tt();
  const Rational one(1);
  if (tt < one) throw InfeasibleEdgeOnly("requires t_T >= 1 (EN caches must collectively hold the library)");
  const auto profile = class_profile(cfg);
  Rational w_ia(0), w_zf(1);
  if (cfg.kt >= 2) {
    w_ia = (Rational(cfg.kt) - tt) / Rational(cfg.kt - 1);
    w_zf = (tt - one) / Rational(cfg.kt - 1);
  }
  Rational total(0);
  for (int j = 0; j <= cfg.kr - 1; ++j) {
    const Rational load = detail::class_load(cfg, profile, j);
    total += w_ia * load / detail::ia_dof(cfg, j) + w_zf * load / detail::zf_dof(cfg, j);
  }
  return total;
}

inline SchemeNdt eval_edge_only(const NetworkConfig& cfg) {
  SchemeNdt s;
  s.scheme = Scheme::EdgeOnly;
  const Rational tt = cfg.tt();
  const Rational one(1);
  if (tt < one) {
    s.infeasible_reason = "requires t_T >= 1 (EN caches must collectively hold the library)";
    return s;
  }
  const auto profile = class_profile(cfg);
  Rational w_ia(0), w_zf(1);
  if (cfg.kt >= 2) {
    w_ia = (Rational(cfg.kt) - tt) / Rational(cfg.kt - 1);
    w_zf = (tt - one) / Rational(cfg.kt - 1);
  }
  Rational edge(0);
  for (int j = 0; j <= cfg.kr - 1; ++j) {
    const Rational load = detail::class_load(cfg, profile, j);
    ClassNdt c;
    c.j = j;
    c.ia_ic = w_ia * load / detail::ia_dof(cfg, j);
    c.zf_ic = w_zf * load / detail::zf_dof(cfg, j);
    edge += c.ia_ic + c.zf_ic;
    s.per_class.push_back(std::move(c));
  }
  s.feasible = true;
  s.delta_f = Delay::of(Rational(0));
  s.delta_e = Delay::of(edge);
  return s;
}

inline SchemeNdt eval_cloud_only(const NetworkConfig& cfg) {
  SchemeNdt s;
  s.scheme = Scheme::CloudOnly;
  const auto profile = class_profile(cfg);
  if (cfg.r.is_zero() && !profile.residual.is_zero()) {
    s.infeasible_reason = "requires fronthaul capacity r > 0";
    return s;
  }
  Rational edge(0), fronthaul(0);
  for (int j = 0; j <= cfg.kr - 1; ++j) {
    const Rational load = detail::class_load(cfg, profile, j);
    ClassNdt c;
    c.j = j;
    c.soft_edge = load / detail::zf_dof(cfg, j);
    if (!cfg.r.is_zero()) c.soft_fronthaul = load / (Rational(cfg.kt) * cfg.r);
    edge += c.soft_edge;
    fronthaul += c.soft_fronthaul;
    s.per_class.push_back(std::move(c));
  }
  s.feasible = true;
  s.delta_f = Delay::of(fronthaul);
  s.delta_e = Delay::of(edge);
  return s;
}

inline SchemeNdt eval_hybrid(const NetworkConfig& cfg) {
  SchemeNdt s;
  s.scheme = Scheme::Hybrid;
  const Rational tt = cfg.tt();
  const Rational one(1);
  if (tt > one) {
    s.infeasible_reason = "applies only when t_T <= 1";
    return s;
  }
  const auto profile = class_profile(cfg);
  const bool needs_cloud = tt < one && !profile.residual.is_zero();
  if (needs_cloud && cfg.r.is_zero()) {
    s.infeasible_reason = "requires fronthaul capacity r > 0 when t_T < 1";
    return s;
  }
  const Rational cloud_weight = one - tt;
  Rational edge(0), fronthaul(0);
  for (int j = 0; j <= cfg.kr - 1; ++j) {
    const Rational load = detail::class_load(cfg, profile, j);
    ClassNdt c;
    c.j = j;
    c.ia_ic = tt * load / detail::ia_dof(cfg, j);
    c.soft_edge = cloud_weight * load / detail::zf_dof(cfg, j);
    if (!cfg.r.is_zero()) c.soft_fronthaul = cloud_weight * load / (Rational(cfg.kt) * cfg.r);
    edge += c.ia_ic + c.soft_edge;
    fronthaul += c.soft_fronthaul;
    s.per_class.push_back(std::move(c));
  }
  s.feasible = true;
  s.delta_f = Delay::of(fronthaul);
  s.delta_e = Delay::of(edge);
  return s;
}

inline SchemeNdt eval_scheme(const NetworkConfig& cfg, Scheme scheme) {
  switch (scheme) {
    case Scheme::EdgeOnly: return eval_edge_only(cfg);
    case Scheme::CloudOnly: return eval_cloud_only(cfg);
    default: return eval_hybrid(cfg);
  }
}

/// Edge-only delivery NDT; fronthaul component is zero.
inline Rational delta_edge_only(const NetworkConfig& cfg) {
  const auto s = eval_edge_only(cfg);
  if (!s.feasible) throw InfeasibleEdgeOnly(s.infeasible_reason);
  return s.delta_e.value;
}

/// Cloud-only (soft-transfer) delivery NDT as (delta_f, delta_e).
inline std::pair<Rational, Rational> delta_cloud_only(const NetworkConfig& cfg) {
  const auto s = eval_cloud_only(cfg);
  if (!s.feasible) throw InfeasibleCloudOnly(s.infeasible_reason);
  return {s.delta_f.value, s.delta_e.value};
}

/// Joint edge and cloud-aided delivery NDT as (delta_f, delta_e); t_T <= 1.
inline std::pair<Rational, Rational> delta_hybrid(const NetworkConfig& cfg) {
  const auto s = eval_hybrid(cfg);
  if (!s.feasible) throw InfeasibleHybrid(s.infeasible_reason);
  return {s.delta_f.value, s.delta_e.value};
}

/// Scheme selection result with the losing candidates' totals retained.
struct NdtBreakdown {
  TxMode mode = TxMode::Serial;
  Scheme scheme = Scheme::EdgeOnly;
  Delay delta_f = Delay::inf();
  Delay delta_e = Delay::inf();
  Delay delta_total = Delay::inf();
  std::vector<ClassNdt> per_class;
  std::vector<SchemeNdt> candidates;
  // How totals were formed, recorded in output metadata.
  std::string selection_rule;
};

namespace detail {
inline NdtBreakdown select_scheme(const NetworkConfig& cfg, TxMode mode) {
  const Rational tt = cfg.tt();
  const Rational one(1);
  std::vector<Scheme> schemes;
  if (tt >= one) {
    schemes = {Scheme::EdgeOnly, Scheme::CloudOnly};
  } else if (tt.is_zero()) {
    // With no EN caches the joint scheme degenerates to cloud-only.
    schemes = {Scheme::CloudOnly};
  } else {
    schemes = {Scheme::Hybrid, Scheme::CloudOnly};
  }

  NdtBreakdown out;
  out.mode = mode;
  out.selection_rule = mode == TxMode::Serial
                           ? "total per scheme = delta_f + delta_e; minimum wins, ties to smaller delta_f"
                           : "total per scheme = max(delta_f, delta_e); minimum wins, ties to smaller delta_f";
  int best = -1;
  Delay best_total = Delay::inf();
  for (Scheme scheme : schemes) {
    SchemeNdt s = eval_scheme(cfg, scheme);
    const Delay total = s.feasible ? s.total(mode) : Delay::inf();
    const int idx = static_cast<int>(out.candidates.size());
    out.candidates.push_back(std::move(s));
    if (!total.finite()) continue;
    if (best < 0 || Delay::less(total, best_total) ||
        (total == best_total && Delay::less(out.candidates[static_cast<std::size_t>(idx)].delta_f,
                                            out.candidates[static_cast<std::size_t>(best)].delta_f))) {
      best = idx;
      best_total = total;
    }
  }
  if (best < 0)
    throw NoFeasibleScheme(
        "no feasible delivery scheme: t_T < 1 with r = 0 (the EN caches cannot collectively hold the "
        "library and no fronthaul capacity is available)");
  const SchemeNdt& chosen = out.candidates[static_cast<std::size_t>(best)];
  out.scheme = chosen.scheme;
  out.delta_f = chosen.delta_f;
  out.delta_e = chosen.delta_e;
  out.delta_total = best_total;
  out.per_class = chosen.per_class;
  return out;
}
}  // namespace detail

/// Serial transmission: minimize delta_f + delta_e over the feasible
/// schemes of the t_T branch.
inline NdtBreakdown delta_serial(const NetworkConfig& cfg) { return detail::select_scheme(cfg, TxMode::Serial); }

/// Pipelined transmission: minimize max(delta_f, delta_e) over the same
/// candidates.
inline NdtBreakdown delta_pipelined(const NetworkConfig& cfg) { return detail::select_scheme(cfg, TxMode::Pipelined); }

inline NdtBreakdown evaluate(const NetworkConfig& cfg, TxMode mode) { return detail::select_scheme(cfg, mode); }

enum class SweepAxis { Mt, Mr, R };

inline const char* axis_name(SweepAxis a) {
  switch (a) {
    case SweepAxis::Mt: return "mt";
    case SweepAxis::Mr: return "mr";
    default: return "r";
  }
}

struct SweepPoint {
  Rational x;
  std::optional<NdtBreakdown> breakdown;
  bool infeasible = false;
  std::string error;
};

/// Evaluates one breakdown per grid point; per-point failures become marked
/// gaps instead of aborting the sweep. Output ordered by x.
inline std::vector<SweepPoint> sweep(const NetworkConfig& base, SweepAxis axis, std::vector<Rational> grid,
                                     TxMode mode) {
  std::sort(grid.begin(), grid.end());
  std::vector<SweepPoint> points;
  points.reserve(grid.size());
  for (const Rational& x : grid) {
    SweepPoint point;
    point.x = x;
    NetworkConfig cfg = base;
    switch (axis) {
      case SweepAxis::Mt: cfg.mt = x; break;
      case SweepAxis::Mr: cfg.mr = x; break;
      case SweepAxis::R: cfg.r = x; break;
    }
    const auto issues = config_issues(cfg);
    if (!issues.empty()) {
      point.infeasible = true;
      point.error = ConfigError(issues).what();
    } else {
      try {
        point.breakdown = evaluate(cfg, mode);
      } catch (const NoFeasibleScheme& e) {
        point.infeasible = true;
        point.error = e.what();
      }
    }
    points.push_back(std::move(point));
  }
  return points;
}

}  // namespace fogran
