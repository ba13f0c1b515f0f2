#pragma once
// Statistical validation: many seeded finite-F placements against the
// analytic class-size profile (5-sigma policy), plus bit-level delivery
// against the analytic NDT.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "fogran/placement.hpp"
#include "fogran/scheduler.hpp"

namespace fogran {

struct ClassObservation {
  int j = 0;
  bool included = true;  // cells with expected count < 32 are excluded
  Rational analytic;
  double mean = 0.0;
  double stddev = 0.0;
  double max_abs_z = 0.0;
};

struct SchemeComparison {
  Scheme scheme = Scheme::EdgeOnly;
  TxMode mode = TxMode::Serial;
  bool pass = true;
  Rational analytic_f, analytic_e;
  Rational achieved_f, achieved_e;
  double rel_gap_f = 0.0;
  double rel_gap_e = 0.0;
};

struct TrialReport {
  NetworkConfig cfg;
  std::uint64_t file_bits = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<std::vector<double>> fractions;  // [trial][class j]
  std::vector<ClassObservation> classes;
  std::vector<SchemeComparison> schemes;
  bool z_pass = true;
  bool ndt_pass = true;
  bool pass = true;
};

namespace detail {
inline double empirical_class_fraction(const EmpiricalProfile& profile, int j) {
  const double cells = static_cast<double>(profile.n) * static_cast<double>(binomial(profile.kr, j)) *
                       static_cast<double>(profile.file_bits);
  return static_cast<double>(profile.class_total(j)) / cells;
}
}  // namespace detail

/// Runs `trials` independent placements and aggregates per-class empirical
/// fractions, z-scores against the analytic profile, and (on the first
/// trial's placement) achieved-vs-analytic NDT per feasible scheme.
/// Deterministic given (cfg, F, trials, seed); per-trial substreams are
/// independent, so results do not depend on evaluation order.
/// `expected_override`, when given, replaces the analytic fractions in the
/// z-score computation (test hook).
inline TrialReport run_trials(const NetworkConfig& cfg, std::uint64_t file_bits, int trials, std::uint64_t seed,
                              const std::vector<Rational>* expected_override = nullptr) {
  if (file_bits < 1024) throw std::invalid_argument("Monte Carlo needs F >= 1024 bits");
  if (trials < 1) throw std::invalid_argument("at least one trial required");
  const auto profile = class_profile(cfg);
  std::vector<Rational> expected = profile.fraction;
  if (expected_override) {
    if (expected_override->size() != expected.size())
      throw std::invalid_argument("expected-fraction override has wrong length");
    expected = *expected_override;
  }

  TrialReport report;
  report.cfg = cfg;
  report.file_bits = file_bits;
  report.trials = trials;
  report.seed = seed;

  const auto en = place_en_caches(cfg, file_bits);
  EmpiricalProfile first_trial;
  for (int t = 0; t < trials; ++t) {
    const auto users = place_user_caches(cfg, file_bits, substream_seed(seed, 0x7472696179ULL, static_cast<std::uint64_t>(t)));
    const auto emp = classify_bits(cfg, en, users);
    std::vector<double> row(static_cast<std::size_t>(cfg.kr) + 1, 0.0);
    for (int j = 0; j <= cfg.kr; ++j) row[static_cast<std::size_t>(j)] = detail::empirical_class_fraction(emp, j);
    report.fractions.push_back(std::move(row));
    if (t == 0) first_trial = emp;
  }

  for (int j = 0; j <= cfg.kr; ++j) {
    ClassObservation obs;
    obs.j = j;
    obs.analytic = expected[static_cast<std::size_t>(j)];
    obs.included = obs.analytic * Rational(static_cast<std::int64_t>(file_bits)) >= Rational(32);
    const double f = obs.analytic.to_double();
    const double sigma = std::sqrt(std::max(0.0, f * (1.0 - f) / static_cast<double>(file_bits)));
    double sum = 0.0, sum_sq = 0.0;
    for (int t = 0; t < trials; ++t) {
      const double p = report.fractions[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)];
      sum += p;
      sum_sq += p * p;
      const double z = sigma > 0.0 ? (p - f) / sigma : (p == f ? 0.0 : 1e18);
      obs.max_abs_z = std::max(obs.max_abs_z, std::abs(z));
    }
    obs.mean = sum / trials;
    obs.stddev = trials > 1 ? std::sqrt(std::max(0.0, (sum_sq - sum * sum / trials) / (trials - 1))) : 0.0;
    if (obs.included && obs.max_abs_z > 5.0) report.z_pass = false;
    report.classes.push_back(obs);
  }

  const auto demand = DemandVector::worst_case(cfg);
  const Inventory inv = Inventory::empirical(cfg, first_trial);
  for (Scheme scheme : {Scheme::EdgeOnly, Scheme::CloudOnly, Scheme::Hybrid}) {
    const SchemeNdt analytic = eval_scheme(cfg, scheme);
    if (!analytic.feasible) continue;
    const Schedule schedule = build_schedule(cfg, inv, demand, scheme, TxMode::Serial);
    SchemeComparison cmp;
    cmp.scheme = scheme;
    cmp.analytic_f = analytic.delta_f.value;
    cmp.analytic_e = analytic.delta_e.value;
    cmp.achieved_e = schedule.achieved_delta_e();
    cmp.achieved_f = schedule.achieved_delta_f().finite() ? schedule.achieved_delta_f().value : Rational(-1);
    cmp.rel_gap_e = detail::rel_gap(cmp.achieved_e, cmp.analytic_e);
    cmp.rel_gap_f = detail::rel_gap(cmp.achieved_f, cmp.analytic_f);
    cmp.pass = detail::within_statistical(cmp.achieved_e, cmp.analytic_e, file_bits) &&
               detail::within_statistical(cmp.achieved_f, cmp.analytic_f, file_bits);
    if (!cmp.pass) report.ndt_pass = false;
    report.schemes.push_back(std::move(cmp));
  }

  report.pass = report.z_pass && report.ndt_pass;
  return report;
}

struct NdtComparison {
  SchemeNdt analytic;
  ReconcileReport report;
};

/// Builds a bit-level placement, schedules it for (scheme, mode) and
/// reconciles against the analytic NDT at the 10*F^(-1/2) relative bound.
/// Scheduler errors and reconciliation breaches propagate.
inline NdtComparison empirical_ndt(const NetworkConfig& cfg, std::uint64_t file_bits, std::uint64_t seed,
                                   const DemandVector& demand, Scheme scheme, TxMode mode) {
  const SchemeNdt analytic = eval_scheme(cfg, scheme);
  if (!analytic.feasible) {
    switch (scheme) {
      case Scheme::EdgeOnly: throw InfeasibleEdgeOnly(analytic.infeasible_reason);
      case Scheme::CloudOnly: throw InfeasibleCloudOnly(analytic.infeasible_reason);
      default: throw InfeasibleHybrid(analytic.infeasible_reason);
    }
  }
  const auto en = place_en_caches(cfg, file_bits);
  const auto users = place_user_caches(cfg, file_bits, seed);
  const auto emp = classify_bits(cfg, en, users);
  const Schedule schedule = build_schedule(cfg, Inventory::empirical(cfg, emp), demand, scheme, mode);
  NdtComparison out;
  out.analytic = analytic;
  out.report = reconcile(schedule, analytic);
  return out;
}

struct ConvergencePoint {
  std::uint64_t file_bits = 0;
  double mean_error = 0.0;  // variance-normalized RMS deviation from f(j)
};

/// Mean normalized placement error at each file size; the error decays as
/// F^(-1/2), which regression_slope checks.
inline std::vector<ConvergencePoint> convergence_curve(const NetworkConfig& cfg,
                                                       const std::vector<std::uint64_t>& sizes, int trials,
                                                       std::uint64_t seed) {
  const auto profile = class_profile(cfg);
  std::vector<ConvergencePoint> points;
  for (const std::uint64_t file_bits : sizes) {
    const auto en = place_en_caches(cfg, file_bits);
    double total = 0.0;
    for (int t = 0; t < trials; ++t) {
      const auto users =
          place_user_caches(cfg, file_bits, substream_seed(seed, file_bits, static_cast<std::uint64_t>(t)));
      const auto emp = classify_bits(cfg, en, users);
      double sum_sq = 0.0;
      int used = 0;
      for (int j = 0; j <= cfg.kr; ++j) {
        const double f = profile.fraction[static_cast<std::size_t>(j)].to_double();
        if (f <= 0.0 || f >= 1.0) continue;
        const double p = detail::empirical_class_fraction(emp, j);
        const double dev = (p - f) / std::sqrt(f * (1.0 - f));
        sum_sq += dev * dev;
        ++used;
      }
      total += used > 0 ? std::sqrt(sum_sq / used) : 0.0;
    }
    points.push_back({file_bits, total / trials});
  }
  return points;
}

/// Least-squares slope of log(error) against log(F).
inline double regression_slope(const std::vector<ConvergencePoint>& points) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(points.size());
  for (const auto& p : points) {
    const double x = std::log(static_cast<double>(p.file_bits));
    const double y = std::log(p.mean_error);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace fogran
