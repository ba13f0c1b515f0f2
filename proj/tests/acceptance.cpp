// Acceptance suite: every criterion in one binary, one PASS/FAIL line each,
// nonzero exit when anything fails. Budgets are enforced as part of each
// criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fogran/fogran.hpp"

#ifndef FOGRAN_CLI_PATH
#define FOGRAN_CLI_PATH "fogran"
#endif

namespace {

using namespace fogran;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Check {
  Outcome* outcome;
  void operator()(bool ok, const std::string& what) const {
    if (!ok && outcome->pass) {
      outcome->pass = false;
      outcome->detail = what;
    }
  }
};

NetworkConfig make_cfg(int kt, int kr, std::int64_t n, Rational mt, Rational mr, Rational r = Rational(0)) {
  NetworkConfig cfg;
  cfg.kt = kt;
  cfg.kr = kr;
  cfg.n = n;
  cfg.mt = mt;
  cfg.mr = mr;
  cfg.r = r;
  return cfg;
}

std::vector<NetworkConfig> identity_grid() {
  std::vector<NetworkConfig> grid;
  for (int kt : {1, 2, 3, 4, 6}) {
    for (int kr : {1, 2, 3, 5, 6}) {
      for (std::int64_t n : {static_cast<std::int64_t>(kr), kr + 2L}) {
        for (const auto& mt_frac : {Rational(0), Rational(1, 3), Rational(1, 2), Rational(1)}) {
          for (const auto& mr : {Rational(0), Rational(1, 2), Rational(1), Rational(n)}) {
            for (const auto& r : {Rational(0), Rational(1), Rational(7, 2)}) {
              NetworkConfig cfg = make_cfg(kt, kr, n, mt_frac * Rational(n), mr, r);
              if (config_issues(cfg).empty()) grid.push_back(cfg);
            }
          }
        }
      }
    }
  }
  return grid;
}

Outcome criterion1() {
  Outcome outcome;
  Check check{&outcome};
  const auto grid = identity_grid();
  check(grid.size() >= 200, "grid holds only " + std::to_string(grid.size()) + " configurations");
  for (const auto& cfg : grid) {
    const auto profile = class_profile(cfg);
    Rational total(0);
    for (int j = 0; j <= cfg.kr; ++j)
      total += Rational(binomial(cfg.kr, j)) * profile.fraction[static_cast<std::size_t>(j)];
    check(total == Rational(1), "partition identity broke");
    check(profile.residual == Rational(1) - cfg.mr / Rational(cfg.n), "residual closed form broke");
  }
  outcome.detail = std::to_string(grid.size()) + " configurations";
  return outcome;
}

Outcome criterion2() {
  Outcome outcome;
  Check check{&outcome};
  const auto cfg = make_cfg(3, 3, 3, Rational(1), Rational(1));
  check(delta_ia(cfg, 0) == Rational(16, 27), "delta_ia(0)");
  check(delta_ia(cfg, 1) == Rational(12, 27), "delta_ia(1)");
  check(delta_ia(cfg, 2) == Rational(2, 27), "delta_ia(2)");
  check(delta_zf(cfg, 0) == Rational(8, 27), "delta_zf(0)");
  check(delta_zf(cfg, 1) == Rational(8, 27), "delta_zf(1)");
  check(delta_zf(cfg, 2) == Rational(2, 27), "delta_zf(2)");
  check(delta_edge_only(make_cfg(3, 3, 3, Rational(1), Rational(1))) == Rational(10, 9), "edge at t_T=1");
  check(delta_edge_only(make_cfg(3, 3, 3, Rational(3), Rational(1))) == Rational(2, 3), "edge at t_T=3");
  const auto cloud = delta_cloud_only(make_cfg(3, 3, 3, Rational(0), Rational(1), Rational(1)));
  check(cloud.first == Rational(2, 3), "cloud delta_f");
  check(cloud.second == Rational(2, 3), "cloud delta_e");
  const auto serial = delta_serial(make_cfg(3, 3, 3, Rational(1), Rational(1), Rational(1)));
  check(serial.delta_total.value == Rational(10, 9), "serial total at mt=1, r=1");
  check(serial.scheme == Scheme::EdgeOnly, "serial scheme at mt=1, r=1");
  const auto pipelined = delta_pipelined(make_cfg(3, 3, 3, Rational(3), Rational(1), Rational(1)));
  check(pipelined.delta_total.value == Rational(2, 3), "pipelined total at mt=3, r=1");
  return outcome;
}

Outcome criterion3() {
  Outcome outcome;
  Check check{&outcome};
  const auto cfg = make_cfg(3, 3, 3, Rational(1), Rational(1));
  const auto subfiles = enumerate_subfiles(cfg);
  check(subfiles.size() == 72, "expected 24 labels x 3 files, got " + std::to_string(subfiles.size()));
  for (std::int64_t file = 1; file <= 3; ++file) {
    int count = 0;
    for (const auto& id : subfiles)
      if (id.file == file) ++count;
    check(count == 24, "file " + std::to_string(file) + " has " + std::to_string(count) + " labels");
  }
  return outcome;
}

Outcome criterion4() {
  Outcome outcome;
  Check check{&outcome};
  const auto grid = identity_grid();
  for (const auto& cfg : grid) {
    for (int j = 0; j <= cfg.kr - 1; ++j)
      check(delta_zf(cfg, j) <= delta_ia(cfg, j), "ZF dominance broke");
    try {
      const auto serial = delta_serial(cfg);
      const auto pipelined = delta_pipelined(cfg);
      check(!Delay::less(serial.delta_total, pipelined.delta_total), "pipelined exceeded serial");
    } catch (const NoFeasibleScheme&) {
    }
  }
  // Serial selection branches agree at t_T = 1.
  for (int kt : {1, 2, 3, 4, 6}) {
    for (int kr : {1, 2, 3, 5}) {
      const std::int64_t n = kr + 1;
      for (const auto& mr : {Rational(0), Rational(1, 2), Rational(1)}) {
        for (const auto& r : {Rational(1), Rational(4)}) {
          const auto cfg = make_cfg(kt, kr, n, Rational(n) / Rational(kt), mr, r);
          const auto hybrid = eval_hybrid(cfg);
          const auto edge = eval_edge_only(cfg);
          const auto cloud = eval_cloud_only(cfg);
          check(hybrid.feasible && edge.feasible, "t_T = 1 branch evaluation failed");
          for (TxMode mode : {TxMode::Serial, TxMode::Pipelined}) {
            Delay lower = hybrid.total(mode);
            Delay upper = edge.total(mode);
            if (cloud.feasible) {
              lower = Delay::less(cloud.total(mode), lower) ? cloud.total(mode) : lower;
              upper = Delay::less(cloud.total(mode), upper) ? cloud.total(mode) : upper;
            }
            check(lower == upper, "selection branches disagree at t_T = 1");
          }
        }
      }
    }
  }
  // Edge NDT non-increasing in t_T on [1, kt].
  for (int kt : {2, 3, 4, 6}) {
    for (int kr : {2, 3, 5}) {
      const std::int64_t n = kr;
      Rational previous;
      bool first = true;
      for (int step = 0; step <= 8; ++step) {
        const Rational mt =
            Rational(n) / Rational(kt) + (Rational(n) - Rational(n) / Rational(kt)) * Rational(step, 8);
        const auto value = delta_zf_ia(make_cfg(kt, kr, n, mt, Rational(1)));
        if (!first) check(value <= previous, "edge NDT increased in t_T");
        previous = value;
        first = false;
      }
    }
  }
  // Cloud fronthaul strictly decreasing in r (nondegenerate caches only:
  // with mr = n nothing crosses the fronthaul and the component is 0).
  for (const auto& cfg : grid) {
    if (cfg.mr == Rational(cfg.n)) continue;
    Rational previous;
    bool first = true;
    for (const auto& r : {Rational(1, 2), Rational(1), Rational(2), Rational(4)}) {
      NetworkConfig point = cfg;
      point.r = r;
      const auto cloud = eval_cloud_only(point);
      check(cloud.feasible, "cloud infeasible at positive r");
      if (!first) check(cloud.delta_f.value < previous, "cloud fronthaul not strictly decreasing in r");
      previous = cloud.delta_f.value;
      first = false;
    }
  }
  return outcome;
}

Outcome criterion5() {
  Outcome outcome;
  Check check{&outcome};
  // Edge-only staircase: mt from n/kt to n at r = 0, non-increasing total.
  {
    const auto base = make_cfg(3, 3, 3, Rational(1), Rational(1), Rational(0));
    std::vector<Rational> grid;
    for (int step = 0; step <= 8; ++step) grid.push_back(Rational(1) + Rational(2) * Rational(step, 8));
    const auto points = sweep(base, SweepAxis::Mt, grid, TxMode::Serial);
    Rational previous;
    bool first = true;
    for (const auto& p : points) {
      check(p.breakdown.has_value(), "edge-only sweep point infeasible");
      if (!p.breakdown) continue;
      if (!first) check(p.breakdown->delta_total.value <= previous, "edge-only sweep not non-increasing");
      previous = p.breakdown->delta_total.value;
      first = false;
    }
  }
  // Cloud-only decay to the edge-delay plateau.
  {
    const auto base = make_cfg(2, 3, 3, Rational(0), Rational(1), Rational(0));
    Rational plateau(0);
    for (int j = 0; j <= 2; ++j) plateau += delta_zf(base, j);
    std::vector<Rational> grid = {Rational(1, 4), Rational(1, 2), Rational(1), Rational(2), Rational(4),
                                  Rational(8),    Rational(16)};
    const auto points = sweep(base, SweepAxis::R, grid, TxMode::Serial);
    Rational previous;
    bool first = true;
    for (const auto& p : points) {
      check(p.breakdown.has_value(), "cloud-only sweep point infeasible");
      if (!p.breakdown) continue;
      check(p.breakdown->delta_e.value == plateau, "plateau is not the ZF sum");
      if (!first) check(p.breakdown->delta_total.value < previous, "cloud-only total not decreasing");
      previous = p.breakdown->delta_total.value;
      first = false;
    }
  }
  // Large-r regime: cloud at small mt, edge overtakes at large mt.
  {
    const auto base = make_cfg(3, 3, 3, Rational(0), Rational(1), Rational(8));
    std::vector<Rational> grid = {Rational(0),    Rational(1, 2), Rational(1), Rational(3, 2),
                                  Rational(2),    Rational(5, 2), Rational(3)};
    const auto points = sweep(base, SweepAxis::Mt, grid, TxMode::Serial);
    bool found_crossover = false;
    Rational crossover;
    bool cloud_before = false, edge_after = false;
    for (const auto& p : points) {
      check(p.breakdown.has_value(), "joint sweep point infeasible");
      if (!p.breakdown) continue;
      const bool is_cloud = p.breakdown->scheme == Scheme::CloudOnly;
      if (!found_crossover && is_cloud) cloud_before = true;
      if (!found_crossover && !is_cloud) {
        found_crossover = true;
        crossover = p.x;
      }
      if (found_crossover && !is_cloud) edge_after = true;
      if (found_crossover) check(!is_cloud, "scheme flipped back to cloud after the crossover");
    }
    check(cloud_before, "cloud-only was never selected at small mt");
    check(found_crossover && edge_after, "edge/hybrid never overtook cloud-only");
    if (found_crossover) outcome.detail = "crossover at mt = " + crossover.str();
  }
  return outcome;
}

Outcome criterion6() {
  Outcome outcome;
  Check check{&outcome};
  const auto cfg = make_cfg(3, 3, 3, Rational(1), Rational(1), Rational(1));
  const auto report = run_trials(cfg, 1ull << 20, 32, 7);
  for (const auto& c : report.classes) {
    check(c.included, "class excluded unexpectedly");
    check(c.max_abs_z <= 5.0, "class z-score beyond 5 sigma");
  }
  check(report.z_pass, "5-sigma gate failed");
  const std::vector<std::uint64_t> sizes = {1ull << 12, 1ull << 14, 1ull << 16,
                                            1ull << 18, 1ull << 20, 1ull << 22};
  const auto curve = convergence_curve(cfg, sizes, 8, 21);
  const double slope = regression_slope(curve);
  check(slope >= -0.65 && slope <= -0.35, "convergence slope " + std::to_string(slope) + " outside -0.5 +/- 0.15");
  {
    std::ostringstream s;
    s.precision(3);
    s << "slope " << slope;
    outcome.detail = s.str();
  }
  return outcome;
}

Outcome criterion7() {
  Outcome outcome;
  Check check{&outcome};
  // 50-config grid, analytic mode: achieved deltas equal the formulas
  // exactly for every feasible (scheme, mode).
  std::vector<NetworkConfig> grid;
  for (int kt : {1, 2, 3, 4, 6}) {
    for (int kr : {1, 2, 3, 4, 6}) {
      for (std::int64_t n : {static_cast<std::int64_t>(kr), kr + 2L}) {
        for (const auto& mt_frac : {Rational(0), Rational(1, 2), Rational(1)}) {
          for (const auto& mr : {Rational(1, 2), Rational(1)}) {
            if (static_cast<int>(grid.size()) >= 50) break;
            NetworkConfig cfg = make_cfg(kt, kr, n, mt_frac * Rational(n), mr, Rational(1));
            if (config_issues(cfg).empty()) grid.push_back(cfg);
          }
        }
      }
    }
  }
  check(grid.size() == 50, "grid holds " + std::to_string(grid.size()) + " configurations");
  int reconciled = 0;
  for (const auto& cfg : grid) {
    const auto inv = Inventory::analytic(cfg);
    const auto demand = DemandVector::worst_case(cfg);
    for (Scheme scheme : {Scheme::EdgeOnly, Scheme::CloudOnly, Scheme::Hybrid}) {
      const auto analytic = eval_scheme(cfg, scheme);
      if (!analytic.feasible) continue;
      for (TxMode mode : {TxMode::Serial, TxMode::Pipelined}) {
        try {
          const auto schedule = build_schedule(cfg, inv, demand, scheme, mode);
          verify_coverage(cfg, inv, demand, schedule);
          for (const auto& b : schedule.blocks)
            check(validate_block(cfg, b).pass, "constructed block failed validation");
          reconcile(schedule, analytic);  // throws on exact mismatch
          ++reconciled;
        } catch (const std::exception& e) {
          check(false, std::string("analytic reconciliation failed: ") + e.what());
        }
      }
    }
  }
  // Bit-level subset at F = 2^20, seed 42: representative regimes.
  const std::vector<NetworkConfig> bit_grid = {
      make_cfg(3, 3, 3, Rational(1), Rational(1), Rational(1)),
      make_cfg(3, 3, 3, Rational(2), Rational(1), Rational(0)),
      make_cfg(3, 3, 3, Rational(3), Rational(1), Rational(1)),
      make_cfg(3, 3, 3, Rational(1, 2), Rational(1), Rational(1)),
      make_cfg(2, 2, 2, Rational(1), Rational(1), Rational(1, 2)),
      make_cfg(2, 2, 2, Rational(0), Rational(1), Rational(1)),
      make_cfg(2, 3, 3, Rational(3, 2), Rational(1), Rational(2)),
      make_cfg(4, 2, 4, Rational(1), Rational(2), Rational(1)),
      make_cfg(1, 2, 2, Rational(2), Rational(1), Rational(1)),
      make_cfg(1, 2, 2, Rational(1, 2), Rational(1), Rational(1)),
      make_cfg(3, 3, 4, Rational(4, 3), Rational(0), Rational(1)),
      make_cfg(2, 2, 3, Rational(3, 2), Rational(3), Rational(0)),
  };
  const std::uint64_t file_bits = 1ull << 20;
  for (const auto& cfg : bit_grid) {
    const auto en = place_en_caches(cfg, file_bits);
    const auto users = place_user_caches(cfg, file_bits, 42);
    const auto inv = Inventory::empirical(cfg, classify_bits(cfg, en, users));
    const auto demand = DemandVector::worst_case(cfg);
    for (Scheme scheme : {Scheme::EdgeOnly, Scheme::CloudOnly, Scheme::Hybrid}) {
      const auto analytic = eval_scheme(cfg, scheme);
      if (!analytic.feasible) continue;
      for (TxMode mode : {TxMode::Serial, TxMode::Pipelined}) {
        try {
          const auto schedule = build_schedule(cfg, inv, demand, scheme, mode);
          verify_coverage(cfg, inv, demand, schedule);
          for (const auto& b : schedule.blocks)
            check(validate_block(cfg, b).pass, "bit-level block failed validation");
          reconcile(schedule, analytic);  // 10 * F^(-1/2) relative bound
        } catch (const std::exception& e) {
          check(false, std::string("bit-level reconciliation failed: ") + e.what());
        }
      }
    }
  }
  // Mutated blocks fail with a correct witness, the worked examples first.
  {
    const auto cfg = make_cfg(2, 2, 2, Rational(1), Rational(1));
    auto blocks = build_ic_blocks(cfg, Inventory::analytic(cfg), DemandVector::worst_case(cfg), 1);
    check(validate_block(cfg, blocks[0]).pass, "worked IC pair should validate");
    blocks[0].streams[1].subfile.users = 0;
    const auto witness = validate_block(cfg, blocks[0]);
    check(!witness.pass && witness.stream_index == 1 && witness.receiver == 1,
          "IC pair mutation witness wrong");
  }
  {
    const auto cfg = make_cfg(3, 3, 3, Rational(3), Rational(1));
    auto blocks = build_zf_blocks(cfg, Inventory::analytic(cfg), DemandVector::worst_case(cfg), 1,
                                  Technique::ZfIc, {EnTag::shared()});
    check(validate_block(cfg, blocks[0]).pass, "worked ZF triple should validate");
    blocks[0].streams[2].subfile.users = 0;
    const auto witness = validate_block(cfg, blocks[0]);
    check(!witness.pass && witness.stream_index == 2, "ZF triple mutation witness wrong");
  }
  for (const auto& cfg : bit_grid) {
    const auto analytic = eval_scheme(cfg, Scheme::CloudOnly);
    if (!analytic.feasible) continue;
    auto schedule = build_schedule(cfg, Inventory::analytic(cfg), DemandVector::worst_case(cfg),
                                   Scheme::CloudOnly, TxMode::Serial);
    bool mutated = false;
    for (auto& b : schedule.blocks) {
      for (auto& s : b.streams) {
        if (s.subfile.users != 0 && !s.size.is_zero()) {
          s.subfile.users = 0;
          check(!validate_block(cfg, b).pass, "mutated block still validates");
          mutated = true;
          break;
        }
      }
      if (mutated) break;
    }
  }
  if (outcome.pass) outcome.detail = std::to_string(reconciled) + " analytic (scheme, mode) pairs reconciled";
  return outcome;
}

Outcome criterion8() {
  Outcome outcome;
  Check check{&outcome};
  const auto cfg = make_cfg(3, 3, 3, Rational(0), Rational(1), Rational(0));
  bool threw = false;
  try {
    delta_serial(cfg);
  } catch (const NoFeasibleScheme&) {
    threw = true;
  }
  check(threw, "library accepted t_T < 1 with r = 0");
  threw = false;
  try {
    build_schedule(cfg, Inventory::analytic(cfg), DemandVector::worst_case(cfg), Scheme::CloudOnly,
                   TxMode::Serial);
  } catch (const InfeasibleCloudOnly&) {
    threw = true;
  }
  check(threw, "scheduler accepted cloud delivery with r = 0");

  const std::string command =
      std::string(FOGRAN_CLI_PATH) + " ndt --kt 3 --kr 3 --n 3 --mt 0 --mr 1 --r 0 > /dev/null 2>&1";
  const int status = std::system(command.c_str());
  const int exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  check(exit_code == 2, "CLI exit code was " + std::to_string(exit_code) + ", expected 2");
  return outcome;
}

struct Criterion {
  int number;
  const char* title;
  double budget_seconds;
  Outcome (*run)();
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "exact identities over the parameter grid", 1.0, criterion1},
      {2, "derived-value table matches exactly", 1.0, criterion2},
      {3, "24 subfile labels per file", 1.0, criterion3},
      {4, "ordering and monotonicity properties on the grid", 5.0, criterion4},
      {5, "figure-shape reproduction", 5.0, criterion5},
      {6, "Monte Carlo placement validation", 60.0, criterion6},
      {7, "scheduler reconciliation", 120.0, criterion7},
      {8, "infeasibility contract end to end", 10.0, criterion8},
  };

  bool all_pass = true;
  for (const auto& criterion : criteria) {
    const auto start = Clock::now();
    Outcome outcome;
    try {
      outcome = criterion.run();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (seconds > criterion.budget_seconds) {
      outcome.pass = false;
      outcome.detail = "over budget: " + std::to_string(seconds) + " s > " +
                       std::to_string(criterion.budget_seconds) + " s";
    }
    std::printf("%s criterion %d: %s%s%s (%.2f s)\n", outcome.pass ? "PASS" : "FAIL", criterion.number,
                criterion.title, outcome.detail.empty() ? "" : " -- ", outcome.detail.c_str(), seconds);
    all_pass = all_pass && outcome.pass;
  }
  return all_pass ? 0 : 1;
}
