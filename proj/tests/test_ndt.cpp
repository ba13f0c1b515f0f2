#include "fogran/ndt.hpp"

#include <vector>

#include "doctest.h"

using namespace fogran;

namespace {

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

// Valid configurations spanning both regimes, used by the property checks.
std::vector<NetworkConfig> property_grid() {
  std::vector<NetworkConfig> grid;
  for (int kt : {1, 2, 3, 4, 6}) {
    for (int kr : {1, 2, 3, 5, 6}) {
      for (std::int64_t n : {static_cast<std::int64_t>(kr), kr + 2L}) {
        for (const auto& mt_frac : {Rational(0), Rational(1, 3), Rational(1, 2), Rational(1)}) {
          for (const auto& mr : {Rational(0), Rational(1, 2), Rational(1)}) {
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

}  // namespace

TEST_CASE("per-class IA-IC values match the hand-derived table") {
  const auto cfg = make_cfg(3, 3, 3, Rational(1), Rational(1));
  CHECK(delta_ia(cfg, 0) == Rational(16, 27));
  CHECK(delta_ia(cfg, 1) == Rational(12, 27));
  CHECK(delta_ia(cfg, 2) == Rational(2, 27));
  CHECK_THROWS_AS(delta_ia(cfg, 3), std::out_of_range);
}

TEST_CASE("per-class ZF-IC values match the hand-derived table") {
  const auto cfg = make_cfg(3, 3, 3, Rational(1), Rational(1));
  CHECK(delta_zf(cfg, 0) == Rational(8, 27));
  CHECK(delta_zf(cfg, 1) == Rational(8, 27));
  CHECK(delta_zf(cfg, 2) == Rational(2, 27));
}

TEST_CASE("single-EN broadcast and empty-cache edge classes") {
  CHECK(delta_zf(make_cfg(1, 2, 2, Rational(0), Rational(0)), 0) == Rational(2));
  CHECK(delta_ia(make_cfg(2, 3, 3, Rational(1), Rational(0)), 1) == Rational(0));
  CHECK(delta_zf(make_cfg(2, 3, 3, Rational(1), Rational(3)), 1) == Rational(0));
}

TEST_CASE("combined ZF-IA edge delivery across the cache range") {
  CHECK(delta_zf_ia(make_cfg(3, 3, 3, Rational(1), Rational(1))) == Rational(10, 9));
  CHECK(delta_zf_ia(make_cfg(3, 3, 3, Rational(2), Rational(1))) == Rational(8, 9));
  CHECK(delta_zf_ia(make_cfg(3, 3, 3, Rational(3), Rational(1))) == Rational(2, 3));
  CHECK_THROWS_AS(delta_zf_ia(make_cfg(3, 3, 3, Rational(1, 2), Rational(1))), InfeasibleEdgeOnly);
}

TEST_CASE("single EN with a full cache uses the ZF sum") {
  // kt=1 forces t_T <= 1; at t_T = 1 the library is fully shared.
  const auto cfg = make_cfg(1, 2, 2, Rational(2), Rational(1));
  Rational expected(0);
  for (int j = 0; j <= 1; ++j) expected += delta_zf(cfg, j);
  CHECK(delta_zf_ia(cfg) == expected);
  CHECK(delta_edge_only(cfg) == expected);
}

TEST_CASE("edge-only delivery") {
  CHECK(delta_edge_only(make_cfg(3, 3, 3, Rational(1), Rational(1))) == Rational(10, 9));
  CHECK(delta_edge_only(make_cfg(2, 1, 1, Rational(1), Rational(0))) == Rational(1));
  CHECK_THROWS_AS(delta_edge_only(make_cfg(2, 2, 2, Rational(1, 2), Rational(1))), InfeasibleEdgeOnly);
}

TEST_CASE("cloud-only delivery") {
  const auto [f, e] = delta_cloud_only(make_cfg(3, 3, 3, Rational(0), Rational(1), Rational(1)));
  CHECK(f == Rational(2, 3));
  CHECK(e == Rational(2, 3));

  const auto [f2, e2] = delta_cloud_only(make_cfg(3, 3, 3, Rational(0), Rational(0), Rational(1)));
  CHECK(e2 == Rational(1));
  CHECK(f2 == Rational(1));  // kr/kt with kt = kr

  const auto [f3, e3] = delta_cloud_only(make_cfg(2, 4, 4, Rational(0), Rational(0), Rational(1)));
  CHECK(f3 == Rational(2));  // kr/kt = 4/2

  // Large r drives the fronthaul component to zero, edge unchanged.
  const auto [f4, e4] = delta_cloud_only(make_cfg(3, 3, 3, Rational(0), Rational(1), Rational(1000)));
  CHECK(e4 == Rational(2, 3));
  CHECK(f4 == Rational(2, 3) / Rational(1000));

  CHECK_THROWS_AS(delta_cloud_only(make_cfg(3, 3, 3, Rational(0), Rational(1), Rational(0))), InfeasibleCloudOnly);

  // Full user caches need nothing from the cloud even at r = 0.
  const auto [f5, e5] = delta_cloud_only(make_cfg(3, 3, 3, Rational(0), Rational(3), Rational(0)));
  CHECK(f5 == Rational(0));
  CHECK(e5 == Rational(0));
}

TEST_CASE("hybrid delivery interpolates between edge and cloud") {
  // mt=1/2 gives t_T = 1/2: delta_e = (1/2)(10/9) + (1/2)(2/3) = 8/9.
  const auto [f, e] = delta_hybrid(make_cfg(3, 3, 3, Rational(1, 2), Rational(1), Rational(1)));
  CHECK(f == Rational(1, 3));
  CHECK(e == Rational(8, 9));

  // t_T = 1: the cloud weight vanishes and IA carries everything.
  const auto [f1, e1] = delta_hybrid(make_cfg(3, 3, 3, Rational(1), Rational(1), Rational(0)));
  CHECK(f1 == Rational(0));
  CHECK(e1 == Rational(10, 9));

  // t_T = 0: identical to cloud-only.
  const auto cloud = delta_cloud_only(make_cfg(3, 3, 3, Rational(0), Rational(1), Rational(1)));
  const auto hybrid = delta_hybrid(make_cfg(3, 3, 3, Rational(0), Rational(1), Rational(1)));
  CHECK(hybrid == cloud);

  CHECK_THROWS_AS(delta_hybrid(make_cfg(3, 3, 3, Rational(1, 2), Rational(1), Rational(0))), InfeasibleHybrid);
  CHECK_THROWS_AS(delta_hybrid(make_cfg(3, 3, 3, Rational(2), Rational(1), Rational(1))), InfeasibleHybrid);
}

TEST_CASE("serial selection picks the smaller total") {
  const auto edge_wins = delta_serial(make_cfg(3, 3, 3, Rational(1), Rational(1), Rational(1)));
  CHECK(edge_wins.scheme == Scheme::EdgeOnly);
  CHECK(edge_wins.delta_total.value == Rational(10, 9));
  REQUIRE(edge_wins.candidates.size() == 2);
  CHECK(edge_wins.candidates[1].total(TxMode::Serial).value == Rational(4, 3));

  const auto cloud_wins = delta_serial(make_cfg(3, 3, 3, Rational(1), Rational(1), Rational(100)));
  CHECK(cloud_wins.scheme == Scheme::CloudOnly);
  CHECK(cloud_wins.delta_total.value == Rational(2, 3) + Rational(1, 150));

  CHECK_THROWS_AS(delta_serial(make_cfg(3, 3, 3, Rational(1, 2), Rational(1), Rational(0))), NoFeasibleScheme);
}

TEST_CASE("pipelined selection takes max of components per scheme") {
  const auto b = delta_pipelined(make_cfg(3, 3, 3, Rational(3), Rational(1), Rational(1)));
  CHECK(b.delta_total.value == Rational(2, 3));

  const auto cloud = delta_pipelined(make_cfg(3, 3, 3, Rational(0), Rational(1), Rational(1, 10)));
  CHECK(cloud.scheme == Scheme::CloudOnly);
  CHECK(cloud.delta_total.value == Rational(20, 3));

  CHECK_THROWS_AS(delta_pipelined(make_cfg(3, 3, 3, Rational(1, 2), Rational(1), Rational(0))), NoFeasibleScheme);
}

TEST_CASE("full user caches give zero NDT with a zero-fronthaul label") {
  const auto b = delta_serial(make_cfg(3, 3, 3, Rational(0), Rational(3), Rational(0)));
  CHECK(b.delta_total.value == Rational(0));
  CHECK(b.delta_f.value == Rational(0));
}

TEST_CASE("per-class dominance: ZF-IC never loses to IA-IC") {
  for (const auto& cfg : property_grid())
    for (int j = 0; j <= cfg.kr - 1; ++j) CHECK(delta_zf(cfg, j) <= delta_ia(cfg, j));
}

TEST_CASE("pipelined never exceeds serial") {
  for (const auto& cfg : property_grid()) {
    NdtBreakdown serial, pipelined;
    try {
      serial = delta_serial(cfg);
      pipelined = delta_pipelined(cfg);
    } catch (const NoFeasibleScheme&) {
      continue;
    }
    CHECK(!Delay::less(serial.delta_total, pipelined.delta_total));
  }
}

TEST_CASE("selection branches agree at t_T = 1") {
  for (int kt : {2, 3, 4, 6}) {
    for (int kr : {1, 2, 3, 5}) {
      for (const auto& mr_frac : {Rational(0), Rational(1, 3), Rational(1, 2)}) {
        for (const auto& r : {Rational(1), Rational(5)}) {
          const std::int64_t n = kr + 1;
          const auto cfg = make_cfg(kt, kr, n, Rational(n) / Rational(kt), mr_frac * Rational(n), r);
          REQUIRE(cfg.tt() == Rational(1));
          // Lower branch: min(hybrid, cloud); upper branch: min(edge, cloud).
          const auto hybrid = eval_hybrid(cfg);
          const auto edge = eval_edge_only(cfg);
          const auto cloud = eval_cloud_only(cfg);
          REQUIRE(hybrid.feasible);
          REQUIRE(edge.feasible);
          for (TxMode mode : {TxMode::Serial, TxMode::Pipelined}) {
            Delay lower = hybrid.total(mode);
            Delay upper = edge.total(mode);
            if (cloud.feasible) {
              lower = Delay::less(cloud.total(mode), lower) ? cloud.total(mode) : lower;
              upper = Delay::less(cloud.total(mode), upper) ? cloud.total(mode) : upper;
            }
            CHECK(lower == upper);
          }
        }
      }
    }
  }
}

TEST_CASE("hybrid and edge evaluations coincide at t_T = 1") {
  // Both reduce to the plain IA sum: the cloud weight and the shared part
  // vanish together.
  for (int kt : {1, 2, 3, 5}) {
    for (int kr : {1, 2, 4}) {
      const std::int64_t n = kr + 1;
      const auto cfg = make_cfg(kt, kr, n, Rational(n) / Rational(kt), Rational(1, 2), Rational(1));
      REQUIRE(cfg.tt() == Rational(1));
      Rational ia_sum(0);
      for (int j = 0; j <= kr - 1; ++j) ia_sum += delta_ia(cfg, j);
      const auto [hf, he] = delta_hybrid(cfg);
      CHECK(hf == Rational(0));
      CHECK(he == ia_sum);
      CHECK(delta_zf_ia(cfg) == ia_sum);
      CHECK(delta_edge_only(cfg) == ia_sum);
    }
  }
}

TEST_CASE("edge delivery is non-increasing in t_T on [1, kt]") {
  for (int kt : {2, 3, 4, 6}) {
    for (int kr : {2, 3, 5}) {
      const std::int64_t n = kr;
      Rational previous;
      bool first = true;
      for (int step = 0; step <= 8; ++step) {
        // mt from n/kt (t_T = 1) to n (t_T = kt).
        const Rational mt = Rational(n) / Rational(kt) +
                            (Rational(n) - Rational(n) / Rational(kt)) * Rational(step, 8);
        const auto value = delta_zf_ia(make_cfg(kt, kr, n, mt, Rational(1)));
        if (!first) CHECK(value <= previous);
        previous = value;
        first = false;
      }
    }
  }
}

TEST_CASE("scale invariance: doubling (n, mt, mr) changes nothing") {
  for (const auto& cfg : property_grid()) {
    NetworkConfig doubled = cfg;
    doubled.n = cfg.n * 2;
    doubled.mt = cfg.mt * Rational(2);
    doubled.mr = cfg.mr * Rational(2);
    for (Scheme scheme : {Scheme::EdgeOnly, Scheme::CloudOnly, Scheme::Hybrid}) {
      const auto a = eval_scheme(cfg, scheme);
      const auto b = eval_scheme(doubled, scheme);
      CHECK(a.feasible == b.feasible);
      if (a.feasible) {
        CHECK(a.delta_f == b.delta_f);
        CHECK(a.delta_e == b.delta_e);
      }
    }
  }
}

TEST_CASE("cloud edge delay equals the ZF sum") {
  for (const auto& cfg : property_grid()) {
    const auto cloud = eval_cloud_only(cfg);
    if (!cloud.feasible) continue;
    Rational zf_sum(0);
    for (int j = 0; j <= cfg.kr - 1; ++j) zf_sum += delta_zf(cfg, j);
    CHECK(cloud.delta_e.value == zf_sum);
  }
}

TEST_CASE("sweep over mt reproduces the edge-only staircase") {
  const auto base = make_cfg(3, 3, 3, Rational(1), Rational(1), Rational(0));
  const auto points = sweep(base, SweepAxis::Mt, {Rational(1), Rational(2), Rational(3)}, TxMode::Serial);
  REQUIRE(points.size() == 3);
  CHECK(points[0].breakdown->delta_total.value == Rational(10, 9));
  CHECK(points[1].breakdown->delta_total.value == Rational(8, 9));
  CHECK(points[2].breakdown->delta_total.value == Rational(2, 3));
}

TEST_CASE("sweep over r decays fronthaul and keeps edge constant") {
  const auto base = make_cfg(3, 3, 3, Rational(0), Rational(1), Rational(0));
  const auto points =
      sweep(base, SweepAxis::R, {Rational(1, 2), Rational(1), Rational(2), Rational(8)}, TxMode::Serial);
  Rational previous_f;
  for (std::size_t i = 0; i < points.size(); ++i) {
    REQUIRE(points[i].breakdown.has_value());
    const auto& b = *points[i].breakdown;
    CHECK(b.delta_e.value == Rational(2, 3));
    if (i > 0) CHECK(b.delta_f.value < previous_f);
    previous_f = b.delta_f.value;
  }
}

TEST_CASE("sweep marks infeasible points as gaps without aborting") {
  const auto base = make_cfg(3, 3, 3, Rational(0), Rational(1), Rational(0));
  const auto points = sweep(base, SweepAxis::Mt, {Rational(0), Rational(2)}, TxMode::Serial);
  REQUIRE(points.size() == 2);
  CHECK(points[0].infeasible);
  CHECK_FALSE(points[0].breakdown.has_value());
  CHECK(points[1].breakdown.has_value());
  CHECK(points[1].breakdown->scheme == Scheme::EdgeOnly);
}

TEST_CASE("sweep orders its output by x even for unsorted grids") {
  const auto base = make_cfg(3, 3, 3, Rational(1), Rational(1), Rational(0));
  const auto points = sweep(base, SweepAxis::Mt, {Rational(3), Rational(1), Rational(2)}, TxMode::Serial);
  REQUIRE(points.size() == 3);
  CHECK(points[0].x == Rational(1));
  CHECK(points[1].x == Rational(2));
  CHECK(points[2].x == Rational(3));
}

TEST_CASE("sweep at the full-cache endpoint reports zero") {
  const auto base = make_cfg(3, 3, 3, Rational(1), Rational(1), Rational(1));
  const auto points = sweep(base, SweepAxis::Mr, {Rational(3)}, TxMode::Serial);
  REQUIRE(points.size() == 1);
  CHECK(points[0].breakdown->delta_total.value == Rational(0));
}
