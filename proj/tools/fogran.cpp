// Command-line front end: single-configuration NDT evaluation, parameter
// sweeps, Monte Carlo validation, schedule export and the invariant suite.
//
// Exit codes: 0 ok, 1 usage error, 2 infeasible, 3 statistical/invariant
// failure.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fogran/fogran.hpp"

namespace {

using namespace fogran;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitStatistical = 3;

struct CfgFlags {
  int kt = 0;
  int kr = 0;
  std::int64_t n = 0;
  std::string mt, mr, r = "0";
};

void add_cfg_flags(CLI::App* cmd, CfgFlags& flags) {
  cmd->add_option("--kt", flags.kt, "edge node count");
  cmd->add_option("--kr", flags.kr, "user count");
  cmd->add_option("--n", flags.n, "library size (files)");
  cmd->add_option("--mt", flags.mt, "per-EN cache size in files (rational, e.g. 3/2)");
  cmd->add_option("--mr", flags.mr, "per-user cache size in files (rational)");
  cmd->add_option("--r", flags.r, "fronthaul multiplexing gain (rational)");
}

Rational parse_flag_rational(const std::string& value, const char* flag) {
  try {
    return Rational::parse(value);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string(flag) + ": " + e.what());
  }
}

void apply_cfg_flags(const CLI::App* cmd, const CfgFlags& flags, NetworkConfig& cfg) {
  if (cmd->count("--kt")) cfg.kt = flags.kt;
  if (cmd->count("--kr")) cfg.kr = flags.kr;
  if (cmd->count("--n")) cfg.n = flags.n;
  if (cmd->count("--mt")) cfg.mt = parse_flag_rational(flags.mt, "--mt");
  if (cmd->count("--mr")) cfg.mr = parse_flag_rational(flags.mr, "--mr");
  if (cmd->count("--r")) cfg.r = parse_flag_rational(flags.r, "--r");
}

std::filesystem::path resolve_out(const std::string& out) {
  std::filesystem::path path(out);
  if (path.is_relative()) {
    if (const char* dir = std::getenv("FOGRAN_OUT_DIR"); dir != nullptr && *dir != '\0') {
      path = std::filesystem::path(dir) / path;
    }
  }
  return path;
}

// Writes to --out (under FOGRAN_OUT_DIR when relative) or stdout.
template <typename Writer>
void emit(const std::string& out, Writer&& writer) {
  if (out.empty()) {
    writer(std::cout);
    return;
  }
  const auto path = resolve_out(out);
  std::ofstream file(path);
  if (!file) throw std::invalid_argument("cannot open output file '" + path.string() + "'");
  writer(file);
}

int run_ndt(const NetworkConfig& cfg, TxMode mode, const std::string& format, const std::string& out) {
  validate_config(cfg);
  NdtBreakdown breakdown;
  try {
    breakdown = evaluate(cfg, mode);
  } catch (const NoFeasibleScheme& e) {
    std::cerr << e.what() << "\n";
    return kExitInfeasible;
  }
  emit(out, [&](std::ostream& os) {
    if (format == "csv")
      write_breakdown_csv(os, breakdown);
    else
      write_breakdown_text(os, cfg, breakdown);
  });
  return kExitOk;
}

int run_sweep(const ExperimentSpec& spec) {
  if (!spec.axis) throw std::invalid_argument("sweep needs an axis (--axis or spec file)");
  if (spec.grid.empty()) throw std::invalid_argument("sweep needs a nonempty grid");
  for (std::size_t i = 1; i < spec.grid.size(); ++i)
    if (!(spec.grid[i - 1] < spec.grid[i]))
      throw std::invalid_argument("sweep grid must be strictly increasing");
  for (const auto& x : spec.grid) {
    NetworkConfig cfg = spec.cfg;
    switch (*spec.axis) {
      case SweepAxis::Mt: cfg.mt = x; break;
      case SweepAxis::Mr: cfg.mr = x; break;
      case SweepAxis::R: cfg.r = x; break;
    }
    validate_config(cfg);  // every grid point must be a valid configuration
  }

  const auto points = sweep(spec.cfg, *spec.axis, spec.grid, spec.mode);
  bool any_feasible = false;
  for (const auto& p : points) any_feasible = any_feasible || p.breakdown.has_value();

  emit(spec.out, [&](std::ostream& os) {
    if (spec.format == "text") {
      for (const auto& p : points) {
        if (p.breakdown)
          os << axis_name(*spec.axis) << "=" << p.x.str() << " total=" << p.breakdown->delta_total.str()
             << " scheme=" << scheme_name(p.breakdown->scheme) << "\n";
        else
          os << axis_name(*spec.axis) << "=" << p.x.str() << " INFEASIBLE (" << p.error << ")\n";
      }
    } else {
      write_sweep_csv(os, points, spec.mode);
    }
  });
  return any_feasible ? kExitOk : kExitInfeasible;
}

int run_simulate(const NetworkConfig& cfg, std::uint64_t file_size, int trials, std::uint64_t seed,
                 const std::string& tamper, const std::string& out) {
  validate_config(cfg);
  std::optional<std::vector<Rational>> override_table;
  if (!tamper.empty()) {
    const auto eq = tamper.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("--tamper-class expects j=fraction");
    const int j = std::stoi(tamper.substr(0, eq));
    auto table = class_profile(cfg).fraction;
    if (j < 0 || j > cfg.kr) throw std::invalid_argument("--tamper-class index out of range");
    table[static_cast<std::size_t>(j)] = Rational::parse(tamper.substr(eq + 1));
    override_table = std::move(table);
  }
  const auto report = run_trials(cfg, file_size, trials, seed, override_table ? &*override_table : nullptr);
  emit(out, [&](std::ostream& os) { write_trial_report_text(os, report); });
  return report.pass ? kExitOk : kExitStatistical;
}

int run_schedule(const NetworkConfig& cfg, TxMode mode, std::uint64_t file_size, std::uint64_t seed,
                 const std::string& out) {
  validate_config(cfg);
  NdtBreakdown breakdown;
  try {
    breakdown = evaluate(cfg, mode);
  } catch (const NoFeasibleScheme& e) {
    std::cerr << e.what() << "\n";
    return kExitInfeasible;
  }
  const auto demand = DemandVector::worst_case(cfg);
  Inventory inv = Inventory::analytic(cfg);
  if (file_size > 0) {
    const auto en = place_en_caches(cfg, file_size);
    const auto users = place_user_caches(cfg, file_size, seed);
    inv = Inventory::empirical(cfg, classify_bits(cfg, en, users));
  }
  const auto schedule = build_schedule(cfg, inv, demand, breakdown.scheme, mode);
  verify_coverage(cfg, inv, demand, schedule);
  emit(out, [&](std::ostream& os) { write_schedule_text(os, schedule); });
  return kExitOk;
}

// The full invariant suite over a built-in grid; prints one line per check.
int run_validate(std::ostream& os) {
  std::vector<NetworkConfig> grid;
  for (int kt : {1, 2, 3, 4}) {
    for (int kr : {1, 2, 3, 5}) {
      for (std::int64_t n : {static_cast<std::int64_t>(kr), kr + 2L}) {
        for (const auto& mt_frac : {Rational(0), Rational(1, 2), Rational(1)}) {
          for (const auto& mr : {Rational(0), Rational(1, 2), Rational(1)}) {
            for (const auto& r : {Rational(0), Rational(1)}) {
              NetworkConfig cfg;
              cfg.kt = kt;
              cfg.kr = kr;
              cfg.n = n;
              cfg.mt = mt_frac * Rational(n);
              cfg.mr = mr;
              cfg.r = r;
              if (config_issues(cfg).empty()) grid.push_back(cfg);
            }
          }
        }
      }
    }
  }

  bool all_ok = true;
  auto check = [&](const char* name, bool ok) {
    os << (ok ? "ok " : "FAIL ") << name << "\n";
    all_ok = all_ok && ok;
  };

  bool partition = true, residual = true, dominance = true, serial_vs_pipe = true, cloud_consistency = true,
       scale = true;
  for (const auto& cfg : grid) {
    const auto profile = class_profile(cfg);
    Rational total(0);
    for (int j = 0; j <= cfg.kr; ++j)
      total += Rational(binomial(cfg.kr, j)) * profile.fraction[static_cast<std::size_t>(j)];
    partition = partition && total == Rational(1);
    residual = residual && profile.residual == Rational(1) - cfg.mr / Rational(cfg.n);
    for (int j = 0; j <= cfg.kr - 1; ++j) dominance = dominance && delta_zf(cfg, j) <= delta_ia(cfg, j);
    try {
      const auto s = delta_serial(cfg);
      const auto p = delta_pipelined(cfg);
      serial_vs_pipe = serial_vs_pipe && !Delay::less(s.delta_total, p.delta_total);
    } catch (const NoFeasibleScheme&) {
    }
    const auto cloud = eval_cloud_only(cfg);
    if (cloud.feasible) {
      Rational zf_sum(0);
      for (int j = 0; j <= cfg.kr - 1; ++j) zf_sum += delta_zf(cfg, j);
      cloud_consistency = cloud_consistency && cloud.delta_e.value == zf_sum;
    }
    NetworkConfig doubled = cfg;
    doubled.n *= 2;
    doubled.mt = cfg.mt * Rational(2);
    doubled.mr = cfg.mr * Rational(2);
    for (Scheme scheme : {Scheme::EdgeOnly, Scheme::CloudOnly, Scheme::Hybrid}) {
      const auto a = eval_scheme(cfg, scheme);
      const auto b = eval_scheme(doubled, scheme);
      scale = scale && a.feasible == b.feasible && (!a.feasible || (a.delta_f == b.delta_f && a.delta_e == b.delta_e));
    }
  }
  check("class-profile partition identity", partition);
  check("residual closed form", residual);
  check("per-class ZF dominance over IA", dominance);
  check("pipelined never exceeds serial", serial_vs_pipe);
  check("cloud edge delay equals ZF sum", cloud_consistency);
  check("scale invariance in (n, mt, mr)", scale);

  bool branch_agreement = true;
  for (int kt : {2, 3, 4}) {
    for (int kr : {2, 3}) {
      const std::int64_t n = kr + 1;
      for (const auto& r : {Rational(1), Rational(4)}) {
        NetworkConfig cfg;
        cfg.kt = kt;
        cfg.kr = kr;
        cfg.n = n;
        cfg.mt = Rational(n) / Rational(kt);
        cfg.mr = Rational(1, 2);
        cfg.r = r;
        const auto hybrid = eval_hybrid(cfg);
        const auto edge = eval_edge_only(cfg);
        const auto cloud = eval_cloud_only(cfg);
        for (TxMode mode : {TxMode::Serial, TxMode::Pipelined}) {
          Delay lower = hybrid.total(mode);
          Delay upper = edge.total(mode);
          if (cloud.feasible) {
            lower = Delay::less(cloud.total(mode), lower) ? cloud.total(mode) : lower;
            upper = Delay::less(cloud.total(mode), upper) ? cloud.total(mode) : upper;
          }
          branch_agreement = branch_agreement && lower == upper;
        }
      }
    }
  }
  check("selection branches agree at t_T = 1", branch_agreement);

  bool monotone = true;
  for (int kt : {2, 3, 4}) {
    const int kr = 3;
    const std::int64_t n = 3;
    Rational previous;
    bool first = true;
    for (int step = 0; step <= 6; ++step) {
      NetworkConfig cfg;
      cfg.kt = kt;
      cfg.kr = kr;
      cfg.n = n;
      cfg.mt = Rational(n) / Rational(kt) + (Rational(n) - Rational(n) / Rational(kt)) * Rational(step, 6);
      cfg.mr = Rational(1);
      const auto value = delta_zf_ia(cfg);
      if (!first) monotone = monotone && value <= previous;
      previous = value;
      first = false;
    }
  }
  check("edge NDT non-increasing in t_T", monotone);

  return all_ok ? kExitOk : kExitStatistical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cache-aided F-RAN delivery-time calculator and simulator"};
  app.require_subcommand(1);

  CfgFlags ndt_flags, sweep_flags, sim_flags, sched_flags;
  std::string ndt_mode = "serial", sweep_mode, sched_mode = "serial";
  std::string ndt_format = "text", sweep_format, ndt_out, sweep_out, sim_out, sched_out;
  std::string sweep_axis, sweep_grid, spec_path, tamper;
  std::uint64_t sim_file_size = 0, sched_file_size = 0;
  std::uint64_t sim_seed = 1, sched_seed = 1;
  int sim_trials = 32;

  auto* ndt_cmd = app.add_subcommand("ndt", "evaluate one configuration");
  add_cfg_flags(ndt_cmd, ndt_flags);
  ndt_cmd->add_option("--mode", ndt_mode, "serial or pipelined");
  ndt_cmd->add_option("--format", ndt_format, "text or csv");
  ndt_cmd->add_option("--out", ndt_out, "output path (FOGRAN_OUT_DIR applies to relative paths)");

  auto* sweep_cmd = app.add_subcommand("sweep", "evaluate a parameter sweep to CSV");
  add_cfg_flags(sweep_cmd, sweep_flags);
  sweep_cmd->add_option("--spec", spec_path, "experiment spec file (flat key = value)");
  sweep_cmd->add_option("--axis", sweep_axis, "sweep axis: mt, mr or r");
  sweep_cmd->add_option("--grid", sweep_grid, "comma-separated rational grid, strictly increasing");
  sweep_cmd->add_option("--mode", sweep_mode, "serial or pipelined");
  sweep_cmd->add_option("--format", sweep_format, "csv or text");
  sweep_cmd->add_option("--out", sweep_out, "output path");

  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo placement validation");
  add_cfg_flags(sim_cmd, sim_flags);
  sim_cmd->add_option("--file-size", sim_file_size, "file size F in bits (>= 1024)");
  sim_cmd->add_option("--trials", sim_trials, "trial count");
  sim_cmd->add_option("--seed", sim_seed, "master seed");
  sim_cmd->add_option("--out", sim_out, "output path");
  sim_cmd->add_option("--tamper-class", tamper, "test hook: override f(j) as j=fraction")->group("");

  auto* sched_cmd = app.add_subcommand("schedule", "export the transmission schedule");
  add_cfg_flags(sched_cmd, sched_flags);
  sched_cmd->add_option("--mode", sched_mode, "serial or pipelined");
  sched_cmd->add_option("--file-size", sched_file_size, "bit-level schedule at this F (0 = analytic)");
  sched_cmd->add_option("--seed", sched_seed, "placement seed for bit-level schedules");
  sched_cmd->add_option("--out", sched_out, "output path");

  auto* validate_cmd = app.add_subcommand("validate", "run the invariant suite");
  std::string validate_out;
  validate_cmd->add_option("--out", validate_out, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (ndt_cmd->parsed()) {
      NetworkConfig cfg;
      apply_cfg_flags(ndt_cmd, ndt_flags, cfg);
      return run_ndt(cfg, parse_mode(ndt_mode), ndt_format, ndt_out);
    }
    if (sweep_cmd->parsed()) {
      ExperimentSpec spec;
      if (sweep_cmd->count("--spec")) spec = parse_spec_file(spec_path);
      apply_cfg_flags(sweep_cmd, sweep_flags, spec.cfg);
      if (sweep_cmd->count("--axis")) spec.axis = parse_axis(sweep_axis);
      if (sweep_cmd->count("--grid")) spec.grid = parse_grid(sweep_grid);
      if (sweep_cmd->count("--mode")) spec.mode = parse_mode(sweep_mode);
      if (sweep_cmd->count("--format")) spec.format = sweep_format;
      if (sweep_cmd->count("--out")) spec.out = sweep_out;
      return run_sweep(spec);
    }
    if (sim_cmd->parsed()) {
      NetworkConfig cfg;
      apply_cfg_flags(sim_cmd, sim_flags, cfg);
      return run_simulate(cfg, sim_file_size, sim_trials, sim_seed, tamper, sim_out);
    }
    if (sched_cmd->parsed()) {
      NetworkConfig cfg;
      apply_cfg_flags(sched_cmd, sched_flags, cfg);
      return run_schedule(cfg, parse_mode(sched_mode), sched_file_size, sched_seed, sched_out);
    }
    if (validate_cmd->parsed()) {
      if (!validate_out.empty()) {
        std::ofstream file(resolve_out(validate_out));
        if (!file) throw std::invalid_argument("cannot open output file");
        return run_validate(file);
      }
      return run_validate(std::cout);
    }
  } catch (const SchemeInfeasible& e) {
    std::cerr << e.what() << "\n";
    return kExitInfeasible;
  } catch (const NoFeasibleScheme& e) {
    std::cerr << e.what() << "\n";
    return kExitInfeasible;
  } catch (const ReconcileFailure& e) {
    std::cerr << e.what() << "\n";
    return kExitStatistical;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
