#pragma once
// Text-side interfaces: experiment spec files (flat key = value), sweep CSV
// with exact-fraction columns, schedule export and trial report rendering.
// Number formatting is locale-free and byte-identical across platforms.

#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fogran/montecarlo.hpp"
#include "fogran/ndt.hpp"
#include "fogran/scheduler.hpp"

namespace fogran {

/// Parameterizes one experiment: base config, sweep axis/grid, transmission
/// mode and optional simulation block.
struct ExperimentSpec {
  NetworkConfig cfg;
  std::optional<SweepAxis> axis;
  std::vector<Rational> grid;
  TxMode mode = TxMode::Serial;
  std::optional<std::uint64_t> file_size;
  std::optional<int> trials;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format = "csv";
};

namespace detail {
inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}
}  // namespace detail

inline SweepAxis parse_axis(const std::string& text) {
  if (text == "mt") return SweepAxis::Mt;
  if (text == "mr") return SweepAxis::Mr;
  if (text == "r") return SweepAxis::R;
  throw std::invalid_argument("unknown sweep axis '" + text + "' (expected mt, mr or r)");
}

inline TxMode parse_mode(const std::string& text) {
  if (text == "serial") return TxMode::Serial;
  if (text == "pipelined") return TxMode::Pipelined;
  throw std::invalid_argument("unknown mode '" + text + "' (expected serial or pipelined)");
}

inline std::vector<Rational> parse_grid(const std::string& text) {
  std::vector<Rational> grid;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    item = detail::trim(item);
    if (!item.empty()) grid.push_back(Rational::parse(item));
  }
  return grid;
}

/// Flat `key = value` lines; '#' starts a comment. Keys: kt kr n mt mr r
/// mode axis grid file_size trials seed out format.
inline ExperimentSpec parse_spec(std::istream& in) {
  ExperimentSpec spec;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("spec line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    try {
      if (key == "kt") spec.cfg.kt = std::stoi(value);
      else if (key == "kr") spec.cfg.kr = std::stoi(value);
      else if (key == "n") spec.cfg.n = std::stoll(value);
      else if (key == "mt") spec.cfg.mt = Rational::parse(value);
      else if (key == "mr") spec.cfg.mr = Rational::parse(value);
      else if (key == "r") spec.cfg.r = Rational::parse(value);
      else if (key == "mode") spec.mode = parse_mode(value);
      else if (key == "axis") spec.axis = parse_axis(value);
      else if (key == "grid") spec.grid = parse_grid(value);
      else if (key == "file_size") spec.file_size = std::stoull(value);
      else if (key == "trials") spec.trials = std::stoi(value);
      else if (key == "seed") spec.seed = std::stoull(value);
      else if (key == "out") spec.out = value;
      else if (key == "format") spec.format = value;
      else throw std::invalid_argument("unknown key '" + key + "'");
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception& e) {
      throw std::invalid_argument("spec line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return spec;
}

inline ExperimentSpec parse_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open spec file '" + path + "'");
  return parse_spec(in);
}

inline const char* sweep_csv_header() {
  return "x,delta_f,delta_e,delta_total,scheme,mode,x_exact,delta_f_exact,delta_e_exact,delta_total_exact";
}

inline void write_sweep_csv(std::ostream& os, const std::vector<SweepPoint>& points, TxMode mode) {
  os << sweep_csv_header() << "\n";
  for (const auto& p : points) {
    if (p.breakdown) {
      const auto& b = *p.breakdown;
      os << p.x.decimal() << "," << b.delta_f.decimal() << "," << b.delta_e.decimal() << ","
         << b.delta_total.decimal() << "," << scheme_name(b.scheme) << "," << mode_name(mode) << "," << p.x.str()
         << "," << b.delta_f.str() << "," << b.delta_e.str() << "," << b.delta_total.str() << "\n";
    } else {
      os << p.x.decimal() << ",inf,inf,inf,INFEASIBLE," << mode_name(mode) << "," << p.x.str()
         << ",inf,inf,inf\n";
    }
  }
}

struct SweepCsvRow {
  Rational x;
  bool infeasible = false;
  Rational delta_f, delta_e, delta_total;
  std::string scheme;
  std::string mode;
};

inline std::vector<SweepCsvRow> parse_sweep_csv(std::istream& is) {
  std::vector<SweepCsvRow> rows;
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    line = detail::trim(line);
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line == sweep_csv_header()) continue;
    }
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    if (fields.size() != 10) throw std::invalid_argument("sweep CSV row has " + std::to_string(fields.size()) + " fields");
    SweepCsvRow row;
    row.x = Rational::parse(fields[6]);
    row.scheme = fields[4];
    row.mode = fields[5];
    if (fields[7] == "inf") {
      row.infeasible = true;
    } else {
      row.delta_f = Rational::parse(fields[7]);
      row.delta_e = Rational::parse(fields[8]);
      row.delta_total = Rational::parse(fields[9]);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline void write_breakdown_text(std::ostream& os, const NetworkConfig& cfg, const NdtBreakdown& b) {
  os << "scheme " << scheme_name(b.scheme) << "\n";
  os << "mode " << mode_name(b.mode) << "\n";
  os << "delta_f " << b.delta_f.str() << " (" << b.delta_f.decimal() << ")\n";
  os << "delta_e " << b.delta_e.str() << " (" << b.delta_e.decimal() << ")\n";
  os << "delta_total " << b.delta_total.str() << " (" << b.delta_total.decimal() << ")\n";
  os << "t_t " << cfg.tt().str() << "\n";
  os << "t_r " << cfg.tr().str() << "\n";
  os << "selection " << b.selection_rule << "\n";
  os << "per_class j ia_ic zf_ic soft_edge soft_fronthaul\n";
  for (const auto& c : b.per_class)
    os << "class " << c.j << " " << c.ia_ic.str() << " " << c.zf_ic.str() << " " << c.soft_edge.str() << " "
       << c.soft_fronthaul.str() << "\n";
  for (const auto& cand : b.candidates) {
    os << "candidate " << scheme_name(cand.scheme);
    if (cand.feasible)
      os << " delta_f=" << cand.delta_f.str() << " delta_e=" << cand.delta_e.str()
         << " total=" << cand.total(b.mode).str() << "\n";
    else
      os << " infeasible (" << cand.infeasible_reason << ")\n";
  }
}

inline void write_breakdown_csv(std::ostream& os, const NdtBreakdown& b) {
  os << "delta_f,delta_e,delta_total,scheme,mode,delta_f_exact,delta_e_exact,delta_total_exact\n";
  os << b.delta_f.decimal() << "," << b.delta_e.decimal() << "," << b.delta_total.decimal() << ","
     << scheme_name(b.scheme) << "," << mode_name(b.mode) << "," << b.delta_f.str() << "," << b.delta_e.str() << ","
     << b.delta_total.str() << "\n";
}

inline std::string users_str(std::uint32_t users) {
  std::string s = "{";
  bool first = true;
  for (int u = 1; u <= 32; ++u)
    if ((users >> (u - 1)) & 1u) {
      if (!first) s += ",";
      s += std::to_string(u);
      first = false;
    }
  return s + "}";
}

/// Block-per-record schedule export with validation status per block.
inline void write_schedule_text(std::ostream& os, const Schedule& schedule) {
  const auto& cfg = schedule.cfg;
  os << "# schedule export v1\n";
  os << "config kt=" << cfg.kt << " kr=" << cfg.kr << " n=" << cfg.n << " mt=" << cfg.mt.str()
     << " mr=" << cfg.mr.str() << " r=" << cfg.r.str() << "\n";
  os << "delivery scheme=" << scheme_name(schedule.scheme) << " mode=" << mode_name(schedule.mode)
     << " bit_level=" << (schedule.bit_level ? 1 : 0) << " file_bits=" << schedule.file_bits << "\n";
  Rational fronthaul(0);
  for (const auto& l : schedule.fronthaul_load) fronthaul = Rational::max(fronthaul, l);
  os << "fronthaul per_en_load=" << fronthaul.str() << " delta_f=" << schedule.achieved_delta_f().str() << "\n";
  os << "achieved delta_e=" << schedule.achieved_delta_e().str() << " total=" << schedule.achieved_total().str()
     << "\n";
  int index = 0;
  for (const auto& b : schedule.blocks) {
    const auto check = validate_block(cfg, b);
    os << "block index=" << index++ << " technique=" << technique_name(b.technique) << " class=" << b.class_j
       << " aligned=" << (b.aligned ? 1 : 0) << " dof=" << b.dof.str() << " size=" << b.total_size().str()
       << " duration=" << b.duration().str() << " streams=" << b.streams.size()
       << " valid=" << (check.pass ? "pass" : "fail") << "\n";
    for (const auto& s : b.streams) {
      os << "  stream rx=U" << s.rx << " file=" << s.subfile.file << " tag=" << s.subfile.tag.str()
         << " users=" << users_str(s.subfile.users) << " part=" << s.part_index << "/" << s.part_count
         << " size=" << s.size.str() << " tx=";
      switch (s.tx) {
        case TxSet::SingleEn: os << "EN" << s.tx_en; break;
        case TxSet::AllEns: os << "all-ens"; break;
        default: os << "cloud"; break;
      }
      os << "\n";
    }
  }
}

inline void write_trial_report_text(std::ostream& os, const TrialReport& report) {
  os << "# trial report\n";
  os << "config kt=" << report.cfg.kt << " kr=" << report.cfg.kr << " n=" << report.cfg.n
     << " mt=" << report.cfg.mt.str() << " mr=" << report.cfg.mr.str() << " r=" << report.cfg.r.str() << "\n";
  os << "run file_bits=" << report.file_bits << " trials=" << report.trials << " seed=" << report.seed << "\n";
  for (const auto& c : report.classes) {
    std::ostringstream mean, stddev, z;
    mean.precision(10);
    stddev.precision(10);
    z.precision(6);
    mean << c.mean;
    stddev << c.stddev;
    z << c.max_abs_z;
    os << "class j=" << c.j << " analytic=" << c.analytic.str() << " mean=" << mean.str()
       << " stddev=" << stddev.str() << " max_abs_z=" << z.str() << " included=" << (c.included ? 1 : 0) << "\n";
  }
  for (const auto& s : report.schemes) {
    std::ostringstream ge, gf;
    ge.precision(6);
    gf.precision(6);
    ge << s.rel_gap_e;
    gf << s.rel_gap_f;
    os << "scheme " << scheme_name(s.scheme) << " analytic_e=" << s.analytic_e.str()
       << " achieved_e=" << s.achieved_e.str() << " rel_gap_e=" << ge.str() << " analytic_f=" << s.analytic_f.str()
       << " achieved_f=" << s.achieved_f.str() << " rel_gap_f=" << gf.str() << " pass=" << (s.pass ? 1 : 0) << "\n";
  }
  os << "result z_pass=" << (report.z_pass ? 1 : 0) << " ndt_pass=" << (report.ndt_pass ? 1 : 0)
     << " pass=" << (report.pass ? 1 : 0) << "\n";
}

}  // namespace fogran
