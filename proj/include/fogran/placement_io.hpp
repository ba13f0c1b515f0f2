#pragma once
// Versioned binary dump of a placement: header (magic, version, config, F,
// seed) followed by per-file EN ranges and run-length-encoded user bit sets.
// Little-endian, written byte by byte so the format is platform-independent.

#include <cstdint>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "fogran/placement.hpp"

namespace fogran {

struct PlacementDump {
  NetworkConfig cfg;
  std::uint64_t file_bits = 0;
  std::uint64_t seed = 0;
  EnPlacement en;
  UserPlacement users;
};

namespace detail {

constexpr char kPlacementMagic[4] = {'F', 'G', 'P', 'L'};
constexpr std::uint32_t kPlacementVersion = 1;

inline void put_u64(std::ostream& os, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) os.put(static_cast<char>((v >> (8 * i)) & 0xff));
}
inline void put_u32(std::ostream& os, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) os.put(static_cast<char>((v >> (8 * i)) & 0xff));
}
inline void put_i64(std::ostream& os, std::int64_t v) { put_u64(os, static_cast<std::uint64_t>(v)); }

inline std::uint64_t get_u64(std::istream& is) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) {
    const int c = is.get();
    if (c < 0) throw std::runtime_error("placement dump truncated");
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(c)) << (8 * i);
  }
  return v;
}
inline std::uint32_t get_u32(std::istream& is) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    const int c = is.get();
    if (c < 0) throw std::runtime_error("placement dump truncated");
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(c)) << (8 * i);
  }
  return v;
}
inline std::int64_t get_i64(std::istream& is) { return static_cast<std::int64_t>(get_u64(is)); }

inline void put_rle(std::ostream& os, const BitVec& bv) {
  // Alternating run lengths, first run counts zeros (possibly zero-length).
  std::vector<std::uint64_t> runs;
  bool current = false;
  std::uint64_t length = 0;
  for (std::uint64_t i = 0; i < bv.size(); ++i) {
    const bool bit = bv.test(i);
    if (bit == current) {
      ++length;
    } else {
      runs.push_back(length);
      current = bit;
      length = 1;
    }
  }
  runs.push_back(length);
  put_u64(os, runs.size());
  for (const auto run : runs) put_u64(os, run);
}

inline BitVec get_rle(std::istream& is, std::uint64_t bits) {
  BitVec bv(bits);
  const std::uint64_t nruns = get_u64(is);
  std::uint64_t cursor = 0;
  bool current = false;
  for (std::uint64_t i = 0; i < nruns; ++i) {
    const std::uint64_t run = get_u64(is);
    if (cursor + run > bits) throw std::runtime_error("placement dump corrupt: run overflows file");
    if (current)
      for (std::uint64_t b = 0; b < run; ++b) bv.set(cursor + b);
    cursor += run;
    current = !current;
  }
  if (cursor != bits) throw std::runtime_error("placement dump corrupt: runs cover wrong length");
  return bv;
}

}  // namespace detail

inline void write_placement(std::ostream& os, const NetworkConfig& cfg, const EnPlacement& en,
                            const UserPlacement& users) {
  os.write(detail::kPlacementMagic, 4);
  detail::put_u32(os, detail::kPlacementVersion);
  detail::put_u32(os, static_cast<std::uint32_t>(cfg.kt));
  detail::put_u32(os, static_cast<std::uint32_t>(cfg.kr));
  detail::put_i64(os, cfg.n);
  detail::put_i64(os, cfg.mt.num());
  detail::put_i64(os, cfg.mt.den());
  detail::put_i64(os, cfg.mr.num());
  detail::put_i64(os, cfg.mr.den());
  detail::put_i64(os, cfg.r.num());
  detail::put_i64(os, cfg.r.den());
  detail::put_u64(os, en.file_bits);
  detail::put_u64(os, users.seed);
  os.put(en.regime == EnRegime::Fractional ? 0 : 1);
  for (const auto& fp : en.files) {
    detail::put_u64(os, fp.shared.begin);
    detail::put_u64(os, fp.shared.end);
    for (const auto& r : fp.exclusive) {
      detail::put_u64(os, r.begin);
      detail::put_u64(os, r.end);
    }
    detail::put_u64(os, fp.cloud.begin);
    detail::put_u64(os, fp.cloud.end);
  }
  for (const auto& bv : users.sets) detail::put_rle(os, bv);
}

inline PlacementDump read_placement(std::istream& is) {
  char magic[4] = {};
  is.read(magic, 4);
  if (is.gcount() != 4 || magic[0] != 'F' || magic[1] != 'G' || magic[2] != 'P' || magic[3] != 'L')
    throw std::runtime_error("not a placement dump (bad magic)");
  const std::uint32_t version = detail::get_u32(is);
  if (version != detail::kPlacementVersion)
    throw std::runtime_error("unsupported placement dump version " + std::to_string(version));

  PlacementDump dump;
  dump.cfg.kt = static_cast<int>(detail::get_u32(is));
  dump.cfg.kr = static_cast<int>(detail::get_u32(is));
  dump.cfg.n = detail::get_i64(is);
  const std::int64_t mt_num = detail::get_i64(is), mt_den = detail::get_i64(is);
  const std::int64_t mr_num = detail::get_i64(is), mr_den = detail::get_i64(is);
  const std::int64_t r_num = detail::get_i64(is), r_den = detail::get_i64(is);
  dump.cfg.mt = Rational(mt_num, mt_den);
  dump.cfg.mr = Rational(mr_num, mr_den);
  dump.cfg.r = Rational(r_num, r_den);
  dump.file_bits = detail::get_u64(is);
  dump.seed = detail::get_u64(is);
  const int regime = is.get();
  if (regime < 0) throw std::runtime_error("placement dump truncated");

  dump.en.regime = regime == 0 ? EnRegime::Fractional : EnRegime::Split;
  dump.en.kt = dump.cfg.kt;
  dump.en.file_bits = dump.file_bits;
  for (std::int64_t file = 0; file < dump.cfg.n; ++file) {
    FilePlacement fp;
    fp.shared = {detail::get_u64(is), detail::get_u64(is)};
    for (int i = 0; i < dump.cfg.kt; ++i) fp.exclusive.push_back({detail::get_u64(is), detail::get_u64(is)});
    fp.cloud = {detail::get_u64(is), detail::get_u64(is)};
    dump.en.files.push_back(std::move(fp));
  }

  dump.users.kr = dump.cfg.kr;
  dump.users.n = dump.cfg.n;
  dump.users.file_bits = dump.file_bits;
  dump.users.seed = dump.seed;
  dump.users.bits_per_file = detail::floor_bits(dump.cfg.mr / Rational(dump.cfg.n), dump.file_bits);
  for (int u = 0; u < dump.cfg.kr; ++u)
    for (std::int64_t file = 0; file < dump.cfg.n; ++file)
      dump.users.sets.push_back(detail::get_rle(is, dump.file_bits));
  return dump;
}

}  // namespace fogran
