#pragma once

#include <cstdint>

#include "relhom/corpus.hpp"
#include "relhom/purity.hpp"
#include "relhom/relative.hpp"

namespace relhom {

struct CheckResult {
  std::string id;
  std::string expected;
  std::string computed;
  bool pass = false;
  double runtime_ms = 0.0;
};

struct VerificationReport {
  std::string ring;
  std::string field;
  std::size_t bound = 6;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool all_pass() const;
  std::string to_json() const;
  std::string to_table() const;
};

struct VerifyOptions {
  std::string preset = "square_zero_2vars";
  Field field = Field::prime(5);
  std::size_t bound = 6;
  std::uint64_t seed = 0x5eed2012;
  /// With the default preset the battery also runs the Gorenstein-control
  /// checks (collapse to absolute Tor, omega = R witnesses) on the truncated
  /// polynomial presets; other presets run the subset applicable to them.
  bool include_controls = true;
};

/// Runs the full theorem battery and returns one CheckResult per criterion.
/// Deterministic for fixed (preset, field, bound, seed).
VerificationReport verify_battery(const VerifyOptions& opts);

}  // namespace relhom
