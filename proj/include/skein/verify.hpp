#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "skein/json_io.hpp"
#include "skein/lipmap.hpp"
#include "skein/prng.hpp"
#include "skein/skein_space.hpp"

namespace skein {

struct Property {
  std::string name;
  std::function<std::optional<std::string>()> run;  // witness on failure
};

struct PropertyResult {
  std::string name;
  bool passed = false;
  std::string witness;  // empty when passed
};

struct VerificationReport {
  std::uint64_t seed = 0;
  std::vector<PropertyResult> results;

  std::size_t failures() const;
  /// Byte-deterministic for fixed inputs: no timings, fixed ordering.
  Json to_json() const;
};

struct VerifyConfig {
  std::uint64_t seed = 7;
  std::size_t random_maps = 120;
  std::size_t chain_pairs = 40;
  /// Truncation used by the skein suites; small by default so the full run
  /// stays interactive.
  SkeinBuildConfig skein;

  VerifyConfig() {
    skein.depth = 2;
    skein.gammas_per_pair = 2;
    skein.grid = Rational(1, 8);
    skein.gaps_per_thread = 2;
    skein.pair_budget = 2;
  }
};

/// Every module's invariant suite, in a fixed order.
std::vector<Property> verification_suite(const VerifyConfig& config);

VerificationReport run_verification(const VerifyConfig& config);

/// Fixture threads shared by suites and tests.
Thread fixture_line();    // length 1, width 1, no gaps
Thread fixture_half();    // length 1, width 1/2, no gaps
Thread fixture_ta();      // length 1, width 1/2, the 3-gap half-bound prefix

/// Seeded random endpoint-fixing map on the fixture pool.
PLMap random_endpoint_fixing_map(Prng& rng);

}  // namespace skein
