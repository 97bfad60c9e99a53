#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>

namespace joinery {

// Defaults; flags beat JOINERY_* env vars beat these.
struct RunConfig {
  long period_cap = 1'000'000;    // max per-point period for exact limits
  long lp_bound = 400;            // max product tuples for the falsifier LP
  long truncation_cap = 500'000;  // max support entries for lambda truncation
  std::uint64_t seed = 20080521;  // randomized property-test corpora only

  static RunConfig from_env() {
    RunConfig cfg;
    if (const char* v = std::getenv("JOINERY_PERIOD_CAP"))
      cfg.period_cap = std::strtol(v, nullptr, 10);
    if (const char* v = std::getenv("JOINERY_LP_BOUND"))
      cfg.lp_bound = std::strtol(v, nullptr, 10);
    if (const char* v = std::getenv("JOINERY_SEED"))
      cfg.seed = std::strtoull(v, nullptr, 10);
    return cfg;
  }
};

}  // namespace joinery
