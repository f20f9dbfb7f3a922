#pragma once

#include <map>
#include <string>
#include <vector>

#include "ikep/model.hpp"

namespace ikep {

/// Named parameters for the fixture constructions, e.g. {{"n",3},{"L",10}}.
struct FixtureParams {
  std::map<std::string, long long> values;

  long long get(const std::string& key, long long fallback) const {
    auto it = values.find(key);
    return it == values.end() ? fallback : it->second;
  }
};

/// Small hand-built instances used throughout the tests and the docs:
///   fig1           two-country pool where merging is not IR
///   fig2a          efficiency vs IR conflict (two overlapping cycles)
///   fig2b          the two 6-cycles sharing one vertex (no nonempty IC)
///   fig2c          national r-cycle with pendant international cycles
///                  (params r >= 2, icl >= 2)
///   thm5           n international cycles sharing one vertex
///                  (params n >= 1, L >= 3)
///   ex3            turnable cycle with a single substitute (param L >= 2)
///   fig5b          near-perfectness counterexample
///   fig7           national-cycle-limit manipulation example
///   thm7a          tight ratio via a national cycle starving pendant
///                  international cycles (params r >= 2, cint >= 2)
///   thm7b          tight ratio via alternating 4-cycles through one vertex
///                  (param dstar >= 2)
Instance build_fixture(const std::string& name, const FixtureParams& params = {});

std::vector<std::string> fixture_names();

}  // namespace ikep
