#pragma once

#include <gmpxx.h>

#include <string>

namespace ikep {

/// Exact rational number. All probabilities and expected utilities in the
/// library are exact; floating point appears only in CSV/JSON rendering.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline std::string rat_str(const Rat& q) { return q.get_str(); }

inline double rat_double(const Rat& q) { return q.get_d(); }

}  // namespace ikep
