#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <string>

#include "ikep/errors.hpp"

namespace ikep {

/// A non-negative integer limit that may be unbounded ("inf" in JSON).
///
/// The order is total: every finite value compares less than unbounded().
/// Arithmetic is intentionally not provided; callers read value() only
/// after checking is_finite().
class Bound {
 public:
  constexpr Bound() : raw_(0) {}

  static Bound finite(std::int64_t v) {
    if (v < 0 || v >= kInf) throw ValidationError("Bound::finite: value out of range");
    Bound b;
    b.raw_ = v;
    return b;
  }

  static constexpr Bound unbounded() {
    Bound b;
    b.raw_ = kInf;
    return b;
  }

  constexpr bool is_finite() const { return raw_ != kInf; }

  std::int64_t value() const {
    if (!is_finite()) throw PreconditionError("Bound::value called on unbounded value");
    return raw_;
  }

  /// True when a cycle of the given length respects this limit.
  constexpr bool allows(std::int64_t length) const { return length <= raw_; }

  /// The limit as a plain integer, with unbounded clamped to `ceiling`.
  std::int64_t finite_or(std::int64_t ceiling) const { return is_finite() ? raw_ : ceiling; }

  friend constexpr bool operator==(Bound, Bound) = default;
  friend constexpr auto operator<=>(Bound, Bound) = default;

  std::string to_string() const { return is_finite() ? std::to_string(raw_) : "inf"; }

 private:
  static constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();
  std::int64_t raw_;
};

}  // namespace ikep
