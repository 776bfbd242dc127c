#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string_view>
#include <type_traits>
#include <utility>

#include "tthue/enclosure.hpp"

namespace tthue {

/// Outcome of an interval-certified check. `undecided` means the available
/// precision could not separate the quantities; it never means "false".
enum class Status { pass, fail, undecided };

constexpr std::string_view to_string(Status s) {
  switch (s) {
    case Status::pass:
      return "pass";
    case Status::fail:
      return "fail";
    case Status::undecided:
      return "undecided";
  }
  return "undecided";
}

/// Conjunction: any fail wins, then any undecided.
constexpr Status operator&&(Status a, Status b) {
  if (a == Status::fail || b == Status::fail) return Status::fail;
  if (a == Status::undecided || b == Status::undecided) return Status::undecided;
  return Status::pass;
}

/// a < b
inline Status check_less(const Enclosure& a, const Enclosure& b) {
  if (a.hi() < b.lo()) return Status::pass;
  if (b.hi() <= a.lo()) return Status::fail;
  return Status::undecided;
}

/// a <= b
inline Status check_less_equal(const Enclosure& a, const Enclosure& b) {
  if (a.hi() <= b.lo()) return Status::pass;
  if (b.hi() < a.lo()) return Status::fail;
  return Status::undecided;
}

struct PrecisionPolicy {
  mpfr_prec_t start_bits = 128;
  mpfr_prec_t max_bits = 16384;
  int escalation_factor = 2;
  Dyadic target_width = Dyadic(1).ldexp(-64);

  void validate() const {
    if (start_bits < 2 || max_bits < start_bits || escalation_factor < 2 || target_width.sign() <= 0)
      throw std::invalid_argument("invalid precision policy");
  }

  /// Visits start_bits, start_bits*f, ..., capped at max_bits (always visited).
  template <class Fn>
  void for_each_level(Fn&& fn) const {
    validate();
    mpfr_prec_t bits = start_bits;
    while (true) {
      if (!fn(bits)) return;
      if (bits >= max_bits) return;
      bits = std::min<mpfr_prec_t>(max_bits, bits * escalation_factor);
    }
  }
};

struct Refined {
  Enclosure value;
  mpfr_prec_t bits = 0;
  bool converged = false;
};

/// Re-runs `compute` at escalating precision until the result is at most
/// policy.target_width wide. Non-convergence is reported, not thrown.
inline Refined refine_until(const std::function<Enclosure(mpfr_prec_t)>& compute, const PrecisionPolicy& policy) {
  Refined out;
  policy.for_each_level([&](mpfr_prec_t bits) {
    out.value = compute(bits);
    out.bits = bits;
    out.converged = out.value.width() <= policy.target_width;
    return !out.converged;
  });
  return out;
}

/// Result of a procedure retried at escalating precision.
template <class T>
struct Escalated {
  std::optional<T> value;  // empty when still undecided at max_bits
  mpfr_prec_t bits = 0;
};

/// Calls `attempt(bits)` (returning std::optional<T>) at each precision level
/// until it produces a value.
template <class Fn>
auto escalate(const PrecisionPolicy& policy, Fn&& attempt) {
  using T = typename std::invoke_result_t<Fn&, mpfr_prec_t>::value_type;
  Escalated<T> out;
  policy.for_each_level([&](mpfr_prec_t bits) {
    out.bits = bits;
    out.value = attempt(bits);
    return !out.value.has_value();
  });
  return out;
}

/// Runs a three-valued check at escalating precision; stops at the first
/// decided answer.
template <class Fn>
std::pair<Status, mpfr_prec_t> escalate_status(const PrecisionPolicy& policy, Fn&& check) {
  Status status = Status::undecided;
  mpfr_prec_t used = policy.start_bits;
  policy.for_each_level([&](mpfr_prec_t bits) {
    used = bits;
    status = check(bits);
    return status == Status::undecided;
  });
  return {status, used};
}

}  // namespace tthue
