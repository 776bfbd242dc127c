#pragma once

#include <optional>
#include <vector>

#include "tthue/cubic_field.hpp"
#include "tthue/order_algebra.hpp"
#include "tthue/precision.hpp"

namespace tthue {

/// |leading| * prod max(1, |root_i|).
inline Enclosure mahler_measure(const std::vector<Enclosure>& roots, const mpz_class& leading, mpfr_prec_t bits = 128) {
  if (leading == 0) throw DomainError("leading coefficient must be non-zero");
  Enclosure m = Enclosure::integer(abs(leading));
  for (const Enclosure& r : roots) m = (m * max(Enclosure(1), abs(r))).rounded(bits);
  return m;
}

struct HeightValue {
  Enclosure value;
  mpfr_prec_t bits = 0;
};

/// Absolute logarithmic height. Rational integers q use log max(1, |q|);
/// other elements (1/3) sum log max(1, |u(lam_i)|).
inline HeightValue absolute_log_height(const OrderElement& u, const PrecisionPolicy& policy = {}) {
  HeightValue h;
  if (u.is_rational()) {
    const mpz_class q = abs(u[0]);
    policy.for_each_level([&](mpfr_prec_t bits) {
      h.bits = bits;
      h.value = q <= 1 ? Enclosure(0) : log(Enclosure::integer(q), bits);
      return !(h.value.width() <= policy.target_width);
    });
    return h;
  }
  policy.for_each_level([&](mpfr_prec_t bits) {
    h.bits = bits;
    const RootTriple r = compute_roots(u.n(), bits);
    Enclosure sum(0);
    for (int i = 0; i < 3; ++i) {
      const Enclosure v = abs(evaluate(u, r[i], bits));
      if (v.lo() >= Dyadic(1)) {
        sum += log(v, bits);
      } else if (v.hi() > Dyadic(1)) {
        sum += Enclosure(Dyadic(0), log(Enclosure(v.hi()), bits).hi());
      }
    }
    h.value = div(sum, Enclosure(3), bits);
    return !(h.value.width() <= policy.target_width);
  });
  return h;
}

/// C = 18 (t+1)! t^(t+1) (32 D)^(t+2) log(2 t D).
inline Enclosure baker_constant(long t_count, long D, mpfr_prec_t bits = 128) {
  if (t_count < 1 || D < 1) throw DomainError("baker_constant needs t >= 1 and D >= 1");
  mpz_class fact, tp, dp;
  mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(t_count + 1));
  mpz_ui_pow_ui(tp.get_mpz_t(), static_cast<unsigned long>(t_count), static_cast<unsigned long>(t_count + 1));
  mpz_ui_pow_ui(dp.get_mpz_t(), static_cast<unsigned long>(32 * D), static_cast<unsigned long>(t_count + 2));
  const mpz_class integer_part = 18 * fact * tp * dp;
  return (Enclosure::integer(integer_part) * log(Enclosure(2 * t_count * D), bits)).rounded(bits);
}

struct BakerInputs {
  long t_count = 1;
  long D = 3;
  std::vector<Enclosure> heights;
  Enclosure B{3};
};

/// max(h(gamma), |log|gamma|| / D, 0.16 / D), the height entering the lower bound.
inline Enclosure baker_height(const Enclosure& h, const Enclosure& log_abs_gamma, long D, mpfr_prec_t bits = 128) {
  if (D < 1) throw DomainError("degree must be positive");
  const Enclosure scaled = div(abs(log_abs_gamma), Enclosure(D), bits);
  return max(max(h, scaled), Enclosure::rational(mpq_class(4, 25 * D), bits));
}

/// -C h_1 ... h_t log B. Heights certainly below 0.16/D are rejected.
inline Enclosure baker_lower_bound(const BakerInputs& in, mpfr_prec_t bits = 128) {
  if (static_cast<long>(in.heights.size()) != in.t_count) throw PreconditionFailed("need one height per logarithm");
  if (in.B.lo() < Dyadic(3)) throw PreconditionFailed("B must be at least 3");
  const mpq_class floor_h(4, 25 * in.D);  // 0.16 / D
  Enclosure prod = baker_constant(in.t_count, in.D, bits);
  for (const Enclosure& h : in.heights) {
    if (compare(h.hi(), floor_h) < 0) throw PreconditionFailed("height below the 0.16/D floor");
    prod = (prod * h).rounded(bits);
  }
  return -(prod * log(in.B, bits)).rounded(bits);
}

struct BoundConstants {
  mpq_class c2 = 1, c3 = 1, c4 = 1, c5 = 1;
  mpq_class c_cu = 64;

  void validate() const {
    for (const mpq_class* c : {&c2, &c3, &c4, &c5, &c_cu})
      if (sgn(*c) <= 0) throw DomainError("bound constants must be positive");
  }
};

struct DerivedBounds {
  long n = 3, tau = 3;
  Enclosure logy_bound;   // c2 tau (log n)^3 (log tau + log log n)
  Enclosure tau_bound;    // c3 log n log log n
  Enclosure logy_by_n;    // c4 (log n)^4 (log log n)^2
  Enclosure coeff_by_n;   // c5 (log n)^3 (log log n)^2
  Status tau_holds = Status::undecided;
  std::optional<Status> logy_holds, logy_by_n_holds;
  // logy_bound with tau = c3 log n log log n, and the folded form
  // c2 c3 (log n)^4 log log n (3 log log n + max(0, log c3)) that dominates it.
  Enclosure substituted, folded;
  Status substitution_consistent = Status::undecided;
};

inline DerivedBounds derived_bounds(long n, long tau, const BoundConstants& c = {},
                                    const std::optional<Enclosure>& logy = std::nullopt, mpfr_prec_t bits = 128) {
  require_family_parameter(n);
  if (tau < 3) throw DomainError("derived bounds need tau >= 3");
  c.validate();
  const auto q = [&](const mpq_class& v) { return Enclosure::rational(v, bits); };
  const Enclosure L = log(Enclosure(n), bits);
  const Enclosure LL = log(L, bits);
  const Enclosure L3 = (L * L * L).rounded(bits), L4 = (L3 * L).rounded(bits), LL2 = (LL * LL).rounded(bits);
  DerivedBounds d;
  d.n = n;
  d.tau = tau;
  d.logy_bound = (q(c.c2) * Enclosure(tau) * L3 * (log(Enclosure(tau), bits) + LL)).rounded(bits);
  d.tau_bound = (q(c.c3) * L * LL).rounded(bits);
  d.logy_by_n = (q(c.c4) * L4 * LL2).rounded(bits);
  d.coeff_by_n = (q(c.c5) * L3 * LL2).rounded(bits);
  d.tau_holds = check_less(Enclosure(tau), d.tau_bound);
  if (logy) {
    d.logy_holds = check_less(*logy, d.logy_bound);
    d.logy_by_n_holds = check_less(*logy, d.logy_by_n);
  }
  const Enclosure tau_sub = d.tau_bound;
  d.substituted = (q(c.c2) * tau_sub * L3 * (log(tau_sub, bits) + LL)).rounded(bits);
  const Enclosure log_c3 = log(q(c.c3), bits);
  const Enclosure pos_log_c3 = log_c3.lo().sign() >= 0 ? log_c3 : (log_c3.hi().sign() <= 0 ? Enclosure(0) : max(log_c3, Enclosure(0)));
  d.folded = (q(c.c2 * c.c3) * L4 * LL * (Enclosure(3) * LL + pos_log_c3)).rounded(bits);
  d.substitution_consistent = check_less_equal(d.substituted, d.folded);
  return d;
}

}  // namespace tthue
