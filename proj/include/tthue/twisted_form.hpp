#pragma once

#include <array>
#include <cstdlib>

#include "tthue/cubic_field.hpp"
#include "tthue/order_algebra.hpp"

namespace tthue {

struct TwistExponents {
  long s = 0;
  long t = 0;

  long tau() const { return std::max(std::labs(s), std::labs(t)); }
};

/// alpha_i as a unit word: alpha0 = lam0^(s-t) lam2^-t, alpha1 = lam0^-s
/// lam2^(t-s), alpha2 = lam0^t lam2^s.
inline UnitWord alpha_word(long s, long t, int i) {
  switch (i) {
    case 0:
      return {1, s - t, -t};
    case 1:
      return {1, -s, t - s};
    case 2:
      return {1, t, s};
    default:
      throw std::invalid_argument("conjugate index must be 0, 1 or 2");
  }
}

/// alpha_0 = lam0^s lam1^t; alpha_i is the i-th Galois conjugate.
inline OrderElement alpha_element(long n, long s, long t, int i) {
  require_family_parameter(n);
  if (i < 0 || i > 2) throw std::invalid_argument("conjugate index must be 0, 1 or 2");
  const OrderElement alpha0 = pow(OrderElement::lambda0(n), s) * pow(OrderElement::lambda1(n), t);
  return conjugate(alpha0, i);
}

inline std::array<OrderElement, 3> alpha_elements(long n, long s, long t) {
  const OrderElement a0 = alpha_element(n, s, t, 0);
  const OrderElement a1 = conjugate(a0);
  return {a0, a1, conjugate(a1)};
}

/// F(X,Y) = X^3 - e1 X^2 Y + e2 X Y^2 - e3 Y^3.
struct NormFormCoeffs {
  long n = 0, s = 0, t = 0;
  mpz_class e1, e2, e3;

  friend bool operator==(const NormFormCoeffs&, const NormFormCoeffs&) = default;
};

inline NormFormCoeffs form_coeffs(long n, long s, long t) {
  const IntMatrix3 m = regular_matrix(alpha_element(n, s, t, 0));
  return {n, s, t, trace(m), second_symmetric(m), determinant(m)};
}

inline mpz_class evaluate_form(const NormFormCoeffs& f, const mpz_class& x, const mpz_class& y) {
  // ((x - e1 y) x + e2 y^2) x - e3 y^3
  const mpz_class y2 = y * y;
  mpz_class v = x - f.e1 * y;
  v = v * x + f.e2 * y2;
  v = v * x - f.e3 * y2 * y;
  return v;
}

inline mpz_class evaluate_form(long n, long s, long t, const mpz_class& x, const mpz_class& y) {
  return evaluate_form(form_coeffs(n, s, t), x, y);
}

/// alpha_0 = lam0^s lam1^t, alpha_1 = lam1^s lam2^t, alpha_2 = lam2^s lam0^t.
inline std::array<Enclosure, 3> alpha_enclosures(const RootTriple& r, long s, long t, mpfr_prec_t bits) {
  const std::array<Enclosure, 3> p_s = {pow_int(r.lam0, s, bits), pow_int(r.lam1, s, bits), pow_int(r.lam2, s, bits)};
  const std::array<Enclosure, 3> p_t = {pow_int(r.lam0, t, bits), pow_int(r.lam1, t, bits), pow_int(r.lam2, t, bits)};
  return {(p_s[0] * p_t[1]).rounded(bits), (p_s[1] * p_t[2]).rounded(bits), (p_s[2] * p_t[0]).rounded(bits)};
}

}  // namespace tthue
