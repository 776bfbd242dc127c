#pragma once

#include <array>
#include <cstdlib>
#include <ostream>
#include <string>

#include "tthue/cubic_field.hpp"
#include "tthue/errors.hpp"

namespace tthue {

/// Exact element c0 + c1*lam0 + c2*lam0^2 of the order Z[lam0] for the
/// family member n. Real values refer to the embedding lam0 -> largest root.
class OrderElement {
 public:
  OrderElement() = default;
  OrderElement(long n, mpz_class c0, mpz_class c1 = 0, mpz_class c2 = 0)
      : n_(n), c_{std::move(c0), std::move(c1), std::move(c2)} {}

  static OrderElement integer(long n, const mpz_class& z) { return {n, z}; }
  static OrderElement one(long n) { return {n, 1}; }
  static OrderElement lambda0(long n) { return {n, 0, 1, 0}; }
  /// lam1 = lam0^2 - n*lam0 - 2
  static OrderElement lambda1(long n) { return {n, -2, -n, 1}; }
  /// lam2 = -1 - 1/lam0 = (n+1) + (n-1)*lam0 - lam0^2
  static OrderElement lambda2(long n) { return {n, n + 1, n - 1, -1}; }

  long n() const { return n_; }
  const mpz_class& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  const std::array<mpz_class, 3>& coords() const { return c_; }

  bool is_rational() const { return c_[1] == 0 && c_[2] == 0; }

  friend bool operator==(const OrderElement& a, const OrderElement& b) { return a.n_ == b.n_ && a.c_ == b.c_; }

  friend OrderElement operator+(const OrderElement& a, const OrderElement& b) {
    check_same(a, b);
    return {a.n_, a.c_[0] + b.c_[0], a.c_[1] + b.c_[1], a.c_[2] + b.c_[2]};
  }
  friend OrderElement operator-(const OrderElement& a, const OrderElement& b) {
    check_same(a, b);
    return {a.n_, a.c_[0] - b.c_[0], a.c_[1] - b.c_[1], a.c_[2] - b.c_[2]};
  }
  friend OrderElement operator-(const OrderElement& a) { return {a.n_, -a.c_[0], -a.c_[1], -a.c_[2]}; }
  friend OrderElement operator*(const mpz_class& k, const OrderElement& a) {
    return {a.n_, k * a.c_[0], k * a.c_[1], k * a.c_[2]};
  }

  /// Product reduced with lam0^3 = (n-1)lam0^2 + (n+2)lam0 + 1.
  friend OrderElement operator*(const OrderElement& a, const OrderElement& b) {
    check_same(a, b);
    const auto& x = a.c_;
    const auto& y = b.c_;
    mpz_class d0 = x[0] * y[0];
    mpz_class d1 = x[0] * y[1] + x[1] * y[0];
    mpz_class d2 = x[0] * y[2] + x[1] * y[1] + x[2] * y[0];
    mpz_class d3 = x[1] * y[2] + x[2] * y[1];
    const mpz_class d4 = x[2] * y[2];
    const long n = a.n_;
    // lam^4 = (n-1)lam^3 + (n+2)lam^2 + lam
    d3 += (n - 1) * d4;
    d2 += (n + 2) * d4;
    d1 += d4;
    d2 += (n - 1) * d3;
    d1 += (n + 2) * d3;
    d0 += d3;
    return {n, std::move(d0), std::move(d1), std::move(d2)};
  }
  OrderElement& operator*=(const OrderElement& o) { return *this = *this * o; }
  OrderElement& operator+=(const OrderElement& o) { return *this = *this + o; }
  OrderElement& operator-=(const OrderElement& o) { return *this = *this - o; }

  std::string to_string() const {
    return "(" + c_[0].get_str() + ", " + c_[1].get_str() + ", " + c_[2].get_str() + ")";
  }
  friend std::ostream& operator<<(std::ostream& os, const OrderElement& e) { return os << e.to_string(); }

 private:
  static void check_same(const OrderElement& a, const OrderElement& b) {
    if (a.n_ != b.n_) throw MismatchedField("order elements belong to different family members");
  }

  long n_ = 3;
  std::array<mpz_class, 3> c_{0, 0, 0};
};

using IntMatrix3 = std::array<std::array<mpz_class, 3>, 3>;

/// Matrix of multiplication by u on the basis (1, lam0, lam0^2); column i
/// holds the coordinates of u * lam0^i.
inline IntMatrix3 regular_matrix(const OrderElement& u) {
  IntMatrix3 m;
  OrderElement col = u;
  const OrderElement lam = OrderElement::lambda0(u.n());
  for (int i = 0; i < 3; ++i) {
    for (int r = 0; r < 3; ++r) m[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)] = col[r];
    col = col * lam;
  }
  return m;
}

inline mpz_class determinant(const IntMatrix3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

inline mpz_class trace(const IntMatrix3& m) { return m[0][0] + m[1][1] + m[2][2]; }

/// Second elementary symmetric function of the eigenvalues, (tr^2 - tr(M^2))/2.
inline mpz_class second_symmetric(const IntMatrix3& m) {
  mpz_class tr_sq = 0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t k = 0; k < 3; ++k) tr_sq += m[i][k] * m[k][i];
  const mpz_class tr = trace(m);
  mpz_class twice = tr * tr - tr_sq;
  return twice / 2;
}

inline mpz_class norm(const OrderElement& u) { return determinant(regular_matrix(u)); }

/// Monic X^3 + p2 X^2 + p1 X + p0.
struct CharPoly {
  mpz_class p2, p1, p0;
  friend bool operator==(const CharPoly&, const CharPoly&) = default;
};

inline CharPoly char_poly(const OrderElement& u) {
  const IntMatrix3 m = regular_matrix(u);
  return {-trace(m), second_symmetric(m), -determinant(m)};
}

/// Galois automorphism lam0 -> lam1 (and lam1 -> lam2 -> lam0).
inline OrderElement conjugate(const OrderElement& u) {
  const long n = u.n();
  const OrderElement l1 = OrderElement::lambda1(n);
  return OrderElement::integer(n, u[0]) + u[1] * l1 + u[2] * (l1 * l1);
}

inline OrderElement conjugate(const OrderElement& u, int times) {
  OrderElement r = u;
  for (int i = 0; i < ((times % 3) + 3) % 3; ++i) r = conjugate(r);
  return r;
}

/// u^-1 = (u^2 + p2 u + p1) / norm(u) for norm(u) = +-1.
inline OrderElement invert_unit(const OrderElement& u) {
  const CharPoly cp = char_poly(u);
  const mpz_class nrm = -cp.p0;
  if (abs(nrm) != 1) throw NotAUnit("element " + u.to_string() + " has norm " + nrm.get_str());
  OrderElement r = u * u + cp.p2 * u + OrderElement::integer(u.n(), cp.p1);
  return nrm * r;
}

/// u^k; negative k requires a unit.
inline OrderElement pow(const OrderElement& u, long k) {
  OrderElement base = k < 0 ? invert_unit(u) : u;
  unsigned long e = static_cast<unsigned long>(k < 0 ? -k : k);
  OrderElement result = OrderElement::one(u.n());
  while (e > 0) {
    if (e & 1UL) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

/// sign * lam0^a * lam2^b.
struct UnitWord {
  int sign = 1;
  long a = 0;
  long b = 0;

  friend bool operator==(const UnitWord&, const UnitWord&) = default;

  /// Group law (multiplication of the represented units).
  friend UnitWord operator*(const UnitWord& x, const UnitWord& y) { return {x.sign * y.sign, x.a + y.a, x.b + y.b}; }
  UnitWord inverse() const { return {sign, -a, -b}; }
};

inline std::ostream& operator<<(std::ostream& os, const UnitWord& w) {
  return os << (w.sign < 0 ? "-" : "+") << "lam0^" << w.a << "*lam2^" << w.b;
}

inline OrderElement unit_word_to_element(const UnitWord& w, long n) {
  OrderElement e = pow(OrderElement::lambda0(n), w.a) * pow(OrderElement::lambda2(n), w.b);
  return w.sign < 0 ? -e : e;
}

/// Exponents of sigma(w): sigma(lam0) = lam0^-1 lam2^-1, sigma(lam2) = lam0.
inline UnitWord conjugate(const UnitWord& w) { return {w.sign, -w.a + w.b, -w.a}; }

inline UnitWord conjugate(const UnitWord& w, int times) {
  UnitWord r = w;
  for (int i = 0; i < ((times % 3) + 3) % 3; ++i) r = conjugate(r);
  return r;
}

/// Real value of u under lam0 -> `root` (any of the three root enclosures).
inline Enclosure evaluate(const OrderElement& u, const Enclosure& root, mpfr_prec_t bits) {
  Enclosure acc = Enclosure::integer(u[2]);
  acc = (acc * root + Enclosure::integer(u[1])).rounded(bits);
  acc = (acc * root + Enclosure::integer(u[0])).rounded(bits);
  return acc;
}

/// beta_j(alpha_k - alpha_l) + beta_l(alpha_j - alpha_k) + beta_k(alpha_l - alpha_j).
inline OrderElement siegel_residual(int j, int k, int l, const std::array<OrderElement, 3>& alphas,
                                    const std::array<OrderElement, 3>& betas) {
  if (j == k || k == l || j == l || j < 0 || k < 0 || l < 0 || j > 2 || k > 2 || l > 2)
    throw std::invalid_argument("siegel_residual needs a permutation of {0,1,2}");
  const auto& a = alphas;
  const auto& b = betas;
  const auto J = static_cast<std::size_t>(j), K = static_cast<std::size_t>(k), L = static_cast<std::size_t>(l);
  return b[J] * (a[K] - a[L]) + b[L] * (a[J] - a[K]) + b[K] * (a[L] - a[J]);
}

}  // namespace tthue
