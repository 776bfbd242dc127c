#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>

#include "tthue/dyadic.hpp"
#include "tthue/errors.hpp"

namespace tthue {

namespace detail {

// RAII wrapper for a scratch mpfr_t.
class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, std::max<mpfr_prec_t>(prec, MPFR_PREC_MIN)); }
  explicit Mpfr(const Dyadic& exact) : Mpfr(exact.exact_precision()) { exact.to_mpfr(v_, MPFR_RNDN); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  ~Mpfr() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  Dyadic dyadic() const { return Dyadic::from_mpfr(v_); }

 private:
  mpfr_t v_;
};

}  // namespace detail

/// Closed interval [lo, hi] with dyadic endpoints, certified to contain an
/// exact real. Sums, differences and products are exact; everything else
/// rounds outward to a requested number of significant bits.
class Enclosure {
 public:
  Enclosure() = default;
  Enclosure(const Dyadic& point) : lo_(point), hi_(point) {}  // NOLINT(implicit)
  Enclosure(long v) : lo_(v), hi_(v) {}                       // NOLINT(implicit)
  Enclosure(Dyadic lo, Dyadic hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (hi_ < lo_) throw std::invalid_argument("enclosure requires lo <= hi");
  }

  static Enclosure integer(const mpz_class& z) { return Enclosure(Dyadic(z)); }
  static Enclosure rational(const mpq_class& q, mpfr_prec_t bits) {
    return Enclosure(Dyadic::from_rational(q, bits, MPFR_RNDD), Dyadic::from_rational(q, bits, MPFR_RNDU));
  }

  const Dyadic& lo() const { return lo_; }
  const Dyadic& hi() const { return hi_; }

  Dyadic width() const { return hi_ - lo_; }
  Dyadic midpoint() const { return (lo_ + hi_).ldexp(-1); }
  bool is_point() const { return lo_ == hi_; }

  bool contains(const Dyadic& v) const { return lo_ <= v && v <= hi_; }
  bool contains(const mpq_class& q) const { return compare(lo_, q) <= 0 && compare(hi_, q) >= 0; }
  bool contains(const Enclosure& inner) const { return lo_ <= inner.lo_ && inner.hi_ <= hi_; }
  bool overlaps(const Enclosure& o) const { return !(hi_ < o.lo_ || o.hi_ < lo_); }
  bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
  bool excludes_zero() const { return !contains_zero(); }
  bool positive() const { return lo_.sign() > 0; }
  bool negative() const { return hi_.sign() < 0; }

  /// Outward rounding of both endpoints to `bits` significant bits.
  Enclosure rounded(mpfr_prec_t bits) const {
    return Enclosure(lo_.rounded(bits, MPFR_RNDD), hi_.rounded(bits, MPFR_RNDU));
  }

  friend Enclosure operator+(const Enclosure& a, const Enclosure& b) { return {a.lo_ + b.lo_, a.hi_ + b.hi_}; }
  friend Enclosure operator-(const Enclosure& a) { return {-a.hi_, -a.lo_}; }
  friend Enclosure operator-(const Enclosure& a, const Enclosure& b) { return {a.lo_ - b.hi_, a.hi_ - b.lo_}; }
  friend Enclosure operator*(const Enclosure& a, const Enclosure& b) {
    if (a.lo_.sign() >= 0 && b.lo_.sign() >= 0) return {a.lo_ * b.lo_, a.hi_ * b.hi_};
    const Dyadic p1 = a.lo_ * b.lo_, p2 = a.lo_ * b.hi_, p3 = a.hi_ * b.lo_, p4 = a.hi_ * b.hi_;
    return {std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4})};
  }
  Enclosure& operator+=(const Enclosure& o) { return *this = *this + o; }
  Enclosure& operator-=(const Enclosure& o) { return *this = *this - o; }
  Enclosure& operator*=(const Enclosure& o) { return *this = *this * o; }

  friend bool operator==(const Enclosure& a, const Enclosure& b) = default;

  Enclosure ldexp(std::int64_t k) const { return {lo_.ldexp(k), hi_.ldexp(k)}; }

  std::string to_string() const { return "[" + lo_.to_string() + ", " + hi_.to_string() + "]"; }
  friend std::ostream& operator<<(std::ostream& os, const Enclosure& e) {
    return os << "[" << e.lo_.to_double() << ", " << e.hi_.to_double() << "]";
  }

 private:
  Dyadic lo_{0};
  Dyadic hi_{0};
};

inline Enclosure abs(const Enclosure& x) {
  if (x.lo().sign() >= 0) return x;
  if (x.hi().sign() <= 0) return -x;
  return {Dyadic{0}, std::max(-x.lo(), x.hi())};
}

inline Enclosure max(const Enclosure& a, const Enclosure& b) {
  return {std::max(a.lo(), b.lo()), std::max(a.hi(), b.hi())};
}

inline Enclosure min(const Enclosure& a, const Enclosure& b) {
  return {std::min(a.lo(), b.lo()), std::min(a.hi(), b.hi())};
}

/// Interval hull.
inline Enclosure hull(const Enclosure& a, const Enclosure& b) {
  return {std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi())};
}

inline Enclosure div(const Enclosure& a, const Enclosure& b, mpfr_prec_t bits) {
  if (b.contains_zero()) throw DivisionByZeroSpan("division by an enclosure containing zero");
  const Dyadic* num[2] = {&a.lo(), &a.hi()};
  const Dyadic* den[2] = {&b.lo(), &b.hi()};
  Dyadic lo, hi;
  bool first = true;
  detail::Mpfr q(bits);
  for (const Dyadic* p : num) {
    detail::Mpfr x(*p);
    for (const Dyadic* d : den) {
      detail::Mpfr y(*d);
      mpfr_div(q.get(), x.get(), y.get(), MPFR_RNDD);
      Dyadic down = q.dyadic();
      mpfr_div(q.get(), x.get(), y.get(), MPFR_RNDU);
      Dyadic up = q.dyadic();
      if (first || down < lo) lo = down;
      if (first || hi < up) hi = up;
      first = false;
    }
  }
  return {lo, hi};
}

inline Enclosure inverse(const Enclosure& b, mpfr_prec_t bits) { return div(Enclosure(1), b, bits); }

namespace detail {

template <class Fn>
Enclosure monotone_increasing(const Enclosure& x, mpfr_prec_t bits, Fn fn) {
  Mpfr lo_in(x.lo()), hi_in(x.hi()), out(bits);
  fn(out.get(), lo_in.get(), MPFR_RNDD);
  Dyadic lo = out.dyadic();
  fn(out.get(), hi_in.get(), MPFR_RNDU);
  return {lo, out.dyadic()};
}

}  // namespace detail

/// Natural logarithm. Requires x.lo > 0.
inline Enclosure log(const Enclosure& x, mpfr_prec_t bits) {
  if (x.lo().sign() <= 0) throw DomainError("log of an enclosure that is not strictly positive");
  return detail::monotone_increasing(x, bits, [](mpfr_ptr o, mpfr_srcptr i, mpfr_rnd_t r) { mpfr_log(o, i, r); });
}

inline Enclosure exp(const Enclosure& x, mpfr_prec_t bits) {
  return detail::monotone_increasing(x, bits, [](mpfr_ptr o, mpfr_srcptr i, mpfr_rnd_t r) { mpfr_exp(o, i, r); });
}

inline Enclosure sqrt(const Enclosure& x, mpfr_prec_t bits) {
  if (x.lo().sign() < 0) throw DomainError("sqrt of an enclosure with negative part");
  return detail::monotone_increasing(x, bits, [](mpfr_ptr o, mpfr_srcptr i, mpfr_rnd_t r) { mpfr_sqrt(o, i, r); });
}

/// log 2 enclosure.
inline Enclosure log2_constant(mpfr_prec_t bits) {
  detail::Mpfr c(bits);
  mpfr_const_log2(c.get(), MPFR_RNDD);
  Dyadic lo = c.dyadic();
  mpfr_const_log2(c.get(), MPFR_RNDU);
  return {lo, c.dyadic()};
}

/// x^k. For k >= 0 each endpoint power is correctly rounded outward to
/// `bits`; results that fit in `bits` (e.g. small integer powers) are exact.
inline Enclosure pow_int(const Enclosure& x, long k, mpfr_prec_t bits = 128) {
  if (k < 0) {
    if (x.contains_zero()) throw DivisionByZeroSpan("negative power of an enclosure containing zero");
    return inverse(pow_int(x, -k, bits), bits);
  }
  if (k == 0) return Enclosure(1);
  const auto pow_mag = [&](const Dyadic& m, mpfr_rnd_t rnd) {
    detail::Mpfr base(m), out(bits);
    mpfr_pow_ui(out.get(), base.get(), static_cast<unsigned long>(k), rnd);
    return out.dyadic();
  };
  const Enclosure mag = abs(x);
  const Enclosure p(pow_mag(mag.lo(), MPFR_RNDD), pow_mag(mag.hi(), MPFR_RNDU));
  const bool odd = (k % 2) != 0;
  if (x.lo().sign() >= 0) return p;
  if (x.hi().sign() <= 0) return odd ? -p : p;
  if (!odd) return p;
  return {-pow_mag(-x.lo(), MPFR_RNDU), pow_mag(x.hi(), MPFR_RNDU)};
}

}  // namespace tthue
