#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tthue {

/// Exact dyadic rational mantissa * 2^exponent, kept in canonical form
/// (odd mantissa, or zero mantissa with zero exponent).
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(long v) : mantissa_(v) { normalize(); }  // NOLINT(implicit)
  explicit Dyadic(const mpz_class& m, std::int64_t e = 0) : mantissa_(m), exponent_(e) { normalize(); }

  const mpz_class& mantissa() const { return mantissa_; }
  std::int64_t exponent() const { return exponent_; }

  int sign() const { return sgn(mantissa_); }
  bool is_zero() const { return sign() == 0; }

  /// Index of the highest set bit plus one, i.e. |x| < 2^msb().
  std::int64_t msb() const {
    if (is_zero()) return INT64_MIN / 4;
    return exponent_ + static_cast<std::int64_t>(mpz_sizeinbase(mantissa_.get_mpz_t(), 2));
  }

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    Dyadic r;
    if (a.exponent_ <= b.exponent_) {
      r.mantissa_ = b.mantissa_;
      mpz_mul_2exp(r.mantissa_.get_mpz_t(), r.mantissa_.get_mpz_t(), static_cast<mp_bitcnt_t>(b.exponent_ - a.exponent_));
      r.mantissa_ += a.mantissa_;
      r.exponent_ = a.exponent_;
    } else {
      r.mantissa_ = a.mantissa_;
      mpz_mul_2exp(r.mantissa_.get_mpz_t(), r.mantissa_.get_mpz_t(), static_cast<mp_bitcnt_t>(a.exponent_ - b.exponent_));
      r.mantissa_ += b.mantissa_;
      r.exponent_ = b.exponent_;
    }
    r.normalize();
    return r;
  }
  friend Dyadic operator-(const Dyadic& a) {
    Dyadic r = a;
    r.mantissa_ = -r.mantissa_;
    return r;
  }
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b) {
    Dyadic r;
    r.mantissa_ = a.mantissa_ * b.mantissa_;
    r.exponent_ = a.exponent_ + b.exponent_;
    r.normalize();
    return r;
  }

  /// Multiplication by 2^k, exact.
  Dyadic ldexp(std::int64_t k) const {
    Dyadic r = *this;
    if (!r.is_zero()) r.exponent_ += k;
    return r;
  }

  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
    const int sa = a.sign();
    const int sb = b.sign();
    if (sa != sb) return sa <=> sb;
    if (sa == 0) return std::strong_ordering::equal;
    // Same nonzero sign: a magnitude gap of two or more bit positions decides.
    const std::int64_t ma = a.msb();
    const std::int64_t mb = b.msb();
    if (ma > mb + 1) return sa > 0 ? std::strong_ordering::greater : std::strong_ordering::less;
    if (mb > ma + 1) return sa > 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    const int c = cmp((a - b).mantissa_, 0);
    return c <=> 0;
  }
  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.exponent_ == b.exponent_ && a.mantissa_ == b.mantissa_;
  }

  mpq_class to_rational() const {
    mpq_class q(mantissa_);
    if (exponent_ >= 0) {
      mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(exponent_));
    } else {
      mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-exponent_));
    }
    return q;
  }

  /// Largest integer not above the value.
  mpz_class floor() const {
    if (exponent_ >= 0) {
      mpz_class r;
      mpz_mul_2exp(r.get_mpz_t(), mantissa_.get_mpz_t(), static_cast<mp_bitcnt_t>(exponent_));
      return r;
    }
    mpz_class r;
    mpz_fdiv_q_2exp(r.get_mpz_t(), mantissa_.get_mpz_t(), static_cast<mp_bitcnt_t>(-exponent_));
    return r;
  }
  mpz_class ceil() const { return -(-*this).floor(); }

  /// Bits needed to hold the mantissa exactly in an mpfr_t.
  mpfr_prec_t exact_precision() const {
    const auto bits = static_cast<mpfr_prec_t>(mpz_sizeinbase(mantissa_.get_mpz_t(), 2));
    return bits < MPFR_PREC_MIN ? MPFR_PREC_MIN : bits;
  }

  /// Rounds into `out` using the precision already set on `out`.
  void to_mpfr(mpfr_ptr out, mpfr_rnd_t rnd) const {
    mpfr_set_z_2exp(out, mantissa_.get_mpz_t(), static_cast<mpfr_exp_t>(exponent_), rnd);
  }

  /// Exact conversion of a finite mpfr value.
  static Dyadic from_mpfr(mpfr_srcptr x) {
    if (mpfr_zero_p(x)) return Dyadic{};
    if (!mpfr_number_p(x)) throw std::domain_error("non-finite value in dyadic conversion");
    mpz_class m;
    const mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
    return Dyadic(m, static_cast<std::int64_t>(e));
  }

  /// Rounds a rational down (RNDD) or up (RNDU) to `bits` significant bits.
  static Dyadic from_rational(const mpq_class& q, mpfr_prec_t bits, mpfr_rnd_t rnd) {
    mpfr_t tmp;
    mpfr_init2(tmp, bits);
    mpfr_set_q(tmp, q.get_mpq_t(), rnd);
    Dyadic r = from_mpfr(tmp);
    mpfr_clear(tmp);
    return r;
  }

  /// Rounds this value to `bits` significant bits in direction `rnd`.
  Dyadic rounded(mpfr_prec_t bits, mpfr_rnd_t rnd) const {
    if (static_cast<mpfr_prec_t>(mpz_sizeinbase(mantissa_.get_mpz_t(), 2)) <= bits) return *this;
    mpfr_t tmp;
    mpfr_init2(tmp, bits);
    to_mpfr(tmp, rnd);
    Dyadic r = from_mpfr(tmp);
    mpfr_clear(tmp);
    return r;
  }

  double to_double() const {
    mpfr_t tmp;
    mpfr_init2(tmp, 64);
    to_mpfr(tmp, MPFR_RNDN);
    const double d = mpfr_get_d(tmp, MPFR_RNDN);
    mpfr_clear(tmp);
    return d;
  }

  /// Serialized as "m*2^e" with a decimal mantissa.
  std::string to_string() const { return mantissa_.get_str() + "*2^" + std::to_string(exponent_); }

  static Dyadic parse(std::string_view text) {
    const auto star = text.find("*2^");
    if (star == std::string_view::npos) throw std::invalid_argument("dyadic string must look like m*2^e");
    mpz_class m;
    if (m.set_str(std::string(text.substr(0, star)), 10) != 0) throw std::invalid_argument("bad dyadic mantissa");
    const std::string exp_text(text.substr(star + 3));
    std::size_t used = 0;
    long long e = 0;
    try {
      e = std::stoll(exp_text, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad dyadic exponent");
    }
    if (used != exp_text.size()) throw std::invalid_argument("bad dyadic exponent");
    return Dyadic(m, e);
  }

 private:
  void normalize() {
    if (mantissa_ == 0) {
      exponent_ = 0;
      return;
    }
    const mp_bitcnt_t tz = mpz_scan1(mantissa_.get_mpz_t(), 0);
    if (tz > 0) {
      mpz_fdiv_q_2exp(mantissa_.get_mpz_t(), mantissa_.get_mpz_t(), tz);
      exponent_ += static_cast<std::int64_t>(tz);
    }
  }

  mpz_class mantissa_{0};
  std::int64_t exponent_ = 0;
};

inline int compare(const Dyadic& d, const mpq_class& q) { return cmp(d.to_rational(), q); }

}  // namespace tthue
