#include <gtest/gtest.h>

#include <random>

#include "tthue/effective_bounds.hpp"

using namespace tthue;

namespace {

// Frozen from tests/oracles/oracle_values.py.
const mpq_class kLam0PlusOne("4507018644092975/1000000000000000");
const mpq_class kHLam0("5018786267989553/10000000000000000");
const mpq_class kC23("18235125344896382529554716/100000000000000");
const mpq_class kC13("5706842780761028889/100000000000");
const mpq_class kLogyBound("4744290882585838/1000000000000000");
const mpq_class kTauBound("3627665591746055/100000000000000");
const mpq_class kLog2("6931471805599453/10000000000000000");

bool near(const Enclosure& e, const mpq_class& v, const mpq_class& tol) {
  return compare(e.lo(), v + tol) <= 0 && compare(e.hi(), v - tol) >= 0;
}

const mpq_class kTol("1/1000000000000");

}  // namespace

TEST(Mahler, Examples) {
  EXPECT_EQ(mahler_measure({Enclosure(1), Enclosure(1), Enclosure(1)}, 1), Enclosure(1));
  const RootTriple r = compute_roots(3, 128);
  EXPECT_TRUE(near(mahler_measure({r.lam0, r.lam1, r.lam2}, 1), kLam0PlusOne, kTol));
  EXPECT_EQ(mahler_measure({Enclosure(1)}, 2), Enclosure(2));
  EXPECT_THROW(mahler_measure({Enclosure(1)}, 0), DomainError);
}

TEST(Height, Examples) {
  EXPECT_EQ(absolute_log_height(OrderElement::one(3)).value, Enclosure(0));
  EXPECT_TRUE(near(absolute_log_height(OrderElement::lambda0(3)).value, kHLam0, kTol));
  EXPECT_TRUE(near(absolute_log_height(OrderElement::integer(3, 2)).value, kLog2, kTol));
  EXPECT_TRUE(near(absolute_log_height(OrderElement::integer(3, -2)).value, kLog2, kTol));
}

TEST(Height, Lam0WithinLogBrackets) {
  for (long n : {3L, 10L, 1000L, 1000000L}) {
    const Enclosure h = absolute_log_height(OrderElement::lambda0(n)).value;
    const Enclosure lo = log(Enclosure(n), 128).ldexp(0);
    EXPECT_TRUE(check_less(div(lo, Enclosure(3), 128), h) == Status::pass);
    const Enclosure hi = div(log(Enclosure(n), 128) + Enclosure::rational(mpq_class(2, n), 128), Enclosure(3), 128);
    EXPECT_TRUE(check_less(h, hi) == Status::pass);
  }
}

TEST(Height, PowerRuleAndInverseForUnits) {
  const long n = 7;
  const OrderElement u = unit_word_to_element({1, 2, -1}, n);
  const Enclosure h = absolute_log_height(u).value;
  EXPECT_TRUE(absolute_log_height(invert_unit(u)).value.overlaps(h));
  EXPECT_TRUE(absolute_log_height(pow(u, 3)).value.overlaps(h * Enclosure(3)));
  EXPECT_TRUE(absolute_log_height(-u).value.overlaps(h));
}

TEST(Height, SubadditiveOnUnits) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<long> e(-4, 4);
  for (int i = 0; i < 40; ++i) {
    const OrderElement u = unit_word_to_element({1, e(rng), e(rng)}, 5);
    const OrderElement v = unit_word_to_element({1, e(rng), e(rng)}, 5);
    const Enclosure lhs = absolute_log_height(u * v).value;
    const Enclosure rhs = absolute_log_height(u).value + absolute_log_height(v).value;
    ASSERT_NE(check_less_equal(lhs, rhs), Status::fail);
  }
}

TEST(Baker, Constants) {
  EXPECT_TRUE(near(baker_constant(2, 3), kC23, mpq_class(1, 1000000)));
  EXPECT_TRUE(near(baker_constant(1, 3), kC13, mpq_class(1, 1000000)));
  EXPECT_LT(baker_constant(2, 3).hi(), baker_constant(2, 4).lo());
  EXPECT_LT(baker_constant(1, 3).hi(), baker_constant(2, 3).lo());
  EXPECT_THROW(baker_constant(0, 3), DomainError);
}

TEST(Baker, LowerBound) {
  BakerInputs in;
  in.t_count = 2;
  in.D = 3;
  in.heights = {Enclosure(1), Enclosure(1)};
  in.B = Enclosure(3);
  const Enclosure b3 = baker_lower_bound(in);
  EXPECT_LT(b3.hi(), Dyadic(0));
  in.B = Enclosure(9);
  const Enclosure b9 = baker_lower_bound(in);
  // log 9 = 2 log 3.
  EXPECT_TRUE((b3 * Enclosure(2)).overlaps(b9));
  in.heights = {Enclosure(1), Enclosure::rational(mpq_class(1, 100), 128)};
  EXPECT_THROW(baker_lower_bound(in), PreconditionFailed);
  in.heights = {Enclosure(1)};
  EXPECT_THROW(baker_lower_bound(in), PreconditionFailed);
  in.heights = {Enclosure(1), Enclosure(1)};
  in.B = Enclosure(2);
  EXPECT_THROW(baker_lower_bound(in), PreconditionFailed);
}

TEST(Baker, FloorHeightsExample) {
  BakerInputs in;
  in.t_count = 2;
  in.D = 3;
  const Enclosure floor_h = Enclosure::rational(mpq_class(4, 75), 128);
  in.heights = {floor_h, floor_h};
  in.B = Enclosure(3);
  const Enclosure b = baker_lower_bound(in);
  const Enclosure expected = -(baker_constant(2, 3) * floor_h * floor_h * log(Enclosure(3), 128));
  EXPECT_TRUE(b.overlaps(expected));
}

TEST(Baker, DoublingB) {
  BakerInputs in;
  in.t_count = 1;
  in.D = 3;
  in.heights = {Enclosure(2)};
  for (long B : {3L, 10L, 1000L}) {
    in.B = Enclosure(B);
    const Enclosure b1 = baker_lower_bound(in);
    in.B = Enclosure(2 * B);
    const Enclosure b2 = baker_lower_bound(in);
    const Enclosure ratio = div(log(Enclosure(2 * B), 128), log(Enclosure(B), 128), 128);
    EXPECT_TRUE(div(b2, b1, 128).overlaps(ratio));
  }
}

TEST(Baker, FaceValueHeight) {
  const Enclosure small = baker_height(Enclosure(0), Enclosure(0), 3);
  EXPECT_TRUE(small.contains(mpq_class(4, 75)));
  const Enclosure lg = log(Enclosure(12), 128);
  EXPECT_TRUE(baker_height(Enclosure(0), -lg, 3).overlaps(div(lg, Enclosure(3), 128)));
  EXPECT_EQ(baker_height(Enclosure(5), lg, 3), Enclosure(5));
}

TEST(Height, UnitWordsBoundedByGenerators) {
  const long n = 11;
  const Enclosure h0 = absolute_log_height(OrderElement::lambda0(n)).value;
  const Enclosure h2 = absolute_log_height(OrderElement::lambda2(n)).value;
  for (long a = -4; a <= 4; ++a)
    for (long b = -4; b <= 4; ++b) {
      const Enclosure h = absolute_log_height(unit_word_to_element({1, a, b}, n)).value;
      ASSERT_NE(check_less_equal(h, Enclosure(std::labs(a)) * h0 + Enclosure(std::labs(b)) * h2), Status::fail);
    }
}

TEST(DerivedBounds, Examples) {
  const DerivedBounds d = derived_bounds(3, 3);
  EXPECT_TRUE(near(d.logy_bound, kLogyBound, kTol));
  const DerivedBounds big = derived_bounds(1000000, 10);
  EXPECT_TRUE(near(big.tau_bound, kTauBound, kTol));
  EXPECT_EQ(big.tau_holds, Status::pass);
  EXPECT_EQ(big.substitution_consistent, Status::pass);
  EXPECT_THROW(derived_bounds(2, 3), DomainError);
  EXPECT_THROW(derived_bounds(10, 2), DomainError);
  BoundConstants bad;
  bad.c2 = 0;
  EXPECT_THROW(derived_bounds(10, 3, bad), DomainError);
}

TEST(DerivedBounds, SubstitutionConsistentAcrossConstants) {
  for (long n : {16L, 100L, 100000L, 1000000000L})
    for (const mpq_class& c3 : {mpq_class(1, 2), mpq_class(1), mpq_class(7)}) {
      BoundConstants c;
      c.c3 = c3;
      ASSERT_EQ(derived_bounds(n, 3, c).substitution_consistent, Status::pass) << n << " " << c3;
    }
}

TEST(DerivedBounds, ObservedLogY) {
  const DerivedBounds d = derived_bounds(100, 4, {}, log(Enclosure(50), 128));
  ASSERT_TRUE(d.logy_holds.has_value());
  EXPECT_EQ(*d.logy_holds, Status::pass);
  EXPECT_EQ(*d.logy_by_n_holds, Status::pass);
}
