#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "aet/constants.hpp"
#include "oracles.hpp"
#include "test_helpers.hpp"

namespace {

using aet::A1Mode;
using aet::BoundKind;
using aet::Complex;
using aet::ErrorCode;
using std::numbers::pi;

double re(const Complex& z) { return z.real(); }

TEST(CConstant, ZetaMatchesInverseZetaTwo) {
  const auto c = aet::c_constant(fixture::zeta(), 1'000'000);
  EXPECT_NEAR(re(c.value), 0.3039635509, 1e-7);
  EXPECT_LE(std::abs(c.value - Complex(3.0 / (pi * pi))), c.bound);
  EXPECT_EQ(c.kind, BoundKind::rigorous);
  EXPECT_GT(c.bound, 0.0);
}

TEST(CConstant, ModFourMatchesCatalan) {
  const auto c = aet::c_constant(fixture::mod4(), 1'000'000);
  EXPECT_NEAR(re(c.value), 0.545872, 1e-6);
  EXPECT_LE(std::abs(c.value - Complex(1.0 / (2.0 * oracle::kCatalan))), c.bound);
}

TEST(CConstant, TrivialProductIsExactlyHalf) {
  const auto c = aet::c_constant(aet::EulerProductSpec::trivial(), 2);
  EXPECT_EQ(c.value, Complex(0.5));
  EXPECT_EQ(c.bound, 0.0);
}

TEST(CConstant, FiniteSupportHasZeroTailBound) {
  const auto c = aet::c_constant(fixture::square(), 1000);
  mpq_class product = 1;
  for (std::uint64_t p = 2; p <= 100; ++p) {
    if (oracle::prime_divisors(p).size() == 1 && oracle::prime_divisors(p)[0] == p) {
      product *= 1 - oracle::gamma_square(p) / (p * p);
    }
  }
  EXPECT_NEAR(re(c.value), 0.5 * product.get_d(), 1e-14);
  EXPECT_LT(c.bound, 1e-13);
}

TEST(CConstant, CutoffTooSmall) {
  EXPECT_EQ(error_code_of([] { aet::c_constant(fixture::zeta(), 1); }),
            ErrorCode::CutoffTooSmall);
  EXPECT_EQ(error_code_of([] { aet::c_constant(fixture::zeta(), 0); }),
            ErrorCode::CutoffTooSmall);
}

TEST(CConstant, BoundsNest) {
  for (auto spec : {fixture::zeta(), fixture::mod4()}) {
    aet::ValueWithBound previous = aet::c_constant(spec, 100);
    for (std::uint64_t cutoff : {1000u, 10000u, 100000u}) {
      const auto next = aet::c_constant(spec, cutoff);
      EXPECT_LE(std::abs(next.value - previous.value), previous.bound);
      EXPECT_LT(next.bound, previous.bound);
      previous = next;
    }
  }
}

TEST(A1, ZetaClosedFormIsZero) {
  const auto a1 = aet::a1_constant(fixture::zeta(), A1Mode::closed_form, 0);
  EXPECT_EQ(a1.value, Complex(0));
  EXPECT_EQ(a1.bound, 0.0);
}

TEST(A1, ZetaPartialSumsTrendToZero) {
  const auto mu = oracle::mobius_table(1'000'000);
  long double at_1e4 = 0, at_1e6 = 0;
  for (std::uint64_t n = 1; n <= 1'000'000; ++n) {
    at_1e6 += static_cast<long double>(mu[n]) / n;
    if (n == 10'000) at_1e4 = at_1e6;
  }
  EXPECT_LT(std::abs(static_cast<double>(at_1e6)), std::abs(static_cast<double>(at_1e4)));
  EXPECT_LT(std::abs(static_cast<double>(at_1e6)), 1e-3);
  const auto partial = aet::a1_constant(fixture::zeta(), A1Mode::partial_sums, 1'000'000);
  EXPECT_NEAR(re(partial.value), static_cast<double>(at_1e6), 1e-12);
  EXPECT_EQ(partial.kind, BoundKind::heuristic);
}

TEST(A1, ModFourClosedForm) {
  const auto a1 = aet::a1_constant(fixture::mod4(), A1Mode::closed_form, 0);
  EXPECT_LE(std::abs(a1.value - Complex(4.0 / pi)), a1.bound + 1e-15);
  EXPECT_NEAR(re(a1.value), 1.27324, 1e-5);
  EXPECT_EQ(a1.kind, BoundKind::rigorous);
}

TEST(A1, ModFourPartialSums) {
  long double sum = 0;
  for (std::uint64_t n = 1; n <= 100'000; ++n) {
    sum += static_cast<long double>(oracle::mobius(n) * oracle::chi4(n)) / n;
  }
  const auto a1 = aet::a1_constant(fixture::mod4(), A1Mode::partial_sums, 100'000);
  EXPECT_NEAR(re(a1.value), static_cast<double>(sum), 1e-12);
  EXPECT_NEAR(re(a1.value), 1.2732, 5e-3);
  EXPECT_EQ(a1.kind, BoundKind::heuristic);
  EXPECT_GT(a1.bound, 0.0);
}

TEST(A1, CustomClosedFormUnavailable) {
  EXPECT_EQ(error_code_of([] { aet::a1_constant(fixture::square(), A1Mode::closed_form, 0); }),
            ErrorCode::ModeUnavailable);
}

TEST(A1, PartialSumsNeedCutoff) {
  EXPECT_EQ(error_code_of([] { aet::a1_constant(fixture::zeta(), A1Mode::partial_sums, 5); }),
            ErrorCode::CutoffTooSmall);
}

TEST(LValue, CatalanAtTwo) {
  const auto chi = aet::build_kronecker_character(-4);
  const auto l = aet::l_value(chi, 2.0);
  EXPECT_NEAR(re(l.value), 0.9159655942, 1e-10);
  EXPECT_NEAR(re(l.value), oracle::l_chi4(2.0), 1e-12);
  EXPECT_LE(std::abs(l.value - Complex(oracle::kCatalan)), l.bound + 1e-15);
}

TEST(LValue, PiOverFourAtOne) {
  const auto chi = aet::build_kronecker_character(-4);
  const auto l = aet::l_value(chi, 1.0);
  EXPECT_NEAR(re(l.value), oracle::l_chi4(1.0), 1e-10);
  EXPECT_LE(std::abs(l.value - Complex(pi / 4)), l.bound + 1e-15);
}

TEST(LValue, ModThreeAtOne) {
  const auto chi = aet::build_kronecker_character(-3);
  const auto l = aet::l_value(chi, 1.0);
  EXPECT_NEAR(re(l.value), 0.6045997881, 1e-10);
  EXPECT_NEAR(re(l.value), oracle::l_chi3_at_one(), 1e-10);
  EXPECT_LE(std::abs(l.value - Complex(pi / (3 * std::sqrt(3.0)))), l.bound + 1e-15);
}

TEST(LValue, ArbitraryS) {
  const auto chi = aet::build_kronecker_character(-4);
  for (double s : {0.5, 1.5, 3.0}) {
    EXPECT_NEAR(re(aet::l_value(chi, s).value), oracle::l_chi4(s, 400000), 1e-9) << s;
  }
}

TEST(LValue, ComplexCharacter) {
  const Complex i(0, 1);
  const auto chi = aet::build_character(5, {0, 1, i, -i, -1});
  const auto l = aet::l_value(chi, 2.0);
  long double re_sum = 0, im_sum = 0;
  for (std::uint64_t n = 2'000'000; n >= 1; --n) {
    const Complex v = chi(n) / (static_cast<double>(n) * static_cast<double>(n));
    re_sum += v.real();
    im_sum += v.imag();
  }
  // Period sums vanish, so the truncation error is O(1/N^2).
  EXPECT_NEAR(l.value.real(), static_cast<double>(re_sum), 1e-11);
  EXPECT_NEAR(l.value.imag(), static_cast<double>(im_sum), 1e-11);
}

TEST(LValue, Errors) {
  const auto principal = aet::build_character(4, {0, 1, 0, 1});
  EXPECT_EQ(error_code_of([&] { aet::l_value(principal, 2.0); }), ErrorCode::PrincipalCharacter);
  const auto chi = aet::build_kronecker_character(-4);
  EXPECT_EQ(error_code_of([&] { aet::l_value(chi, 0.0); }), ErrorCode::SOutOfRange);
  EXPECT_EQ(error_code_of([&] { aet::l_value(chi, 1.0, 1e-300); }),
            ErrorCode::PrecisionUnreachable);
}

TEST(ZetaValue, KnownValues) {
  const auto z2 = aet::zeta_value(2.0);
  EXPECT_LE(std::abs(z2.value - Complex(pi * pi / 6)), z2.bound + 1e-15);
  const auto z3 = aet::zeta_value(3.0);
  EXPECT_LE(std::abs(z3.value - Complex(oracle::kApery)), z3.bound + 1e-15);
  EXPECT_NEAR(re(aet::zeta_value(1.5).value), oracle::zeta(1.5), 1e-10);
  EXPECT_EQ(error_code_of([] { aet::zeta_value(1.0); }), ErrorCode::SOutOfRange);
}

TEST(Constants, CustomFallsBackToPartialSums) {
  const auto constants = aet::compute_constants(fixture::square(), {});
  EXPECT_EQ(constants.kind, BoundKind::heuristic);
  const auto exact = aet::to_exact(constants);
  EXPECT_EQ(exact.c_f.get_d(), constants.c_f.real());
  EXPECT_EQ(exact.a2(), 2 * exact.c_f);
}

}  // namespace
