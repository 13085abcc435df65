#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "aet/decomposition.hpp"
#include "oracles.hpp"
#include "test_helpers.hpp"

namespace {

using aet::Complex;
using aet::Convention;
using aet::NumericMode;
using aet::Rational;

std::mt19937_64& rng() {
  static std::mt19937_64 engine(20240611);
  return engine;
}

double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

aet::EulerProductSpec random_custom(unsigned degree, std::uint64_t max_prime) {
  aet::EulerProductSpec::RootTable roots;
  for (std::uint64_t p : aet::primes_up_to(max_prime)) {
    std::vector<Complex> alphas;
    for (unsigned j = 0; j < degree; ++j) alphas.push_back(std::polar(std::sqrt(uniform(0, 1)), uniform(0, 6.3)));
    roots[p] = alphas;
  }
  return aet::EulerProductSpec::custom(degree, roots, aet::DefaultRule::zero);
}

TEST(Properties, GammaSpecializations) {
  const auto chi = aet::build_kronecker_character(-4);
  const auto mod4 = aet::EulerProductSpec::dirichlet(chi);
  for (std::uint64_t p : aet::primes_up_to(10'000)) {
    ASSERT_EQ(aet::gamma(fixture::zeta(), p), Complex(1)) << p;
    ASSERT_EQ(aet::gamma(mod4, p), chi(p)) << p;
  }
}

TEST(Properties, GammaBound) {
  for (unsigned d = 1; d <= 5; ++d) {
    const auto spec = random_custom(d, 200);
    for (std::uint64_t p : aet::primes_up_to(200)) {
      const double g = std::abs(aet::gamma(spec, p));
      ASSERT_LE(g, p * (std::pow(1.0 + 1.0 / p, d) - 1) + 1e-12) << d << " " << p;
      ASSERT_LE(g, spec.gamma_bound() + 1e-12) << d << " " << p;
    }
    // The worst case alpha_j = -1 attains p((1+1/p)^d - 1).
    const auto extreme = aet::EulerProductSpec::custom(
        d, {{2, std::vector<Complex>(d, Complex(-1))}}, aet::DefaultRule::zero);
    EXPECT_NEAR(std::abs(aet::gamma(extreme, 2)), 2 * (std::pow(1.5, d) - 1), 1e-12);
    EXPECT_LE(2 * (std::pow(1.5, d) - 1), d * std::pow(2.0, d - 1) + 1e-12);
  }
}

TEST(Properties, TwiceCMatchesPartialSums) {
  for (auto spec : {fixture::zeta(), fixture::mod4()}) {
    const auto c = aet::c_constant(spec, 1'000'000);
    const std::uint64_t N = 200'000;
    const auto table = aet::sieve_alpha(spec, N);
    long double sum = 0;
    for (std::uint64_t n = N; n >= 1; --n) sum += table.alpha()[n].real() / (static_cast<long double>(n) * n);
    const double tail = 1.0 / N;  // |alpha(n)| <= 1
    EXPECT_LE(std::abs(2.0 * c.value.real() - static_cast<double>(sum)), 2 * c.bound + tail);
  }
}

TEST(Properties, DualPathFloatingOnComplexProducts) {
  for (unsigned d : {1u, 3u}) {
    const auto spec = random_custom(d, 50);
    const auto table = aet::phi_table(spec, 3000);
    for (std::uint64_t n = 1; n <= 3000; ++n) {
      const Complex direct = aet::phi_direct<Complex>(spec, n);
      ASSERT_LE(std::abs(table.phi()[n] - direct), 1e-10 * std::max(1.0, std::abs(direct))) << n;
    }
  }
}

TEST(Properties, DualPathExact) {
  for (auto spec : {fixture::zeta(), fixture::mod4(), fixture::square()}) {
    const auto table = aet::phi_table(spec, 3000, NumericMode::exact);
    for (std::uint64_t n = 1; n <= 3000; ++n) {
      ASSERT_EQ(table.phi_exact()[n], aet::phi_direct<Rational>(spec, n)) << n;
    }
  }
}

TEST(Properties, AlphaIsMobiusTimesCharacter) {
  const auto table = aet::sieve_alpha(fixture::mod4(), 10'000, NumericMode::exact);
  const auto mu = oracle::mobius_table(10'000);
  for (std::uint64_t n = 1; n <= 10'000; ++n) {
    ASSERT_EQ(table.alpha_exact()[n], Rational(mu[n] * oracle::chi4(n))) << n;
  }
}

TEST(Properties, AlphaMultiplicative) {
  const std::uint64_t N = 100'000;
  const auto spec = random_custom(2, 300);
  const auto table = aet::sieve_alpha(spec, N);
  int checked = 0;
  while (checked < 1000) {
    const std::uint64_t m = std::uniform_int_distribution<std::uint64_t>(1, 316)(rng());
    const std::uint64_t n = std::uniform_int_distribution<std::uint64_t>(1, N / m)(rng());
    if (aet::gcd(m, n) != 1) continue;
    ++checked;
    const Complex lhs = table.alpha()[m * n];
    const Complex rhs = table.alpha()[m] * table.alpha()[n];
    ASSERT_LE(std::abs(lhs - rhs), 1e-12) << m << " " << n;
  }
}

TEST(Properties, AlphaStructure) {
  const auto spec = random_custom(3, 100);
  const auto table = aet::sieve_alpha(spec, 20'000);
  EXPECT_EQ(table.alpha()[1], Complex(1));
  for (std::uint64_t n = 2; n <= 20'000; ++n) {
    if (!oracle::squarefree(n)) {
      ASSERT_EQ(table.alpha()[n], Complex(0)) << n;
    }
  }
  for (std::uint64_t p : aet::primes_up_to(20'000)) {
    ASSERT_LE(std::abs(table.alpha()[p] + aet::gamma(spec, p)), 1e-15) << p;
  }
}

TEST(Properties, SymmetricEqualsPlainOffIntegers) {
  const auto table = aet::phi_table(fixture::mod4(), 10'000);
  const aet::ValueWithBound c{Complex(0.5458), 0.0, aet::BoundKind::rigorous};
  for (int i = 0; i < 1000; ++i) {
    double x = uniform(0, 10'000);
    if (x == std::floor(x)) continue;
    const auto e = aet::error_term<Complex>(table, c, x, Convention::plain);
    const auto e2 = aet::error_term<Complex>(table, c, x, Convention::symmetric);
    ASSERT_EQ(e.value, e2.value) << x;
  }
}

TEST(Properties, SymmetricIsMeanOfNeighbours) {
  const auto table = aet::phi_table(fixture::zeta(), 1000);
  const aet::ValueWithBound c{Complex(3 / (M_PI * M_PI)), 0.0, aet::BoundKind::rigorous};
  const double delta = 1e-7;
  for (double N : {2.0, 17.0, 512.0}) {
    const auto mid = aet::error_term<Complex>(table, c, N, Convention::symmetric).value;
    const auto lo = aet::error_term<Complex>(table, c, N - delta, Convention::plain).value;
    const auto hi = aet::error_term<Complex>(table, c, N + delta, Convention::plain).value;
    EXPECT_NEAR(std::abs(mid - 0.5 * (lo + hi)), 0, 1e-6) << N;
  }
}

TEST(Properties, DecompositionWithinBounds) {
  for (auto spec : {fixture::zeta(), fixture::mod4()}) {
    const auto table = aet::phi_table(spec, 10'000);
    const auto constants = aet::compute_constants(spec, {});
    for (int i = 0; i < 100; ++i) {
      const double x = i % 10 == 0 ? std::floor(uniform(1, 10'000)) : uniform(1, 10'000);
      const auto report = aet::decompose<Complex>(x, table, constants);
      ASSERT_LE(std::abs(report.residual), report.combined_bound()) << x;
    }
  }
}

TEST(Properties, ExactIdentityOnCustomProduct) {
  const auto table = aet::phi_table(fixture::square(), 300, NumericMode::exact);
  for (int i = 0; i < 200; ++i) {
    const long den = std::uniform_int_distribution<long>(1, 12)(rng());
    const long num = std::uniform_int_distribution<long>(den, 300 * den)(rng());
    Rational x(num, den);
    x.canonicalize();
    const auto identity = aet::reduced_identity<Rational>(x, table);
    ASSERT_TRUE(identity.holds()) << x.get_str();
  }
}

TEST(Properties, RDerivativeIsMinusF1) {
  const auto spec = fixture::mod4();
  const auto table = aet::phi_table(spec, 200);
  const auto constants = aet::compute_constants(spec, {});
  for (int i = 0; i < 50; ++i) {
    const double x = std::floor(uniform(1, 190)) + uniform(0.01, 0.99);
    const auto f = aet::f1_closed<Complex>(x, table.coefficients(), constants).value;
    double previous = 1.0;
    for (double h : {1e-2, 1e-3}) {
      const auto rp = aet::r_function<Complex>(x + h, table, constants, aet::RRoute::definition).value;
      const auto rm = aet::r_function<Complex>(x - h, table, constants, aet::RRoute::definition).value;
      const double err = std::abs((rp - rm) / (2 * h) + f);
      ASSERT_LE(err, 1e-6 / h + h) << x;
      previous = err;
    }
    (void)previous;
  }
}

TEST(Properties, F1SlopeIsMinusTwoC) {
  const auto spec = fixture::zeta();
  const auto table = aet::phi_table(spec, 200);
  const auto constants = aet::compute_constants(spec, {});
  for (int i = 0; i < 50; ++i) {
    const double x = std::floor(uniform(0, 190)) + uniform(0.1, 0.9);
    const double h = 1e-3;
    const auto a = aet::f1_closed<Complex>(x + h, table.coefficients(), constants).value;
    const auto b = aet::f1_closed<Complex>(x - h, table.coefficients(), constants).value;
    ASSERT_NEAR(((a - b) / (2 * h)).real(), -2 * constants.c_f.real(), 1e-9) << x;
  }
}

TEST(Properties, SawtoothRangeAndPeriod) {
  for (int i = 0; i < 1000; ++i) {
    const double x = uniform(0, 1000);
    const double s = aet::sawtooth(x);
    ASSERT_GE(s, -0.5);
    ASSERT_LE(s, 0.5);
    ASSERT_NEAR(aet::sawtooth(x + 1.0), s, 1e-9);
    const long den = std::uniform_int_distribution<long>(1, 50)(rng());
    const Rational q(std::uniform_int_distribution<long>(0, 5000)(rng()), den);
    ASSERT_EQ(aet::sawtooth(Rational(q + 1)), aet::sawtooth(q));
  }
}

TEST(Properties, FractionalProductRange) {
  for (int i = 0; i < 1000; ++i) {
    const long den = std::uniform_int_distribution<long>(1, 40)(rng());
    const Rational x(std::uniform_int_distribution<long>(0, 40000)(rng()), den);
    const std::uint64_t n = std::uniform_int_distribution<std::uint64_t>(1, 1000)(rng());
    const Rational f = aet::Field<Rational>::frac_div(x, n);
    const Rational term = f * (f - 1);
    ASSERT_GE(term, Rational(-1, 4));
    ASSERT_LE(term, Rational(0));
  }
}

}  // namespace
