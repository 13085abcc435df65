#include <gtest/gtest.h>

#include "aet/primes.hpp"
#include "oracles.hpp"

namespace {

TEST(Primes, IsPrimeSmallValues) {
  EXPECT_FALSE(aet::is_prime(0));
  EXPECT_FALSE(aet::is_prime(1));
  EXPECT_TRUE(aet::is_prime(2));
  EXPECT_TRUE(aet::is_prime(3));
  EXPECT_FALSE(aet::is_prime(4));
  EXPECT_TRUE(aet::is_prime(97));
  EXPECT_FALSE(aet::is_prime(91));
  EXPECT_TRUE(aet::is_prime(1000003));
}

TEST(Primes, SieveMatchesTrialDivision) {
  const auto spf = aet::smallest_prime_factors(5000);
  const auto primes = aet::primes_up_to(5000);
  std::size_t k = 0;
  for (std::uint64_t n = 2; n <= 5000; ++n) {
    const auto divisors = oracle::prime_divisors(n);
    EXPECT_EQ(spf[n], divisors.front()) << n;
    const bool prime = divisors.size() == 1 && divisors.front() == n;
    EXPECT_EQ(aet::is_prime(n), prime) << n;
    if (prime) {
      ASSERT_LT(k, primes.size());
      EXPECT_EQ(primes[k++], n);
    }
  }
  EXPECT_EQ(k, primes.size());
}

TEST(Primes, FactorizeRoundTrips) {
  for (std::uint64_t n : {1ull, 2ull, 12ull, 360ull, 9973ull, 600851475143ull}) {
    std::uint64_t product = 1;
    for (auto [p, e] : aet::factorize(n)) {
      EXPECT_TRUE(aet::is_prime(p));
      for (unsigned i = 0; i < e; ++i) product *= p;
    }
    EXPECT_EQ(product, n);
  }
  EXPECT_TRUE(aet::factorize(1).empty());
}

TEST(Primes, Gcd) {
  EXPECT_EQ(aet::gcd(12, 18), 6u);
  EXPECT_EQ(aet::gcd(0, 7), 7u);
  EXPECT_EQ(aet::gcd(17, 5), 1u);
}

}  // namespace
