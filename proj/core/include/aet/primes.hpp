#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace aet {

bool is_prime(std::uint64_t n);

// Trial-division factorization, ascending primes with multiplicities.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

// Smallest prime factor of every n <= limit; spf[0] = spf[1] = 0.
std::vector<std::uint32_t> smallest_prime_factors(std::uint32_t limit);

std::vector<std::uint32_t> primes_up_to(std::uint64_t limit);

std::uint64_t gcd(std::uint64_t a, std::uint64_t b);

}  // namespace aet
