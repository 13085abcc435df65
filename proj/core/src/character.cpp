#include "aet/character.hpp"

#include <cmath>
#include <string>

#include "aet/error.hpp"
#include "aet/primes.hpp"

namespace aet {
namespace {

constexpr double kTolerance = 1e-12;

bool near(const Complex& a, const Complex& b) { return std::abs(a - b) <= kTolerance; }

int jacobi(std::int64_t a, std::uint64_t n) {
  // n odd and positive
  std::int64_t m = static_cast<std::int64_t>(n);
  a %= m;
  if (a < 0) a += m;
  int result = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const std::int64_t r = m % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, m);
    if (a % 4 == 3 && m % 4 == 3) result = -result;
    a %= m;
  }
  return m == 1 ? result : 0;
}

}  // namespace

std::optional<int> CharacterSpec::integer_value(std::uint64_t n) const {
  const Complex v = (*this)(n);
  if (v.imag() != 0.0) return std::nullopt;
  if (v.real() == 0.0) return 0;
  if (v.real() == 1.0) return 1;
  if (v.real() == -1.0) return -1;
  return std::nullopt;
}

CharacterSpec build_character(std::uint64_t modulus, std::vector<Complex> values) {
  if (modulus == 0) throw Error(ErrorCode::BadModulus, "modulus must be positive");
  if (values.size() != modulus) {
    throw Error(ErrorCode::BadModulus, "expected " + std::to_string(modulus) + " values, got " +
                                           std::to_string(values.size()));
  }

  for (std::uint64_t a = 0; a < modulus; ++a) {
    const bool coprime = gcd(a, modulus) == 1;
    const double size = std::abs(values[a]);
    if (!coprime && size != 0.0) {
      throw Error(ErrorCode::WrongSupport,
                  "chi(" + std::to_string(a) + ") != 0 although gcd(a, q) > 1");
    }
    if (coprime && std::abs(size - 1.0) > kTolerance) {
      throw Error(ErrorCode::WrongSupport,
                  "|chi(" + std::to_string(a) + ")| must be 1 on residues prime to q");
    }
  }
  if (!near(values[1 % modulus], Complex{1.0, 0.0})) {
    throw Error(ErrorCode::NonMultiplicative, "chi(1) != 1");
  }
  for (std::uint64_t a = 0; a < modulus; ++a) {
    for (std::uint64_t b = a; b < modulus; ++b) {
      if (!near(values[(a * b) % modulus], values[a] * values[b])) {
        throw Error(ErrorCode::NonMultiplicative, "chi(" + std::to_string(a) + "*" +
                                                      std::to_string(b) + ") != chi(a)chi(b)");
      }
    }
  }

  CharacterSpec chi;
  chi.modulus = modulus;
  chi.values = std::move(values);
  chi.is_real = true;
  chi.is_principal = true;
  for (std::uint64_t a = 0; a < modulus; ++a) {
    if (chi.values[a].imag() != 0.0) chi.is_real = false;
    if (gcd(a, modulus) == 1 && !near(chi.values[a], Complex{1.0, 0.0})) chi.is_principal = false;
  }
  return chi;
}

int kronecker_symbol(std::int64_t d, std::uint64_t n) {
  int result = 1;
  while (n % 2 == 0) {
    n /= 2;
    const std::int64_t r = ((d % 8) + 8) % 8;
    if (r % 2 == 0) return 0;
    if (r == 3 || r == 5) result = -result;
  }
  if (n == 1) return result;
  return result * jacobi(d, n);
}

CharacterSpec build_kronecker_character(std::int64_t discriminant) {
  const std::int64_t r = ((discriminant % 4) + 4) % 4;
  if (discriminant == 0 || (r != 0 && r != 1)) {
    throw Error(ErrorCode::BadModulus,
                std::to_string(discriminant) + " is not a discriminant (need D = 0, 1 mod 4)");
  }
  const std::uint64_t q =
      static_cast<std::uint64_t>(discriminant < 0 ? -discriminant : discriminant);
  std::vector<Complex> values(q);
  for (std::uint64_t a = 0; a < q; ++a) {
    // (D|0) is 0 unless q = 1; (D|q) for the residue 0 uses n = q.
    const std::uint64_t n = a == 0 ? q : a;
    values[a] = Complex(q == 1 ? 1.0 : static_cast<double>(kronecker_symbol(discriminant, n)), 0.0);
  }
  return build_character(q, std::move(values));
}

}  // namespace aet
