#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "aet/numeric.hpp"

namespace aet {

// A Dirichlet character stored as its table of values on residues mod q.
struct CharacterSpec {
  std::uint64_t modulus = 1;
  std::vector<Complex> values;  // values[a] = chi(a), 0 <= a < modulus
  bool is_real = true;
  bool is_principal = true;

  Complex operator()(std::uint64_t n) const { return values[n % modulus]; }

  // chi(n) as an integer when the character is real (values in {-1, 0, 1}).
  std::optional<int> integer_value(std::uint64_t n) const;
};

// Validates an explicit value table. Throws Error(BadModulus | WrongSupport |
// NonMultiplicative); the table is never repaired.
CharacterSpec build_character(std::uint64_t modulus, std::vector<Complex> values);

// The real character n -> (D|n) of modulus |D|. D must be a discriminant
// (D = 0 or 1 mod 4, D != 0).
CharacterSpec build_kronecker_character(std::int64_t discriminant);

// Kronecker symbol (d|n) for n >= 1.
int kronecker_symbol(std::int64_t d, std::uint64_t n);

}  // namespace aet
