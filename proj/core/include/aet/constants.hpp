#pragma once

#include <cstdint>

#include "aet/character.hpp"
#include "aet/numeric.hpp"
#include "aet/product.hpp"

namespace aet {

// C(F) = 1/2 prod_p (1 - gamma(p)/p^2) over p <= prime_cutoff, with a rigorous
// tail bound from |gamma(p)| <= d 2^{d-1} and sum_{n>P} n^{-2} < 1/P.
// Throws Error(CutoffTooSmall) when prime_cutoff < 2.
ValueWithBound c_constant(const EulerProductSpec& spec, std::uint64_t prime_cutoff);

enum class A1Mode { closed_form, partial_sums };

// A_1 = sum_n alpha(n)/n, assuming the series converges. The closed form is
// 0 for zeta (and principal characters) and 1/L(1, chi) otherwise; partial
// sums carry a heuristic bound from the spread over the last decade.
// Throws Error(ModeUnavailable) for closed_form on custom products.
ValueWithBound a1_constant(const EulerProductSpec& spec, A1Mode mode, std::uint64_t cutoff);

// L(s, chi) for non-principal chi and real s > 0: a head sum over full periods
// and an Euler-Maclaurin tail per residue class. Throws
// Error(PrincipalCharacter | SOutOfRange | PrecisionUnreachable).
ValueWithBound l_value(const CharacterSpec& chi, double s, double precision = 1e-13);

// zeta(s) for real s > 1 by Euler-Maclaurin.
ValueWithBound zeta_value(double s, double precision = 1e-13);

// The pair of constants the decomposition depends on; A_2 = 2 C(F).
template <class T>
struct Constants {
  T a1{};
  T c_f{};
  double a1_bound = 0.0;
  double c_bound = 0.0;
  BoundKind kind = BoundKind::rigorous;

  T a2() const { return T(2) * c_f; }
  double a2_bound() const { return 2.0 * c_bound; }
};

struct ConstantsOptions {
  std::uint64_t prime_cutoff = 1'000'000;
  A1Mode a1_mode = A1Mode::closed_form;
  std::uint64_t a1_cutoff = 1'000'000;
};

// Closed-form A_1 falls back to partial sums for custom products.
Constants<Complex> compute_constants(const EulerProductSpec& spec,
                                     const ConstantsOptions& options = {});

// Converts the floating constants into exact rationals (the exact binary
// values of the doubles). Requires real values.
Constants<Rational> to_exact(const Constants<Complex>& constants);

// Same numbers expressed in the other scalar domain.
template <class T>
Constants<T> constants_as(const Constants<Complex>& constants);

}  // namespace aet
