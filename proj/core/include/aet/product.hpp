#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "aet/character.hpp"
#include "aet/numeric.hpp"

namespace aet {

enum class ProductKind { zeta, dirichlet, custom };
enum class DefaultRule { zero, one };

// Local data {alpha_j(p)} of a polynomial Euler product
//
//   F(s) = prod_p prod_{j=1..d} (1 - alpha_j(p) p^{-s})^{-1},  |alpha_j(p)| <= 1.
//
// Custom products carry a finite table of prime -> inverse roots and a default
// rule (all roots 0 or all roots 1) for untabulated primes.
class EulerProductSpec {
 public:
  using RootTable = std::map<std::uint64_t, std::vector<Complex>>;

  static EulerProductSpec zeta();
  static EulerProductSpec dirichlet(CharacterSpec chi);
  // Throws Error(InvalidProduct) on non-prime keys, wrong arity, |alpha| > 1
  // or a degree that is not minimal.
  static EulerProductSpec custom(unsigned degree, RootTable roots, DefaultRule rule);
  // F(s) = 1: every local factor trivial, gamma(p) = 0. Not a product of
  // positive Euler degree, kept for the empty-product edge cases.
  static EulerProductSpec trivial();

  ProductKind kind() const { return kind_; }
  unsigned degree() const { return degree_; }
  const CharacterSpec& character() const;
  const RootTable& root_table() const { return roots_; }
  DefaultRule default_rule() const { return default_rule_; }

  // alpha_1(p), ..., alpha_d(p); p is assumed prime.
  std::vector<Complex> roots_at(std::uint64_t p) const;

  // All gamma(p) are rational: zeta, real characters, custom with real roots.
  bool supports_exact() const;

  // Uniform bound |gamma(p)| <= d 2^{d-1}.
  double gamma_bound() const;

  // Largest prime with gamma(p) possibly nonzero, when finite.
  std::optional<std::uint64_t> support_limit() const;

 private:
  EulerProductSpec() = default;

  ProductKind kind_ = ProductKind::zeta;
  unsigned degree_ = 1;
  std::optional<CharacterSpec> chi_;
  RootTable roots_;
  DefaultRule default_rule_ = DefaultRule::zero;
};

// F_p(1) = prod_j (1 - alpha_j(p)/p)^{-1}. Throws Error(NotPrime).
Complex local_factor_at_one(const EulerProductSpec& spec, std::uint64_t p);

// gamma(p) = p (1 - 1/F_p(1)). Throws Error(NotPrime).
Complex gamma(const EulerProductSpec& spec, std::uint64_t p);

// Exact gamma(p); throws Error(ModeUnavailable) when the product is not rational.
Rational gamma_exact(const EulerProductSpec& spec, std::uint64_t p);

namespace detail {
// Unchecked variants for callers that already know p is prime.
Complex gamma_at_prime(const EulerProductSpec& spec, std::uint64_t p);
Rational gamma_exact_at_prime(const EulerProductSpec& spec, std::uint64_t p);
}  // namespace detail

}  // namespace aet
