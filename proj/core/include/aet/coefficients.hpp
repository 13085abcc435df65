#pragma once

#include <cstdint>
#include <span>
#include <type_traits>
#include <vector>

#include "aet/numeric.hpp"
#include "aet/product.hpp"

namespace aet {

// Largest table size accepted by the sieves. Tables beyond this raise
// Error(OutOfMemory) instead of attempting the allocation.
inline constexpr std::uint64_t kDefaultTableCap = 200'000'000;

// alpha(n) = mu(n) prod_{p|n} gamma(p) for 1 <= n <= N. Index 0 holds 0.
// Floating values are always present; exact values only in exact mode.
class CoefficientTable {
 public:
  std::uint64_t size() const { return size_; }
  NumericMode mode() const { return mode_; }
  const EulerProductSpec& spec() const { return spec_; }

  std::span<const Complex> alpha() const { return alpha_; }
  // Throws Error(ModeUnavailable) for floating tables.
  std::span<const Rational> alpha_exact() const;
  std::span<const std::uint32_t> smallest_prime_factor() const { return spf_; }

  template <class T>
  std::span<const T> values() const {
    if constexpr (std::is_same_v<T, Complex>) {
      return alpha();
    } else {
      return alpha_exact();
    }
  }

 private:
  friend CoefficientTable sieve_alpha(const EulerProductSpec&, std::uint64_t, NumericMode,
                                      std::uint64_t);
  friend class TableLoader;
  explicit CoefficientTable(EulerProductSpec spec) : spec_(std::move(spec)) {}

  EulerProductSpec spec_;
  std::uint64_t size_ = 0;
  NumericMode mode_ = NumericMode::floating;
  std::vector<std::uint32_t> spf_;
  std::vector<Complex> alpha_;
  std::vector<Rational> alpha_exact_;
};

// Smallest-prime-factor sieve. Throws Error(OutOfMemory) when N > cap and
// Error(ModeUnavailable) for exact mode on a non-rational spec.
CoefficientTable sieve_alpha(const EulerProductSpec& spec, std::uint64_t N,
                             NumericMode mode = NumericMode::floating,
                             std::uint64_t cap = kDefaultTableCap);

// phi(n, F) and its prefix sums, built from a coefficient table.
class TotientTable {
 public:
  std::uint64_t size() const { return coefficients_.size(); }
  NumericMode mode() const { return coefficients_.mode(); }
  const CoefficientTable& coefficients() const { return coefficients_; }

  std::span<const Complex> phi() const { return phi_; }
  std::span<const Complex> cumulative() const { return cumulative_; }
  std::span<const Rational> phi_exact() const;
  std::span<const Rational> cumulative_exact() const;

  template <class T>
  std::span<const T> phi_values() const {
    if constexpr (std::is_same_v<T, Complex>) {
      return phi();
    } else {
      return phi_exact();
    }
  }
  template <class T>
  std::span<const T> cumulative_values() const {
    if constexpr (std::is_same_v<T, Complex>) {
      return cumulative();
    } else {
      return cumulative_exact();
    }
  }

 private:
  friend TotientTable phi_table(CoefficientTable coefficients);
  friend class TableLoader;
  explicit TotientTable(CoefficientTable coefficients) : coefficients_(std::move(coefficients)) {}

  CoefficientTable coefficients_;
  std::vector<Complex> phi_;
  std::vector<Complex> cumulative_;
  std::vector<Rational> phi_exact_;
  std::vector<Rational> cumulative_exact_;
};

// phi(n, F) = n sum_{m|n} alpha(m)/m by divisor convolution over the sieve.
TotientTable phi_table(CoefficientTable coefficients);
TotientTable phi_table(const EulerProductSpec& spec, std::uint64_t N,
                       NumericMode mode = NumericMode::floating);

// phi(n, F) = n prod_{p|n} F_p(1)^{-1}, factoring n by trial division.
template <class T>
T phi_direct(const EulerProductSpec& spec, std::uint64_t n);

// sum_{n <= x} phi(n, F). Throws Error(XBeyondTable).
template <class T>
T partial_sum_phi(const TotientTable& table, const RealOf<T>& x);

enum class Convention { plain, symmetric };

// plain:     E(x)  = sum_{n<=x} phi(n,F) - C(F) x^2
// symmetric: E_2(x), the half-value of E at integers.
template <class T>
Bounded<T> error_term(const TotientTable& table, const Bounded<T>& c_f, const RealOf<T>& x,
                      Convention convention);

struct SeriesIdentityReport {
  double s = 0.0;
  std::uint64_t truncation = 0;
  ValueWithBound lhs;  // sum phi(n,F) n^{-s}
  ValueWithBound rhs;  // zeta(s-1) sum alpha(n) n^{-s}
  double difference = 0.0;
  double combined_bound = 0.0;
  bool within_bound = false;
};

// Compares both sides of sum phi(n,F)/n^s = zeta(s-1) sum alpha(n)/n^s.
// Throws Error(SOutOfRange) unless s > 2.
SeriesIdentityReport series_identity_check(const EulerProductSpec& spec, double s,
                                           std::uint64_t truncation);
SeriesIdentityReport series_identity_check(const TotientTable& table, double s);

struct GrowthSample {
  double x = 0.0;
  double ratio = 0.0;  // |E(x)| / (x (log 2x)^d)
};

struct GrowthReport {
  std::vector<GrowthSample> samples;
  double sup = 0.0;
  double argmax = 0.0;

  // sup of the ratio over samples with lo <= x <= hi.
  double sup_between(double lo, double hi) const;
};

// Samples integers in [x_min, X] (all of them when samples >= X - x_min + 1).
GrowthReport growth_scan(const TotientTable& table, const ValueWithBound& c_f, std::uint64_t X,
                         std::uint64_t samples, std::uint64_t x_min = 1);

}  // namespace aet
