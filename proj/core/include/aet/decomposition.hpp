#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "aet/coefficients.hpp"
#include "aet/constants.hpp"
#include "aet/numeric.hpp"

namespace aet {

// s(x) = 0 on integers, 1/2 - {x} otherwise.
template <class Real>
Real sawtooth(const Real& x);

// int_n^x {t/n} dt = (n/2)({x/n}^2 + [x/n] - 1). Throws Error(XBelowN).
template <class Real>
Real frac_integral(std::uint64_t n, const Real& x);

// f_1(x) = sum_n (alpha(n)/n) s(x/n) through its locally bounded form
//
//   f_1(x) = A_1/2 - 2 C(F) x + sum_{n<=x} (alpha(n)/n) [x/n],
//
// minus half the jump sum_{n|x} alpha(n)/n at integers. f_1(0) = 0.
template <class T>
Bounded<T> f1_closed(const RealOf<T>& x, const CoefficientTable& table,
                     const Constants<T>& constants);

// Truncated series up to M >= x plus the analytic tail
// 1/2 (A_1 - P_1(M)) - x (A_2 - P_2(M)).
template <class T>
Bounded<T> f1_series(const RealOf<T>& x, const CoefficientTable& table, std::uint64_t M,
                     const Constants<T>& constants);

template <class T>
struct OneSidedLimits {
  T left;      // f_1(N - 0)
  T right;     // f_1(N + 0)
  T half;      // (left + right) / 2
  T at_point;  // f1_closed(N)
  T jump() const { return right - left; }
};

// One-sided limits at a positive integer, each from its own floor sum.
template <class T>
OneSidedLimits<T> f1_one_sided(std::uint64_t N, const CoefficientTable& table,
                               const Constants<T>& constants);

// g_1(x) = sum_{n<=x} alpha(n){x/n}({x/n}-1) + x^2 (A_2 - P_2(x)) - x (A_1 - P_1(x)).
template <class T>
Bounded<T> g1(const RealOf<T>& x, const CoefficientTable& table, const Constants<T>& constants);

enum class RRoute { definition, integral, closed };

// R(x) = E_2(x) - x f_1(x), by definition, as -int_0^x f_1, or as g_1/2 (x >= 1).
template <class T>
Bounded<T> r_function(const RealOf<T>& x, const TotientTable& table,
                      const Constants<T>& constants, RRoute route);

enum class Verdict { pass, fail, not_applicable };

template <class T>
struct DecompositionReport {
  RealOf<T> x{};
  Bounded<T> e2;
  Bounded<T> arithmetic_part;  // x f_1
  Bounded<T> analytic_part;    // g_1 / 2
  T residual{};
  Verdict exact_verdict = Verdict::not_applicable;

  double combined_bound() const { return e2.bound + arithmetic_part.bound + analytic_part.bound; }
};

// Constant-free form of E_2 = x f_1 + g_1/2 after A_1 and C(F) cancel:
//
//   sum'_{n<=x} phi(n,F) = x S_f'(x) + S_g(x)/2 - (x^2/2) P_2(x) + (x/2) P_1(x)
//
// with S_f' the half-valued floor sum and sum' the half-valued prefix sum.
template <class T>
struct ReducedIdentity {
  T lhs;
  T rhs;
  bool holds() const { return lhs == rhs; }
};

template <class T>
ReducedIdentity<T> reduced_identity(const RealOf<T>& x, const TotientTable& table);

// Throws Error(XBelowOne | XBeyondTable). Exact mode evaluates the reduced
// identity; floating mode reports Verdict::not_applicable.
template <class T>
DecompositionReport<T> decompose(const RealOf<T>& x, const TotientTable& table,
                                 const Constants<T>& constants);

// Same rows as calling decompose for each x, in input order.
template <class T>
std::vector<DecompositionReport<T>> decompose_batch(std::span<const RealOf<T>> xs,
                                                    const TotientTable& table,
                                                    const Constants<T>& constants);

// O(1) evaluators for the floating quadrature code. Both precompute their
// values at integers; piecewise structure is exploited exactly.
class F1Function {
 public:
  F1Function(const CoefficientTable& table, const Constants<Complex>& constants,
             std::uint64_t x_max);

  Complex operator()(double x) const;  // half-value at integers
  Complex right_limit(double x) const;
  Complex left_limit(double x) const;
  double x_max() const { return static_cast<double>(floor_sums_.size() - 1); }

 private:
  Complex a1_half_;
  Complex c_f_;
  std::vector<Complex> floor_sums_;  // sum_{n<=k} (alpha(n)/n)[k/n]
};

class E2Function {
 public:
  E2Function(const TotientTable& table, const Complex& c_f, std::uint64_t x_max);

  Complex operator()(double x) const;
  Complex right_limit(double x) const;
  Complex left_limit(double x) const;

 private:
  Complex c_f_;
  std::vector<Complex> cumulative_;
};

}  // namespace aet
