#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace aet {

using Complex = std::complex<double>;
using Rational = mpq_class;

enum class NumericMode { exact, floating };

enum class BoundKind { rigorous, heuristic };

std::string_view to_string(NumericMode mode);
std::string_view to_string(BoundKind kind);

// A value together with a radius around it in which the true value lies
// (rigorous) or is estimated to lie (heuristic).
template <class T>
struct Bounded {
  T value{};
  double bound = 0.0;
  BoundKind kind = BoundKind::rigorous;
};

using ValueWithBound = Bounded<Complex>;

inline BoundKind weakest(BoundKind a, BoundKind b) {
  return (a == BoundKind::heuristic || b == BoundKind::heuristic) ? BoundKind::heuristic
                                                                  : BoundKind::rigorous;
}

// Arithmetic glue for the two scalar domains. Complex values are sampled at
// double abscissae; exact rationals at rational abscissae.
template <class T>
struct Field;

template <>
struct Field<Complex> {
  using Real = double;

  static Complex lift(double x) { return {x, 0.0}; }
  static double to_double(double x) { return x; }
  static double magnitude(const Complex& v) { return std::abs(v); }
  static bool is_integer(double x) { return std::floor(x) == x; }
  static std::int64_t floor(double x) { return static_cast<std::int64_t>(std::floor(x)); }
  // floor(x / n) and {x / n}
  static std::int64_t floor_div(double x, std::uint64_t n) {
    return static_cast<std::int64_t>(std::floor(x / static_cast<double>(n)));
  }
  static double frac_div(double x, std::uint64_t n) {
    const double q = x / static_cast<double>(n);
    return q - std::floor(q);
  }
  static bool divides(std::uint64_t n, double x) {
    return is_integer(x) && std::fmod(x, static_cast<double>(n)) == 0.0;
  }
};

template <>
struct Field<Rational> {
  using Real = Rational;

  static Rational lift(const Rational& x) { return x; }
  static double to_double(const Rational& x) { return x.get_d(); }
  static double magnitude(const Rational& v) { return std::abs(v.get_d()); }
  static bool is_integer(const Rational& x) { return x.get_den() == 1; }
  static std::int64_t floor(const Rational& x);
  static std::int64_t floor_div(const Rational& x, std::uint64_t n);
  static Rational frac_div(const Rational& x, std::uint64_t n);
  static bool divides(std::uint64_t n, const Rational& x);
};

template <class T>
using RealOf = typename Field<T>::Real;

// Exact conversion of a finite double to a rational.
Rational to_rational(double x);

// Parses "3", "-2.75", "1e-3", "7/4" exactly.
Rational parse_rational(std::string_view text);

std::string format_double(double x);
std::string format_complex(const Complex& z);
std::string format_rational(const Rational& q);

// Unit roundoff allowance for a floating sum of `terms` values whose absolute
// values add up to `magnitude`.
inline double rounding_slack(double magnitude, std::uint64_t terms) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  return 2.0 * eps * magnitude * static_cast<double>(terms + 1);
}

}  // namespace aet
