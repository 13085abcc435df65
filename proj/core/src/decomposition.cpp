#include "aet/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <type_traits>

#include "aet/error.hpp"

namespace aet {
namespace {

template <class T>
T from_int(std::uint64_t n) {
  if constexpr (std::is_same_v<T, Complex>) {
    return Complex(static_cast<double>(n), 0.0);
  } else {
    return Rational(static_cast<unsigned long>(n));
  }
}

template <class T>
constexpr bool is_floating = std::is_same_v<T, Complex>;

template <class T>
std::uint64_t floor_in_table(const RealOf<T>& x, std::uint64_t size) {
  if (x < 0) throw Error(ErrorCode::XBeyondTable, "x must be nonnegative");
  const std::int64_t k = Field<T>::floor(x);
  if (static_cast<std::uint64_t>(k) > size) {
    throw Error(ErrorCode::XBeyondTable, "x = " + std::to_string(Field<T>::to_double(x)) +
                                             " beyond table size " + std::to_string(size));
  }
  return static_cast<std::uint64_t>(k);
}

// Every finite sum over n <= x used by the decomposition, in one pass.
template <class T>
struct FiniteSums {
  T floor_sum{};  // S_f = sum (alpha(n)/n) [x/n]
  T frac_sum{};   // S_g = sum alpha(n) {x/n}({x/n} - 1)
  T p1{};         // sum alpha(n)/n
  T p2{};         // sum alpha(n)/n^2
  T jump{};       // sum_{n|x} alpha(n)/n, zero off the integers
  double magnitude = 0.0;
  std::uint64_t terms = 0;
};

template <class T>
FiniteSums<T> finite_sums(const RealOf<T>& x, std::span<const T> alpha, std::uint64_t upto) {
  FiniteSums<T> out;
  const bool integral = Field<T>::is_integer(x);
  for (std::uint64_t n = 1; n <= upto; ++n) {
    if (alpha[n] == T(0)) continue;
    const T nn = from_int<T>(n);
    const T over_n = alpha[n] / nn;
    const std::int64_t q = Field<T>::floor_div(x, n);
    const T frac = Field<T>::lift(Field<T>::frac_div(x, n));
    out.floor_sum += over_n * from_int<T>(static_cast<std::uint64_t>(q));
    out.frac_sum += alpha[n] * frac * (frac - T(1));
    out.p1 += over_n;
    out.p2 += over_n / nn;
    if (integral && Field<T>::divides(n, x)) out.jump += over_n;
    if constexpr (is_floating<T>) {
      out.magnitude += std::abs(over_n) * (static_cast<double>(q) + 1.0) + std::abs(alpha[n]);
    }
  }
  out.terms = upto;
  return out;
}

template <class T>
double slack(const FiniteSums<T>& sums, double scale) {
  if constexpr (is_floating<T>) {
    return rounding_slack(sums.magnitude * std::max(1.0, scale), sums.terms + 8);
  } else {
    return 0.0;
  }
}

template <class T>
double slack_of(const T& value, std::uint64_t terms) {
  if constexpr (is_floating<T>) {
    return rounding_slack(std::abs(value), terms);
  } else {
    return 0.0;
  }
}

// D(m) = sum_{n|m} alpha(n)/n and its prefix sums S_f(k) = sum_{m<=k} D(m),
// which equal sum_{n<=k} (alpha(n)/n)[k/n].
template <class T>
std::vector<T> floor_sum_prefix(std::span<const T> alpha, std::uint64_t upto) {
  std::vector<T> divisor_sum(upto + 1, T(0));
  for (std::uint64_t n = 1; n <= upto; ++n) {
    if (alpha[n] == T(0)) continue;
    const T weight = alpha[n] / from_int<T>(n);
    for (std::uint64_t m = n; m <= upto; m += n) divisor_sum[m] += weight;
  }
  std::vector<T> prefix(upto + 1, T(0));
  for (std::uint64_t m = 1; m <= upto; ++m) prefix[m] = prefix[m - 1] + divisor_sum[m];
  return prefix;
}

}  // namespace

template <class Real>
Real sawtooth(const Real& x) {
  if constexpr (std::is_same_v<Real, double>) {
    if (std::floor(x) == x) return 0.0;
    return 0.5 - (x - std::floor(x));
  } else {
    if (x.get_den() == 1) return Rational(0);
    return Rational(1, 2) - Field<Rational>::frac_div(x, 1);
  }
}

template <class Real>
Real frac_integral(std::uint64_t n, const Real& x) {
  if (n == 0 || x < static_cast<double>(n)) {
    throw Error(ErrorCode::XBelowN, "frac_integral needs x >= n >= 1");
  }
  using T = std::conditional_t<std::is_same_v<Real, double>, Complex, Rational>;
  const Real q = Real(Field<T>::floor_div(x, n));
  const Real f = Field<T>::frac_div(x, n);
  if constexpr (std::is_same_v<Real, double>) {
    return static_cast<double>(n) / 2.0 * (f * f + q - 1.0);
  } else {
    return Rational(Rational(static_cast<unsigned long>(n)) / 2) * (f * f + q - 1);
  }
}

template double sawtooth<double>(const double&);
template Rational sawtooth<Rational>(const Rational&);
template double frac_integral<double>(std::uint64_t, const double&);
template Rational frac_integral<Rational>(std::uint64_t, const Rational&);

template <class T>
Bounded<T> f1_closed(const RealOf<T>& x, const CoefficientTable& table,
                     const Constants<T>& constants) {
  const std::uint64_t k = floor_in_table<T>(x, table.size());
  Bounded<T> out;
  out.kind = constants.kind;
  if (x == 0) return out;  // every s(0/n) vanishes

  const FiniteSums<T> sums = finite_sums<T>(x, table.values<T>(), k);
  const T xt = Field<T>::lift(x);
  out.value = constants.a1 / T(2) - T(2) * constants.c_f * xt + sums.floor_sum;
  if (Field<T>::is_integer(x)) out.value -= sums.jump / T(2);
  const double xd = Field<T>::to_double(x);
  out.bound = 0.5 * constants.a1_bound + 2.0 * xd * constants.c_bound + slack(sums, xd);
  return out;
}

template <class T>
Bounded<T> f1_series(const RealOf<T>& x, const CoefficientTable& table, std::uint64_t M,
                     const Constants<T>& constants) {
  if (M > table.size()) throw Error(ErrorCode::MBeyondTable, "M exceeds the table size");
  if (x < 0) throw Error(ErrorCode::XBeyondTable, "x must be nonnegative");
  if (x > static_cast<double>(M)) throw Error(ErrorCode::MSmallerThanX, "M must be >= x");
  Bounded<T> out;
  out.kind = constants.kind;
  if (x == 0) return out;

  const auto alpha = table.values<T>();
  T series(0), p1(0), p2(0);
  double magnitude = 0.0;
  for (std::uint64_t n = 1; n <= M; ++n) {
    if (alpha[n] == T(0)) continue;
    const T nn = from_int<T>(n);
    const T over_n = alpha[n] / nn;
    p1 += over_n;
    p2 += over_n / nn;
    if (!Field<T>::divides(n, x)) {
      series += over_n * (T(1) / T(2) - Field<T>::lift(Field<T>::frac_div(x, n)));
    }
    if constexpr (is_floating<T>) magnitude += std::abs(over_n);
  }
  const T xt = Field<T>::lift(x);
  // for n > M >= x, s(x/n) = 1/2 - x/n
  out.value = series + (constants.a1 - p1) / T(2) - xt * (constants.a2() - p2);
  const double xd = Field<T>::to_double(x);
  out.bound = 0.5 * constants.a1_bound + xd * constants.a2_bound();
  if constexpr (is_floating<T>) out.bound += rounding_slack(magnitude * (1.0 + xd), M + 4);
  return out;
}

template <class T>
OneSidedLimits<T> f1_one_sided(std::uint64_t N, const CoefficientTable& table,
                               const Constants<T>& constants) {
  if (N < 1 || N > table.size()) {
    throw Error(ErrorCode::XBeyondTable, "N must lie in [1, table size]");
  }
  const auto alpha = table.values<T>();
  T right_sum(0), left_sum(0);
  for (std::uint64_t n = 1; n <= N; ++n) {
    if (alpha[n] == T(0)) continue;
    const T over_n = alpha[n] / from_int<T>(n);
    const std::uint64_t floor_q = N / n;             // [(N+0)/n]
    const std::uint64_t ceil_q = (N + n - 1) / n;    // [(N-0)/n] = ceil(N/n) - 1
    right_sum += over_n * from_int<T>(floor_q);
    left_sum += over_n * from_int<T>(ceil_q - 1);
  }
  const T base = constants.a1 / T(2) - T(2) * constants.c_f * from_int<T>(N);
  OneSidedLimits<T> out;
  out.right = base + right_sum;
  out.left = base + left_sum;
  out.half = (out.left + out.right) / T(2);
  RealOf<T> x;
  if constexpr (is_floating<T>) {
    x = static_cast<double>(N);
  } else {
    x = Rational(static_cast<unsigned long>(N));
  }
  out.at_point = f1_closed<T>(x, table, constants).value;
  return out;
}

template <class T>
Bounded<T> g1(const RealOf<T>& x, const CoefficientTable& table, const Constants<T>& constants) {
  const std::uint64_t k = floor_in_table<T>(x, table.size());
  Bounded<T> out;
  out.kind = constants.kind;
  if (x == 0) return out;

  const FiniteSums<T> sums = finite_sums<T>(x, table.values<T>(), k);
  const T xt = Field<T>::lift(x);
  // for n > x, {x/n} = x/n
  out.value = sums.frac_sum + xt * xt * (constants.a2() - sums.p2) - xt * (constants.a1 - sums.p1);
  const double xd = Field<T>::to_double(x);
  out.bound = xd * xd * constants.a2_bound() + xd * constants.a1_bound + slack(sums, xd * xd);
  return out;
}

template <class T>
Bounded<T> r_function(const RealOf<T>& x, const TotientTable& table,
                      const Constants<T>& constants, RRoute route) {
  const CoefficientTable& coeffs = table.coefficients();
  const double xd = Field<T>::to_double(x);
  switch (route) {
    case RRoute::definition: {
      const Bounded<T> c_f{constants.c_f, constants.c_bound, constants.kind};
      const Bounded<T> e2 = error_term<T>(table, c_f, x, Convention::symmetric);
      const Bounded<T> f1 = f1_closed<T>(x, coeffs, constants);
      Bounded<T> out;
      out.value = e2.value - Field<T>::lift(x) * f1.value;
      out.bound = e2.bound + xd * f1.bound + slack_of(out.value, 4);
      out.kind = constants.kind;
      return out;
    }
    case RRoute::integral: {
      if (!(x > 0)) throw Error(ErrorCode::NonPositiveX, "the integral route needs x > 0");
      const std::uint64_t k = floor_in_table<T>(x, table.size());
      const std::vector<T> prefix = floor_sum_prefix<T>(coeffs.values<T>(), k);
      // on (j, j+1) f_1(t) = A_1/2 - 2C t + S_f(j); integrate piece by piece
      T pieces(0);
      double magnitude = 0.0;
      for (std::uint64_t j = 1; j <= k; ++j) {
        const RealOf<T> next = RealOf<T>(j + 1);
        const RealOf<T> right = next < x ? next : x;
        const T length = Field<T>::lift(RealOf<T>(right - RealOf<T>(j)));
        pieces += prefix[j] * length;
        if constexpr (is_floating<T>) magnitude += std::abs(prefix[j]);
      }
      const T xt = Field<T>::lift(x);
      const T integral = constants.a1 / T(2) * xt - constants.c_f * xt * xt + pieces;
      Bounded<T> out;
      out.value = -integral;
      out.bound = 0.5 * xd * constants.a1_bound + xd * xd * constants.c_bound;
      if constexpr (is_floating<T>) {
        out.bound += rounding_slack(magnitude + std::abs(integral), k + 8);
      }
      out.kind = constants.kind;
      return out;
    }
    case RRoute::closed: {
      if (x < 1) throw Error(ErrorCode::XBelowOne, "R = g_1/2 is only claimed for x >= 1");
      const Bounded<T> g = g1<T>(x, coeffs, constants);
      return {g.value / T(2), 0.5 * g.bound, g.kind};
    }
  }
  throw Error(ErrorCode::UsageError, "unknown route");
}

template <class T>
ReducedIdentity<T> reduced_identity(const RealOf<T>& x, const TotientTable& table) {
  const std::uint64_t k = floor_in_table<T>(x, table.size());
  const FiniteSums<T> sums = finite_sums<T>(x, table.coefficients().values<T>(), k);
  const bool integral = Field<T>::is_integer(x);
  ReducedIdentity<T> out;
  out.lhs = k == 0 ? T(0) : table.cumulative_values<T>()[k];
  if (integral && k >= 1) out.lhs -= table.phi_values<T>()[k] / T(2);
  const T xt = Field<T>::lift(x);
  const T half_floor = integral ? T(sums.floor_sum - sums.jump / T(2)) : sums.floor_sum;
  out.rhs = xt * half_floor + sums.frac_sum / T(2) - xt * xt / T(2) * sums.p2 +
            xt / T(2) * sums.p1;
  return out;
}

template <class T>
DecompositionReport<T> decompose(const RealOf<T>& x, const TotientTable& table,
                                 const Constants<T>& constants) {
  if (x < 1) throw Error(ErrorCode::XBelowOne, "the decomposition is stated for x >= 1");
  floor_in_table<T>(x, table.size());

  const CoefficientTable& coeffs = table.coefficients();
  const Bounded<T> c_f{constants.c_f, constants.c_bound, constants.kind};
  DecompositionReport<T> report;
  report.x = x;
  report.e2 = error_term<T>(table, c_f, x, Convention::symmetric);
  const Bounded<T> f1 = f1_closed<T>(x, coeffs, constants);
  const double xd = Field<T>::to_double(x);
  report.arithmetic_part = {Field<T>::lift(x) * f1.value, xd * f1.bound, f1.kind};
  const Bounded<T> g = g1<T>(x, coeffs, constants);
  report.analytic_part = {g.value / T(2), 0.5 * g.bound, g.kind};
  report.residual = report.e2.value - report.arithmetic_part.value - report.analytic_part.value;

  if constexpr (is_floating<T>) {
    report.exact_verdict = Verdict::not_applicable;
  } else {
    const ReducedIdentity<T> identity = reduced_identity<T>(x, table);
    report.exact_verdict =
        identity.holds() && report.residual == 0 ? Verdict::pass : Verdict::fail;
  }
  return report;
}

template <class T>
std::vector<DecompositionReport<T>> decompose_batch(std::span<const RealOf<T>> xs,
                                                    const TotientTable& table,
                                                    const Constants<T>& constants) {
  std::vector<DecompositionReport<T>> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(decompose<T>(x, table, constants));
  return out;
}

#define AET_INSTANTIATE(T)                                                                    \
  template Bounded<T> f1_closed<T>(const RealOf<T>&, const CoefficientTable&,                 \
                                   const Constants<T>&);                                      \
  template Bounded<T> f1_series<T>(const RealOf<T>&, const CoefficientTable&, std::uint64_t,  \
                                   const Constants<T>&);                                      \
  template OneSidedLimits<T> f1_one_sided<T>(std::uint64_t, const CoefficientTable&,          \
                                             const Constants<T>&);                            \
  template Bounded<T> g1<T>(const RealOf<T>&, const CoefficientTable&, const Constants<T>&);  \
  template Bounded<T> r_function<T>(const RealOf<T>&, const TotientTable&,                    \
                                    const Constants<T>&, RRoute);                             \
  template ReducedIdentity<T> reduced_identity<T>(const RealOf<T>&, const TotientTable&);     \
  template DecompositionReport<T> decompose<T>(const RealOf<T>&, const TotientTable&,         \
                                               const Constants<T>&);                          \
  template std::vector<DecompositionReport<T>> decompose_batch<T>(                            \
      std::span<const RealOf<T>>, const TotientTable&, const Constants<T>&);

AET_INSTANTIATE(Complex)
AET_INSTANTIATE(Rational)
#undef AET_INSTANTIATE

F1Function::F1Function(const CoefficientTable& table, const Constants<Complex>& constants,
                       std::uint64_t x_max)
    : a1_half_(constants.a1 / 2.0), c_f_(constants.c_f) {
  if (x_max > table.size()) throw Error(ErrorCode::XBeyondTable, "x_max beyond table size");
  floor_sums_ = floor_sum_prefix<Complex>(table.alpha(), x_max);
}

Complex F1Function::right_limit(double x) const {
  if (x < 0 || x > x_max()) throw Error(ErrorCode::XBeyondTable, "f_1 evaluated off its range");
  const auto k = static_cast<std::size_t>(std::floor(x));
  return a1_half_ - 2.0 * c_f_ * x + floor_sums_[k];
}

Complex F1Function::left_limit(double x) const {
  if (x <= 0 || x > x_max()) throw Error(ErrorCode::XBeyondTable, "f_1 evaluated off its range");
  const double k = std::floor(x);
  if (k != x) return right_limit(x);
  return a1_half_ - 2.0 * c_f_ * x + floor_sums_[static_cast<std::size_t>(k) - 1];
}

Complex F1Function::operator()(double x) const {
  if (x == 0.0) return {};
  if (std::floor(x) == x) return 0.5 * (left_limit(x) + right_limit(x));
  return right_limit(x);
}

E2Function::E2Function(const TotientTable& table, const Complex& c_f, std::uint64_t x_max)
    : c_f_(c_f) {
  if (x_max > table.size()) throw Error(ErrorCode::XBeyondTable, "x_max beyond table size");
  const auto cumulative = table.cumulative();
  cumulative_.assign(cumulative.begin(), cumulative.begin() + static_cast<std::ptrdiff_t>(x_max) + 1);
}

Complex E2Function::right_limit(double x) const {
  if (x < 0 || x > static_cast<double>(cumulative_.size() - 1)) {
    throw Error(ErrorCode::XBeyondTable, "E_2 evaluated off its range");
  }
  const auto k = static_cast<std::size_t>(std::floor(x));
  return cumulative_[k] - c_f_ * x * x;
}

Complex E2Function::left_limit(double x) const {
  const double k = std::floor(x);
  if (k != x || x == 0.0) return right_limit(x);
  right_limit(x);  // range check
  return cumulative_[static_cast<std::size_t>(k) - 1] - c_f_ * x * x;
}

Complex E2Function::operator()(double x) const {
  if (std::floor(x) == x && x > 0.0) return 0.5 * (left_limit(x) + right_limit(x));
  return right_limit(x);
}

}  // namespace aet
