#include "aet/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "aet/constants.hpp"
#include "aet/error.hpp"
#include "aet/primes.hpp"

namespace aet {
namespace {

void require_exact(NumericMode mode, const char* what) {
  if (mode != NumericMode::exact) {
    throw Error(ErrorCode::ModeUnavailable, std::string(what) + " needs an exact-mode table");
  }
}

template <class T>
std::uint64_t checked_floor(const RealOf<T>& x, std::uint64_t size) {
  if (x < 0) throw Error(ErrorCode::XBeyondTable, "x must be nonnegative");
  const std::int64_t k = Field<T>::floor(x);
  if (static_cast<std::uint64_t>(k) > size) {
    throw Error(ErrorCode::XBeyondTable,
                "x = " + std::to_string(Field<T>::to_double(x)) + " beyond table size " +
                    std::to_string(size));
  }
  return static_cast<std::uint64_t>(k);
}

}  // namespace

std::span<const Rational> CoefficientTable::alpha_exact() const {
  require_exact(mode_, "alpha_exact");
  return alpha_exact_;
}

std::span<const Rational> TotientTable::phi_exact() const {
  require_exact(mode(), "phi_exact");
  return phi_exact_;
}

std::span<const Rational> TotientTable::cumulative_exact() const {
  require_exact(mode(), "cumulative_exact");
  return cumulative_exact_;
}

CoefficientTable sieve_alpha(const EulerProductSpec& spec, std::uint64_t N, NumericMode mode,
                             std::uint64_t cap) {
  if (N < 1) throw Error(ErrorCode::UsageError, "table size must be >= 1");
  if (N > cap) {
    throw Error(ErrorCode::OutOfMemory,
                "N = " + std::to_string(N) + " exceeds the table cap " + std::to_string(cap));
  }
  if (mode == NumericMode::exact && !spec.supports_exact()) {
    throw Error(ErrorCode::ModeUnavailable, "exact mode needs rational gamma(p)");
  }

  CoefficientTable table(spec);
  table.size_ = N;
  table.mode_ = mode;
  table.spf_ = smallest_prime_factors(static_cast<std::uint32_t>(N));
  table.alpha_.assign(N + 1, Complex{});
  table.alpha_[1] = Complex{1.0, 0.0};
  const auto& spf = table.spf_;

  if (mode == NumericMode::exact) {
    table.alpha_exact_.assign(N + 1, Rational(0));
    auto& exact = table.alpha_exact_;
    exact[1] = 1;
    for (std::uint64_t n = 2; n <= N; ++n) {
      const std::uint64_t p = spf[n];
      if (p == n) {
        exact[n] = -detail::gamma_exact_at_prime(spec, p);
      } else {
        const std::uint64_t m = n / p;
        if (m % p != 0 && exact[m] != 0 && exact[p] != 0) exact[n] = exact[m] * exact[p];
      }
      table.alpha_[n] = Complex{exact[n].get_d(), 0.0};
    }
    return table;
  }

  auto& alpha = table.alpha_;
  for (std::uint64_t n = 2; n <= N; ++n) {
    const std::uint64_t p = spf[n];
    if (p == n) {
      alpha[n] = -detail::gamma_at_prime(spec, p);
    } else {
      const std::uint64_t m = n / p;
      alpha[n] = m % p == 0 ? Complex{} : alpha[m] * alpha[p];
    }
  }
  return table;
}

TotientTable phi_table(CoefficientTable coefficients) {
  TotientTable table(std::move(coefficients));
  const CoefficientTable& coeffs = table.coefficients_;
  const std::uint64_t N = coeffs.size();

  if (coeffs.mode() == NumericMode::exact) {
    const auto alpha = coeffs.alpha_exact();
    std::vector<Rational> divisor_sum(N + 1, Rational(0));
    for (std::uint64_t m = 1; m <= N; ++m) {
      if (alpha[m] == 0) continue;
      const Rational weight = alpha[m] / Rational(static_cast<unsigned long>(m));
      for (std::uint64_t n = m; n <= N; n += m) divisor_sum[n] += weight;
    }
    table.phi_exact_.assign(N + 1, Rational(0));
    table.cumulative_exact_.assign(N + 1, Rational(0));
    table.phi_.assign(N + 1, Complex{});
    table.cumulative_.assign(N + 1, Complex{});
    for (std::uint64_t n = 1; n <= N; ++n) {
      table.phi_exact_[n] = divisor_sum[n] * static_cast<unsigned long>(n);
      table.cumulative_exact_[n] = table.cumulative_exact_[n - 1] + table.phi_exact_[n];
      table.phi_[n] = Complex{table.phi_exact_[n].get_d(), 0.0};
      table.cumulative_[n] = Complex{table.cumulative_exact_[n].get_d(), 0.0};
    }
    return table;
  }

  const auto alpha = coeffs.alpha();
  std::vector<Complex> divisor_sum(N + 1, Complex{});
  for (std::uint64_t m = 1; m <= N; ++m) {
    if (alpha[m] == Complex{}) continue;
    const Complex weight = alpha[m] / static_cast<double>(m);
    for (std::uint64_t n = m; n <= N; n += m) divisor_sum[n] += weight;
  }
  table.phi_.assign(N + 1, Complex{});
  table.cumulative_.assign(N + 1, Complex{});
  std::complex<long double> running{};
  for (std::uint64_t n = 1; n <= N; ++n) {
    table.phi_[n] = divisor_sum[n] * static_cast<double>(n);
    running += std::complex<long double>(table.phi_[n]);
    table.cumulative_[n] = Complex(static_cast<double>(running.real()),
                                   static_cast<double>(running.imag()));
  }
  return table;
}

TotientTable phi_table(const EulerProductSpec& spec, std::uint64_t N, NumericMode mode) {
  return phi_table(sieve_alpha(spec, N, mode));
}

template <>
Complex phi_direct<Complex>(const EulerProductSpec& spec, std::uint64_t n) {
  if (n < 1) throw Error(ErrorCode::UsageError, "phi(n, F) needs n >= 1");
  Complex out(static_cast<double>(n), 0.0);
  for (const auto& [p, e] : factorize(n)) {
    (void)e;
    for (const Complex& a : spec.roots_at(p)) out *= Complex{1.0, 0.0} - a / static_cast<double>(p);
  }
  return out;
}

template <>
Rational phi_direct<Rational>(const EulerProductSpec& spec, std::uint64_t n) {
  if (n < 1) throw Error(ErrorCode::UsageError, "phi(n, F) needs n >= 1");
  if (!spec.supports_exact()) throw Error(ErrorCode::ModeUnavailable, "non-rational product");
  Rational out(static_cast<unsigned long>(n));
  for (const auto& [p, e] : factorize(n)) {
    (void)e;
    const Rational pr(static_cast<unsigned long>(p));
    for (const Complex& a : spec.roots_at(p)) out *= Rational(1) - to_rational(a.real()) / pr;
  }
  return out;
}

template <class T>
T partial_sum_phi(const TotientTable& table, const RealOf<T>& x) {
  const std::uint64_t k = checked_floor<T>(x, table.size());
  return k == 0 ? T(0) : table.cumulative_values<T>()[k];
}

template <class T>
Bounded<T> error_term(const TotientTable& table, const Bounded<T>& c_f, const RealOf<T>& x,
                      Convention convention) {
  const std::uint64_t k = checked_floor<T>(x, table.size());
  const T sum = k == 0 ? T(0) : table.cumulative_values<T>()[k];
  const T lifted = Field<T>::lift(x);
  const T main = c_f.value * lifted * lifted;
  Bounded<T> out;
  out.value = sum - main;
  if (convention == Convention::symmetric && k >= 1 && Field<T>::is_integer(x)) {
    out.value -= table.phi_values<T>()[k] / T(2);
  }
  const double xd = Field<T>::to_double(x);
  out.bound = c_f.bound * xd * xd;
  if constexpr (std::is_same_v<T, Complex>) {
    out.bound += rounding_slack(std::abs(sum) + std::abs(main), 4);
  }
  out.kind = c_f.kind;
  return out;
}

template Complex partial_sum_phi<Complex>(const TotientTable&, const double&);
template Rational partial_sum_phi<Rational>(const TotientTable&, const Rational&);
template Bounded<Complex> error_term<Complex>(const TotientTable&, const Bounded<Complex>&,
                                              const double&, Convention);
template Bounded<Rational> error_term<Rational>(const TotientTable&, const Bounded<Rational>&,
                                                const Rational&, Convention);

SeriesIdentityReport series_identity_check(const TotientTable& table, double s) {
  if (!(s > 2.0)) throw Error(ErrorCode::SOutOfRange, "the identity needs s > 2");
  const EulerProductSpec& spec = table.coefficients().spec();
  const std::uint64_t N = table.size();
  const auto phi = table.phi();
  const auto alpha = table.coefficients().alpha();

  Complex lhs{}, rhs_partial{};
  double lhs_mag = 0.0, rhs_mag = 0.0;
  double phi_ratio_max = 0.0, alpha_max = 0.0;
  for (std::uint64_t n = 1; n <= N; ++n) {
    const double weight = std::pow(static_cast<double>(n), -s);
    lhs += phi[n] * weight;
    rhs_partial += alpha[n] * weight;
    lhs_mag += std::abs(phi[n]) * weight;
    rhs_mag += std::abs(alpha[n]) * weight;
    phi_ratio_max = std::max(phi_ratio_max, std::abs(phi[n]) / static_cast<double>(n));
    alpha_max = std::max(alpha_max, std::abs(alpha[n]));
  }

  // |phi(n,F)|/n = prod_{p|n} |1 - gamma(p)/p| <= 1 when every local factor
  // has modulus <= 1; likewise |alpha(n)| <= 1 when every |gamma(p)| <= 1.
  bool phi_unit = true, alpha_unit = true;
  switch (spec.kind()) {
    case ProductKind::zeta:
      break;
    case ProductKind::dirichlet:
      phi_unit = false;
      break;
    case ProductKind::custom: {
      for (const auto& [p, roots] : spec.root_table()) {
        Complex factor{1.0, 0.0};
        for (const Complex& a : roots) factor *= Complex{1.0, 0.0} - a / static_cast<double>(p);
        if (std::abs(factor) > 1.0) phi_unit = false;
        if (std::abs(detail::gamma_at_prime(spec, p)) > 1.0) alpha_unit = false;
      }
      if (spec.default_rule() == DefaultRule::one && spec.degree() > 1) alpha_unit = false;
      break;
    }
  }

  const double Nd = static_cast<double>(N);
  const double lhs_tail_unit = std::pow(Nd, 2.0 - s) / (s - 2.0);
  const double rhs_tail_unit = std::pow(Nd, 1.0 - s) / (s - 1.0);

  SeriesIdentityReport report;
  report.s = s;
  report.truncation = N;
  report.lhs.value = lhs;
  report.lhs.bound = (phi_unit ? 1.0 : 1.25 * phi_ratio_max) * lhs_tail_unit +
                     rounding_slack(lhs_mag, N);
  report.lhs.kind = phi_unit ? BoundKind::rigorous : BoundKind::heuristic;

  const ValueWithBound zeta = zeta_value(s - 1.0);
  const double zeta_size = std::abs(zeta.value);
  report.rhs.value = zeta.value * rhs_partial;
  const double alpha_tail = (alpha_unit ? 1.0 : 1.25 * alpha_max) * rhs_tail_unit;
  report.rhs.bound = zeta_size * alpha_tail + zeta.bound * (std::abs(rhs_partial) + alpha_tail) +
                     zeta_size * rounding_slack(rhs_mag, N);
  report.rhs.kind = alpha_unit ? BoundKind::rigorous : BoundKind::heuristic;

  report.difference = std::abs(report.lhs.value - report.rhs.value);
  report.combined_bound = report.lhs.bound + report.rhs.bound;
  report.within_bound = report.difference <= report.combined_bound;
  return report;
}

SeriesIdentityReport series_identity_check(const EulerProductSpec& spec, double s,
                                           std::uint64_t truncation) {
  if (!(s > 2.0)) throw Error(ErrorCode::SOutOfRange, "the identity needs s > 2");
  return series_identity_check(phi_table(spec, truncation), s);
}

double GrowthReport::sup_between(double lo, double hi) const {
  double out = 0.0;
  for (const GrowthSample& sample : samples) {
    if (sample.x >= lo && sample.x <= hi) out = std::max(out, sample.ratio);
  }
  return out;
}

GrowthReport growth_scan(const TotientTable& table, const ValueWithBound& c_f, std::uint64_t X,
                         std::uint64_t samples, std::uint64_t x_min) {
  if (X > table.size()) {
    throw Error(ErrorCode::XBeyondTable, "X = " + std::to_string(X) + " beyond table size");
  }
  x_min = std::max<std::uint64_t>(x_min, 1);
  GrowthReport report;
  if (X < x_min || samples == 0) return report;

  const auto cumulative = table.cumulative();
  const int degree = static_cast<int>(table.coefficients().spec().degree());
  const std::uint64_t count = X - x_min + 1;
  auto visit = [&](std::uint64_t x) {
    const double xd = static_cast<double>(x);
    const double e = std::abs(cumulative[x] - c_f.value * xd * xd);
    const double ratio = e / (xd * std::pow(std::log(2.0 * xd), degree));
    report.samples.push_back({xd, ratio});
    if (ratio > report.sup) {
      report.sup = ratio;
      report.argmax = xd;
    }
  };
  if (samples >= count) {
    for (std::uint64_t x = x_min; x <= X; ++x) visit(x);
  } else if (samples == 1) {
    visit(X);
  } else {
    std::uint64_t last = 0;
    for (std::uint64_t i = 0; i < samples; ++i) {
      const std::uint64_t x = x_min + (i * (X - x_min)) / (samples - 1);
      if (x != last) visit(x);
      last = x;
    }
  }
  return report;
}

}  // namespace aet
