#include "aet/constants.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "aet/coefficients.hpp"
#include "aet/error.hpp"
#include "aet/primes.hpp"

namespace aet {
namespace {

// B_2, B_4, ..., B_20
constexpr std::array<double, 10> kBernoulli = {
    1.0 / 6.0,      -1.0 / 30.0,        1.0 / 42.0,  -1.0 / 30.0,         5.0 / 66.0,
    -691.0 / 2730.0, 7.0 / 6.0,         -3617.0 / 510.0, 43867.0 / 798.0, -174611.0 / 330.0};

constexpr std::uint64_t kMaxHeadTerms = 100'000'000;

struct TailEstimate {
  double value = 0.0;  // f(K)/2 - sum_j B_2j/(2j)! f^(2j-1)(K)
  double bound = 0.0;
};

// Euler-Maclaurin correction for sum_{k>=K} (kq + a)^{-s}, without the
// integral term. Remainder after ten corrections is at most
// 2 zeta(20)/(2 pi)^20 |f^(19)(K)|.
TailEstimate em_correction(double s, double q, double a, double K) {
  const double base = K * q + a;
  TailEstimate out;
  out.value = 0.5 * std::pow(base, -s);
  // derivative of order m: (-1)^m (s)_m q^m base^{-s-m}
  double rising = 1.0;  // (s)_m
  double factorial = 1.0;
  int m = 0;
  auto derivative_magnitude = [&](int order) {
    while (m < order) {
      rising *= s + m;
      ++m;
    }
    return rising * std::pow(q, order) * std::pow(base, -s - order);
  };
  for (std::size_t j = 1; j <= kBernoulli.size(); ++j) {
    const int order = static_cast<int>(2 * j - 1);
    factorial *= static_cast<double>((2 * j - 1) * (2 * j));
    const double deriv = -derivative_magnitude(order);  // odd order: negative sign
    out.value -= kBernoulli[j - 1] / factorial * deriv;
  }
  const double two_pi_20 = std::pow(2.0 * M_PI, 20);
  out.bound = 2.000002 / two_pi_20 * derivative_magnitude(19);
  return out;
}

}  // namespace

ValueWithBound c_constant(const EulerProductSpec& spec, std::uint64_t prime_cutoff) {
  if (prime_cutoff < 2) throw Error(ErrorCode::CutoffTooSmall, "prime cutoff must be >= 2");

  const auto primes = primes_up_to(prime_cutoff);
  Complex product{1.0, 0.0};
  for (std::uint32_t p : primes) {
    const double p2 = static_cast<double>(p) * static_cast<double>(p);
    product *= Complex{1.0, 0.0} - detail::gamma_at_prime(spec, p) / p2;
  }

  ValueWithBound out;
  out.value = 0.5 * product;
  const double half_size = 0.5 * std::abs(product);
  const auto limit = spec.support_limit();
  const bool tail_is_trivial = limit && *limit <= prime_cutoff;
  if (!tail_is_trivial) {
    // |prod_{p>P}(1 + u_p) - 1| <= exp(sum |u_p|) - 1 with |u_p| <= G/p^2
    out.bound = half_size * std::expm1(spec.gamma_bound() / static_cast<double>(prime_cutoff));
  }
  if (limit == std::uint64_t{1}) {
    out.bound = 0.0;  // every gamma(p) vanishes, the product is exactly 1
  } else {
    out.bound += rounding_slack(half_size, 4 * primes.size());
  }
  out.kind = BoundKind::rigorous;
  return out;
}

ValueWithBound l_value(const CharacterSpec& chi, double s, double precision) {
  if (chi.is_principal) throw Error(ErrorCode::PrincipalCharacter, "L(s, chi_0) has a pole at 1");
  if (!(s > 0.0)) throw Error(ErrorCode::SOutOfRange, "need s > 0");

  const std::uint64_t q = chi.modulus;
  std::uint64_t K = 8;
  auto tail_bound = [&](std::uint64_t k) {
    double total = 0.0;
    for (std::uint64_t a = 1; a <= q; ++a) {
      if (std::abs(chi(a)) == 0.0) continue;
      total += em_correction(s, static_cast<double>(q), static_cast<double>(a),
                             static_cast<double>(k))
                   .bound;
    }
    return total;
  };
  while (tail_bound(K) > 0.5 * precision) {
    K *= 2;
    if (K * q > kMaxHeadTerms) {
      throw Error(ErrorCode::PrecisionUnreachable, "head sum would exceed 1e8 terms");
    }
  }

  long double head_re = 0.0L, head_im = 0.0L, head_magnitude = 0.0L;
  for (std::uint64_t n = 1; n <= K * q; ++n) {
    const Complex v = chi(n);
    if (v == Complex{}) continue;
    const long double term = std::pow(static_cast<long double>(n), static_cast<long double>(-s));
    head_re += v.real() * term;
    head_im += v.imag() * term;
    head_magnitude += term;
  }
  const Complex head(static_cast<double>(head_re), static_cast<double>(head_im));
  constexpr long double kLongEps = std::numeric_limits<long double>::epsilon();
  const double head_slack =
      static_cast<double>(4.0L * kLongEps * head_magnitude * static_cast<long double>(K * q + 1));
  double magnitude = std::abs(head);

  Complex tail{};
  double bound = 0.0;
  const double qd = static_cast<double>(q);
  for (std::uint64_t a = 1; a <= q; ++a) {
    const Complex v = chi(a);
    if (v == Complex{}) continue;
    const double ad = static_cast<double>(a);
    const double base = static_cast<double>(K) * qd + ad;
    // Integral terms only make sense summed against chi, whose period sum is 0.
    const double integral =
        s == 1.0 ? -std::log(base) / qd : std::pow(base, 1.0 - s) / (qd * (s - 1.0));
    const TailEstimate est = em_correction(s, qd, ad, static_cast<double>(K));
    tail += v * (integral + est.value);
    bound += est.bound;
    magnitude += std::abs(integral) + std::abs(est.value);
  }

  ValueWithBound out;
  out.value = head + tail;
  out.bound = bound + head_slack + rounding_slack(magnitude, 4 * q + 2);
  if (out.bound > precision) {
    throw Error(ErrorCode::PrecisionUnreachable, "rounding dominates the requested precision");
  }
  return out;
}

ValueWithBound zeta_value(double s, double precision) {
  if (!(s > 1.0)) throw Error(ErrorCode::SOutOfRange, "zeta_value needs s > 1");
  std::uint64_t N = 16;
  while (em_correction(s, 1.0, 0.0, static_cast<double>(N)).bound > 0.5 * precision) {
    N *= 2;
    if (N > kMaxHeadTerms) throw Error(ErrorCode::PrecisionUnreachable, "zeta head too long");
  }
  double head = 0.0;
  double magnitude = 0.0;
  for (std::uint64_t n = N - 1; n >= 1; --n) {
    head += std::pow(static_cast<double>(n), -s);
  }
  magnitude = head;
  const double Nd = static_cast<double>(N);
  const TailEstimate est = em_correction(s, 1.0, 0.0, Nd);
  const double integral = std::pow(Nd, 1.0 - s) / (s - 1.0);
  ValueWithBound out;
  out.value = head + integral + est.value;
  out.bound = est.bound + rounding_slack(magnitude + integral, N + 2);
  return out;
}

ValueWithBound a1_constant(const EulerProductSpec& spec, A1Mode mode, std::uint64_t cutoff) {
  if (mode == A1Mode::closed_form) {
    switch (spec.kind()) {
      case ProductKind::zeta:
        return {Complex{}, 0.0, BoundKind::rigorous};
      case ProductKind::dirichlet: {
        const CharacterSpec& chi = spec.character();
        // sum mu(n) chi_0(n)/n = 0 for a principal character
        if (chi.is_principal) return {Complex{}, 0.0, BoundKind::rigorous};
        const ValueWithBound L = l_value(chi, 1.0);
        const double size = std::abs(L.value);
        ValueWithBound out;
        out.value = Complex{1.0, 0.0} / L.value;
        out.bound = L.bound / (size * (size - L.bound)) + rounding_slack(1.0 / size, 2);
        return out;
      }
      case ProductKind::custom:
        throw Error(ErrorCode::ModeUnavailable, "no closed form for A_1 of a custom product");
    }
  }

  if (cutoff < 10) throw Error(ErrorCode::CutoffTooSmall, "partial sums need cutoff >= 10");
  const CoefficientTable table = sieve_alpha(spec, cutoff);
  const auto alpha = table.alpha();
  std::vector<Complex> partial(cutoff + 1);
  Complex sum{};
  double magnitude = 0.0;
  for (std::uint64_t n = 1; n <= cutoff; ++n) {
    const Complex term = alpha[n] / static_cast<double>(n);
    sum += term;
    magnitude += std::abs(term);
    partial[n] = sum;
  }
  double spread = 0.0;
  for (std::uint64_t n = cutoff / 10; n <= cutoff; ++n) {
    spread = std::max(spread, std::abs(partial[n] - sum));
  }
  return {sum, spread + rounding_slack(magnitude, cutoff), BoundKind::heuristic};
}

Constants<Complex> compute_constants(const EulerProductSpec& spec,
                                     const ConstantsOptions& options) {
  const ValueWithBound c = c_constant(spec, options.prime_cutoff);
  const A1Mode mode =
      spec.kind() == ProductKind::custom ? A1Mode::partial_sums : options.a1_mode;
  const ValueWithBound a1 = a1_constant(spec, mode, options.a1_cutoff);
  Constants<Complex> out;
  out.a1 = a1.value;
  out.c_f = c.value;
  out.a1_bound = a1.bound;
  out.c_bound = c.bound;
  out.kind = weakest(a1.kind, c.kind);
  return out;
}

Constants<Rational> to_exact(const Constants<Complex>& constants) {
  if (constants.a1.imag() != 0.0 || constants.c_f.imag() != 0.0) {
    throw Error(ErrorCode::ModeUnavailable, "constants are not real");
  }
  Constants<Rational> out;
  out.a1 = to_rational(constants.a1.real());
  out.c_f = to_rational(constants.c_f.real());
  out.a1_bound = constants.a1_bound;
  out.c_bound = constants.c_bound;
  out.kind = constants.kind;
  return out;
}

template <>
Constants<Complex> constants_as<Complex>(const Constants<Complex>& constants) {
  return constants;
}

template <>
Constants<Rational> constants_as<Rational>(const Constants<Complex>& constants) {
  return to_exact(constants);
}

}  // namespace aet
