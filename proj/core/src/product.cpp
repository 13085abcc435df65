#include "aet/product.hpp"

#include <cmath>
#include <string>

#include "aet/error.hpp"
#include "aet/primes.hpp"

namespace aet {

EulerProductSpec EulerProductSpec::zeta() {
  EulerProductSpec spec;
  spec.kind_ = ProductKind::zeta;
  spec.degree_ = 1;
  return spec;
}

EulerProductSpec EulerProductSpec::dirichlet(CharacterSpec chi) {
  EulerProductSpec spec;
  spec.kind_ = ProductKind::dirichlet;
  spec.degree_ = 1;
  spec.chi_ = std::move(chi);
  return spec;
}

EulerProductSpec EulerProductSpec::custom(unsigned degree, RootTable roots, DefaultRule rule) {
  if (degree == 0) throw Error(ErrorCode::InvalidProduct, "degree must be positive");
  bool minimal = rule == DefaultRule::one;
  for (const auto& [p, alphas] : roots) {
    if (!is_prime(p)) throw Error(ErrorCode::InvalidProduct, std::to_string(p) + " is not prime");
    if (alphas.size() != degree) {
      throw Error(ErrorCode::InvalidProduct, "prime " + std::to_string(p) + " has " +
                                                 std::to_string(alphas.size()) +
                                                 " roots, degree is " + std::to_string(degree));
    }
    Complex product{1.0, 0.0};
    for (const Complex& a : alphas) {
      if (!std::isfinite(a.real()) || !std::isfinite(a.imag()) || std::abs(a) > 1.0 + 1e-12) {
        throw Error(ErrorCode::InvalidProduct,
                    "|alpha_j(" + std::to_string(p) + ")| exceeds 1");
      }
      product *= a;
    }
    if (product != Complex{}) minimal = true;
  }
  if (!minimal) {
    throw Error(ErrorCode::InvalidProduct,
                "degree " + std::to_string(degree) +
                    " is not minimal: no prime has all inverse roots nonzero");
  }
  EulerProductSpec spec;
  spec.kind_ = ProductKind::custom;
  spec.degree_ = degree;
  spec.roots_ = std::move(roots);
  spec.default_rule_ = rule;
  return spec;
}

EulerProductSpec EulerProductSpec::trivial() {
  EulerProductSpec spec;
  spec.kind_ = ProductKind::custom;
  spec.degree_ = 1;
  spec.default_rule_ = DefaultRule::zero;
  return spec;
}

const CharacterSpec& EulerProductSpec::character() const {
  if (!chi_) throw Error(ErrorCode::InvalidProduct, "product has no Dirichlet character");
  return *chi_;
}

std::vector<Complex> EulerProductSpec::roots_at(std::uint64_t p) const {
  switch (kind_) {
    case ProductKind::zeta:
      return {Complex{1.0, 0.0}};
    case ProductKind::dirichlet:
      return {(*chi_)(p)};
    case ProductKind::custom:
      break;
  }
  if (auto it = roots_.find(p); it != roots_.end()) return it->second;
  const double fill = default_rule_ == DefaultRule::one ? 1.0 : 0.0;
  return std::vector<Complex>(degree_, Complex{fill, 0.0});
}

bool EulerProductSpec::supports_exact() const {
  switch (kind_) {
    case ProductKind::zeta:
      return true;
    case ProductKind::dirichlet:
      for (std::uint64_t a = 0; a < chi_->modulus; ++a) {
        if (!chi_->integer_value(a)) return false;
      }
      return true;
    case ProductKind::custom:
      for (const auto& [p, alphas] : roots_) {
        for (const Complex& a : alphas) {
          if (a.imag() != 0.0) return false;
        }
      }
      return true;
  }
  return false;
}

double EulerProductSpec::gamma_bound() const {
  return static_cast<double>(degree_) * std::ldexp(1.0, static_cast<int>(degree_) - 1);
}

std::optional<std::uint64_t> EulerProductSpec::support_limit() const {
  if (kind_ != ProductKind::custom || default_rule_ == DefaultRule::one) return std::nullopt;
  std::uint64_t limit = 1;
  for (const auto& [p, alphas] : roots_) {
    for (const Complex& a : alphas) {
      if (a != Complex{}) limit = p;
    }
  }
  return limit;
}

namespace detail {

// gamma(p) = sum_{k>=1} (-1)^{k+1} e_k(alpha) p^{1-k}, e_k elementary symmetric.
template <class T>
T gamma_from_roots(const std::vector<T>& roots, const T& p) {
  std::vector<T> e(roots.size() + 1, T(0));
  e[0] = T(1);
  for (const T& a : roots) {
    for (std::size_t k = roots.size(); k >= 1; --k) e[k] += e[k - 1] * a;
  }
  T out(0);
  T p_power(1);  // p^{k-1}
  for (std::size_t k = 1; k < e.size(); ++k) {
    const T term = e[k] / p_power;
    if (k % 2 == 1) {
      out += term;
    } else {
      out -= term;
    }
    p_power *= p;
  }
  return out;
}

Complex gamma_at_prime(const EulerProductSpec& spec, std::uint64_t p) {
  switch (spec.kind()) {
    case ProductKind::zeta:
      return {1.0, 0.0};
    case ProductKind::dirichlet:
      return spec.character()(p);
    case ProductKind::custom:
      break;
  }
  return gamma_from_roots<Complex>(spec.roots_at(p), Complex(static_cast<double>(p), 0.0));
}

Rational gamma_exact_at_prime(const EulerProductSpec& spec, std::uint64_t p) {
  if (!spec.supports_exact()) {
    throw Error(ErrorCode::ModeUnavailable, "product has non-real local roots");
  }
  switch (spec.kind()) {
    case ProductKind::zeta:
      return Rational(1);
    case ProductKind::dirichlet:
      return Rational(*spec.character().integer_value(p));
    case ProductKind::custom:
      break;
  }
  std::vector<Rational> roots;
  for (const Complex& a : spec.roots_at(p)) roots.push_back(to_rational(a.real()));
  return gamma_from_roots<Rational>(roots, Rational(static_cast<unsigned long>(p)));
}

}  // namespace detail

namespace {
void require_prime(std::uint64_t p) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
}
}  // namespace

Complex local_factor_at_one(const EulerProductSpec& spec, std::uint64_t p) {
  require_prime(p);
  Complex inverse{1.0, 0.0};
  for (const Complex& a : spec.roots_at(p)) inverse *= Complex{1.0, 0.0} - a / static_cast<double>(p);
  return Complex{1.0, 0.0} / inverse;
}

Complex gamma(const EulerProductSpec& spec, std::uint64_t p) {
  require_prime(p);
  return detail::gamma_at_prime(spec, p);
}

Rational gamma_exact(const EulerProductSpec& spec, std::uint64_t p) {
  require_prime(p);
  return detail::gamma_exact_at_prime(spec, p);
}

}  // namespace aet
