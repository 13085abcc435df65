#include "aet/numeric.hpp"

#include <cstdio>
#include <string>

#include "aet/error.hpp"

namespace aet {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::BadModulus: return "BadModulus";
    case ErrorCode::WrongSupport: return "WrongSupport";
    case ErrorCode::NonMultiplicative: return "NonMultiplicative";
    case ErrorCode::InvalidProduct: return "InvalidProduct";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::CutoffTooSmall: return "CutoffTooSmall";
    case ErrorCode::ModeUnavailable: return "ModeUnavailable";
    case ErrorCode::PrincipalCharacter: return "PrincipalCharacter";
    case ErrorCode::PrecisionUnreachable: return "PrecisionUnreachable";
    case ErrorCode::OutOfMemory: return "OutOfMemory";
    case ErrorCode::XBeyondTable: return "XBeyondTable";
    case ErrorCode::SOutOfRange: return "SOutOfRange";
    case ErrorCode::MBeyondTable: return "MBeyondTable";
    case ErrorCode::MSmallerThanX: return "MSmallerThanX";
    case ErrorCode::NonPositiveX: return "NonPositiveX";
    case ErrorCode::XBelowN: return "XBelowN";
    case ErrorCode::XBelowOne: return "XBelowOne";
    case ErrorCode::NotIntegrableNearZero: return "NotIntegrableNearZero";
    case ErrorCode::XBeyondGrid: return "XBeyondGrid";
    case ErrorCode::AnchorOutOfRange: return "AnchorOutOfRange";
    case ErrorCode::NotHomogeneous: return "NotHomogeneous";
    case ErrorCode::BadGrid: return "BadGrid";
    case ErrorCode::UsageError: return "UsageError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::CacheMismatch: return "CacheMismatch";
  }
  return "Unknown";
}

std::string_view to_string(NumericMode mode) {
  return mode == NumericMode::exact ? "exact" : "float";
}

std::string_view to_string(BoundKind kind) {
  return kind == BoundKind::rigorous ? "rigorous" : "heuristic";
}

std::int64_t Field<Rational>::floor(const Rational& x) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q.get_si();
}

std::int64_t Field<Rational>::floor_div(const Rational& x, std::uint64_t n) {
  mpz_class den = x.get_den() * n;
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), den.get_mpz_t());
  return q.get_si();
}

Rational Field<Rational>::frac_div(const Rational& x, std::uint64_t n) {
  mpz_class den = x.get_den() * n;
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_num_mpz_t(), den.get_mpz_t());
  Rational out(r, den);
  out.canonicalize();
  return out;
}

bool Field<Rational>::divides(std::uint64_t n, const Rational& x) {
  return x.get_den() == 1 && mpz_divisible_ui_p(x.get_num_mpz_t(), n) != 0;
}

Rational to_rational(double x) {
  if (!std::isfinite(x)) throw Error(ErrorCode::UsageError, "non-finite value has no rational form");
  Rational q(x);  // exact: mpq_set_d
  q.canonicalize();
  return q;
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto fail = [&]() -> Rational {
    throw Error(ErrorCode::UsageError, "not a number: '" + s + "'");
  };
  if (s.empty()) return fail();

  if (auto slash = s.find('/'); slash != std::string::npos) {
    mpz_class num, den;
    if (num.set_str(s.substr(0, slash), 10) != 0 || den.set_str(s.substr(slash + 1), 10) != 0 ||
        den == 0)
      return fail();
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  std::size_t pos = 0;
  bool negative = false;
  if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
  mpz_class digits = 0;
  long scale = 0;
  bool seen_digit = false, seen_point = false;
  for (; pos < s.size(); ++pos) {
    const char c = s[pos];
    if (c >= '0' && c <= '9') {
      digits = digits * 10 + (c - '0');
      if (seen_point) --scale;
      seen_digit = true;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) return fail();
  if (pos < s.size()) {
    if (s[pos] != 'e' && s[pos] != 'E') return fail();
    try {
      std::size_t used = 0;
      const long exponent = std::stol(s.substr(pos + 1), &used);
      if (used != s.size() - pos - 1) return fail();
      scale += exponent;
    } catch (const std::exception&) {
      return fail();
    }
  }
  mpz_class ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  Rational q = scale < 0 ? Rational(digits, ten_pow) : Rational(digits * ten_pow, 1);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

std::string format_double(double x) {
  if (x == 0.0) return "0";  // also folds -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_complex(const Complex& z) {
  if (z.imag() == 0.0) return format_double(z.real());
  char buf[80];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real() == 0.0 ? 0.0 : z.real(), z.imag());
  return buf;
}

std::string format_rational(const Rational& q) { return q.get_str(); }

}  // namespace aet
