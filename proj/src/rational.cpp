#include "odolin/rational.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "odolin/error.hpp"

namespace odolin {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::WindowMismatch: return "WindowMismatch";
    case ErrorCode::WindowTooSmall: return "WindowTooSmall";
    case ErrorCode::InvalidFamily: return "InvalidFamily";
    case ErrorCode::InvalidShift: return "InvalidShift";
    case ErrorCode::SizeLimit: return "SizeLimit";
    case ErrorCode::KTooSmall: return "KTooSmall";
    case ErrorCode::HorizonExhausted: return "HorizonExhausted";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::EpsilonTooLarge: return "EpsilonTooLarge";
    case ErrorCode::InconsistentDeclarations: return "InconsistentDeclarations";
    case ErrorCode::NotContinuous: return "NotContinuous";
    case ErrorCode::Config: return "Config";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

}  // namespace

Integer parse_integer(std::string_view text) {
  if (!all_digits(text))
    throw Error(ErrorCode::Config,
                "expected a non-negative integer, got '" + std::string(text) + "'");
  return Integer(std::string(text), 10);
}

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1")
                                                         : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den))
    throw Error(ErrorCode::Config,
                "expected an exact rational 'p/q', got '" + std::string(text) + "'");
  Integer d(std::string(den), 10);
  if (d == 0)
    throw Error(ErrorCode::Config, "zero denominator in '" + std::string(text) + "'");
  Rational q(Integer(std::string(num), 10), d);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

std::uint64_t to_u64(const Integer& z) {
  if (!fits_u64(z))
    throw Error(ErrorCode::OutOfRange, "integer does not fit in 64 bits: " + z.get_str());
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, z.get_mpz_t());
  return out;
}

namespace {

// log10 of a positive integer, valid far beyond double range.
double log10_of(const Integer& z) {
  long exp2 = 0;
  double mant = mpz_get_d_2exp(&exp2, z.get_mpz_t());
  return std::log10(mant) + static_cast<double>(exp2) * std::log10(2.0);
}

std::string render_log10(double lg, bool negative, int digits) {
  if (!std::isfinite(lg)) return negative ? "-inf" : "inf";
  double exponent = std::floor(lg);
  double mant = std::pow(10.0, lg - exponent);
  if (mant >= 10.0) {
    mant /= 10.0;
    exponent += 1;
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s%.*fe%+.0f", negative ? "-" : "", digits - 1,
                mant, exponent);
  return buf;
}

}  // namespace

std::string to_decimal(const Rational& q, int digits) {
  if (sgn(q) == 0) return "0";
  Integer num = abs(q.get_num());
  double lg = log10_of(num) - log10_of(q.get_den());
  if (lg > -300 && lg < 300) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, q.get_d());
    return buf;
  }
  return render_log10(lg, sgn(q) < 0, digits);
}

std::string root_decimal(const Rational& q, const Rational& p, int digits) {
  if (sgn(q) <= 0) return to_decimal(q, digits);
  double lg = (log10_of(q.get_num()) - log10_of(q.get_den())) / p.get_d();
  if (lg > -300 && lg < 300) {
    double lq = lg * p.get_d();
    long double value = (lq > -300 && lq < 300)
                            ? std::pow(static_cast<long double>(q.get_d()),
                                       1.0L / static_cast<long double>(p.get_d()))
                            : std::pow(10.0L, static_cast<long double>(lg));
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*Lg", digits, value);
    return buf;
  }
  return render_log10(lg, false, digits);
}

}  // namespace odolin
