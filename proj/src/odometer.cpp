#include "odolin/odometer.hpp"

#include <algorithm>
#include <sstream>

#include "odolin/error.hpp"

namespace odolin {

BaseSeq BaseSeq::constant(std::uint64_t c) {
  if (c < 2) throw Error(ErrorCode::InvalidArgument, "base digit sizes must be >= 2");
  BaseSeq b;
  b.rule_ = Rule::Constant;
  b.prefix_ = {c};
  return b;
}

BaseSeq BaseSeq::periodic(std::vector<std::uint64_t> prefix,
                          std::vector<std::uint64_t> period) {
  if (period.empty()) period = prefix;
  if (period.empty())
    throw Error(ErrorCode::InvalidArgument, "periodic base needs at least one value");
  auto bad = [](std::uint64_t a) { return a < 2; };
  if (std::any_of(prefix.begin(), prefix.end(), bad) ||
      std::any_of(period.begin(), period.end(), bad))
    throw Error(ErrorCode::InvalidArgument, "base digit sizes must be >= 2");
  BaseSeq b;
  b.rule_ = Rule::Periodic;
  b.prefix_ = std::move(prefix);
  b.period_ = std::move(period);
  return b;
}

BaseSeq BaseSeq::power(int offset) {
  if (offset < 1) throw Error(ErrorCode::InvalidArgument, "power base needs offset >= 1");
  BaseSeq b;
  b.rule_ = Rule::Power;
  b.offset_ = offset;
  return b;
}

std::uint64_t BaseSeq::alpha(std::size_t i) const {
  switch (rule_) {
    case Rule::Constant:
      return prefix_.front();
    case Rule::Periodic:
      if (i < prefix_.size()) return prefix_[i];
      return period_[(i - prefix_.size()) % period_.size()];
    case Rule::Power: {
      std::size_t e = i + static_cast<std::size_t>(offset_);
      if (e > 62)
        throw Error(ErrorCode::OutOfRange,
                    "alpha(" + std::to_string(i) + ") = 2^" + std::to_string(e) +
                        " exceeds the supported digit size");
      return std::uint64_t{1} << e;
    }
  }
  return 0;
}

Integer BaseSeq::beta(std::size_t i) const {
  return i == 0 ? Integer(1) : range_product(0, i - 1);
}

Integer BaseSeq::range_product(std::size_t i, std::size_t j) const {
  if (j < i) return 1;
  Integer out;
  if (rule_ == Rule::Constant) {
    mpz_ui_pow_ui(out.get_mpz_t(), prefix_.front(), j - i + 1);
    return out;
  }
  if (rule_ == Rule::Power) {
    // sum of exponents (s + offset) for s in [i..j]
    std::size_t n = j - i + 1;
    std::size_t e = (i + j) * n / 2 + n * static_cast<std::size_t>(offset_);
    return pow2(static_cast<unsigned>(e));
  }
  out = 1;
  for (std::size_t s = i; s <= j; ++s) out *= static_cast<unsigned long>(alpha(s));
  return out;
}

std::optional<std::uint64_t> BaseSeq::liminf() const {
  switch (rule_) {
    case Rule::Constant: return prefix_.front();
    case Rule::Periodic: return *std::min_element(period_.begin(), period_.end());
    case Rule::Power: return std::nullopt;
  }
  return std::nullopt;
}

std::string BaseSeq::describe() const {
  std::ostringstream os;
  switch (rule_) {
    case Rule::Constant:
      os << "constant " << prefix_.front();
      break;
    case Rule::Periodic:
      os << "prefix (";
      for (std::size_t i = 0; i < prefix_.size(); ++i) os << (i ? "," : "") << prefix_[i];
      os << ") then periodic (";
      for (std::size_t i = 0; i < period_.size(); ++i) os << (i ? "," : "") << period_[i];
      os << ")";
      break;
    case Rule::Power:
      os << "alpha_n = 2^(n+" << offset_ << ")";
      break;
  }
  return os.str();
}

MixedRadixInt::MixedRadixInt(std::vector<std::uint64_t> digits, const BaseSeq& base)
    : digits_(std::move(digits)) {
  if (digits_.empty()) digits_.push_back(0);
  for (std::size_t i = 0; i < digits_.size(); ++i)
    if (digits_[i] >= base.alpha(i))
      throw Error(ErrorCode::OutOfRange, "digit " + std::to_string(i) + " = " +
                                             std::to_string(digits_[i]) +
                                             " not below alpha = " +
                                             std::to_string(base.alpha(i)));
}

MixedRadixInt encode(const Integer& k, std::size_t window, const BaseSeq& base) {
  if (sgn(k) < 0) throw Error(ErrorCode::OutOfRange, "negative integer");
  std::vector<std::uint64_t> digits(window + 1);
  Integer rest = k;
  Integer rem;
  for (std::size_t i = 0; i <= window; ++i) {
    std::uint64_t a = base.alpha(i);
    mpz_fdiv_qr_ui(rest.get_mpz_t(), rem.get_mpz_t(), rest.get_mpz_t(), a);
    digits[i] = rem.get_ui();
  }
  if (rest != 0)
    throw Error(ErrorCode::OutOfRange, k.get_str() + " does not fit in window [0.." +
                                           std::to_string(window) + "]");
  return MixedRadixInt(std::move(digits), base);
}

MixedRadixInt encode_min(const Integer& k, const BaseSeq& base) {
  if (sgn(k) < 0) throw Error(ErrorCode::OutOfRange, "negative integer");
  std::vector<std::uint64_t> digits;
  Integer rest = k;
  Integer rem;
  for (std::size_t i = 0; rest != 0 || digits.empty(); ++i) {
    mpz_fdiv_qr_ui(rest.get_mpz_t(), rem.get_mpz_t(), rest.get_mpz_t(), base.alpha(i));
    digits.push_back(rem.get_ui());
  }
  return MixedRadixInt(std::move(digits), base);
}

Integer decode(const MixedRadixInt& x, const BaseSeq& base) {
  // Horner from the top digit down.
  Integer out = 0;
  for (std::size_t i = x.window() + 1; i-- > 0;) {
    out *= static_cast<unsigned long>(base.alpha(i));
    out += static_cast<unsigned long>(x[i]);
  }
  return out;
}

AddResult add_with_carry(const MixedRadixInt& x, const MixedRadixInt& y,
                         const BaseSeq& base) {
  if (x.window() != y.window())
    throw Error(ErrorCode::WindowMismatch, "operands have windows " +
                                               std::to_string(x.window()) + " and " +
                                               std::to_string(y.window()));
  std::size_t n = x.window() + 1;
  std::vector<std::uint64_t> z(n);
  std::vector<std::uint8_t> eps(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t a = base.alpha(i);
    // x_i + y_i + eps_i <= 2a - 1 fits: a <= 2^62
    std::uint64_t s = x[i] + y[i] + eps[i];
    eps[i + 1] = s >= a ? 1 : 0;
    z[i] = s >= a ? s - a : s;
  }
  bool carry_out = eps[n] != 0;
  return AddResult{MixedRadixInt(std::move(z), base), carry_out, std::move(eps)};
}

bool carry_at(const MixedRadixInt& k, const MixedRadixInt& x, std::size_t n,
              const BaseSeq& base) {
  if (k.window() != x.window())
    throw Error(ErrorCode::WindowMismatch, "carry_at operands differ in window");
  if (n > x.window() + 1)
    throw Error(ErrorCode::WindowTooSmall, "position beyond window + 1");
  std::uint64_t eps = 0;
  for (std::size_t i = 0; i < n; ++i) eps = (x[i] + k[i] + eps >= base.alpha(i)) ? 1 : 0;
  return eps != 0;
}

}  // namespace odolin
