#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "odolin/rational.hpp"

namespace odolin {

/// Digit sizes alpha(i) >= 2 of the odometer, given by a rule so that any
/// number of coordinates is available.
class BaseSeq {
 public:
  enum class Rule { Constant, Periodic, Power };

  static BaseSeq constant(std::uint64_t c);
  /// Explicit prefix followed by a periodic tail. An empty period repeats
  /// the prefix itself.
  static BaseSeq periodic(std::vector<std::uint64_t> prefix,
                          std::vector<std::uint64_t> period = {});
  /// alpha(i) = 2^(i + offset), offset >= 1.
  static BaseSeq power(int offset);

  Rule rule() const noexcept { return rule_; }
  std::uint64_t alpha(std::size_t i) const;
  /// beta(i) = alpha(0) * ... * alpha(i-1); beta(0) = 1.
  Integer beta(std::size_t i) const;
  /// alpha(i) * ... * alpha(j); 1 when j < i.
  Integer range_product(std::size_t i, std::size_t j) const;

  bool bounded() const noexcept { return rule_ != Rule::Power; }
  /// liminf of alpha, finite only for constant and periodic rules.
  std::optional<std::uint64_t> liminf() const;
  std::string describe() const;

  const std::vector<std::uint64_t>& prefix() const noexcept { return prefix_; }
  const std::vector<std::uint64_t>& period() const noexcept { return period_; }
  int offset() const noexcept { return offset_; }

  friend bool operator==(const BaseSeq&, const BaseSeq&) = default;

 private:
  BaseSeq() = default;

  Rule rule_ = Rule::Constant;
  std::vector<std::uint64_t> prefix_;
  std::vector<std::uint64_t> period_;
  int offset_ = 0;
};

/// Digits d_0..d_J of k = d_0 + sum d_i beta(i) on the window [0..J].
class MixedRadixInt {
 public:
  /// Validates 0 <= d_i < alpha(i); throws OutOfRange otherwise.
  MixedRadixInt(std::vector<std::uint64_t> digits, const BaseSeq& base);

  std::size_t window() const noexcept { return digits_.size() - 1; }
  std::uint64_t operator[](std::size_t i) const { return digits_[i]; }
  const std::vector<std::uint64_t>& digits() const noexcept { return digits_; }

  friend bool operator==(const MixedRadixInt&, const MixedRadixInt&) = default;

 private:
  std::vector<std::uint64_t> digits_;
};

/// Mixed-radix representation of k on [0..J]. Throws OutOfRange when
/// k >= beta(J+1); the caller has to widen the window.
MixedRadixInt encode(const Integer& k, std::size_t window, const BaseSeq& base);

/// Digits of k on the smallest window holding it (window 0 for k = 0).
MixedRadixInt encode_min(const Integer& k, const BaseSeq& base);

Integer decode(const MixedRadixInt& x, const BaseSeq& base);

struct AddResult {
  MixedRadixInt sum;
  bool carry_out;
  /// eps_0 .. eps_{J+1}; eps_0 = 0 and eps_{J+1} = carry_out.
  std::vector<std::uint8_t> carries;
};

/// Digitwise addition with carry to the right. The carry out of the window
/// is returned, not dropped. Throws WindowMismatch.
AddResult add_with_carry(const MixedRadixInt& x, const MixedRadixInt& y,
                         const BaseSeq& base);

/// eps_n of x + k, for 0 <= n <= J+1.
bool carry_at(const MixedRadixInt& k, const MixedRadixInt& x, std::size_t n,
              const BaseSeq& base);

}  // namespace odolin
