#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "odolin/odometer.hpp"
#include "odolin/rational.hpp"

namespace odolin {

/// Probability vector on A_i = {0..alpha-1}, stored sparsely: a handful of
/// digits carry individual masses and every other digit shares `rest`. This
/// keeps coordinates with alpha in the billions cheap.
class CoordMeasure {
 public:
  /// Validates positivity and that the masses sum to exactly 1. Throws
  /// InvalidFamily otherwise.
  CoordMeasure(std::uint64_t alpha, std::map<std::uint64_t, Rational> special,
               Rational rest);

  static CoordMeasure uniform(std::uint64_t alpha);
  static CoordMeasure dense(const std::vector<Rational>& masses);

  std::uint64_t alpha() const noexcept { return alpha_; }
  Rational mass(std::uint64_t digit) const;
  /// Sum of masses of digits in [lo, hi).
  Rational mass_of_range(std::uint64_t lo, std::uint64_t hi) const;
  std::vector<Rational> dense_masses() const;

  const Rational& eta() const noexcept { return eta_; }
  const Rational& delta() const noexcept { return delta_; }
  /// Smallest digit attaining eta.
  std::uint64_t argmax() const noexcept { return argmax_; }
  /// Heaviest digit other than argmax(); smallest on ties.
  std::uint64_t second_argmax() const;

  /// mu(j) / mu(j-1) with cyclic predecessor.
  Rational lambda(std::uint64_t j) const;
  /// Minimum of lambda over A_i and the smallest digit attaining it.
  std::pair<Rational, std::uint64_t> min_lambda() const;

  const std::map<std::uint64_t, Rational>& special() const noexcept { return special_; }
  const Rational& rest() const noexcept { return rest_; }
  std::uint64_t rest_count() const noexcept { return alpha_ - special_.size(); }
  bool is_special(std::uint64_t d) const { return special_.count(d) != 0; }
  /// Smallest digit >= from that is not special, or alpha if none.
  std::uint64_t next_rest_digit(std::uint64_t from) const;

 private:
  std::uint64_t alpha_;
  std::map<std::uint64_t, Rational> special_;
  Rational rest_;
  Rational eta_;
  Rational delta_;
  std::uint64_t argmax_ = 0;
};

enum class FamilyKind { Uniform, Thm32, Ex33, Thm36, Thm37, Custom };

const char* family_kind_name(FamilyKind kind) noexcept;
FamilyKind parse_family_kind(const std::string& name);

/// Asymptotic facts that finite data cannot decide. Built-in families carry
/// the facts their construction guarantees; custom families only carry user
/// assertions.
enum class Fact {
  LimEta,                 // lim eta_i = value
  LimsupEta,              // limsup eta_i = value
  LimOneMinusEtaOverAlpha,  // lim (1 - eta_i)/alpha_i = value
  RhoBounded,
  RhoUnbounded,
  AlphaBounded,
  LimsupPsi,              // limsup over i <= j of psi_{i,j} = value
  TwoPointFloor,          // infinitely many l have distinct a, b with
                          // min(mu_l(a), mu_l(b)) >= value
  DiamondHolds,           // the continuity infimum is positive
};

const char* fact_name(Fact fact) noexcept;
Fact parse_fact(const std::string& name);

struct Declaration {
  Fact fact;
  Rational value;
  std::string justification;
  /// True for facts guaranteed by a built-in construction, false for user
  /// assertions (unverified).
  bool from_construction;
};

struct DiamondResult {
  Rational value;
  std::size_t argmin_l;
  std::uint64_t argmin_j;
  /// running[l-1] = minimum over levels 1..l.
  std::vector<Rational> running;
};

/// Product measure on the odometer: a base plus one CoordMeasure per
/// coordinate, generated on demand.
class MeasureFamily {
 public:
  enum class CustomTail { Uniform, Repeat };

  static MeasureFamily uniform(BaseSeq base);
  static MeasureFamily thm32(BaseSeq base);
  static MeasureFamily ex33(BaseSeq base);
  static MeasureFamily thm36(BaseSeq base);
  static MeasureFamily thm37(BaseSeq base);
  static MeasureFamily custom(BaseSeq base, std::vector<std::vector<Rational>> masses,
                              CustomTail tail, std::vector<Declaration> declarations);

  const BaseSeq& base() const noexcept { return base_; }
  FamilyKind kind() const noexcept { return kind_; }
  const std::vector<Declaration>& declarations() const noexcept { return declarations_; }
  const Declaration* find(Fact fact) const;

  const CoordMeasure& coord(std::size_t i) const;
  /// Dense mass vector of coordinate i; SizeLimit when alpha(i) > limit.
  std::vector<Rational> masses(std::size_t i, std::uint64_t limit = 1u << 24) const;
  std::pair<Rational, Rational> eta_delta(std::size_t i) const;
  Rational lambda(std::size_t i, std::uint64_t j) const;
  Rational rho(std::size_t n) const;
  DiamondResult diamond_inf(std::size_t horizon) const;
  Rational nonatomic_product(std::size_t horizon) const;

  /// For thm36: index k with n = n_k, or -1 when n is a uniform coordinate.
  long thm36_index(std::size_t n) const;

 private:
  MeasureFamily(BaseSeq base, FamilyKind kind);
  CoordMeasure build(std::size_t i) const;

  struct Cache;
  BaseSeq base_;
  FamilyKind kind_;
  std::vector<Declaration> declarations_;
  std::vector<std::vector<Rational>> custom_;
  CustomTail tail_ = CustomTail::Uniform;
  std::shared_ptr<Cache> cache_;
};

}  // namespace odolin
