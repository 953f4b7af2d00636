#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "odolin/cylinder.hpp"
#include "odolin/measures.hpp"
#include "odolin/rational.hpp"

namespace odolin {

/// Which construction produced a witness. The names double as report tags.
enum class Construction { Lemma41, Ex33, Thm34, NonmixingProbe };

const char* construction_name(Construction c) noexcept;

struct WitnessReport {
  Construction construction;
  Integer k;
  WindowSet set;
  Rational set_measure;
  Rational complement_measure;
  Rational epsilon;
  /// Re-verified through the carry DP, never taken from the construction.
  bool disjoint = false;
  bool accepted = false;
  /// Construction parameters, rendered exactly (name, value).
  std::vector<std::pair<std::string, std::string>> parameters;

  /// Value of a named parameter; throws NotFound when absent.
  const std::string& param(const std::string& name) const;
};

inline constexpr std::size_t kDefaultSearchHorizon = 64;

/// B_k fixing coordinates j, j+1 at their heaviest digits, where j is the top
/// nonzero digit of k. Throws HorizonExhausted when no l with
/// eta_i eta_{i+1} > 1 - eps for all l <= i < horizon exists, KTooSmall when
/// k <= beta(l+1).
WitnessReport mixing_witness(const MeasureFamily& family, const Integer& k,
                             const Rational& eps,
                             std::size_t search_horizon = kDefaultSearchHorizon);

/// Sparse-digit construction for the ex33 family: B = {x_l in E_l, x_{l+1} in
/// F_{l+1}}. Throws InvalidFamily for other families, KTooSmall for k < k_0.
WitnessReport ex33_witness(const MeasureFamily& family, const Integer& k, const Rational& eps,
                           std::size_t search_horizon = kDefaultSearchHorizon);

/// D_l = {2^s - 1 : 0 <= s <= l}.
std::vector<std::uint64_t> ex33_digit_set(std::size_t l);

/// Searches single coordinates n < window_budget, then blocks [i..j] with
/// j < window_budget and N <= cap, for psi > 1 - eps. Throws NotFound.
WitnessReport transitive_witness(const MeasureFamily& family, const Rational& eps,
                                 std::size_t window_budget, std::uint64_t cap);

struct ProbeRow {
  std::size_t window;
  /// Empty when beta(J+1) exceeds the cap.
  std::optional<Rational> value;
  bool within = true;
};

struct ProbeReport {
  std::size_t l;
  std::uint64_t a;
  std::uint64_t b;
  Integer m;
  Rational epsilon;
  /// (1/16) min(mu_l(a), mu_l(b)) and (1/16)(1 - eta_l)/alpha_l.
  Rational two_point_bound;
  Rational gap_bound;
  std::vector<ProbeRow> rows;
  bool all_within = true;
};

/// Shift m = |a - b| beta_l with a, b the two heaviest digits of coordinate l;
/// reports the fixed-shift maximum on windows J = l+1 .. l+window_budget.
/// Throws EpsilonTooLarge unless eps is below one of the two bounds.
ProbeReport nonmixing_probe(const MeasureFamily& family, std::size_t l, const Rational& eps,
                            std::size_t window_budget, std::uint64_t cap);

struct OverlapReport {
  std::uint64_t max_overlap = 0;
  /// Smallest j attaining it (0 when no j has any overlap).
  std::uint64_t argmax_j = 0;
};

/// max over 1 <= j <= j_max of |(D_l + j) ∩ D_l|.
OverlapReport dl_overlap_check(std::size_t l, std::uint64_t j_max);

}  // namespace odolin
