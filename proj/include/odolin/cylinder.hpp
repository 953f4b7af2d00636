#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "odolin/measures.hpp"
#include "odolin/odometer.hpp"
#include "odolin/rational.hpp"

namespace odolin {

/// Allowed digits on one coordinate: either all of A_i or an explicit sorted
/// list.
class DigitSet {
 public:
  static DigitSet all() { return DigitSet(); }
  static DigitSet of(std::vector<std::uint64_t> digits);

  bool is_full() const noexcept { return full_; }
  bool contains(std::uint64_t d) const;
  const std::vector<std::uint64_t>& digits() const noexcept { return digits_; }
  Rational mass(const CoordMeasure& mu) const;

  friend bool operator==(const DigitSet&, const DigitSet&) = default;

 private:
  DigitSet() = default;
  bool full_ = true;
  std::vector<std::uint64_t> digits_;
};

/// Subset of the odometer constrained on finitely many coordinates. A Box
/// restricts each coordinate 0..J to a digit set; a Block lists the allowed
/// cells of the product over [lo..hi]. Everything beyond is free.
class WindowSet {
 public:
  enum class Form { Empty, Box, Block };

  static WindowSet empty();
  static WindowSet full(std::size_t window);
  /// An empty digit set anywhere gives the empty set.
  static WindowSet box(std::vector<DigitSet> coords);
  /// Convenience: fix coordinate i to the digits given, free elsewhere
  /// up to the window max(i).
  static WindowSet box_fixing(const std::vector<std::pair<std::size_t, DigitSet>>& fixes);
  /// cells are local mixed-radix indices over [lo..hi] (digit lo least
  /// significant).
  static WindowSet block(std::size_t lo, std::size_t hi, std::vector<std::uint64_t> cells,
                         const BaseSeq& base);

  Form form() const noexcept { return form_; }
  bool is_empty() const noexcept { return form_ == Form::Empty; }
  /// Last constrained coordinate (Box: J, Block: hi, Empty: 0).
  std::size_t window() const noexcept;

  const std::vector<DigitSet>& coords() const noexcept { return coords_; }
  std::size_t lo() const noexcept { return lo_; }
  std::size_t hi() const noexcept { return hi_; }
  const std::vector<std::uint64_t>& cells() const noexcept { return cells_; }

  /// Digit set of coordinate i for a Box (full outside the window).
  DigitSet coord(std::size_t i) const;

  friend bool operator==(const WindowSet&, const WindowSet&) = default;

 private:
  Form form_ = Form::Empty;
  std::vector<DigitSet> coords_;
  std::size_t lo_ = 0;
  std::size_t hi_ = 0;
  std::vector<std::uint64_t> cells_;
};

/// Upper bound on the number of cells materialized for a Block range.
inline constexpr std::uint64_t kMaxBlockCells = std::uint64_t{1} << 24;

/// Membership of the cells of [a..b] (local mixed-radix index) in S.
std::vector<bool> membership(const WindowSet& s, std::size_t a, std::size_t b,
                             const BaseSeq& base);

Rational set_measure(const WindowSet& s, const MeasureFamily& family);

/// mu(f^k(S) ∩ T), exact. The window is the smallest holding S, T and k.
Rational shifted_intersection_measure(const WindowSet& s, const WindowSet& t,
                                      const Integer& k, const MeasureFamily& family);
/// Same on an explicit window J. Throws WindowTooSmall when k >= beta(J+1)
/// or a set is constrained beyond J.
Rational shifted_intersection_measure(const WindowSet& s, const WindowSet& t,
                                      const Integer& k, const MeasureFamily& family,
                                      std::size_t window);

/// f^k(S) ∩ T nonempty? Boolean instantiation of the same traversal.
bool shifted_intersects(const WindowSet& s, const WindowSet& t, const Integer& k,
                        const MeasureFamily& family);

/// S ∩ f^k(S) = ∅.
bool disjoint_under(const WindowSet& s, const Integer& k, const MeasureFamily& family);

/// (mu(C(k,S,n,0)), mu(C(k,S,n,1))): split of S by the carry x + k produces
/// into position n.
std::pair<Rational, Rational> carry_split_measure(const WindowSet& s, const Integer& k,
                                                  std::size_t n, const MeasureFamily& family);

/// max over window cells v of mu(cell_v) / mu(cell_{v+k mod beta(J+1)}).
/// Max-product instantiation of the traversal; enumerates the digits of each
/// coordinate, so every alpha(i) on the window must be listable.
Rational max_cell_ratio(const Integer& k, std::size_t window, const MeasureFamily& family);

/// Natural projection onto [i..j] as a Block.
WindowSet project(const WindowSet& s, std::size_t i, std::size_t j, const BaseSeq& base);

/// Complement, as a Block over the constrained coordinates.
WindowSet complement(const WindowSet& s, const BaseSeq& base);

}  // namespace odolin
