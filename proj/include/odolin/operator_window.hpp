#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "odolin/cylinder.hpp"
#include "odolin/measures.hpp"
#include "odolin/rational.hpp"

namespace odolin {

// T_f^k acting on functions that are constant on the cells of a window
// [0..J]. On that subspace f^k is +k mod beta(J+1), so everything reduces to
// ratios of cell masses.

struct WindowNorm {
  /// R = max_w mu(cell_{w-k}) / mu(cell_w); the operator norm is R^(1/p).
  Rational ratio;
  Rational p;
  /// R^(1/p), 12 significant digits, approximate.
  std::string norm_decimal;
};

/// Throws WindowTooSmall when k >= beta(J+1), InvalidArgument when p < 1.
WindowNorm norm_ratio_Tfk(const MeasureFamily& family, std::size_t window, const Rational& p,
                          const Integer& k);

/// Best constant c_J with mu(B) >= c mu(f^{-1}(B)) over window sets B.
Rational star_constant(const MeasureFamily& family, std::size_t window);

/// mu(f^{-k}(S)) = ||T^k 1_S||_p^p for k = 0..k_max.
std::vector<Rational> indicator_orbit(const WindowSet& s, const MeasureFamily& family,
                                      std::uint64_t k_max);

}  // namespace odolin
