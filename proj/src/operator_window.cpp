#include "odolin/operator_window.hpp"

#include "odolin/error.hpp"

namespace odolin {

WindowNorm norm_ratio_Tfk(const MeasureFamily& family, std::size_t window, const Rational& p,
                          const Integer& k) {
  if (p < 1) throw Error(ErrorCode::InvalidArgument, "exponent p must be >= 1");
  WindowNorm out;
  // mu(cell_{w-k}) / mu(cell_w) = mu(cell_v) / mu(cell_{v+k}) with v = w - k
  out.ratio = max_cell_ratio(k, window, family);
  out.p = p;
  out.norm_decimal = root_decimal(out.ratio, p);
  return out;
}

Rational star_constant(const MeasureFamily& family, std::size_t window) {
  // min_w mu(cell_w)/mu(cell_{w-1}) is the reciprocal of the k = 1 ratio maximum
  return 1 / max_cell_ratio(1, window, family);
}

std::vector<Rational> indicator_orbit(const WindowSet& s, const MeasureFamily& family,
                                      std::uint64_t k_max) {
  const std::size_t window = s.window();
  const Integer cells = family.base().beta(window + 1);
  if (Integer(std::to_string(k_max)) >= cells)
    throw Error(ErrorCode::WindowTooSmall,
                "k_max must stay below beta(J+1) = " + cells.get_str());
  const WindowSet all = WindowSet::full(window);
  std::vector<Rational> out;
  out.reserve(k_max + 1);
  for (std::uint64_t k = 0; k <= k_max; ++k) {
    // f^{-k} is f^{beta - k} on the window
    Integer back = k == 0 ? Integer(0) : Integer(cells - Integer(std::to_string(k)));
    out.push_back(shifted_intersection_measure(s, all, back, family, window));
  }
  return out;
}

}  // namespace odolin
