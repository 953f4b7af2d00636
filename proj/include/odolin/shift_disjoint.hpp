#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "odolin/measures.hpp"
#include "odolin/rational.hpp"

namespace odolin {

/// Cells Z_N of a coordinate range [i..j] in mixed-radix order, weighted by
/// the product measure. Shifts act as a -> (a + k) mod N (the carry out of
/// the range is dropped).
struct ShiftProblem {
  std::vector<Rational> weights;

  std::uint64_t size() const noexcept { return weights.size(); }
};

struct ShiftSolution {
  Rational value;
  std::uint64_t k = 0;
  /// Sorted cell indices of an optimal set A with (A + k) ∩ A = ∅.
  std::vector<std::uint64_t> witness;
};

/// Default cap on N for full shift scans: 2^14, or ODOLIN_SIZE_CAP when set.
std::uint64_t default_size_cap();

/// Weights of the cells over [i..j]. Throws SizeLimit when N > limit.
ShiftProblem range_problem(const MeasureFamily& family, std::size_t i, std::size_t j,
                           std::uint64_t limit);

/// Maximum weight of A ⊆ Z_N with ((A + k) mod N) ∩ A = ∅. The shift splits
/// Z_N into gcd(N, k) cycles, each solved as a max-weight independent set on
/// a cycle.
Rational best_for_shift_value(const ShiftProblem& p, std::uint64_t k);

/// As above plus the lexicographically smallest optimal witness.
ShiftSolution best_for_shift(const ShiftProblem& p, std::uint64_t k);

/// psi_i: best over 0 < k < alpha_i. Ties go to the smallest k.
ShiftSolution psi_single(const MeasureFamily& family, std::size_t i,
                         std::uint64_t limit = default_size_cap());

/// psi_{i,j}: best over all shifts in [1, N), or over `shifts` when given
/// (then N is not capped by `limit`).
ShiftSolution psi_range(const MeasureFamily& family, std::size_t i, std::size_t j,
                        const std::optional<std::vector<std::uint64_t>>& shifts = std::nullopt,
                        std::uint64_t limit = default_size_cap());

/// Exhaustive search over all 2^N subsets and all shifts; N <= 16.
ShiftSolution brute_force_psi(const MeasureFamily& family, std::size_t i, std::size_t j);
ShiftSolution brute_force_psi(const ShiftProblem& p);

}  // namespace odolin
