#include "odolin/shift_disjoint.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <string>

#include "odolin/error.hpp"

namespace odolin {

std::uint64_t default_size_cap() {
  if (const char* env = std::getenv("ODOLIN_SIZE_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return std::uint64_t{1} << 14;
}

ShiftProblem range_problem(const MeasureFamily& family, std::size_t i, std::size_t j,
                           std::uint64_t limit) {
  if (j < i) throw Error(ErrorCode::InvalidArgument, "range with j < i");
  Integer n = family.base().range_product(i, j);
  if (n > Integer(std::to_string(limit)))
    throw Error(ErrorCode::SizeLimit, "range [" + std::to_string(i) + ".." +
                                          std::to_string(j) + "] has N = " + n.get_str() +
                                          " cells, above the cap " + std::to_string(limit));
  ShiftProblem p;
  p.weights.assign(1, Rational(1));
  for (std::size_t s = i; s <= j; ++s) {
    const CoordMeasure& mu = family.coord(s);
    std::vector<Rational> next;
    next.reserve(p.weights.size() * mu.alpha());
    // digit s is more significant than everything collected so far
    for (std::uint64_t d = 0; d < mu.alpha(); ++d) {
      Rational m = mu.mass(d);
      for (const auto& w : p.weights) next.push_back(w * m);
    }
    p.weights = std::move(next);
  }
  return p;
}

namespace {

enum class Pin : std::uint8_t { Free, In, Out };

// Value with an "infeasible" marker, for path DPs under pinned vertices.
template <class W>
struct Best {
  bool ok = false;
  W v{};
};

template <class W>
Best<W> better(const Best<W>& a, const Best<W>& b) {
  if (!a.ok) return b;
  if (!b.ok) return a;
  return b.v > a.v ? b : a;
}

// Max-weight independent set on the path c[lo..hi).
template <class W>
Best<W> path_best(const std::vector<W>& c, const std::vector<Pin>* pins, std::size_t lo,
                  std::size_t hi) {
  Best<W> inc;                  // last vertex taken
  Best<W> exc{true, W(0)};      // last vertex not taken
  for (std::size_t t = lo; t < hi; ++t) {
    Pin pin = pins ? (*pins)[t] : Pin::Free;
    Best<W> take;
    if (pin != Pin::Out && exc.ok) take = {true, exc.v + c[t]};
    Best<W> skip;
    if (pin != Pin::In) skip = better(inc, exc);
    inc = take;
    exc = skip;
  }
  return better(inc, exc);
}

// Max-weight independent set on the cycle c[0] - c[1] - ... - c[L-1] - c[0].
template <class W>
Best<W> cycle_best(const std::vector<W>& c, const std::vector<Pin>* pins) {
  const std::size_t len = c.size();
  auto pin = [&](std::size_t t) { return pins ? (*pins)[t] : Pin::Free; };
  Best<W> result;
  if (pin(0) != Pin::In) result = path_best(c, pins, 1, len);
  if (pin(0) != Pin::Out && pin(1) != Pin::In && pin(len - 1) != Pin::In) {
    Best<W> rest = len >= 3 ? path_best(c, pins, 2, len - 1) : Best<W>{true, W(0)};
    if (rest.ok) result = better(result, Best<W>{true, rest.v + c[0]});
  }
  return result;
}

// Weights scaled to integers by their common denominator.
struct Scaled {
  Integer denominator;
  std::vector<Integer> numerators;
};

Scaled scale(const ShiftProblem& p) {
  Scaled s;
  s.denominator = 1;
  for (const auto& w : p.weights) mpz_lcm(s.denominator.get_mpz_t(), s.denominator.get_mpz_t(),
                                         w.get_den_mpz_t());
  s.numerators.reserve(p.weights.size());
  for (const auto& w : p.weights) s.numerators.push_back(w.get_num() * (s.denominator / w.get_den()));
  return s;
}

template <class W>
class CycleSolver {
 public:
  CycleSolver(std::vector<W> weights) : w_(std::move(weights)) {}

  W value(std::uint64_t k) const {
    const std::uint64_t n = w_.size();
    const std::uint64_t g = std::gcd(n, k);
    const std::uint64_t len = n / g;
    W total(0);
    std::vector<W> c(len);
    for (std::uint64_t s = 0; s < g; ++s) {
      std::uint64_t idx = s;
      for (std::uint64_t t = 0; t < len; ++t) {
        c[t] = w_[idx];
        idx += k;
        if (idx >= n) idx -= n;
      }
      total += cycle_best<W>(c, nullptr).v;
    }
    return total;
  }

  std::vector<std::uint64_t> lex_witness(std::uint64_t k) const {
    const std::uint64_t n = w_.size();
    const std::uint64_t g = std::gcd(n, k);
    const std::uint64_t len = n / g;
    std::vector<std::vector<W>> cycles(g, std::vector<W>(len));
    std::vector<std::vector<Pin>> pins(g, std::vector<Pin>(len, Pin::Free));
    std::vector<std::uint64_t> pos(n);
    std::vector<W> optimum(g);
    for (std::uint64_t s = 0; s < g; ++s) {
      std::uint64_t idx = s;
      for (std::uint64_t t = 0; t < len; ++t) {
        cycles[s][t] = w_[idx];
        pos[idx] = t;
        idx += k;
        if (idx >= n) idx -= n;
      }
      optimum[s] = cycle_best<W>(cycles[s], nullptr).v;
    }
    // Smallest cells first: keep a cell whenever some optimum still allows it.
    std::vector<std::uint64_t> out;
    for (std::uint64_t v = 0; v < n; ++v) {
      std::uint64_t s = v % g;
      pins[s][pos[v]] = Pin::In;
      Best<W> b = cycle_best<W>(cycles[s], &pins[s]);
      if (b.ok && b.v == optimum[s]) {
        out.push_back(v);
      } else {
        pins[s][pos[v]] = Pin::Out;
      }
    }
    return out;
  }

 private:
  std::vector<W> w_;
};

// Dispatch on whether the scaled weights fit machine integers.
template <class Fn>
auto with_solver(const ShiftProblem& p, Fn&& fn) {
  Scaled s = scale(p);
  if (mpz_sizeinbase(s.denominator.get_mpz_t(), 2) <= 62) {
    std::vector<std::uint64_t> w;
    w.reserve(s.numerators.size());
    for (const auto& z : s.numerators) w.push_back(to_u64(z));
    CycleSolver<std::uint64_t> solver(std::move(w));
    return fn(solver, [&](std::uint64_t v) {
      return Rational(Integer(std::to_string(v)), s.denominator);
    });
  }
  CycleSolver<Integer> solver(s.numerators);
  return fn(solver, [&](const Integer& v) { return Rational(v, s.denominator); });
}

void check_shift(const ShiftProblem& p, std::uint64_t k) {
  if (k == 0 || k >= p.size())
    throw Error(ErrorCode::InvalidShift, "shift " + std::to_string(k) + " outside [1, " +
                                             std::to_string(p.size()) + ")");
}

ShiftSolution scan(const ShiftProblem& p, const std::vector<std::uint64_t>& shifts) {
  if (p.size() < 2) throw Error(ErrorCode::InvalidShift, "need at least two cells");
  for (auto k : shifts) check_shift(p, k);
  return with_solver(p, [&](const auto& solver, auto to_rational) {
    using W = decltype(solver.value(1));
    bool have = false;
    W best{};
    std::uint64_t best_k = 0;
    for (auto k : shifts) {
      W v = solver.value(k);
      if (!have || v > best) {
        best = v;
        best_k = k;
        have = true;
      }
    }
    ShiftSolution out;
    out.value = to_rational(best);
    out.value.canonicalize();
    out.k = best_k;
    out.witness = solver.lex_witness(best_k);
    return out;
  });
}

std::vector<std::uint64_t> all_shifts(std::uint64_t n) {
  std::vector<std::uint64_t> out(n > 0 ? n - 1 : 0);
  std::iota(out.begin(), out.end(), std::uint64_t{1});
  return out;
}

}  // namespace

Rational best_for_shift_value(const ShiftProblem& p, std::uint64_t k) {
  check_shift(p, k);
  return with_solver(p, [&](const auto& solver, auto to_rational) {
    Rational v = to_rational(solver.value(k));
    v.canonicalize();
    return v;
  });
}

ShiftSolution best_for_shift(const ShiftProblem& p, std::uint64_t k) {
  check_shift(p, k);
  return scan(p, {k});
}

ShiftSolution psi_single(const MeasureFamily& family, std::size_t i, std::uint64_t limit) {
  return psi_range(family, i, i, std::nullopt, limit);
}

ShiftSolution psi_range(const MeasureFamily& family, std::size_t i, std::size_t j,
                        const std::optional<std::vector<std::uint64_t>>& shifts,
                        std::uint64_t limit) {
  if (shifts) {
    std::vector<std::uint64_t> ks = *shifts;
    if (ks.empty()) throw Error(ErrorCode::InvalidShift, "empty shift list");
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    return scan(range_problem(family, i, j, std::max(limit, std::uint64_t{1} << 24)), ks);
  }
  ShiftProblem p = range_problem(family, i, j, limit);
  return scan(p, all_shifts(p.size()));
}

ShiftSolution brute_force_psi(const ShiftProblem& p) {
  const std::uint64_t n = p.size();
  if (n > 16) throw Error(ErrorCode::SizeLimit, "brute force limited to N <= 16");
  if (n < 2) throw Error(ErrorCode::InvalidShift, "need at least two cells");
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  std::vector<Rational> sums(std::size_t{1} << n);
  sums[0] = 0;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    std::uint32_t low = mask & (~mask + 1);
    sums[mask] = sums[mask ^ low] + p.weights[__builtin_ctz(low)];
  }
  // sorted-list lexicographic order on subsets
  auto lex_less = [](std::uint32_t a, std::uint32_t b) {
    while (a && b) {
      int x = __builtin_ctz(a);
      int y = __builtin_ctz(b);
      if (x != y) return x < y;
      a &= a - 1;
      b &= b - 1;
    }
    return a == 0 && b != 0;
  };
  bool have = false;
  std::uint32_t best_mask = 0;
  std::uint64_t best_k = 0;
  for (std::uint64_t k = 1; k < n; ++k) {
    for (std::uint32_t mask = 0; mask <= full; ++mask) {
      std::uint32_t shifted = ((mask << k) | (mask >> (n - k))) & full;
      if (shifted & mask) continue;
      if (!have || sums[mask] > sums[best_mask] ||
          (sums[mask] == sums[best_mask] && k == best_k && lex_less(mask, best_mask))) {
        have = true;
        best_mask = mask;
        best_k = k;
      }
    }
  }
  ShiftSolution out;
  out.value = sums[best_mask];
  out.k = best_k;
  for (std::uint64_t v = 0; v < n; ++v)
    if (best_mask >> v & 1u) out.witness.push_back(v);
  return out;
}

ShiftSolution brute_force_psi(const MeasureFamily& family, std::size_t i, std::size_t j) {
  return brute_force_psi(range_problem(family, i, j, 16));
}

}  // namespace odolin
