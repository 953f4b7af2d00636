#include <doctest.h>

#include <random>

#include "odolin/error.hpp"
#include "odolin/shift_disjoint.hpp"
#include "oracles.hpp"

using namespace odolin;

namespace {

ShiftProblem problem(std::initializer_list<const char*> xs) {
  ShiftProblem p;
  for (const char* x : xs) p.weights.push_back(parse_rational(x));
  return p;
}

ShiftProblem uniform(std::uint64_t n) {
  ShiftProblem p;
  p.weights.assign(n, Rational(1) / Rational(Integer(std::to_string(n))));
  return p;
}

bool valid(const ShiftProblem& p, const ShiftSolution& s) {
  const std::uint64_t n = p.size();
  std::vector<bool> in(n, false);
  Rational sum = 0;
  for (std::uint64_t a : s.witness) {
    in[a] = true;
    sum += p.weights[a];
  }
  for (std::uint64_t a : s.witness)
    if (in[(a + s.k) % n]) return false;
  return sum == s.value;
}

MeasureFamily custom(std::vector<std::uint64_t> alphas,
                     std::vector<std::vector<Rational>> masses) {
  return MeasureFamily::custom(BaseSeq::periodic(std::move(alphas)), std::move(masses),
                               MeasureFamily::CustomTail::Uniform, {});
}

}  // namespace

TEST_CASE("best_for_shift examples") {
  ShiftSolution a = best_for_shift(uniform(2), 1);
  CHECK(a.value == Rational(1, 2));
  CHECK(a.witness == std::vector<std::uint64_t>{0});
  ShiftSolution b = best_for_shift(problem({"7/10", "1/10", "1/10", "1/10"}), 2);
  CHECK(b.value == Rational(4, 5));
  CHECK(b.witness == std::vector<std::uint64_t>{0, 1});
  ShiftSolution c = best_for_shift(uniform(6), 2);
  CHECK(c.value == Rational(1, 3));
  CHECK(c.witness == std::vector<std::uint64_t>{0, 1});
  CHECK_THROWS_AS(best_for_shift(uniform(4), 0), Error);
  CHECK_THROWS_AS(best_for_shift(uniform(4), 4), Error);
}

TEST_CASE("psi examples") {
  auto u2 = MeasureFamily::uniform(BaseSeq::constant(2));
  ShiftSolution s = psi_single(u2, 0);
  CHECK(s.value == Rational(1, 2));
  CHECK(s.k == 1);
  CHECK(s.witness == std::vector<std::uint64_t>{0});

  auto f = custom({4}, {{Rational(7, 10), Rational(1, 10), Rational(1, 10), Rational(1, 10)}});
  ShiftSolution t = psi_single(f, 0);
  CHECK(t.value == Rational(4, 5));
  CHECK(t.k == 1);
  CHECK(t.witness == std::vector<std::uint64_t>{0, 2});

  ShiftSolution r = psi_range(u2, 0, 1);
  CHECK(r.value == Rational(1, 2));
  CHECK(r.k == 1);
  CHECK(r.witness == std::vector<std::uint64_t>{0, 2});

  auto t37 = MeasureFamily::thm37(BaseSeq::constant(4));
  ShiftSolution p2 = psi_range(t37, 2, 2);
  // m_2 = 5: the two heavy digits carry 4/5
  CHECK(p2.value == Rational(4, 5));
  CHECK(p2.k == 2);
  CHECK(p2.witness == std::vector<std::uint64_t>{0, 1});
  for (std::size_t n = 0; n <= 12; ++n) {
    ShiftSolution q = psi_single(t37, n);
    CHECK(q.value >= 1 - Rational(1) / Rational(pow2(static_cast<unsigned>(n)) + 1));
    CHECK(q.value == psi_range(t37, n, n).value);
  }
}

TEST_CASE("brute force oracle examples") {
  CHECK(brute_force_psi(MeasureFamily::uniform(BaseSeq::constant(2)), 0, 0).value ==
        Rational(1, 2));
  CHECK(brute_force_psi(problem({"7/10", "1/10", "1/10", "1/10"})).value == Rational(4, 5));
  CHECK_THROWS_AS(brute_force_psi(uniform(17)), Error);
}

TEST_CASE("cycle DP against independent enumeration") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 120; ++trial) {
    std::uint64_t n = std::uniform_int_distribution<std::uint64_t>(2, 12)(rng);
    ShiftProblem p;
    p.weights = oracle::random_masses(n, rng);
    oracle::Psi want = oracle::brute_psi(p.weights);
    ShiftSolution got = brute_force_psi(p);
    CHECK(got.value == want.value);
    CHECK(got.k == want.k);
    for (std::uint64_t k = 1; k < n; ++k) {
      ShiftSolution s = best_for_shift(p, k);
      CHECK(valid(p, {s.value, k, s.witness}));
      CHECK(s.value == best_for_shift_value(p, k));
    }
  }
}

TEST_CASE("psi_range equals the oracles on families") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    MeasureFamily f = oracle::random_family(rng, 4, 3);
    std::size_t i = std::uniform_int_distribution<std::size_t>(0, 2)(rng);
    std::size_t j = i;
    while (j + 1 < 4 && oracle::cells(oracle::radices(f.base(), i, j + 1)) <= 12) ++j;
    ShiftSolution a = psi_range(f, i, j);
    ShiftSolution b = brute_force_psi(f, i, j);
    CHECK(a.value == b.value);
    CHECK(a.k == b.k);
    CHECK(a.witness == b.witness);
    CHECK(a.value == oracle::brute_psi(oracle::range_weights(f, i, j)).value);
  }
}

TEST_CASE("shift properties") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    MeasureFamily f = oracle::random_family(rng, 4, 4);
    // psi_{i,j} dominates every psi_s inside, and eta_i <= psi_i
    ShiftSolution whole = psi_range(f, 0, 2);
    for (std::size_t s = 0; s <= 2; ++s) {
      CHECK(whole.value >= psi_single(f, s).value);
      CHECK(psi_single(f, s).value >= f.coord(s).eta());
    }
    // finer windows can only help for a fixed shift supported on [0..1]
    ShiftProblem p01 = range_problem(f, 0, 1, 1 << 14);
    ShiftProblem p02 = range_problem(f, 0, 2, 1 << 14);
    for (std::uint64_t k = 1; k < p01.size(); ++k)
      CHECK(best_for_shift_value(p02, k) >= best_for_shift_value(p01, k));
  }
}

TEST_CASE("size limits") {
  auto u = MeasureFamily::uniform(BaseSeq::constant(4));
  CHECK_THROWS_AS(psi_range(u, 0, 7, std::nullopt, 1000), Error);
  try {
    psi_range(u, 0, 7, std::nullopt, 1000);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SizeLimit);
  }
  // explicit shift lists bypass the scan cap
  ShiftSolution s = psi_range(u, 0, 7, std::vector<std::uint64_t>{1}, 1000);
  CHECK(s.value == Rational(1, 2));
}
