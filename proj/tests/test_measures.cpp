#include <doctest.h>

#include <algorithm>
#include <random>

#include "odolin/error.hpp"
#include "odolin/measures.hpp"
#include "oracles.hpp"

using namespace odolin;

namespace {

std::vector<Rational> R(std::initializer_list<const char*> xs) {
  std::vector<Rational> out;
  for (const char* x : xs) out.push_back(parse_rational(x));
  return out;
}

}  // namespace

TEST_CASE("masses of the built-in families") {
  auto t32 = MeasureFamily::thm32(BaseSeq::constant(2));
  CHECK(t32.masses(0) == R({"2/3", "1/3"}));
  CHECK(MeasureFamily::uniform(BaseSeq::constant(5)).masses(0) ==
        R({"1/5", "1/5", "1/5", "1/5", "1/5"}));
  auto ex = MeasureFamily::ex33(BaseSeq::power(2));
  CHECK(ex.masses(0) == R({"3/4", "1/12", "1/12", "1/12"}));
  CHECK_THROWS_AS(MeasureFamily::ex33(BaseSeq::constant(4)), Error);
  CHECK_THROWS_AS(MeasureFamily::thm37(BaseSeq::constant(3)), Error);
}

TEST_CASE("eta and delta") {
  auto [e1, d1] = MeasureFamily::uniform(BaseSeq::constant(3)).eta_delta(0);
  CHECK(e1 == Rational(1, 3));
  CHECK(d1 == Rational(1, 3));
  auto [e2, d2] = MeasureFamily::thm32(BaseSeq::constant(2)).eta_delta(1);
  CHECK(e2 == Rational(4, 5));
  CHECK(d2 == Rational(1, 5));
  auto ex = MeasureFamily::ex33(BaseSeq::power(2));
  auto [e3, d3] = ex.eta_delta(1);
  CHECK(e3 == Rational(7, 16));
  CHECK(d3 == Rational(1, 48));
  // D_2 = {0, 1, 3}: (1 - 1/16)/3
  CHECK(ex.coord(2).eta() == Rational(5, 16));
  std::vector<Rational> m = ex.masses(1);
  CHECK(*std::max_element(m.begin(), m.end()) == e3);
  CHECK(*std::min_element(m.begin(), m.end()) == d3);
}

TEST_CASE("lambda, rho, diamond, nonatomic product") {
  auto t32 = MeasureFamily::thm32(BaseSeq::constant(2));
  CHECK(t32.lambda(0, 0) == 2);
  CHECK(t32.lambda(0, 1) == Rational(1, 2));
  CHECK(t32.rho(0) == 2);
  CHECK(t32.rho(1) == 8);
  auto uni = MeasureFamily::uniform(BaseSeq::periodic({2, 3, 5}));
  CHECK(uni.lambda(4, 2) == 1);
  CHECK_THROWS_AS(uni.lambda(4, 3), Error);
  CHECK(uni.rho(30) == 1);
  CHECK(uni.diamond_inf(12).value == 1);
  CHECK(MeasureFamily::uniform(BaseSeq::constant(2)).nonatomic_product(3) == Rational(1, 16));
  auto ex = MeasureFamily::ex33(BaseSeq::power(2));
  CHECK(ex.nonatomic_product(1) == Rational(21, 64));
  CHECK(ex.diamond_inf(10).value >= Rational(9, 64));

  auto t37 = MeasureFamily::thm37(BaseSeq::constant(4));
  for (std::size_t n = 0; n < 10; ++n) {
    Rational m = Rational(pow2(static_cast<unsigned>(n)) + 1);
    CHECK(t37.lambda(n, 0) == Rational(1, 2) * (1 - 1 / m) * m * 2);
  }
}

TEST_CASE("diamond minimum against a dense scan") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    MeasureFamily f = oracle::random_family(rng, 6, 5);
    Rational best;
    bool have = false;
    Rational prefix = f.coord(0).lambda(0);
    for (std::size_t l = 1; l <= 6; ++l) {
      std::vector<Rational> m = f.masses(l);
      for (std::size_t j = 0; j < m.size(); ++j) {
        Rational v = m[j] / m[(j + m.size() - 1) % m.size()] * prefix;
        if (!have || v < best) best = v, have = true;
      }
      prefix *= m[0] / m.back();
    }
    CHECK(f.diamond_inf(6).value == best);
  }
}

TEST_CASE("measure invariants") {
  std::mt19937_64 rng(9);
  std::vector<MeasureFamily> fams = {
      MeasureFamily::thm32(BaseSeq::constant(3)), MeasureFamily::ex33(BaseSeq::power(2)),
      MeasureFamily::thm36(BaseSeq::periodic({2, 3})),
      MeasureFamily::thm37(BaseSeq::constant(4)), MeasureFamily::thm37(BaseSeq::periodic({4, 6})),
      oracle::random_family(rng, 5)};
  for (const auto& f : fams) {
    Rational rho_prev = 0;
    for (std::size_t i = 0; i <= 8; ++i) {
      std::vector<Rational> m = f.masses(i);
      Rational sum = 0, prod = 1;
      for (std::size_t j = 0; j < m.size(); ++j) {
        CHECK(m[j] > 0);
        sum += m[j];
        prod *= f.lambda(i, j);
      }
      CHECK(sum == 1);
      CHECK(prod == 1);
      auto [eta, delta] = f.eta_delta(i);
      Rational inv = Rational(1) / Rational(Integer(std::to_string(m.size())));
      CHECK(delta <= inv);
      CHECK(inv <= eta);
      CHECK(f.rho(i) >= rho_prev);
      rho_prev = f.rho(i);
    }
  }
}

TEST_CASE("construction trends") {
  auto t32 = MeasureFamily::thm32(BaseSeq::periodic({2, 5, 3}));
  for (std::size_t n = 0; n <= 20; ++n) {
    Integer t = pow2(static_cast<unsigned>(n + 1));
    CHECK(t32.coord(n).eta() == 1 - Rational(1) / Rational(t + 1));
    if (n) CHECK(t32.coord(n).eta() > t32.coord(n - 1).eta());
  }
  auto ex = MeasureFamily::ex33(BaseSeq::power(2));
  for (std::size_t i = 1; i < 30; ++i) CHECK(ex.coord(i + 1).eta() < ex.coord(i).eta());
  auto t37 = MeasureFamily::thm37(BaseSeq::constant(4));
  for (std::size_t n = 0; n <= 20; ++n)
    CHECK(std::min(t37.coord(n).mass(0), t37.coord(n).mass(1)) >= Rational(1, 4));
  auto t36 = MeasureFamily::thm36(BaseSeq::periodic({2, 3}));
  // alternate occurrences of alpha = 2 (positions 0, 4, 8, ...) are the n_k
  CHECK(t36.thm36_index(0) == 0);
  CHECK(t36.thm36_index(2) == -1);
  CHECK(t36.thm36_index(4) == 1);
  CHECK(t36.coord(4).eta() == Rational(3, 4));
  CHECK(t36.coord(2).eta() == Rational(1, 2));
}

TEST_CASE("sparse large coordinates") {
  auto ex = MeasureFamily::ex33(BaseSeq::power(2));
  const CoordMeasure& mu = ex.coord(30);
  CHECK(mu.alpha() == (std::uint64_t{1} << 32));
  CHECK(mu.mass(0) == mu.eta());
  CHECK(mu.mass((std::uint64_t{1} << 30) - 1) == mu.eta());
  CHECK(mu.mass(2) == mu.delta());
  CHECK(mu.mass_of_range(0, mu.alpha()) == 1);
  CHECK_THROWS_AS(ex.masses(30), Error);
}

TEST_CASE("custom family validation") {
  BaseSeq b = BaseSeq::constant(2);
  CHECK_NOTHROW(MeasureFamily::custom(b, {R({"1/3", "2/3"})}, MeasureFamily::CustomTail::Uniform, {}));
  CHECK_THROWS_AS(MeasureFamily::custom(b, {R({"1/3", "1/3"})}, MeasureFamily::CustomTail::Uniform, {}),
                  Error);
  CHECK_THROWS_AS(MeasureFamily::custom(b, {R({"0", "1"})}, MeasureFamily::CustomTail::Uniform, {}),
                  Error);
  CHECK_THROWS_AS(MeasureFamily::custom(b, {R({"1/3", "1/3", "1/3"})},
                                        MeasureFamily::CustomTail::Uniform, {}),
                  Error);
  auto f = MeasureFamily::custom(b, {R({"1/3", "2/3"})}, MeasureFamily::CustomTail::Repeat,
                                 {{Fact::LimEta, 1, "", true}});
  CHECK(f.coord(7).eta() == Rational(2, 3));
  REQUIRE(f.find(Fact::LimEta));
  CHECK_FALSE(f.find(Fact::LimEta)->from_construction);
  CHECK(f.find(Fact::AlphaBounded));
}
