#include <doctest.h>

#include <random>

#include "odolin/error.hpp"
#include "odolin/odometer.hpp"
#include "oracles.hpp"

using namespace odolin;

namespace {

BaseSeq b232() { return BaseSeq::periodic({2, 3, 2}); }

std::vector<std::uint64_t> d(const MixedRadixInt& x) { return x.digits(); }

}  // namespace

TEST_CASE("base accessors") {
  BaseSeq c = BaseSeq::constant(3);
  CHECK(c.alpha(0) == 3);
  CHECK(c.alpha(100) == 3);
  CHECK(c.beta(0) == 1);
  CHECK(c.beta(4) == 81);
  BaseSeq p = BaseSeq::power(2);
  CHECK(p.alpha(0) == 4);
  CHECK(p.alpha(3) == 32);
  CHECK(p.beta(3) == Integer(4 * 8 * 16));
  CHECK_FALSE(p.bounded());
  BaseSeq alt = BaseSeq::periodic({2, 3});
  CHECK(alt.alpha(4) == 2);
  CHECK(alt.alpha(5) == 3);
  CHECK(alt.liminf() == 2u);
  CHECK(alt.range_product(1, 3) == 18);
  for (std::size_t i = 0; i < 20; ++i) CHECK(p.beta(i + 1) == p.beta(i) * Integer(std::to_string(p.alpha(i))));
  CHECK_THROWS_AS(BaseSeq::constant(1), Error);
}

TEST_CASE("encode / decode examples") {
  BaseSeq b = b232();
  CHECK(d(encode(0, 2, b)) == std::vector<std::uint64_t>{0, 0, 0});
  CHECK(d(encode(7, 2, b)) == std::vector<std::uint64_t>{1, 0, 1});
  CHECK(d(encode(11, 2, b)) == std::vector<std::uint64_t>{1, 2, 1});
  CHECK(decode(MixedRadixInt({1, 0, 1}, b), b) == 7);
  CHECK(decode(MixedRadixInt({1, 2, 1}, b), b) == 11);
  CHECK(decode(MixedRadixInt({0, 0, 0}, b), b) == 0);
  CHECK_THROWS_AS(encode(12, 2, b), Error);
  try {
    encode(12, 2, b);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OutOfRange);
  }
  CHECK_THROWS_AS(MixedRadixInt({2, 0}, b), Error);
}

TEST_CASE("round trip against divide-and-remainder") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::uint64_t> alphas;
    std::uniform_int_distribution<std::uint64_t> a(2, 9);
    for (int i = 0; i < 5; ++i) alphas.push_back(a(rng));
    BaseSeq b = BaseSeq::periodic(alphas);
    std::uint64_t n = oracle::cells(alphas);
    std::uint64_t k = std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng);
    MixedRadixInt x = encode(Integer(std::to_string(k)), 4, b);
    CHECK(x.digits() == oracle::digits_of(k, alphas));
    CHECK(decode(x, b) == Integer(std::to_string(k)));
  }
}

TEST_CASE("add_with_carry examples") {
  BaseSeq b = b232();
  MixedRadixInt x({1, 2, 1}, b);
  AddResult z = add_with_carry(x, MixedRadixInt({0, 0, 0}, b), b);
  CHECK(z.sum == x);
  CHECK_FALSE(z.carry_out);
  AddResult w = add_with_carry(x, MixedRadixInt({1, 0, 0}, b), b);
  CHECK(d(w.sum) == std::vector<std::uint64_t>{0, 0, 0});
  CHECK(w.carry_out);
  BaseSeq b23 = BaseSeq::periodic({2, 3});
  AddResult v = add_with_carry(MixedRadixInt({1, 0}, b23), MixedRadixInt({1, 0}, b23), b23);
  CHECK(d(v.sum) == std::vector<std::uint64_t>{0, 1});
  CHECK_FALSE(v.carry_out);
  CHECK_THROWS_AS(add_with_carry(MixedRadixInt({1, 0}, b), MixedRadixInt({1}, b), b), Error);
}

TEST_CASE("carry_at examples") {
  BaseSeq b = BaseSeq::constant(2);
  MixedRadixInt k({1, 0, 0}, b), x({1, 1, 0}, b);
  CHECK(carry_at(k, x, 1, b));
  CHECK(carry_at(k, x, 2, b));
  CHECK_FALSE(carry_at(k, x, 3, b));
  CHECK_FALSE(carry_at(k, MixedRadixInt({0, 0, 0}, b), 1, b));
}

TEST_CASE("addition agrees with integers, carries included") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::uint64_t> alphas;
    std::uniform_int_distribution<std::uint64_t> a(2, 7);
    std::size_t len = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
    for (std::size_t i = 0; i < len; ++i) alphas.push_back(a(rng));
    BaseSeq b = BaseSeq::periodic(alphas);
    std::uint64_t n = oracle::cells(alphas);
    std::uniform_int_distribution<std::uint64_t> pick(0, n - 1);
    std::uint64_t xv = pick(rng), yv = pick(rng);
    MixedRadixInt x = encode(Integer(std::to_string(xv)), len - 1, b);
    MixedRadixInt y = encode(Integer(std::to_string(yv)), len - 1, b);
    AddResult r = add_with_carry(x, y, b);
    CHECK(r.sum.digits() == oracle::digits_of((xv + yv) % n, alphas));
    CHECK(r.carry_out == (xv + yv >= n));
    std::uint64_t beta = 1;
    for (std::size_t i = 0; i <= len; ++i) {
      // carry into i iff the low parts overflow beta_i
      CHECK(r.carries[i] == (xv % beta + yv % beta >= beta));
      if (i < len) beta *= alphas[i];
    }
  }
}

TEST_CASE("plus one permutes the window") {
  BaseSeq b = BaseSeq::periodic({3, 2, 4});
  MixedRadixInt one({1, 0, 0}, b);
  std::vector<bool> seen(24, false);
  for (std::uint64_t w = 0; w < 24; ++w) {
    AddResult r = add_with_carry(encode(Integer(std::to_string(w)), 2, b), one, b);
    std::uint64_t v = to_u64(decode(r.sum, b));
    CHECK_FALSE(seen[v]);
    seen[v] = true;
  }
}
