#include <doctest.h>

#include "odolin/classifier.hpp"
#include "odolin/error.hpp"

using namespace odolin;

namespace {

Thresholds quick() {
  Thresholds t;
  t.psi_cap = 64;
  return t;
}

bool cites(const Verdict& v, const std::string& id) {
  for (const auto& r : v.rules)
    if (r.id == id) return !r.inputs.empty();
  return false;
}

}  // namespace

TEST_CASE("evidence rows") {
  EvidenceTable u = evidence(MeasureFamily::uniform(BaseSeq::constant(2)), 4);
  REQUIRE(u.rows.size() == 5);
  for (const auto& r : u.rows) {
    CHECK(r.eta == Rational(1, 2));
    CHECK(r.rho == 1);
    CHECK(*r.psi == Rational(1, 2));
  }
  EvidenceTable t = evidence(MeasureFamily::thm32(BaseSeq::constant(2)), 3);
  CHECK(t.rows[0].eta == Rational(2, 3));
  CHECK(t.rows[1].eta == Rational(4, 5));
  CHECK(t.rows[2].eta == Rational(8, 9));
  CHECK(t.rows[3].eta == Rational(16, 17));
  EvidenceTable e = evidence(MeasureFamily::ex33(BaseSeq::power(2)), 2);
  CHECK(e.rows[0].eta == Rational(3, 4));
  CHECK(e.rows[1].eta == Rational(7, 16));
  CHECK(e.rows[2].eta == Rational(5, 16));
  Thresholds small = quick();
  EvidenceTable big = evidence(MeasureFamily::ex33(BaseSeq::power(2)), 6, small);
  CHECK(big.psi_omitted == std::vector<std::size_t>{5, 6});
  CHECK_FALSE(big.rows[6].psi.has_value());
}

TEST_CASE("verdicts") {
  Verdict u = classify(MeasureFamily::uniform(BaseSeq::periodic({2, 3})), 10, quick());
  CHECK(u.transitive == Status::CertifiedNo);
  CHECK(u.mixing == Status::CertifiedNo);
  CHECK(cites(u, "rho-bounded-not-transitive"));

  Verdict t32 = classify(MeasureFamily::thm32(BaseSeq::constant(2)), 10, quick());
  CHECK(t32.mixing == Status::CertifiedYes);
  CHECK(t32.transitive == Status::CertifiedYes);
  CHECK(cites(t32, "eta-limit-one-mixing"));

  Verdict t37 = classify(MeasureFamily::thm37(BaseSeq::constant(4)), 10, quick());
  CHECK(t37.transitive == Status::CertifiedYes);
  CHECK(t37.mixing == Status::CertifiedNo);

  Verdict t36 = classify(MeasureFamily::thm36(BaseSeq::periodic({2, 3})), 10, quick());
  CHECK(t36.transitive == Status::CertifiedYes);
  CHECK(t36.mixing == Status::CertifiedNo);
  CHECK(cites(t36, "eta-limsup-transitivity"));
  CHECK(cites(t36, "two-point-floor-not-mixing"));

  // unbounded base with eta -> 0: mixing stays open
  Verdict ex = classify(MeasureFamily::ex33(BaseSeq::power(2)), 6, quick());
  CHECK(ex.mixing == Status::Unknown);
}

TEST_CASE("custom declarations") {
  BaseSeq b = BaseSeq::constant(2);
  std::vector<std::vector<Rational>> half = {{Rational(1, 2), Rational(1, 2)}};
  auto bad = MeasureFamily::custom(b, half, MeasureFamily::CustomTail::Repeat,
                                   {{Fact::LimEta, 1, "", false},
                                    {Fact::RhoBounded, 1, "", false},
                                    {Fact::DiamondHolds, 1, "", false}});
  try {
    classify(bad, 5, quick());
    FAIL("expected InconsistentDeclarations");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InconsistentDeclarations);
  }
  auto undeclared = MeasureFamily::custom(b, half, MeasureFamily::CustomTail::Repeat, {});
  Verdict v = classify(undeclared, 5, quick());
  CHECK(v.continuous);
  CHECK(v.mixing == Status::Unknown);
  CHECK(v.transitive == Status::Unknown);
  CHECK(v.rules.empty());

  // eta close to 1 everywhere leans, never certifies
  std::vector<std::vector<Rational>> heavy = {{Rational(999, 1000), Rational(1, 1000)}};
  Verdict lean = classify(MeasureFamily::custom(b, heavy, MeasureFamily::CustomTail::Repeat, {}), 8,
                          quick());
  CHECK(lean.mixing == Status::EvidenceLeaning);
  CHECK(lean.transitive == Status::EvidenceLeaning);
}

TEST_CASE("rule soundness and determinism") {
  for (auto f : {MeasureFamily::uniform(BaseSeq::constant(3)),
                 MeasureFamily::thm32(BaseSeq::constant(3)),
                 MeasureFamily::thm37(BaseSeq::constant(5)),
                 MeasureFamily::thm36(BaseSeq::periodic({3, 2, 2}))}) {
    Verdict a = classify(f, 8, quick());
    Verdict b = classify(f, 8, quick());
    CHECK(a.mixing == b.mixing);
    CHECK(a.transitive == b.transitive);
    CHECK(a.rules.size() == b.rules.size());
    if (a.mixing == Status::CertifiedYes) CHECK(a.transitive != Status::CertifiedNo);
  }
  for (std::size_t L : {1u, 5u, 40u, 64u})
    CHECK(classify(MeasureFamily::uniform(BaseSeq::constant(2)), L, quick()).transitive ==
          Status::CertifiedNo);
}

TEST_CASE("consistency check") {
  CHECK(consistency_check(MeasureFamily::thm32(BaseSeq::constant(2)), 20).empty());
  CHECK(consistency_check(MeasureFamily::ex33(BaseSeq::power(2)), 20).empty());
  BaseSeq b = BaseSeq::constant(3);
  auto liar = MeasureFamily::custom(b, {}, MeasureFamily::CustomTail::Uniform,
                                    {{Fact::LimEta, 1, "", false}});
  CHECK(consistency_check(liar, 20).size() == 1);
}
