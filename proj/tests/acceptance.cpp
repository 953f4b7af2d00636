// Acceptance runner: one PASS/FAIL line per criterion.
//   acceptance        run all
//   acceptance N      run criterion N only
// Exit status is nonzero when any selected criterion fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "odolin/classifier.hpp"
#include "odolin/cylinder.hpp"
#include "odolin/odometer.hpp"
#include "odolin/operator_window.hpp"
#include "odolin/shift_disjoint.hpp"
#include "odolin/witness.hpp"
#include "oracles.hpp"

using namespace odolin;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double limit_s;
  std::function<Outcome()> run;
};

Integer big(std::uint64_t v) { return Integer(std::to_string(v)); }

// 1000 random (base, x, y) with beta(J+1) <= 10^6 against integer addition.
Outcome arithmetic() {
  std::mt19937_64 rng(1001);
  std::size_t bad = 0;
  for (int t = 0; t < 1000; ++t) {
    std::vector<std::uint64_t> alphas;
    std::uint64_t n = 1;
    std::uniform_int_distribution<std::uint64_t> a(2, 40);
    while (true) {
      std::uint64_t next = a(rng);
      if (n * next > 1000000) break;
      alphas.push_back(next);
      n *= next;
      if (std::bernoulli_distribution(0.15)(rng)) break;
    }
    if (alphas.empty()) alphas.push_back(2), n = 2;
    BaseSeq base = BaseSeq::periodic(alphas);
    std::size_t J = alphas.size() - 1;
    std::uniform_int_distribution<std::uint64_t> pick(0, n - 1);
    std::uint64_t xv = pick(rng), yv = pick(rng);
    AddResult r = add_with_carry(encode(big(xv), J, base), encode(big(yv), J, base), base);
    bool ok = r.sum.digits() == oracle::digits_of((xv + yv) % n, alphas) &&
              r.carry_out == (xv + yv >= n) && decode(r.sum, base) == big((xv + yv) % n);
    if (!ok) ++bad;
  }
  return {bad == 0, std::to_string(1000 - bad) + "/1000 sums match"};
}

// 500 random (family, S, T, k) with beta(J+1) <= 4096 against dense enumeration.
Outcome set_dp() {
  std::mt19937_64 rng(2002);
  std::size_t bad = 0, done = 0;
  while (done < 500) {
    MeasureFamily f = oracle::random_family(rng, 8, 5);
    std::size_t J = std::uniform_int_distribution<std::size_t>(0, 7)(rng);
    while (f.base().beta(J + 1) > 4096) --J;
    WindowSet s = oracle::random_set(rng, f.base(), J);
    WindowSet t = oracle::random_set(rng, f.base(), J);
    std::uint64_t n = to_u64(f.base().beta(J + 1));
    std::uint64_t k = std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng);
    if (shifted_intersection_measure(s, t, big(k), f, J) != oracle::shifted_measure(s, t, k, f, J))
      ++bad;
    ++done;
  }
  return {bad == 0, std::to_string(500 - bad) + "/500 measures equal"};
}

// 200 random instances with N <= 12: cycle DP against exhaustive search.
Outcome psi_oracle() {
  std::mt19937_64 rng(3003);
  std::size_t bad = 0, done = 0;
  while (done < 200) {
    MeasureFamily f = oracle::random_family(rng, 4, 6);
    std::size_t i = std::uniform_int_distribution<std::size_t>(0, 3)(rng);
    std::size_t j = i;
    while (j + 1 < 4 && f.base().range_product(i, j + 1) <= 12) ++j;
    if (f.base().range_product(i, j) > 12) continue;
    if (psi_range(f, i, j).value != brute_force_psi(f, i, j).value) ++bad;
    ++done;
  }
  return {bad == 0, std::to_string(200 - bad) + "/200 values equal"};
}

// Sparse-digit family on alpha_n = 2^(n+2).
Outcome ex33() {
  MeasureFamily f = MeasureFamily::ex33(BaseSeq::power(2));
  Outcome o;
  DiamondResult d = f.diamond_inf(30);
  bool bound = d.value >= Rational(9, 64);
  bool decreasing = true;
  for (std::size_t i = 2; i < 30; ++i)
    if (!(f.coord(i + 1).eta() < f.coord(i).eta())) decreasing = false;
  Rational eta20 = f.coord(20).eta();
  bool small = eta20 < Rational(1, 100);
  o.ok = bound && decreasing && small;
  std::ostringstream s;
  s << "diamond_inf(30) = " << to_string(d.value) << (bound ? " >= " : " < ") << "9/64; eta "
    << (decreasing ? "strictly decreasing" : "NOT decreasing") << " on i >= 2; eta_20 = "
    << to_string(eta20) << " ~ " << to_decimal(eta20, 6) << (small ? " < " : " >= ") << "1/100";
  o.detail = s.str();
  return o;
}

// Two-coordinate witnesses on constant base 2 for k in (k0, k0 + 256].
Outcome thm32() {
  MeasureFamily f = MeasureFamily::thm32(BaseSeq::constant(2));
  Rational eps(1, 2);
  Integer k0(mixing_witness(f, 1000, eps).param("k0"));
  std::size_t good = 0;
  for (unsigned d = 1; d <= 256; ++d) {
    Integer k = k0 + d;
    WitnessReport r = mixing_witness(f, k, eps);
    if (r.complement_measure < eps && disjoint_under(r.set, k, f) && r.accepted) ++good;
  }
  return {good == 256, "k0 = " + k0.get_str() + ", " + std::to_string(good) + "/256 accepted"};
}

// Constant base 4 with the two heavy digits.
Outcome thm37() {
  MeasureFamily f = MeasureFamily::thm37(BaseSeq::constant(4));
  bool psi_ok = true;
  for (std::size_t n = 0; n <= 20; ++n)
    if (psi_single(f, n).value < 1 - Rational(1) / Rational(pow2(static_cast<unsigned>(n)) + 1))
      psi_ok = false;
  WitnessReport w = transitive_witness(f, Rational(1, 3), 8, 1 << 14);
  bool tw_ok = w.accepted && w.param("i") == "2" && w.param("j") == "2" && w.k == 32;
  bool probe_ok = true;
  std::size_t rows = 0;
  for (std::size_t l = 0; l <= 4; ++l) {
    ProbeReport p = nonmixing_probe(f, l, Rational(1, 128), 2, 1 << 14);
    for (const ProbeRow& r : p.rows) {
      ++rows;
      if (!r.value || *r.value > Rational(127, 128)) probe_ok = false;
    }
  }
  std::ostringstream s;
  s << "psi_n bound " << (psi_ok ? "holds" : "FAILS") << " for n <= 20; transitive witness block ["
    << w.param("i") << ".." << w.param("j") << "], k = " << w.k.get_str()
    << ", mu(B) = " << to_string(w.set_measure) << "; " << rows << " probe windows "
    << (probe_ok ? "all <= 127/128" : "EXCEED 127/128");
  return {psi_ok && tw_ok && probe_ok, s.str()};
}

// Uniform measures: rho = 1, certified not transitive, isometric window operators.
Outcome uniform() {
  MeasureFamily f = MeasureFamily::uniform(BaseSeq::periodic({2, 3, 5}));
  bool rho_ok = true;
  for (std::size_t n = 0; n <= 64; ++n)
    if (f.rho(n) != 1) rho_ok = false;
  Thresholds th;
  th.psi_cap = 64;
  Verdict v = classify(f, 20, th);
  bool verdict_ok = v.transitive == Status::CertifiedNo;
  std::mt19937_64 rng(7007);
  bool norm_ok = true;
  for (int t = 0; t < 50; ++t) {
    std::size_t J = std::uniform_int_distribution<std::size_t>(0, 10)(rng);
    std::uint64_t n = to_u64(f.base().beta(J + 1));
    std::uint64_t k = std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng);
    if (norm_ratio_Tfk(f, J, 1, big(k)).ratio != 1) norm_ok = false;
  }
  std::ostringstream s;
  s << "rho_n = 1 for n <= 64: " << (rho_ok ? "yes" : "no") << "; transitive "
    << status_name(v.transitive) << "; 50 norm ratios " << (norm_ok ? "all 1" : "NOT all 1");
  return {rho_ok && verdict_ok && norm_ok, s.str()};
}

// |(D_l + j) ∩ D_l| <= 1 for l <= 12, j <= 2^l.
Outcome lemma45() {
  std::uint64_t worst = 0;
  for (std::size_t l = 0; l <= 12; ++l)
    worst = std::max(worst, dl_overlap_check(l, std::uint64_t{1} << l).max_overlap);
  return {worst == 1, "max overlap " + std::to_string(worst)};
}

// mu(f^k(D)) <= rho_J mu(D) on single-cell cylinders, J <= 8.
Outcome rho_bound() {
  std::mt19937_64 rng(9009);
  std::size_t bad = 0;
  for (int t = 0; t < 500; ++t) {
    MeasureFamily f = t % 5 == 0 ? MeasureFamily::thm32(BaseSeq::constant(2))
                                 : oracle::random_family(rng, 9, 4);
    std::size_t J = std::uniform_int_distribution<std::size_t>(0, 8)(rng);
    std::vector<std::pair<std::size_t, DigitSet>> fixes;
    for (std::size_t i = 0; i <= J; ++i)
      fixes.push_back({i, DigitSet::of({std::uniform_int_distribution<std::uint64_t>(
                              0, f.base().alpha(i) - 1)(rng)})});
    WindowSet d = WindowSet::box_fixing(fixes);
    std::uint64_t n = to_u64(f.base().beta(J + 1));
    Integer k = big(std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng));
    Rational image = shifted_intersection_measure(d, WindowSet::full(J), k, f);
    if (image > f.rho(J) * set_measure(d, f)) ++bad;
  }
  return {bad == 0, std::to_string(500 - bad) + "/500 cylinders within the bound"};
}

// Alternating (2, 3) base with liminf 2.
Outcome thm36() {
  MeasureFamily f = MeasureFamily::thm36(BaseSeq::periodic({2, 3}));
  DiamondResult d = f.diamond_inf(30);
  Thresholds th;
  th.psi_cap = 64;
  Verdict v = classify(f, 12, th);
  bool cited_t = false, cited_m = false;
  for (const auto& r : v.rules) {
    if (r.id == "eta-limsup-transitivity" && r.conclusion == "transitive") cited_t = true;
    if (r.id == "two-point-floor-not-mixing" && r.conclusion == "not mixing") cited_m = true;
  }
  bool ok = d.value > 0 && v.transitive == Status::CertifiedYes &&
            v.mixing == Status::CertifiedNo && cited_t && cited_m;
  std::ostringstream s;
  s << "diamond_inf(30) = " << to_string(d.value) << "; transitive " << status_name(v.transitive)
    << ", mixing " << status_name(v.mixing);
  return {ok, s.str()};
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<Criterion> all = {
      {1, "arithmetic oracle", 5, arithmetic},
      {2, "set DP oracle", 30, set_dp},
      {3, "psi oracle", 60, psi_oracle},
      {4, "sparse-digit family", 10, ex33},
      {5, "two-coordinate mixing witnesses", 10, thm32},
      {6, "heavy-pair family", 60, thm37},
      {7, "uniform measures", 5, uniform},
      {8, "digit-set overlaps", 5, lemma45},
      {9, "rho bound on cylinders", 10, rho_bound},
      {10, "minimal-value base", 10, thm36},
  };
  int only = argc > 1 ? std::atoi(argv[1]) : 0;
  int failed = 0;
  for (const Criterion& c : all) {
    if (only && c.id != only) continue;
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool pass = o.ok && secs < c.limit_s;
    if (!pass) ++failed;
    std::printf("criterion %d (%s): %s | %s | %.2f s of %.0f s\n", c.id, c.title,
                pass ? "PASS" : "FAIL", o.detail.c_str(), secs, c.limit_s);
  }
  return failed ? 1 : 0;
}
