#include "odolin/verify.hpp"

#include <algorithm>

#include "odolin/classifier.hpp"
#include "odolin/error.hpp"
#include "odolin/measures.hpp"
#include "odolin/shift_disjoint.hpp"
#include "odolin/witness.hpp"

namespace odolin {

namespace {

Integer big(std::uint64_t v) { return Integer(std::to_string(v)); }

Rational level_value(const MeasureFamily& f, std::size_t l) {
  Rational prefix = 1;
  for (std::size_t i = 0; i < l; ++i) prefix *= f.coord(i).lambda(0);
  return f.coord(l).min_lambda().first * prefix;
}

Check continuity_positive(const MeasureFamily& f, std::size_t L) {
  Check c{"continuity-positive"};
  DiamondResult d = f.diamond_inf(L);
  c.passed = d.value > 0;
  c.detail = "min over 1 <= l <= " + std::to_string(L) + " attained at l = " +
             std::to_string(d.argmin_l) + ", j = " + std::to_string(d.argmin_j);
  c.values = {{"diamond_inf", d.value}};
  return c;
}

Check classifier_check(const MeasureFamily& f, std::size_t L, Status mixing, Status transitive) {
  Check c{"classifier"};
  Thresholds th;
  th.psi_cap = 64;
  th.range_span = 0;
  Verdict v = classify(f, std::min<std::size_t>(L, 8), th);
  c.passed = v.mixing == mixing && v.transitive == transitive;
  c.detail = std::string("mixing ") + status_name(v.mixing) + ", transitive " +
             status_name(v.transitive);
  return c;
}

std::vector<Check> check_thm32(std::size_t L) {
  MeasureFamily f = MeasureFamily::thm32(BaseSeq::constant(2));
  std::vector<Check> out;

  Check eta{"eta-closed-form"};
  eta.detail = "eta_n = 2^(n+1)/(2^(n+1)+1), strictly increasing";
  for (std::size_t n = 0; n <= L; ++n) {
    Integer t = pow2(static_cast<unsigned>(n + 1));
    Rational want(t, t + 1);
    want.canonicalize();
    if (f.coord(n).eta() != want) {
      eta.passed = false;
      eta.detail = "eta_" + std::to_string(n) + " = " + to_string(f.coord(n).eta());
    }
    if (n > 0 && !(f.coord(n).eta() > f.coord(n - 1).eta())) eta.passed = false;
  }
  eta.values = {{"eta_L", f.coord(L).eta()}};
  out.push_back(eta);

  Check cont = continuity_positive(f, L);
  for (std::size_t l = 1; l <= L; ++l) {
    // lambda_l(1) times prod_{i<l} (m_i - 1) on base 2
    long e = static_cast<long>(l * (l + 1) / 2) - static_cast<long>(l) - 1;
    Rational want = e >= 0 ? Rational(pow2(static_cast<unsigned>(e)))
                           : Rational(1) / Rational(pow2(static_cast<unsigned>(-e)));
    if (level_value(f, l) != want) {
      cont.passed = false;
      cont.detail += "; level " + std::to_string(l) + " differs from 2^(l(l+1)/2 - l - 1)";
    }
  }
  out.push_back(cont);

  Check mix{"mixing-witness-coverage"};
  Rational eps(1, 2);
  WitnessReport first = mixing_witness(f, 3, eps);
  Integer k0(first.param("k0"));
  std::size_t accepted = 0;
  for (unsigned d = 1; d <= 64; ++d) {
    WitnessReport r = mixing_witness(f, k0 + d, eps);
    if (r.accepted) ++accepted;
  }
  mix.passed = accepted == 64;
  mix.detail = std::to_string(accepted) + "/64 shifts k in (k_0, k_0 + 64] accepted at eps = 1/2";
  mix.values = {{"k0", Rational(k0)}};
  out.push_back(mix);

  out.push_back(classifier_check(f, L, Status::CertifiedYes, Status::CertifiedYes));
  return out;
}

std::vector<Check> check_ex33(std::size_t L) {
  MeasureFamily f = MeasureFamily::ex33(BaseSeq::power(2));
  std::vector<Check> out;

  Check cont{"continuity-bound"};
  DiamondResult d = f.diamond_inf(L);
  cont.passed = d.value >= Rational(9, 64);
  cont.detail = "diamond_inf >= 9/64";
  cont.values = {{"diamond_inf", d.value}, {"bound", Rational(9, 64)}};
  out.push_back(cont);

  Check eta{"eta-decreasing"};
  eta.detail = "eta_(i+1) < eta_i for i < L";
  for (std::size_t i = 0; i < L; ++i)
    if (!(f.coord(i + 1).eta() < f.coord(i).eta())) eta.passed = false;
  eta.values = {{"eta_L", f.coord(L).eta()}};
  out.push_back(eta);

  Check overlap{"digit-overlap"};
  std::uint64_t worst = 0;
  for (std::size_t l = 0; l <= std::min<std::size_t>(L, 62); ++l)
    worst = std::max(worst, dl_overlap_check(l, std::uint64_t{1} << l).max_overlap);
  overlap.passed = worst <= 1;
  overlap.detail = "max |(D_l + j) ∩ D_l| over j <= 2^l is " + std::to_string(worst);
  out.push_back(overlap);

  Check fshift{"F-shift-disjoint"};
  for (std::size_t l = 0; l + 1 <= std::min<std::size_t>(L, 62); ++l) {
    std::vector<std::uint64_t> fs = ex33_digit_set(l + 1);
    fs.erase(fs.begin());
    for (std::uint64_t v : fs)
      if (std::binary_search(fs.begin(), fs.end(), v + 1)) fshift.passed = false;
  }
  fshift.detail = "(F_(l+1) + 1) ∩ F_(l+1) empty";
  out.push_back(fshift);

  Check wit{"sparse-witness"};
  Rational eps(1, 2);
  WitnessReport probe = ex33_witness(f, pow2(200), eps);
  std::size_t l0 = std::stoul(probe.param("l0"));
  Integer k0(probe.param("k0"));
  std::vector<Integer> ks = {k0, k0 + 1, 2 * k0 + 3, f.base().beta(l0 + 3) + 5};
  std::size_t ok = 0;
  for (const Integer& k : ks) {
    WitnessReport r = ex33_witness(f, k, eps);
    std::size_t dsize = std::stoul(r.param("|D_l|"));
    std::size_t esize = std::stoul(r.param("|E_l|"));
    if (r.accepted && esize + 2 >= dsize) ++ok;
  }
  wit.passed = ok == ks.size();
  wit.detail = std::to_string(ok) + "/" + std::to_string(ks.size()) +
               " shifts k >= k_0 accepted at eps = 1/2, |E_l| >= |D_l| - 2";
  wit.values = {{"k0", Rational(k0)}};
  out.push_back(wit);
  return out;
}

std::vector<Check> check_thm36(std::size_t L) {
  MeasureFamily f = MeasureFamily::thm36(BaseSeq::periodic({2, 3}));
  const std::uint64_t t = *f.base().liminf();
  std::vector<Check> out;

  Check cont = continuity_positive(f, L);
  Rational bound = Rational(1) / big(2 * (t - 1));
  cont.passed = cont.passed && cont.values[0].second >= bound;
  cont.detail += "; bound 1/(2(t-1))";
  cont.values.push_back({"bound", bound});
  out.push_back(cont);

  Check sub{"eta-subsequence"};
  sub.detail = "eta_(n_k) = 1 - 1/(k+3), strictly increasing";
  Rational prev = 0;
  std::size_t uniform_t = 0;
  for (std::size_t n = 0; n <= L; ++n) {
    long k = f.thm36_index(n);
    if (k < 0) {
      if (f.base().alpha(n) == t) {
        ++uniform_t;
        if (f.coord(n).eta() != Rational(1) / big(t)) sub.passed = false;
      }
      continue;
    }
    Rational want = 1 - Rational(1, k + 3);
    if (f.coord(n).eta() != want || !(want > prev)) sub.passed = false;
    prev = want;
  }
  out.push_back(sub);

  Check rest{"uniform-minimal-coordinates"};
  rest.passed = uniform_t > 0;
  rest.detail = std::to_string(uniform_t) + " coordinates with alpha = t outside {n_k}, all uniform";
  out.push_back(rest);

  out.push_back(classifier_check(f, L, Status::CertifiedNo, Status::CertifiedYes));
  return out;
}

std::vector<Check> check_thm37(std::size_t L) {
  MeasureFamily f = MeasureFamily::thm37(BaseSeq::constant(4));
  std::vector<Check> out;

  Check psi{"psi-lower-bound"};
  psi.detail = "psi_n >= 1 - 1/(2^n + 1)";
  for (std::size_t n = 0; n <= L; ++n) {
    Rational bound = 1 - Rational(1) / Rational(pow2(static_cast<unsigned>(n)) + 1);
    if (psi_single(f, n).value < bound) psi.passed = false;
  }
  out.push_back(psi);

  Check floor{"two-point-floor"};
  floor.detail = "min(mu_n(0), mu_n(1)) >= 1/4";
  for (std::size_t n = 0; n <= L; ++n)
    if (std::min(f.coord(n).mass(0), f.coord(n).mass(1)) < Rational(1, 4)) floor.passed = false;
  out.push_back(floor);

  Check chain = continuity_positive(f, L);
  chain.name = "continuity-chain-bound";
  for (std::size_t l = 1; l <= L; ++l) {
    Integer alphas = f.base().beta(l + 1) / big(f.base().alpha(l));
    Integer two_l = pow2(static_cast<unsigned>(l));
    Rational bound = Rational(pow2(static_cast<unsigned>(l * (l - 1) / 2))) /
                     Rational(two_l * two_l * (two_l + 1)) * Rational(alphas);
    if (level_value(f, l) < bound) {
      chain.passed = false;
      chain.detail += "; level " + std::to_string(l) + " below the chain bound";
    }
  }
  out.push_back(chain);

  Check tw{"transitive-witness"};
  WitnessReport r = transitive_witness(f, Rational(1, 3), 8, default_size_cap());
  tw.passed = r.accepted && r.param("i") == "2" && r.param("j") == "2" &&
              r.k == 32;
  tw.detail = "eps = 1/3: block [" + r.param("i") + ".." + r.param("j") +
              "], k = " + r.k.get_str();
  tw.values = {{"set_measure", r.set_measure}};
  out.push_back(tw);

  Check nm{"nonmixing-probe"};
  nm.detail = "eps = 1/128, windows J <= l + 2";
  for (std::size_t l = 0; l <= std::min<std::size_t>(4, L); ++l) {
    ProbeReport p = nonmixing_probe(f, l, Rational(1, 128), 2, default_size_cap());
    for (const ProbeRow& row : p.rows)
      if (!row.value || !row.within) nm.passed = false;
  }
  out.push_back(nm);

  out.push_back(classifier_check(f, L, Status::CertifiedNo, Status::CertifiedYes));
  return out;
}

std::vector<Check> check_lemma45(std::size_t L) {
  Check c{"digit-overlap"};
  std::uint64_t worst = 0;
  std::size_t top = std::min<std::size_t>(L, 62);
  for (std::size_t l = 0; l <= top; ++l)
    worst = std::max(worst, dl_overlap_check(l, std::uint64_t{1} << l).max_overlap);
  c.passed = worst <= 1;
  c.detail = "max |(D_l + j) ∩ D_l| over l <= " + std::to_string(top) +
             ", 1 <= j <= 2^l is " + std::to_string(worst);
  c.values = {{"max_overlap", Rational(big(worst))}};
  return {c};
}

}  // namespace

bool VerifyResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

VerifyResult verify_paper(const std::string& name, std::size_t horizon) {
  if (horizon < 1) throw Error(ErrorCode::InvalidArgument, "horizon must be >= 1");
  VerifyResult r;
  r.name = name;
  r.horizon = horizon;
  if (name == "thm32") {
    r.base = "constant 2";
    r.checks = check_thm32(horizon);
  } else if (name == "ex33") {
    r.base = "alpha_n = 2^(n+2)";
    r.checks = check_ex33(horizon);
  } else if (name == "thm36") {
    r.base = "alternating (2,3)";
    r.checks = check_thm36(horizon);
  } else if (name == "thm37") {
    r.base = "constant 4";
    r.checks = check_thm37(horizon);
  } else if (name == "lemma45") {
    r.base = "none";
    r.checks = check_lemma45(horizon);
  } else {
    throw Error(ErrorCode::InvalidArgument,
                "unknown construction \"" + name + "\" (thm32, ex33, thm36, thm37, lemma45)");
  }
  return r;
}

}  // namespace odolin
