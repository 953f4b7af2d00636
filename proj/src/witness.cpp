#include "odolin/witness.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "odolin/error.hpp"
#include "odolin/odometer.hpp"
#include "odolin/shift_disjoint.hpp"

namespace odolin {

namespace {

void check_epsilon(const Rational& eps) {
  if (eps <= 0 || eps > 1)
    throw Error(ErrorCode::InvalidArgument, "epsilon must lie in (0, 1], got " + to_string(eps));
}

std::string list_string(const std::vector<std::uint64_t>& v) {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  out << '}';
  return out.str();
}

Integer big(std::uint64_t v) { return Integer(std::to_string(v)); }

void finish(WitnessReport& r, const MeasureFamily& family) {
  r.set_measure = set_measure(r.set, family);
  r.complement_measure = 1 - r.set_measure;
  r.disjoint = disjoint_under(r.set, r.k, family);
  r.accepted = r.disjoint && r.complement_measure < r.epsilon;
}

}  // namespace

const std::string& WitnessReport::param(const std::string& name) const {
  for (const auto& [key, value] : parameters)
    if (key == name) return value;
  throw Error(ErrorCode::NotFound, "no witness parameter " + name);
}

const char* construction_name(Construction c) noexcept {
  switch (c) {
    case Construction::Lemma41: return "lemma41";
    case Construction::Ex33: return "ex33";
    case Construction::Thm34: return "thm34";
    case Construction::NonmixingProbe: return "nonmixing-probe";
  }
  return "?";
}

WitnessReport mixing_witness(const MeasureFamily& family, const Integer& k, const Rational& eps,
                             std::size_t search_horizon) {
  check_epsilon(eps);
  const Rational need = 1 - eps;
  // smallest l such that every product from l up to the horizon clears 1 - eps
  std::optional<std::size_t> l;
  for (std::size_t i = search_horizon; i-- > 0;) {
    if (family.coord(i).eta() * family.coord(i + 1).eta() > need)
      l = i;
    else
      break;
  }
  if (!l)
    throw Error(ErrorCode::HorizonExhausted,
                "no l with eta_i eta_(i+1) > 1 - eps on [l, " + std::to_string(search_horizon) +
                    ")");
  const BaseSeq& base = family.base();
  Integer k0 = base.beta(*l + 1);
  if (k <= k0)
    throw Error(ErrorCode::KTooSmall, "k = " + k.get_str() + " must exceed k_0 = " + k0.get_str());

  MixedRadixInt digits = encode_min(k, base);
  std::size_t j = digits.window();
  std::uint64_t aj = family.coord(j).argmax();
  std::uint64_t aj1 = family.coord(j + 1).argmax();

  WitnessReport r;
  r.construction = Construction::Lemma41;
  r.k = k;
  r.epsilon = eps;
  r.set = WindowSet::box_fixing({{j, DigitSet::of({aj})}, {j + 1, DigitSet::of({aj1})}});
  r.parameters = {{"l", std::to_string(*l)},
                  {"k0", k0.get_str()},
                  {"j", std::to_string(j)},
                  {"a_j", std::to_string(aj)},
                  {"a_j+1", std::to_string(aj1)},
                  {"eta_j", to_string(family.coord(j).eta())},
                  {"eta_j+1", to_string(family.coord(j + 1).eta())}};
  finish(r, family);
  return r;
}

std::vector<std::uint64_t> ex33_digit_set(std::size_t l) {
  if (l > 63) throw Error(ErrorCode::OutOfRange, "D_l needs l <= 63");
  std::vector<std::uint64_t> d;
  for (std::size_t s = 0; s <= l; ++s) d.push_back((std::uint64_t{1} << s) - 1);
  return d;
}

namespace {

Rational ex33_product(std::size_t l) {
  auto m = [](std::size_t i) { return Rational(pow2(static_cast<unsigned>(i + 2))); };
  Rational size_l = static_cast<unsigned long>(l + 1);
  Rational size_l1 = static_cast<unsigned long>(l + 2);
  return (1 - 1 / m(l)) * (1 - 1 / m(l + 1)) * ((size_l - 2) / size_l) *
         ((size_l1 - 1) / size_l1);
}

}  // namespace

WitnessReport ex33_witness(const MeasureFamily& family, const Integer& k, const Rational& eps,
                           std::size_t search_horizon) {
  check_epsilon(eps);
  if (family.kind() != FamilyKind::Ex33)
    throw Error(ErrorCode::InvalidFamily, "the sparse-digit witness needs the ex33 family");
  std::optional<std::size_t> l0;
  for (std::size_t l = 2; l < search_horizon; ++l) {
    if (ex33_product(l) > 1 - eps) {
      l0 = l;
      break;
    }
  }
  if (!l0) throw Error(ErrorCode::HorizonExhausted, "no l_0 within the search horizon");
  const BaseSeq& base = family.base();
  Integer k0 = base.beta(*l0 + 1);
  if (k < k0)
    throw Error(ErrorCode::KTooSmall,
                "k = " + k.get_str() + " must be at least k_0 = " + k0.get_str());

  MixedRadixInt digits = encode_min(k, base);
  std::size_t l = digits.window();
  std::uint64_t j = digits[l];
  std::vector<std::uint64_t> d = ex33_digit_set(l);
  auto in_d = [&](std::uint64_t v) { return std::binary_search(d.begin(), d.end(), v); };
  // drop the upper element of each collision under +j and +(j+1)
  std::vector<std::uint64_t> e;
  for (std::uint64_t v : d) {
    bool hit_j = v >= j && in_d(v - j);
    bool hit_j1 = v >= j + 1 && in_d(v - j - 1);
    if (!hit_j && !hit_j1) e.push_back(v);
  }
  std::vector<std::uint64_t> f = ex33_digit_set(l + 1);
  f.erase(f.begin());

  WitnessReport r;
  r.construction = Construction::Ex33;
  r.k = k;
  r.epsilon = eps;
  if (e.empty())
    r.set = WindowSet::empty();
  else
    r.set = WindowSet::box_fixing({{l, DigitSet::of(e)}, {l + 1, DigitSet::of(f)}});
  Integer top_sum = pow2(static_cast<unsigned>(l)) + big(j) + 1;
  r.parameters = {{"l0", std::to_string(*l0)},
                  {"k0", k0.get_str()},
                  {"l", std::to_string(l)},
                  {"j", std::to_string(j)},
                  {"D_l", list_string(d)},
                  {"E_l", list_string(e)},
                  {"|D_l|", std::to_string(d.size())},
                  {"|E_l|", std::to_string(e.size())},
                  {"F_l+1", list_string(f)},
                  {"no_wrap", top_sum <= pow2(static_cast<unsigned>(l + 2)) - 1 ? "true" : "false"}};
  finish(r, family);
  return r;
}

WitnessReport transitive_witness(const MeasureFamily& family, const Rational& eps,
                                 std::size_t window_budget, std::uint64_t cap) {
  check_epsilon(eps);
  const BaseSeq& base = family.base();
  auto build = [&](std::size_t i, std::size_t j, const ShiftSolution& sol) {
    WitnessReport r;
    r.construction = Construction::Thm34;
    r.k = big(sol.k) * base.beta(i);
    r.epsilon = eps;
    r.set = WindowSet::block(i, j, sol.witness, base);
    r.parameters = {{"i", std::to_string(i)},
                    {"j", std::to_string(j)},
                    {"h", std::to_string(sol.k)},
                    {"psi", to_string(sol.value)},
                    {"cells", list_string(sol.witness)}};
    finish(r, family);
    return r;
  };
  for (std::size_t n = 0; n < window_budget; ++n) {
    if (base.alpha(n) > cap) continue;
    ShiftSolution sol = psi_single(family, n, cap);
    if (sol.value > 1 - eps) return build(n, n, sol);
  }
  for (std::size_t j = 1; j < window_budget; ++j) {
    for (std::size_t i = j; i-- > 0;) {
      if (base.range_product(i, j) > big(cap)) break;
      ShiftSolution sol = psi_range(family, i, j, std::nullopt, cap);
      if (sol.value > 1 - eps) return build(i, j, sol);
    }
  }
  throw Error(ErrorCode::NotFound, "no psi > 1 - eps within " + std::to_string(window_budget) +
                                       " coordinates and N <= " + std::to_string(cap));
}

ProbeReport nonmixing_probe(const MeasureFamily& family, std::size_t l, const Rational& eps,
                            std::size_t window_budget, std::uint64_t cap) {
  if (eps <= 0) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  const CoordMeasure& mu = family.coord(l);
  ProbeReport r;
  r.l = l;
  r.a = mu.argmax();
  r.b = mu.second_argmax();
  r.epsilon = eps;
  Rational ma = mu.mass(r.a), mb = mu.mass(r.b);
  r.two_point_bound = (ma < mb ? ma : mb) / 16;
  r.gap_bound = (1 - mu.eta()) / big(mu.alpha()) / 16;
  if (!(eps < r.two_point_bound || eps < r.gap_bound))
    throw Error(ErrorCode::EpsilonTooLarge,
                "epsilon " + to_string(eps) + " is not below " + to_string(r.two_point_bound) +
                    " or " + to_string(r.gap_bound));
  std::uint64_t diff = r.a > r.b ? r.a - r.b : r.b - r.a;
  const BaseSeq& base = family.base();
  r.m = big(diff) * base.beta(l);
  for (std::size_t w = l + 1; w <= l + window_budget; ++w) {
    ProbeRow row;
    row.window = w;
    if (base.beta(w + 1) <= big(cap)) {
      ShiftProblem p = range_problem(family, 0, w, cap);
      row.value = best_for_shift_value(p, to_u64(r.m));
      row.within = *row.value <= 1 - eps;
      r.all_within = r.all_within && row.within;
    }
    r.rows.push_back(std::move(row));
  }
  return r;
}

OverlapReport dl_overlap_check(std::size_t l, std::uint64_t j_max) {
  std::vector<std::uint64_t> d = ex33_digit_set(l);
  // |(D + j) ∩ D| counts the pairs u < v in D with v - u = j
  std::map<std::uint64_t, std::uint64_t> count;
  for (std::size_t a = 0; a < d.size(); ++a)
    for (std::size_t b = a + 1; b < d.size(); ++b)
      if (d[b] - d[a] <= j_max) ++count[d[b] - d[a]];
  OverlapReport r;
  for (const auto& [j, c] : count)
    if (c > r.max_overlap) {
      r.max_overlap = c;
      r.argmax_j = j;
    }
  return r;
}

}  // namespace odolin
