#include "odolin/measures.hpp"

#include <algorithm>
#include <mutex>

#include "odolin/error.hpp"

namespace odolin {

CoordMeasure::CoordMeasure(std::uint64_t alpha, std::map<std::uint64_t, Rational> special,
                           Rational rest)
    : alpha_(alpha), special_(std::move(special)), rest_(std::move(rest)) {
  if (alpha_ < 2) throw Error(ErrorCode::InvalidFamily, "coordinate size below 2");
  Rational total = 0;
  for (auto it = special_.begin(); it != special_.end();) {
    if (it->first >= alpha_)
      throw Error(ErrorCode::InvalidFamily, "mass given for digit outside A_i");
    if (sgn(it->second) <= 0)
      throw Error(ErrorCode::InvalidFamily, "every digit needs strictly positive mass");
    total += it->second;
    ++it;
  }
  std::uint64_t n_rest = rest_count();
  if (n_rest > 0) {
    if (sgn(rest_) <= 0)
      throw Error(ErrorCode::InvalidFamily, "every digit needs strictly positive mass");
    total += rest_ * Rational(Integer(std::to_string(n_rest)));
  } else {
    rest_ = 0;
  }
  if (total != 1)
    throw Error(ErrorCode::InvalidFamily, "masses sum to " + to_string(total) + ", not 1");

  bool have = false;
  auto consider = [&](std::uint64_t d, const Rational& m) {
    if (!have) {
      eta_ = delta_ = m;
      argmax_ = d;
      have = true;
      return;
    }
    if (m > eta_ || (m == eta_ && d < argmax_)) {
      eta_ = m;
      argmax_ = d;
    }
    if (m < delta_) delta_ = m;
  };
  for (const auto& [d, m] : special_) consider(d, m);
  if (n_rest > 0) consider(next_rest_digit(0), rest_);
}

CoordMeasure CoordMeasure::uniform(std::uint64_t alpha) {
  return CoordMeasure(alpha, {}, Rational(1, Integer(std::to_string(alpha))));
}

CoordMeasure CoordMeasure::dense(const std::vector<Rational>& masses) {
  std::map<std::uint64_t, Rational> special;
  for (std::size_t d = 0; d < masses.size(); ++d) special.emplace(d, masses[d]);
  return CoordMeasure(masses.size(), std::move(special), 0);
}

Rational CoordMeasure::mass(std::uint64_t digit) const {
  auto it = special_.find(digit);
  return it == special_.end() ? rest_ : it->second;
}

Rational CoordMeasure::mass_of_range(std::uint64_t lo, std::uint64_t hi) const {
  hi = std::min(hi, alpha_);
  if (hi <= lo) return 0;
  Rational total = 0;
  std::uint64_t n_special = 0;
  for (auto it = special_.lower_bound(lo); it != special_.end() && it->first < hi; ++it) {
    total += it->second;
    ++n_special;
  }
  std::uint64_t n_rest = (hi - lo) - n_special;
  if (n_rest > 0) total += rest_ * Rational(Integer(std::to_string(n_rest)));
  return total;
}

std::vector<Rational> CoordMeasure::dense_masses() const {
  std::vector<Rational> out(alpha_, rest_);
  for (const auto& [d, m] : special_) out[d] = m;
  return out;
}

std::uint64_t CoordMeasure::next_rest_digit(std::uint64_t from) const {
  std::uint64_t d = from;
  for (auto it = special_.lower_bound(from); it != special_.end() && it->first == d; ++it)
    ++d;
  return std::min(d, alpha_);
}

std::uint64_t CoordMeasure::second_argmax() const {
  bool have = false;
  Rational best;
  std::uint64_t arg = 0;
  auto consider = [&](std::uint64_t d, const Rational& m) {
    if (d == argmax_) return;
    if (!have || m > best || (m == best && d < arg)) {
      best = m;
      arg = d;
      have = true;
    }
  };
  for (const auto& [d, m] : special_) consider(d, m);
  std::uint64_t r = next_rest_digit(0);
  if (r == argmax_) r = next_rest_digit(r + 1);
  if (r < alpha_) consider(r, rest_);
  return arg;
}

Rational CoordMeasure::lambda(std::uint64_t j) const {
  std::uint64_t prev = j == 0 ? alpha_ - 1 : j - 1;
  return mass(j) / mass(prev);
}

std::pair<Rational, std::uint64_t> CoordMeasure::min_lambda() const {
  // lambda(j) differs from 1 only where j or j-1 is special.
  std::vector<std::uint64_t> candidates;
  for (const auto& [d, m] : special_) {
    candidates.push_back(d);
    candidates.push_back(d + 1 == alpha_ ? 0 : d + 1);
  }
  // smallest j with j and j-1 both in the rest group
  for (std::uint64_t j = 0; j < alpha_;) {
    j = next_rest_digit(j);
    if (j >= alpha_) break;
    std::uint64_t prev = j == 0 ? alpha_ - 1 : j - 1;
    if (!is_special(prev)) {
      candidates.push_back(j);
      break;
    }
    ++j;
  }
  std::sort(candidates.begin(), candidates.end());
  Rational best;
  std::uint64_t arg = 0;
  bool have = false;
  for (std::uint64_t j : candidates) {
    Rational v = lambda(j);
    if (!have || v < best) {
      best = v;
      arg = j;
      have = true;
    }
  }
  return {best, arg};
}

const char* family_kind_name(FamilyKind kind) noexcept {
  switch (kind) {
    case FamilyKind::Uniform: return "uniform";
    case FamilyKind::Thm32: return "thm32";
    case FamilyKind::Ex33: return "ex33";
    case FamilyKind::Thm36: return "thm36";
    case FamilyKind::Thm37: return "thm37";
    case FamilyKind::Custom: return "custom";
  }
  return "?";
}

FamilyKind parse_family_kind(const std::string& name) {
  for (auto k : {FamilyKind::Uniform, FamilyKind::Thm32, FamilyKind::Ex33,
                 FamilyKind::Thm36, FamilyKind::Thm37, FamilyKind::Custom})
    if (name == family_kind_name(k)) return k;
  throw Error(ErrorCode::Config, "unknown measure family '" + name + "'");
}

const char* fact_name(Fact fact) noexcept {
  switch (fact) {
    case Fact::LimEta: return "lim_eta";
    case Fact::LimsupEta: return "limsup_eta";
    case Fact::LimOneMinusEtaOverAlpha: return "lim_one_minus_eta_over_alpha";
    case Fact::RhoBounded: return "rho_bounded";
    case Fact::RhoUnbounded: return "rho_unbounded";
    case Fact::AlphaBounded: return "alpha_bounded";
    case Fact::LimsupPsi: return "limsup_psi";
    case Fact::TwoPointFloor: return "two_point_floor";
    case Fact::DiamondHolds: return "diamond_holds";
  }
  return "?";
}

Fact parse_fact(const std::string& name) {
  for (auto f : {Fact::LimEta, Fact::LimsupEta, Fact::LimOneMinusEtaOverAlpha,
                 Fact::RhoBounded, Fact::RhoUnbounded, Fact::AlphaBounded, Fact::LimsupPsi,
                 Fact::TwoPointFloor, Fact::DiamondHolds})
    if (name == fact_name(f)) return f;
  throw Error(ErrorCode::Config, "unknown declared fact '" + name + "'");
}

struct MeasureFamily::Cache {
  std::mutex mutex;
  std::map<std::size_t, std::unique_ptr<const CoordMeasure>> coords;
};

MeasureFamily::MeasureFamily(BaseSeq base, FamilyKind kind)
    : base_(std::move(base)), kind_(kind), cache_(std::make_shared<Cache>()) {
  if (base_.bounded())
    declarations_.push_back({Fact::AlphaBounded, 1, "base rule is constant or periodic", true});
}

namespace {

Rational big(std::uint64_t v) { return Rational(Integer(std::to_string(v))); }

// mu(0) = 1 - 1/m, every other digit 1/(m (alpha - 1)).
CoordMeasure heavy_zero(std::uint64_t alpha, const Integer& m) {
  Rational heavy = 1 - Rational(1, m);
  Rational light = Rational(1, m) / big(alpha - 1);
  return CoordMeasure(alpha, {{0, heavy}}, light);
}

}  // namespace

MeasureFamily MeasureFamily::uniform(BaseSeq base) {
  MeasureFamily f(std::move(base), FamilyKind::Uniform);
  f.declarations_.push_back(
      {Fact::RhoBounded, 1, "uniform masses: eta_i = delta_i, so rho_n = 1 for all n", true});
  f.declarations_.push_back({Fact::DiamondHolds, 1, "uniform masses: every lambda is 1", true});
  return f;
}

MeasureFamily MeasureFamily::thm32(BaseSeq base) {
  MeasureFamily f(std::move(base), FamilyKind::Thm32);
  f.declarations_.push_back(
      {Fact::LimEta, 1, "thm32 construction: eta_n = 1 - 1/(2^(n+1)+1)", true});
  f.declarations_.push_back(
      {Fact::DiamondHolds, 1,
       "thm32 construction on a base with sup alpha_{n+1}/beta_{n+1} finite", true});
  return f;
}

MeasureFamily MeasureFamily::ex33(BaseSeq base) {
  if (base.rule() != BaseSeq::Rule::Power || base.offset() != 2)
    throw Error(ErrorCode::InvalidFamily, "ex33 requires the base alpha_n = 2^(n+2)");
  MeasureFamily f(std::move(base), FamilyKind::Ex33);
  f.declarations_.push_back(
      {Fact::LimEta, 0, "ex33 construction: |D_n| and alpha_n - |D_n| both grow", true});
  f.declarations_.push_back(
      {Fact::DiamondHolds, 1, "ex33 construction: continuity infimum at least 9/64", true});
  return f;
}

MeasureFamily MeasureFamily::thm36(BaseSeq base) {
  auto t = base.liminf();
  if (!t) throw Error(ErrorCode::InvalidFamily, "thm36 requires liminf alpha_n < infinity");
  MeasureFamily f(std::move(base), FamilyKind::Thm36);
  f.declarations_.push_back(
      {Fact::LimsupEta, 1, "thm36 construction: eta_{n_k} = 1 - 1/(k+3)", true});
  f.declarations_.push_back(
      {Fact::TwoPointFloor, Rational(1) / big(*t),
       "thm36 construction: infinitely many uniform coordinates with alpha_n = t", true});
  f.declarations_.push_back(
      {Fact::DiamondHolds, 1, "thm36 construction: continuity infimum at least 1/(2(t-1))",
       true});
  return f;
}

MeasureFamily MeasureFamily::thm37(BaseSeq base) {
  bool ok = false;
  switch (base.rule()) {
    case BaseSeq::Rule::Constant: ok = base.alpha(0) >= 4; break;
    case BaseSeq::Rule::Power: ok = base.offset() >= 2; break;
    case BaseSeq::Rule::Periodic: {
      auto ge4 = [](std::uint64_t a) { return a >= 4; };
      ok = std::all_of(base.prefix().begin(), base.prefix().end(), ge4) &&
           std::all_of(base.period().begin(), base.period().end(), ge4);
      break;
    }
  }
  if (!ok) throw Error(ErrorCode::InvalidFamily, "thm37 requires alpha_n >= 4 for all n");
  MeasureFamily f(std::move(base), FamilyKind::Thm37);
  f.declarations_.push_back(
      {Fact::LimsupPsi, 1, "thm37 construction: psi_n >= 1 - 1/(2^n+1)", true});
  f.declarations_.push_back(
      {Fact::TwoPointFloor, Rational(1, 4),
       "thm37 construction: mu_n(0) = mu_n(1) >= 1/4 for every n", true});
  f.declarations_.push_back(
      {Fact::DiamondHolds, 1,
       "thm37 construction on a base with sup alpha_{n+1}/beta_{n+1} finite", true});
  return f;
}

MeasureFamily MeasureFamily::custom(BaseSeq base, std::vector<std::vector<Rational>> masses,
                                    CustomTail tail, std::vector<Declaration> declarations) {
  if (tail == CustomTail::Repeat && masses.empty())
    throw Error(ErrorCode::InvalidFamily, "repeating custom tail needs at least one coordinate");
  MeasureFamily f(std::move(base), FamilyKind::Custom);
  f.custom_ = std::move(masses);
  f.tail_ = tail;
  for (auto& d : declarations) {
    d.from_construction = false;
    f.declarations_.push_back(std::move(d));
  }
  for (std::size_t i = 0; i < f.custom_.size(); ++i) {
    try {
      f.coord(i);
    } catch (const Error& e) {
      throw Error(ErrorCode::InvalidFamily,
                  "measure.masses[" + std::to_string(i) + "]: " + e.what());
    }
  }
  return f;
}

const Declaration* MeasureFamily::find(Fact fact) const {
  for (const auto& d : declarations_)
    if (d.fact == fact) return &d;
  return nullptr;
}

long MeasureFamily::thm36_index(std::size_t n) const {
  std::uint64_t t = *base_.liminf();
  if (base_.alpha(n) != t) return -1;
  std::size_t occurrence = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (base_.alpha(i) == t) ++occurrence;
  // alternate occurrences (1st, 3rd, ...) form {n_k}
  return occurrence % 2 == 0 ? static_cast<long>(occurrence / 2) : -1;
}

CoordMeasure MeasureFamily::build(std::size_t i) const {
  std::uint64_t alpha = base_.alpha(i);
  switch (kind_) {
    case FamilyKind::Uniform:
      return CoordMeasure::uniform(alpha);
    case FamilyKind::Thm32:
      return heavy_zero(alpha, pow2(static_cast<unsigned>(i + 1)) + 1);
    case FamilyKind::Ex33: {
      Integer m = pow2(static_cast<unsigned>(i + 2));
      std::uint64_t size_d = i + 1;
      Rational on_d = (1 - Rational(1, m)) / big(size_d);
      Rational off_d = Rational(1, m) / big(alpha - size_d);
      std::map<std::uint64_t, Rational> special;
      for (std::size_t s = 0; s <= i; ++s) special.emplace((std::uint64_t{1} << s) - 1, on_d);
      return CoordMeasure(alpha, std::move(special), off_d);
    }
    case FamilyKind::Thm36: {
      long k = thm36_index(i);
      if (k < 0) return CoordMeasure::uniform(alpha);
      return heavy_zero(alpha, Integer(k + 3));
    }
    case FamilyKind::Thm37: {
      Integer m = pow2(static_cast<unsigned>(i)) + 1;
      Rational heavy = (1 - Rational(1, m)) / 2;
      Rational light = Rational(1, m) / big(alpha - 2);
      return CoordMeasure(alpha, {{0, heavy}, {1, heavy}}, light);
    }
    case FamilyKind::Custom: {
      const std::vector<Rational>* row = nullptr;
      if (i < custom_.size())
        row = &custom_[i];
      else if (tail_ == CustomTail::Repeat)
        row = &custom_[i % custom_.size()];
      if (!row) return CoordMeasure::uniform(alpha);
      if (row->size() != alpha)
        throw Error(ErrorCode::InvalidFamily,
                    "coordinate " + std::to_string(i) + " lists " +
                        std::to_string(row->size()) + " masses but alpha = " +
                        std::to_string(alpha));
      return CoordMeasure::dense(*row);
    }
  }
  throw Error(ErrorCode::InvalidFamily, "unknown family");
}

const CoordMeasure& MeasureFamily::coord(std::size_t i) const {
  std::lock_guard<std::mutex> lock(cache_->mutex);
  auto it = cache_->coords.find(i);
  if (it == cache_->coords.end())
    it = cache_->coords.emplace(i, std::make_unique<const CoordMeasure>(build(i))).first;
  return *it->second;
}

std::vector<Rational> MeasureFamily::masses(std::size_t i, std::uint64_t limit) const {
  const CoordMeasure& c = coord(i);
  if (c.alpha() > limit)
    throw Error(ErrorCode::SizeLimit, "alpha(" + std::to_string(i) + ") too large to list");
  return c.dense_masses();
}

std::pair<Rational, Rational> MeasureFamily::eta_delta(std::size_t i) const {
  const CoordMeasure& c = coord(i);
  return {c.eta(), c.delta()};
}

Rational MeasureFamily::lambda(std::size_t i, std::uint64_t j) const {
  const CoordMeasure& c = coord(i);
  if (j >= c.alpha()) throw Error(ErrorCode::OutOfRange, "digit outside A_i");
  return c.lambda(j);
}

Rational MeasureFamily::rho(std::size_t n) const {
  Rational out = 1;
  for (std::size_t i = 0; i <= n; ++i) out *= coord(i).eta() / coord(i).delta();
  return out;
}

DiamondResult MeasureFamily::diamond_inf(std::size_t horizon) const {
  if (horizon < 1) throw Error(ErrorCode::InvalidArgument, "diamond horizon must be >= 1");
  DiamondResult out;
  Rational prefix = coord(0).lambda(0);
  for (std::size_t l = 1; l <= horizon; ++l) {
    auto [v, j] = coord(l).min_lambda();
    Rational value = v * prefix;
    if (l == 1 || value < out.value) {
      out.value = value;
      out.argmin_l = l;
      out.argmin_j = j;
    }
    out.running.push_back(out.value);
    prefix *= coord(l).lambda(0);
  }
  return out;
}

Rational MeasureFamily::nonatomic_product(std::size_t horizon) const {
  Rational out = 1;
  for (std::size_t i = 0; i <= horizon; ++i) out *= coord(i).eta();
  return out;
}

}  // namespace odolin
