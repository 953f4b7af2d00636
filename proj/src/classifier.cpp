#include "odolin/classifier.hpp"

#include <algorithm>

#include "odolin/error.hpp"
#include "odolin/shift_disjoint.hpp"

namespace odolin {

namespace {

Integer big(std::uint64_t v) { return Integer(std::to_string(v)); }

Rational abs_diff(const Rational& a, const Rational& b) { return a > b ? a - b : b - a; }

std::string describe(const Declaration& d) {
  std::string what;
  switch (d.fact) {
    case Fact::LimEta: what = "lim eta_i = " + to_string(d.value); break;
    case Fact::LimsupEta: what = "limsup eta_i = " + to_string(d.value); break;
    case Fact::LimOneMinusEtaOverAlpha:
      what = "lim (1 - eta_i)/alpha_i = " + to_string(d.value);
      break;
    case Fact::RhoBounded: what = "rho_n bounded"; break;
    case Fact::RhoUnbounded: what = "rho_n unbounded"; break;
    case Fact::AlphaBounded: what = "alpha_i bounded"; break;
    case Fact::LimsupPsi: what = "limsup psi_{i,j} = " + to_string(d.value); break;
    case Fact::TwoPointFloor:
      what = "two digits with mass >= " + to_string(d.value) + " on infinitely many coordinates";
      break;
    case Fact::DiamondHolds: what = "continuity infimum positive"; break;
  }
  std::string source = d.from_construction ? "construction" : "user assertion, unverified";
  if (!d.justification.empty()) source += ": " + d.justification;
  return "declared " + what + " [" + source + "]";
}

struct Claims {
  std::vector<std::string> mixing_yes, mixing_no, trans_yes, trans_no;
};

}  // namespace

const char* status_name(Status s) noexcept {
  switch (s) {
    case Status::CertifiedYes: return "certified-yes";
    case Status::CertifiedNo: return "certified-no";
    case Status::EvidenceLeaning: return "evidence-leaning";
    case Status::Unknown: return "unknown";
  }
  return "?";
}

EvidenceTable evidence(const MeasureFamily& family, std::size_t horizon, const Thresholds& th) {
  if (horizon < 1) throw Error(ErrorCode::InvalidArgument, "horizon must be >= 1");
  EvidenceTable t;
  t.horizon = horizon;
  DiamondResult diamond = family.diamond_inf(horizon);
  Rational rho = 1;
  for (std::size_t i = 0; i <= horizon; ++i) {
    const CoordMeasure& mu = family.coord(i);
    EvidenceRow row;
    row.i = i;
    row.alpha = mu.alpha();
    row.eta = mu.eta();
    row.delta = mu.delta();
    row.one_minus_eta_over_alpha = (1 - mu.eta()) / big(mu.alpha());
    rho *= mu.eta() / mu.delta();
    row.rho = rho;
    row.lambda0 = mu.lambda(0);
    if (i >= 1) row.diamond_running = diamond.running[i - 1];
    if (mu.alpha() <= th.psi_cap) {
      ShiftSolution s = psi_single(family, i, th.psi_cap);
      row.psi = s.value;
      row.psi_k = s.k;
    } else {
      t.psi_omitted.push_back(i);
    }
    t.rows.push_back(std::move(row));
  }
  const BaseSeq& base = family.base();
  for (std::size_t span = 1; span <= th.range_span; ++span) {
    for (std::size_t i = 0; i + span <= horizon; ++i) {
      if (base.range_product(i, i + span) > big(th.range_cap)) continue;
      ShiftSolution s = psi_range(family, i, i + span, std::nullopt, th.range_cap);
      t.psi_ranges.push_back({i, i + span, s.value, s.k});
    }
  }
  return t;
}

Verdict classify(const MeasureFamily& family, std::size_t horizon, const Thresholds& th) {
  Verdict v;
  v.evidence = evidence(family, horizon, th);

  if (const Declaration* d = family.find(Fact::DiamondHolds)) {
    v.continuous = true;
    v.continuity_basis = describe(*d);
  } else {
    DiamondResult di = family.diamond_inf(horizon);
    if (di.value > 0) {
      v.continuous = true;
      v.continuity_basis = "horizon minimum " + to_string(di.value) + " at l = " +
                           std::to_string(di.argmin_l) + " (finite evidence)";
    }
  }
  if (!v.continuous) {
    v.notes.push_back("operator not established continuous; no dynamics rules applied");
    return v;
  }

  Claims c;
  auto fire = [&](std::string id, std::string condition, std::vector<const Declaration*> used,
                  std::string conclusion) {
    RuleFired r{std::move(id), std::move(condition), {}, std::move(conclusion)};
    for (const Declaration* d : used) r.inputs.push_back(describe(*d));
    v.rules.push_back(std::move(r));
    return v.rules.back().id;
  };

  const Declaration* rho_bounded = family.find(Fact::RhoBounded);
  const Declaration* lim_eta = family.find(Fact::LimEta);
  const Declaration* limsup_eta = family.find(Fact::LimsupEta);
  const Declaration* alpha_bounded = family.find(Fact::AlphaBounded);
  const Declaration* gap = family.find(Fact::LimOneMinusEtaOverAlpha);
  const Declaration* floor = family.find(Fact::TwoPointFloor);
  const Declaration* limsup_psi = family.find(Fact::LimsupPsi);

  if (rho_bounded)
    c.trans_no.push_back(fire("rho-bounded-not-transitive",
                              "transitivity requires limsup_n rho_n = infinity", {rho_bounded},
                              "not transitive"));
  if (lim_eta && lim_eta->value == 1)
    c.mixing_yes.push_back(fire("eta-limit-one-mixing",
                                "lim_i eta_i = 1 gives eta_i eta_(i+1) > 1 - eps from some l on, "
                                "so two-coordinate sets work for every large k",
                                {lim_eta}, "mixing"));
  if (alpha_bounded) {
    for (const Declaration* d : {lim_eta, limsup_eta})
      if (d && d->value < 1)
        c.mixing_no.push_back(fire("bounded-base-mixing-iff-eta-to-one",
                                   "for bounded alpha_i, mixing iff lim_i eta_i = 1",
                                   {alpha_bounded, d}, "not mixing"));
  }
  if (gap && gap->value > 0)
    c.mixing_no.push_back(fire("mixing-needs-vanishing-gap",
                               "mixing requires lim_i (1 - eta_i)/alpha_i = 0", {gap},
                               "not mixing"));
  if (floor && floor->value > 0)
    c.mixing_no.push_back(fire("two-point-floor-not-mixing",
                               "two digits a, b with min(mu_l(a), mu_l(b)) >= c > 0 for "
                               "infinitely many l: every shift m = |a - b| beta_l meets B",
                               {floor}, "not mixing"));
  if (limsup_psi) {
    if (limsup_psi->value == 1)
      c.trans_yes.push_back(fire("psi-limsup-transitivity",
                                 "transitive iff limsup_{i<=j} psi_{i,j} = 1", {limsup_psi},
                                 "transitive"));
    else
      c.trans_no.push_back(fire("psi-limsup-transitivity",
                                "transitive iff limsup_{i<=j} psi_{i,j} = 1", {limsup_psi},
                                "not transitive"));
  }
  if (limsup_eta && limsup_eta->value == 1)
    c.trans_yes.push_back(fire("eta-limsup-transitivity", "limsup_i eta_i = 1 implies transitive",
                               {limsup_eta}, "transitive"));

  // mixing implies transitive, both ways round
  if (!c.mixing_yes.empty() && c.trans_yes.empty()) {
    RuleFired r{"mixing-implies-transitive", "every mixing operator is transitive",
                {"rule " + c.mixing_yes.front()}, "transitive"};
    v.rules.push_back(r);
    c.trans_yes.push_back(r.id);
  }
  if (!c.trans_no.empty() && c.mixing_no.empty()) {
    RuleFired r{"mixing-implies-transitive", "every mixing operator is transitive",
                {"rule " + c.trans_no.front()}, "not mixing"};
    v.rules.push_back(r);
    c.mixing_no.push_back(r.id);
  }

  auto join = [](const std::vector<std::string>& a) {
    std::string s;
    for (const auto& x : a) s += (s.empty() ? "" : ", ") + x;
    return s;
  };
  if (!c.mixing_yes.empty() && !c.mixing_no.empty())
    throw Error(ErrorCode::InconsistentDeclarations,
                "mixing certified by " + join(c.mixing_yes) + " and refuted by " +
                    join(c.mixing_no));
  if (!c.trans_yes.empty() && !c.trans_no.empty())
    throw Error(ErrorCode::InconsistentDeclarations,
                "transitivity certified by " + join(c.trans_yes) + " and refuted by " +
                    join(c.trans_no));

  if (!c.mixing_yes.empty()) v.mixing = Status::CertifiedYes;
  if (!c.mixing_no.empty()) v.mixing = Status::CertifiedNo;
  if (!c.trans_yes.empty()) v.transitive = Status::CertifiedYes;
  if (!c.trans_no.empty()) v.transitive = Status::CertifiedNo;

  const auto& rows = v.evidence.rows;
  if (v.mixing == Status::Unknown) {
    std::size_t quarter = std::max<std::size_t>(1, horizon / 4);
    bool near = std::all_of(rows.end() - static_cast<long>(quarter), rows.end(),
                            [&](const EvidenceRow& r) { return r.eta >= 1 - th.eta_gap; });
    if (near) {
      v.mixing = Status::EvidenceLeaning;
      v.notes.push_back("mixing-leaning: eta_i within " + to_string(th.eta_gap) +
                        " of 1 over the last " + std::to_string(quarter) +
                        " coordinates (not conclusive)");
    } else if (!alpha_bounded && lim_eta && lim_eta->value < 1) {
      v.notes.push_back("mixing left open: unbounded base with lim eta_i < 1");
    }
  }
  if (v.transitive == Status::Unknown) {
    std::optional<Rational> best;
    for (const auto& r : rows)
      if (r.psi && (!best || *r.psi > *best)) best = r.psi;
    for (const auto& s : v.evidence.psi_ranges)
      if (!best || s.value > *best) best = s.value;
    if (best && *best >= 1 - th.psi_gap) {
      v.transitive = Status::EvidenceLeaning;
      v.notes.push_back("transitive-leaning: sampled psi reaches " + to_string(*best) +
                        " (not conclusive)");
    } else if (v.mixing == Status::EvidenceLeaning) {
      v.transitive = Status::EvidenceLeaning;
      v.notes.push_back("transitive-leaning: follows the mixing-leaning evidence");
    }
  }
  return v;
}

std::vector<std::string> consistency_check(const MeasureFamily& family, std::size_t horizon) {
  std::vector<std::string> out;
  const std::size_t half = horizon / 2;
  auto eta = [&](std::size_t i) { return family.coord(i).eta(); };
  auto gap = [&](std::size_t i) {
    const CoordMeasure& mu = family.coord(i);
    return Rational((1 - mu.eta()) / big(mu.alpha()));
  };
  auto closest = [&](auto&& f, std::size_t lo, std::size_t hi, const Rational& target) {
    Rational best = abs_diff(f(lo), target);
    for (std::size_t i = lo + 1; i <= hi; ++i) best = std::min(best, abs_diff(f(i), target));
    return best;
  };
  for (const Declaration& d : family.declarations()) {
    switch (d.fact) {
      case Fact::LimEta:
      case Fact::LimOneMinusEtaOverAlpha: {
        const char* name = d.fact == Fact::LimEta ? "eta" : "(1 - eta)/alpha";
        Rational early = d.fact == Fact::LimEta ? abs_diff(eta(half), d.value)
                                                : abs_diff(gap(half), d.value);
        Rational late = d.fact == Fact::LimEta ? abs_diff(eta(horizon), d.value)
                                               : abs_diff(gap(horizon), d.value);
        if (late > early || (late == early && late != 0))
          out.push_back(std::string("declared lim ") + name + " = " + to_string(d.value) +
                        " but the distance at L = " + std::to_string(horizon) + " (" +
                        to_string(late) + ") does not shrink from L/2 (" + to_string(early) + ")");
        break;
      }
      case Fact::LimsupEta: {
        Rational early = closest(eta, 0, half, d.value);
        Rational late = closest(eta, half + 1 > horizon ? horizon : half + 1, horizon, d.value);
        if (late > early || (late == early && late != 0))
          out.push_back("declared limsup eta = " + to_string(d.value) +
                        " but the second half of the horizon gets no closer (" + to_string(late) +
                        " vs " + to_string(early) + ")");
        break;
      }
      case Fact::RhoUnbounded:
        if (family.rho(horizon) == family.rho(half))
          out.push_back("declared rho unbounded but rho is constant on [L/2, L]");
        break;
      case Fact::RhoBounded:
        if (family.rho(horizon) > family.rho(half))
          out.push_back("declared rho bounded but rho still grows on [L/2, L]: " +
                        to_string(family.rho(half)) + " -> " + to_string(family.rho(horizon)));
        break;
      case Fact::AlphaBounded:
        if (!family.base().bounded())
          out.push_back("declared alpha bounded on an unbounded base");
        break;
      case Fact::TwoPointFloor: {
        bool seen = false;
        for (std::size_t i = half; i <= horizon && !seen; ++i) {
          const CoordMeasure& mu = family.coord(i);
          if (mu.alpha() < 2) continue;
          seen = mu.mass(mu.argmax()) >= d.value && mu.mass(mu.second_argmax()) >= d.value;
        }
        if (!seen)
          out.push_back("declared two-digit floor " + to_string(d.value) +
                        " but no coordinate in [L/2, L] meets it");
        break;
      }
      case Fact::LimsupPsi:
      case Fact::DiamondHolds:
        break;
    }
  }
  return out;
}

}  // namespace odolin
