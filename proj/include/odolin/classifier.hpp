#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "odolin/measures.hpp"
#include "odolin/rational.hpp"

namespace odolin {

enum class Status { CertifiedYes, CertifiedNo, EvidenceLeaning, Unknown };

const char* status_name(Status s) noexcept;

struct EvidenceRow {
  std::size_t i;
  std::uint64_t alpha;
  Rational eta;
  Rational delta;
  Rational one_minus_eta_over_alpha;
  Rational rho;
  Rational lambda0;
  /// Minimum of the continuity product over levels 1..i (none at i = 0).
  std::optional<Rational> diamond_running;
  /// psi_i and its shift; empty when alpha_i exceeds the size cap.
  std::optional<Rational> psi;
  std::uint64_t psi_k = 0;
};

struct PsiSample {
  std::size_t i;
  std::size_t j;
  Rational value;
  std::uint64_t k;
};

struct EvidenceTable {
  std::size_t horizon = 0;
  std::vector<EvidenceRow> rows;
  std::vector<PsiSample> psi_ranges;
  /// Coordinates whose psi_i was skipped because alpha_i > cap.
  std::vector<std::size_t> psi_omitted;
};

struct Thresholds {
  /// eta within this of 1 over the last quarter of the horizon: mixing-leaning.
  Rational eta_gap = Rational(1, 100);
  /// some sampled psi within this of 1: transitive-leaning.
  Rational psi_gap = Rational(1, 100);
  /// cap on alpha_i for the psi_i row.
  std::uint64_t psi_cap = std::uint64_t{1} << 14;
  /// cap on N and on j - i for sampled psi_{i,j}.
  std::uint64_t range_cap = 256;
  std::size_t range_span = 2;
};

struct RuleFired {
  std::string id;
  std::string condition;
  std::vector<std::string> inputs;
  std::string conclusion;
};

struct Verdict {
  Status mixing = Status::Unknown;
  Status transitive = Status::Unknown;
  bool continuous = false;
  std::string continuity_basis;
  std::vector<RuleFired> rules;
  EvidenceTable evidence;
  std::vector<std::string> notes;
};

/// Rows 0..L; throws InvalidArgument for L < 1.
EvidenceTable evidence(const MeasureFamily& family, std::size_t horizon,
                       const Thresholds& th = {});

/// Certified statuses come only from declarations; horizon data can at most
/// lean. Throws InconsistentDeclarations when declared facts force opposite
/// conclusions.
Verdict classify(const MeasureFamily& family, std::size_t horizon, const Thresholds& th = {});

/// Declarations the horizon data visibly contradicts. Never certifies
/// anything.
std::vector<std::string> consistency_check(const MeasureFamily& family, std::size_t horizon);

}  // namespace odolin
