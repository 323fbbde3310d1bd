// decide.hpp -- end-to-end local-unitary equivalence decisions.
#pragma once

#include <optional>
#include <string>

#include "blochlu/invariants.hpp"
#include "blochlu/qstate.hpp"

namespace blochlu {

struct DecideConfig {
  double invariant_rtol = 1e-8;   // invariant and spectrum comparison
  double invariant_atol = 1e-12;
  double verify_tol = 1e-7;       // conjugation residual accepted as proof
  double rank_tol = 1e-10;        // genericity rank threshold
  double reconstruct_tol = 1e-6;  // rotation fit residual over a family
  Tolerances tolerances{};        // extraction and degeneracy gating
  bool extended = false;          // extended ThreeQubit90 comparison
};

struct MatchReport {
  bool matched = true;
  std::size_t first_index = 0;
  std::string first_label;
  double value_a = 0.0;
  double value_b = 0.0;
  double max_violation = 0.0;  // max |a-b| - allowance; <= 0 when matched
};

// Entrywise |a-b| <= atol + rtol*max(|a|,|b|); reports the first failing
// label. Throws SchemeMismatch when the vectors are not comparable.
MatchReport compare_invariants(const InvariantVector& a,
                               const InvariantVector& b, double rtol,
                               double atol);

enum class Verdict { Equivalent, Inequivalent, Inconclusive };

std::string verdict_name(Verdict v);

struct SeparatingInvariant {
  std::string label;
  double value_a = 0.0;
  double value_b = 0.0;
  double gap = 0.0;
};

struct Decision {
  Verdict verdict = Verdict::Inconclusive;
  std::optional<LocalUnitary> witness;          // Equivalent only
  std::optional<double> residual;               // conjugation distance
  std::optional<SeparatingInvariant> separating;  // Inequivalent only
  GenericityReport genericity_a, genericity_b;
  // Equivalent verdict reached on matching invariants alone, because no
  // proper (det +1) witness could be constructed and verified.
  bool certified_by_invariants_only = false;
  std::string detail;  // human-readable path note
};

struct WitnessResult {
  bool ok = false;
  LocalUnitary witness;
  std::string failure;  // diagnostics when !ok
};

// Rotation recovery per qubit: picks the best-conditioned vector triple of
// the qubit's orbit family (greedy max-volume, then |det|-ordered retries),
// solves basis -> primed basis, projects to the nearest rotation, and lifts
// through so3_to_su2. Requires both tensor sets generic (NotGeneric);
// returns diagnostics instead of an improper or ill-fitting witness.
WitnessResult reconstruct_witness(const BlochTensors& t,
                                  const BlochTensors& tp,
                                  const DecideConfig& cfg = {});

// Max-abs entry of rho_b - U rho_a U^dag for U the full tensor product.
double verify_witness(const DensityState& a, const DensityState& b,
                      const LocalUnitary& lu);

// The T1 = T2 = 0 two-qubit case: equivalence holds iff the descending
// singular values of the pair tensor agree; the witness comes from the two
// SVD rotation pairs with determinant signs repaired. Throws
// PreconditionViolated when a single-qubit vector is not negligible.
Decision degenerate_two_qubit_decide(const BlochTensors& t,
                                     const BlochTensors& tp,
                                     const DecideConfig& cfg = {});

// Full pipeline: identity short-circuit, global spectrum prefilter,
// tensor extraction, the degenerate two-qubit branch, scheme invariant
// comparison (mismatch is conclusive), genericity gating, witness
// reconstruction and verification. Throws QubitMismatch and
// UnsupportedQubitCount (N outside 2..4).
Decision decide_equivalence(const DensityState& a, const DensityState& b,
                            const DecideConfig& cfg = {});

}  // namespace blochlu
