// Acceptance gates for the library: one printed line per criterion, exit 0
// only if every criterion passes. All tolerances are pinned here.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "blochlu/decide.hpp"
#include "blochlu/io.hpp"
#include "blochlu/qstate.hpp"
#include "oracle.hpp"

using namespace blochlu;

namespace {

constexpr double kInvarianceRtol = 1e-8;
constexpr double kInvarianceAtol = 1e-12;
constexpr double kInvarianceBudgetSeconds = 30.0;
constexpr double kWitnessResidualTol = 1e-7;
constexpr double kHandValueTol = 1e-12;
constexpr double kIdentityTol = 1e-9;
constexpr double kRedundancyTol = 1e-9;
constexpr double kTraceGapFloor = 0.04;

bool g_all_pass = true;

void report(int id, bool pass, const std::string& text) {
  std::printf("criterion %d: %s - %s\n", id, pass ? "pass" : "FAIL",
              text.c_str());
  if (!pass) g_all_pass = false;
}

DensityState basis00(int n_qubits) {
  CVector v = CVector::Zero(1 << n_qubits);
  v(0) = 1.0;
  return pure_state_density(v);
}

DensityState cat(int n_qubits, double sign) {
  CVector v = CVector::Zero(1 << n_qubits);
  v(0) = 1.0 / std::sqrt(2.0);
  v(v.size() - 1) = sign / std::sqrt(2.0);
  return pure_state_density(v);
}

std::string seconds_since(
    const std::chrono::steady_clock::time_point& start) {
  const double s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f s", s);
  return buf;
}

// ---- 1: every scheme invariant is unchanged by local rotation ----
void criterion_invariance() {
  const auto start = std::chrono::steady_clock::now();
  int failures = 0, trials = 0;
  double worst = 0.0;
  for (const auto& [n, count] : {std::pair{2, 200}, std::pair{3, 50}}) {
    for (int k = 0; k < count; ++k, ++trials) {
      Rng rng(1000u + static_cast<std::uint64_t>(trials));
      const int rank = 1 + static_cast<int>(rng.bits() % (1u << n));
      DensityState s = random_density(n, rank, rng);
      DensityState s2 = apply_local_unitary(s, random_local_unitary(n, rng));
      InvariantVector a =
          invariants_for(extract_tensors(s), default_scheme(n));
      InvariantVector b =
          invariants_for(extract_tensors(s2), default_scheme(n));
      MatchReport mr =
          compare_invariants(a, b, kInvarianceRtol, kInvarianceAtol);
      if (!mr.matched) ++failures;
      worst = std::max(worst, mr.max_violation);
    }
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  const bool in_budget = elapsed < kInvarianceBudgetSeconds;
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "250 rotated states, %d invariant mismatches at rtol %.0e "
                "(worst slack %.2e, %.1f s)",
                failures, kInvarianceRtol, worst, elapsed);
  report(1, failures == 0 && in_budget, detail);
}

// ---- 2: equivalent pairs always end with a verified witness ----
void criterion_completeness() {
  const auto start = std::chrono::steady_clock::now();
  int bad = 0, certified_only = 0, trials = 0;
  double worst_residual = 0.0;
  for (const auto& [n, count] : {std::pair{2, 100}, std::pair{3, 25}}) {
    for (int k = 0; k < count; ++k, ++trials) {
      Rng rng(9000u + static_cast<std::uint64_t>(trials));
      DensityState s = random_density(n, 1 << n, rng);
      DensityState s2 = apply_local_unitary(s, random_local_unitary(n, rng));
      Decision d = decide_equivalence(s, s2);
      if (d.certified_by_invariants_only) ++certified_only;
      const bool ok = d.verdict == Verdict::Equivalent &&
                      d.witness.has_value() && d.residual.has_value() &&
                      *d.residual <= kWitnessResidualTol &&
                      !d.certified_by_invariants_only;
      if (!ok) ++bad;
      if (d.residual) worst_residual = std::max(worst_residual, *d.residual);
    }
  }
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "125 rotated pairs, %d without a verified witness, %d "
                "certified-only (worst residual %.2e, %s)",
                bad, certified_only, worst_residual,
                seconds_since(start).c_str());
  report(2, bad == 0 && certified_only == 0, detail);
}

// ---- 3: scheme cardinalities are exact ----
void criterion_cardinality() {
  Rng rng(3);
  const std::size_t n2 =
      two_qubit_invariants(extract_tensors(random_density(2, 4, rng))).size();
  const std::size_t n3 = three_qubit_invariants(
                             extract_tensors(random_density(3, 8, rng)))
                             .size();
  char detail[96];
  std::snprintf(detail, sizeof detail,
                "TwoQubit12 emits %zu entries, ThreeQubit90 emits %zu", n2,
                n3);
  report(3, n2 == 12 && n3 == 90, detail);
}

// ---- 4: hand-derivable values, cross-checked against the dense oracle ----
void criterion_hand_values() {
  double worst = 0.0;
  auto track = [&](double got, double want) {
    worst = std::max(worst, std::abs(got - want));
  };

  // |00><00|: the twelve invariants in list order.
  const double expected12[12] = {
      1.0 / 16,   1.0 / 256,  1.0 / 4096,  1.0 / 16,  1.0 / 256, 1.0 / 4096,
      1.0 / 64,   1.0 / 1024, 1.0 / 16384, 1.0 / 16,  1.0 / 256, 1.0 / 4096,
  };
  DensityState zz = basis00(2);
  InvariantVector lib12 = two_qubit_invariants(extract_tensors(zz));
  for (int i = 0; i < 12; ++i) track(lib12.values[i], expected12[i]);

  // Same quantities rebuilt from dense Kronecker traces only.
  {
    BlochTensors ot = oracle::all_tensors(zz);
    Eigen::Vector3d t1 = ot.single(1), t2 = ot.single(2);
    Eigen::Matrix3d m = ot.pair(1, 2);
    Eigen::Matrix3d mm = m * m.transpose();
    const double oracle12[12] = {
        t1.dot(t1),
        t1.dot(mm * t1),
        t1.dot(mm * mm * t1),
        t2.dot(t2),
        t2.dot(m.transpose() * m * t2),
        t2.dot(m.transpose() * m * m.transpose() * m * t2),
        t1.dot(m * t2),
        t1.dot(mm * m * t2),
        t1.dot(mm * mm * m * t2),
        mm.trace(),
        (mm * mm).trace(),
        (mm * mm * mm).trace(),
    };
    for (int i = 0; i < 12; ++i) track(oracle12[i], expected12[i]);
  }

  // Bell pair: power-sum traces of the pair tensor.
  {
    InvariantVector bell =
        two_qubit_invariants(extract_tensors(cat(2, 1.0)));
    track(bell.values[9], 0.1875);
    track(bell.values[10], 3.0 / 256);
    track(bell.values[11], 3.0 / 4096);
    Eigen::Matrix3d m = oracle::all_tensors(cat(2, 1.0)).pair(1, 2);
    track((m * m.transpose()).trace(), 0.1875);
  }

  // GHZ: squared Frobenius norm of the 3x9 fold of the triple tensor.
  {
    BlochTensors t = extract_tensors(cat(3, 1.0));
    track(power_sums(fold(t, 0b111u, 0b001u).matrix *
                         fold(t, 0b111u, 0b001u).matrix.transpose(),
                     1)[0],
          0.0625);
    track(oracle::all_tensors(cat(3, 1.0)).vec(0b111u).squaredNorm(), 0.0625);
  }

  char detail[128];
  std::snprintf(detail, sizeof detail,
                "|00>, Bell, and GHZ values match hand derivations within "
                "%.0e (worst %.2e)",
                kHandValueTol, worst);
  report(4, worst < kHandValueTol, detail);
}

// ---- 5: power-sum translations and the 3x3 matrix identity ----
void criterion_symmetric_identities() {
  Rng rng(55);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const double l1 = 2.0 * rng.uniform() - 1.0;
    const double l2 = 2.0 * rng.uniform() - 1.0;
    const double l3 = 2.0 * rng.uniform() - 1.0;
    auto p = [&](int a) {
      return std::pow(l1, a) + std::pow(l2, a) + std::pow(l3, a);
    };
    Elementary3 e = elementary_from_power(p(1), p(2), p(3));
    worst = std::max(worst, std::abs(e.e1 - (l1 + l2 + l3)));
    worst = std::max(worst,
                     std::abs(e.e2 - (l1 * l2 + l1 * l3 + l2 * l3)));
    worst = std::max(worst, std::abs(e.e3 - l1 * l2 * l3));
    // Fourth power sum from the first three.
    const double p1 = p(1), p2 = p(2), p3 = p(3);
    const double p4 = p1 * p1 * p1 * p1 / 6.0 - p1 * p1 * p2 +
                      p2 * p2 / 2.0 + 4.0 * p1 * p3 / 3.0;
    worst = std::max(worst, std::abs(p4 - p(4)));
  }

  double worst_ch = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    RMatrix g(3, 3);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) g(r, c) = 2.0 * rng.uniform() - 1.0;
    RMatrix m = 0.5 * (g + g.transpose());
    worst_ch = std::max(worst_ch, cayley_hamilton_residual(m));
  }

  char detail[160];
  std::snprintf(detail, sizeof detail,
                "1000 eigenvalue triples (worst %.2e) and 1000 symmetric "
                "matrices (worst residual %.2e) within %.0e",
                worst, worst_ch, kIdentityTol);
  report(5, worst < kIdentityTol && worst_ch < kIdentityTol, detail);
}

// ---- 6: third operator powers reduce to lower entries ----
void criterion_redundancy() {
  double worst = 0.0;
  int generic_states = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Rng rng(6000u + static_cast<std::uint64_t>(trial));
    BlochTensors t = extract_tensors(random_density(2, 4, rng));
    if (!genericity(t).generic) continue;
    ++generic_states;
    Eigen::Vector3d t1 = t.single(1), t2 = t.single(2);
    Eigen::Matrix3d m = t.pair(1, 2);
    Eigen::Matrix3d mm = m * m.transpose();   // acts on qubit-1 vectors
    Eigen::Matrix3d k = m.transpose() * m;    // acts on qubit-2 vectors
    std::vector<double> p = power_sums(mm, 3);
    Elementary3 e = elementary_from_power(p[0], p[1], p[2]);
    // The cube of the operator is a fixed combination of lower powers, so
    // each beta=3 inner product reduces to beta=0..2 entries.
    Eigen::Matrix3d mm3 = mm * mm * mm;
    Eigen::Matrix3d reduced = e.e1 * mm * mm - e.e2 * mm +
                              e.e3 * Eigen::Matrix3d::Identity();
    Eigen::Matrix3d k3 = k * k * k;
    Eigen::Matrix3d kred = e.e1 * k * k - e.e2 * k +
                           e.e3 * Eigen::Matrix3d::Identity();
    worst = std::max(worst, std::abs(t1.dot(mm3 * t1) - t1.dot(reduced * t1)));
    worst = std::max(worst, std::abs(t2.dot(k3 * t2) - t2.dot(kred * t2)));
    worst = std::max(worst, std::abs(t1.dot(mm3 * m * t2) -
                                     t1.dot(reduced * m * t2)));
  }
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "beta=3 entries reduce to lower powers on %d generic states "
                "(worst %.2e, tol %.0e)",
                generic_states, worst, kRedundancyTol);
  report(6, worst < kRedundancyTol && generic_states == 100, detail);
}

// ---- 7: vanishing single-qubit vectors route through the SVD branch ----
void criterion_degenerate() {
  Decision eq = decide_equivalence(cat(2, 1.0), cat(2, -1.0));
  const bool eq_ok = eq.verdict == Verdict::Equivalent &&
                     eq.witness.has_value() && eq.residual.has_value() &&
                     *eq.residual <= kWitnessResidualTol;

  DensityState mixed = validate_density(
      0.5 * cat(2, 1.0).matrix + 0.5 * CMatrix::Identity(4, 4) / 4.0);
  Decision ne = degenerate_two_qubit_decide(extract_tensors(cat(2, 1.0)),
                                            extract_tensors(mixed));
  const double gap =
      ne.separating ? ne.separating->gap : 0.0;
  const bool ne_ok = ne.verdict == Verdict::Inequivalent &&
                     ne.separating.has_value() && gap >= kTraceGapFloor &&
                     std::abs(gap - 9.0 / 64) < kHandValueTol;

  char detail[160];
  std::snprintf(detail, sizeof detail,
                "sign-flipped Bell pair verified (residual %.2e); Werner "
                "mixture separated with trace gap %.6f >= %.2f",
                eq.residual.value_or(-1.0), gap, kTraceGapFloor);
  report(7, eq_ok && ne_ok, detail);
}

// ---- 8: independent states are never declared equivalent ----
void criterion_discrimination() {
  int equivalent = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Rng ra(70000u + 2u * static_cast<std::uint64_t>(trial));
    Rng rb(70001u + 2u * static_cast<std::uint64_t>(trial));
    DensityState a = random_density(2, 4, ra);
    DensityState b = random_density(2, 4, rb);
    Decision d = decide_equivalence(a, b);
    if (d.verdict != Verdict::Inequivalent) ++equivalent;
  }
  char detail[128];
  std::snprintf(detail, sizeof detail,
                "100 independent full-rank pairs, %d not separated",
                equivalent);
  report(8, equivalent == 0, detail);
}

}  // namespace

int main() {
  try {
    criterion_invariance();
    criterion_completeness();
    criterion_cardinality();
    criterion_hand_values();
    criterion_symmetric_identities();
    criterion_redundancy();
    criterion_degenerate();
    criterion_discrimination();
  } catch (const std::exception& e) {
    std::printf("acceptance aborted: %s\n", e.what());
    return 1;
  }
  std::printf("acceptance: %s\n", g_all_pass ? "all criteria pass" : "FAILED");
  return g_all_pass ? 0 : 1;
}
