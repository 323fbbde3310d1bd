#include "blochlu/decide.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <set>

namespace blochlu {

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Equivalent: return "Equivalent";
    case Verdict::Inequivalent: return "Inequivalent";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

MatchReport compare_invariants(const InvariantVector& a,
                               const InvariantVector& b, double rtol,
                               double atol) {
  if (a.scheme != b.scheme || a.n_qubits != b.n_qubits ||
      a.size() != b.size() || a.labels != b.labels)
    throw Error(ErrorCode::SchemeMismatch,
                "invariant vectors are not comparable");
  MatchReport r;
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double va = a.values[i], vb = b.values[i];
    const double allowance = atol + rtol * std::max(std::abs(va), std::abs(vb));
    const double excess = std::abs(va - vb) - allowance;
    worst = std::max(worst, excess);
    if (excess > 0 && r.matched) {
      r.matched = false;
      r.first_index = i;
      r.first_label = a.labels[i];
      r.value_a = va;
      r.value_b = vb;
    }
  }
  r.max_violation = std::isfinite(worst) ? worst : 0.0;
  return r;
}

double verify_witness(const DensityState& a, const DensityState& b,
                      const LocalUnitary& lu) {
  if (a.n_qubits != b.n_qubits || lu.n_qubits() != a.n_qubits)
    throw Error(ErrorCode::ArityMismatch,
                "state and witness qubit counts differ");
  const CMatrix u = lu.full_matrix();
  const CMatrix moved = u * a.matrix * u.adjoint();
  return (b.matrix - moved).cwiseAbs().maxCoeff();
}

namespace {

// Columns of the evaluated R^3 family of one qubit.
Eigen::Matrix3Xd family_columns(const OrbitSet& fam, const BlochTensors& t) {
  Eigen::Matrix3Xd m(3, static_cast<Eigen::Index>(fam.words.size()));
  for (std::size_t c = 0; c < fam.words.size(); ++c)
    m.col(static_cast<Eigen::Index>(c)) = evaluate_word(fam.words[c], t);
  return m;
}

int column_rank(const Eigen::Matrix3Xd& m, double rank_tol) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  const double cutoff = rank_tol * std::max(1.0, sv.size() ? sv(0) : 0.0);
  int rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv(k) > cutoff) ++rank;
  return rank;
}

struct Triple {
  int a, b, c;
  double volume;
};

// Candidate bases: the greedy max-volume pick first, then all triples in
// descending |det| order, capped.
std::vector<Triple> candidate_triples(const Eigen::Matrix3Xd& v) {
  const int n = static_cast<int>(v.cols());
  std::vector<Triple> all;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c) {
        Eigen::Matrix3d m;
        m << v.col(a), v.col(b), v.col(c);
        const double vol = std::abs(m.determinant());
        if (vol > 0) all.push_back({a, b, c, vol});
      }
  std::sort(all.begin(), all.end(),
            [](const Triple& x, const Triple& y) { return x.volume > y.volume; });

  std::vector<Triple> out;
  // greedy: largest column, then largest area, then largest volume
  int c1 = 0;
  for (int k = 1; k < n; ++k)
    if (v.col(k).norm() > v.col(c1).norm()) c1 = k;
  int c2 = -1;
  double best_area = 0;
  for (int k = 0; k < n; ++k) {
    if (k == c1) continue;
    const double area = v.col(c1).cross(v.col(k)).norm();
    if (area > best_area) { best_area = area; c2 = k; }
  }
  int c3 = -1;
  double best_vol = 0;
  if (c2 >= 0) {
    for (int k = 0; k < n; ++k) {
      if (k == c1 || k == c2) continue;
      Eigen::Matrix3d m;
      m << v.col(c1), v.col(c2), v.col(k);
      const double vol = std::abs(m.determinant());
      if (vol > best_vol) { best_vol = vol; c3 = k; }
    }
  }
  std::set<std::array<int, 3>> seen;
  if (c3 >= 0 && best_vol > 0) {
    std::array<int, 3> key{std::min({c1, c2, c3}),
                           c1 + c2 + c3 - std::min({c1, c2, c3}) -
                               std::max({c1, c2, c3}),
                           std::max({c1, c2, c3})};
    seen.insert(key);
    out.push_back({key[0], key[1], key[2], best_vol});
  }
  for (const Triple& tr : all) {
    if (out.size() >= 64) break;
    if (seen.insert({tr.a, tr.b, tr.c}).second) out.push_back(tr);
  }
  return out;
}

}  // namespace

WitnessResult reconstruct_witness(const BlochTensors& t,
                                  const BlochTensors& tp,
                                  const DecideConfig& cfg) {
  if (t.n_qubits != tp.n_qubits)
    throw Error(ErrorCode::QubitMismatch, "tensor sets differ in qubit count");
  const int n = t.n_qubits;
  const std::vector<OrbitSet> families = families_for(n);

  WitnessResult result;
  for (int q = 1; q <= n; ++q) {
    const Mask me = Mask{1} << (q - 1);
    const OrbitSet* fam = nullptr;
    for (const OrbitSet& f : families)
      if (f.target == me && !f.words.empty() &&
          evaluate_word(f.words.front(), t).size() == 3) {
        fam = &f;
        break;
      }
    if (!fam)
      throw Error(ErrorCode::NotGeneric,
                  "no single-qubit family for qubit " + std::to_string(q));
    const Eigen::Matrix3Xd v = family_columns(*fam, t);
    const Eigen::Matrix3Xd vp = family_columns(*fam, tp);
    if (column_rank(v, cfg.rank_tol) < 3 || column_rank(vp, cfg.rank_tol) < 3)
      throw Error(ErrorCode::NotGeneric,
                  "family " + fam->label + " has rank below 3");

    bool found = false;
    int improper = 0;
    double best_residual = std::numeric_limits<double>::infinity();
    for (const Triple& tr : candidate_triples(v)) {
      Eigen::Matrix3d basis, primed;
      basis << v.col(tr.a), v.col(tr.b), v.col(tr.c);
      primed << vp.col(tr.a), vp.col(tr.b), vp.col(tr.c);
      // linear map sending basis to primed basis
      const Eigen::Matrix3d map =
          basis.transpose().fullPivLu().solve(primed.transpose()).transpose();
      Eigen::JacobiSVD<Eigen::Matrix3d> svd(
          map, Eigen::ComputeFullU | Eigen::ComputeFullV);
      const Eigen::Matrix3d o = svd.matrixU() * svd.matrixV().transpose();
      if (o.determinant() < 0) {
        ++improper;
        continue;
      }
      const double residual = (o * v - vp).cwiseAbs().maxCoeff();
      best_residual = std::min(best_residual, residual);
      if (residual <= cfg.reconstruct_tol) {
        result.witness.factors.push_back(so3_to_su2(o, cfg.tolerances));
        found = true;
        break;
      }
    }
    if (!found) {
      result.failure = "qubit " + std::to_string(q) +
                       ": no proper rotation fits the family (" +
                       std::to_string(improper) + " improper candidates" +
                       (std::isfinite(best_residual)
                            ? ", best residual " + fmt17(best_residual)
                            : "") +
                       ")";
      return result;
    }
  }
  result.ok = true;
  return result;
}

Decision degenerate_two_qubit_decide(const BlochTensors& t,
                                     const BlochTensors& tp,
                                     const DecideConfig& cfg) {
  if (t.n_qubits != 2 || tp.n_qubits != 2)
    throw Error(ErrorCode::WrongQubitCount,
                "the degenerate branch covers two qubits only");
  const double atol = cfg.tolerances.atol;
  for (const BlochTensors* s : {&t, &tp})
    for (int q = 1; q <= 2; ++q)
      if (s->single(q).norm() > atol)
        throw Error(ErrorCode::PreconditionViolated,
                    "single-qubit vector T" + std::to_string(q) +
                        " is not negligible");

  Decision d;
  d.detail = "degenerate branch (single-qubit vectors vanish)";
  const Eigen::Matrix3d a = t.pair(1, 2);
  const Eigen::Matrix3d ap = tp.pair(1, 2);
  Eigen::JacobiSVD<Eigen::Matrix3d> sa(a, Eigen::ComputeFullU |
                                              Eigen::ComputeFullV);
  Eigen::JacobiSVD<Eigen::Matrix3d> sb(ap, Eigen::ComputeFullU |
                                               Eigen::ComputeFullV);
  const Eigen::Vector3d sva = sa.singularValues();
  const Eigen::Vector3d svb = sb.singularValues();

  bool equal = true;
  for (int k = 0; k < 3; ++k) {
    const double allowance =
        cfg.invariant_atol +
        cfg.invariant_rtol * std::max(std::abs(sva(k)), std::abs(svb(k)));
    if (std::abs(sva(k) - svb(k)) > allowance) equal = false;
  }
  if (!equal) {
    d.verdict = Verdict::Inequivalent;
    const std::vector<double> pa = power_sums(a * a.transpose(), 3);
    const std::vector<double> pb = power_sums(ap * ap.transpose(), 3);
    for (int alpha = 1; alpha <= 3; ++alpha) {
      const double va = pa[alpha - 1], vb = pb[alpha - 1];
      const double allowance =
          cfg.invariant_atol +
          cfg.invariant_rtol * std::max(std::abs(va), std::abs(vb));
      if (std::abs(va - vb) > allowance) {
        d.separating = SeparatingInvariant{
            "tr(T12 T12')^" + std::to_string(alpha), va, vb,
            std::abs(va - vb)};
        break;
      }
    }
    if (!d.separating)
      d.separating = SeparatingInvariant{"sigma[1]", sva(0), svb(0),
                                         std::abs(sva(0) - svb(0))};
    d.detail += "; pair-tensor singular values differ";
    return d;
  }

  // witness from the SVD rotation pairs, determinant signs repaired on the
  // smallest singular direction
  const double du = sa.matrixU().determinant() * sb.matrixU().determinant();
  const double dv = sa.matrixV().determinant() * sb.matrixV().determinant();
  Eigen::Matrix3d sl = Eigen::Matrix3d::Identity();
  Eigen::Matrix3d sr = Eigen::Matrix3d::Identity();
  sl(2, 2) = du < 0 ? -1.0 : 1.0;
  sr(2, 2) = dv < 0 ? -1.0 : 1.0;
  const Eigen::Matrix3d o1 = sb.matrixU() * sl * sa.matrixU().transpose();
  const Eigen::Matrix3d o2 = sb.matrixV() * sr * sa.matrixV().transpose();

  const DensityState ra = reconstruct_density(t, cfg.tolerances);
  const DensityState rb = reconstruct_density(tp, cfg.tolerances);
  LocalUnitary lu;
  lu.factors = {so3_to_su2(o1, cfg.tolerances), so3_to_su2(o2, cfg.tolerances)};
  const double residual = verify_witness(ra, rb, lu);

  d.verdict = Verdict::Equivalent;
  if (residual <= cfg.verify_tol) {
    d.witness = lu;
    d.residual = residual;
    d.detail += "; singular values agree; witness verified";
  } else {
    d.certified_by_invariants_only = true;
    d.detail += "; singular values agree but no proper witness verified "
                "(conjugation residual " +
                fmt17(residual) + ")";
  }
  return d;
}

Decision decide_equivalence(const DensityState& a, const DensityState& b,
                            const DecideConfig& cfg) {
  if (a.n_qubits != b.n_qubits)
    throw Error(ErrorCode::QubitMismatch,
                "states have " + std::to_string(a.n_qubits) + " and " +
                    std::to_string(b.n_qubits) + " qubits");
  const int n = a.n_qubits;
  if (n < 2 || n > 4)
    throw Error(ErrorCode::UnsupportedQubitCount,
                "decisions cover 2 to 4 qubits, got " + std::to_string(n));

  const BlochTensors t = extract_tensors(a, cfg.tolerances);
  const BlochTensors tp = extract_tensors(b, cfg.tolerances);
  Decision d;
  d.genericity_a = genericity(t, cfg.rank_tol);
  d.genericity_b = genericity(tp, cfg.rank_tol);

  // identical matrices need no analysis
  if ((a.matrix - b.matrix).cwiseAbs().maxCoeff() <= cfg.tolerances.atol) {
    LocalUnitary lu;
    lu.factors.assign(static_cast<std::size_t>(n),
                      Eigen::Matrix2cd::Identity());
    d.verdict = Verdict::Equivalent;
    d.residual = verify_witness(a, b, lu);
    d.witness = std::move(lu);
    d.detail = "states agree entrywise; identity witness";
    return d;
  }

  // global spectra are conjugation-invariant
  Eigen::SelfAdjointEigenSolver<CMatrix> ea(a.matrix,
                                            Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<CMatrix> eb(b.matrix,
                                            Eigen::EigenvaluesOnly);
  for (Eigen::Index k = 0; k < ea.eigenvalues().size(); ++k) {
    const double la = ea.eigenvalues()(k), lb = eb.eigenvalues()(k);
    const double allowance =
        cfg.invariant_atol +
        cfg.invariant_rtol * std::max(std::abs(la), std::abs(lb));
    if (std::abs(la - lb) > allowance) {
      d.verdict = Verdict::Inequivalent;
      d.separating = SeparatingInvariant{
          "spectrum[" + std::to_string(k + 1) + "]", la, lb,
          std::abs(la - lb)};
      d.detail = "global eigenvalue spectra differ";
      return d;
    }
  }

  if (n == 2) {
    bool degenerate = true;
    for (const BlochTensors* s : {&t, &tp})
      for (int q = 1; q <= 2; ++q)
        if (s->single(q).norm() > cfg.tolerances.atol) degenerate = false;
    if (degenerate) {
      Decision dd = degenerate_two_qubit_decide(t, tp, cfg);
      dd.genericity_a = std::move(d.genericity_a);
      dd.genericity_b = std::move(d.genericity_b);
      return dd;
    }
  }

  const Scheme scheme = default_scheme(n);
  const InvariantVector ia = invariants_for(t, scheme, cfg.extended);
  const InvariantVector ib = invariants_for(tp, scheme, cfg.extended);
  const MatchReport mr =
      compare_invariants(ia, ib, cfg.invariant_rtol, cfg.invariant_atol);
  if (!mr.matched) {
    d.verdict = Verdict::Inequivalent;
    d.separating =
        SeparatingInvariant{mr.first_label, mr.value_a, mr.value_b,
                            std::abs(mr.value_a - mr.value_b)};
    d.detail = "invariant lists differ";
    return d;
  }

  if (!d.genericity_a.generic || !d.genericity_b.generic) {
    d.verdict = Verdict::Inconclusive;
    d.detail = "all invariants match but a state is not generic; "
               "equivalence is undecided at this degree";
    return d;
  }

  const WitnessResult wr = reconstruct_witness(t, tp, cfg);
  d.verdict = Verdict::Equivalent;
  if (wr.ok) {
    const double residual = verify_witness(a, b, wr.witness);
    if (residual <= cfg.verify_tol) {
      d.witness = wr.witness;
      d.residual = residual;
      d.detail = "invariants match; witness verified by conjugation";
      return d;
    }
    d.certified_by_invariants_only = true;
    d.detail = "invariants match; witness failed verification (residual " +
               fmt17(residual) + ")";
    return d;
  }
  d.certified_by_invariants_only = true;
  d.detail = "invariants match; " + wr.failure;
  return d;
}

}  // namespace blochlu
