#include "blochlu/invariants.hpp"

#include <Eigen/SVD>

namespace blochlu {

std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::TwoQubit12: return "TwoQubit12";
    case Scheme::ThreeQubit90: return "ThreeQubit90";
    case Scheme::GramGeneric: return "GramGeneric";
  }
  return "?";
}

namespace {

void require_qubits(const BlochTensors& t, int n, const char* what) {
  if (t.n_qubits != n)
    throw Error(ErrorCode::WrongQubitCount,
                std::string(what) + " needs " + std::to_string(n) +
                    " qubits, got " + std::to_string(t.n_qubits));
}

void push(InvariantVector& out, std::string label, double value) {
  out.labels.push_back(std::move(label));
  out.values.push_back(value);
}

std::string pair_sym(int i, int j) {
  return "T" + std::to_string(i) + std::to_string(j);
}

std::string pivot_sym(int n_qubits, int pivot) {
  const Mask full = (Mask{1} << n_qubits) - 1;
  return atom_to_string(Atom{full, Mask{1} << (pivot - 1)});
}

// The 9 inner-product entries of the (i,j) pair marginal:
// <Ti,(M)^b Ti>, <Tj,(M^t)^b Tj>, <Ti,(M)^b Tij Tj> for M = Tij Tij',
// b = 0,1,2. explicit_zero spells the b = 0 power out in the label.
void append_pair_group(InvariantVector& out, const BlochTensors& t, int i,
                       int j, bool explicit_zero) {
  const Eigen::Vector3d ti = t.single(i), tj = t.single(j);
  const Eigen::Matrix3d a = t.pair(i, j);
  const Eigen::Matrix3d m = a * a.transpose();
  const Eigen::Matrix3d mt = a.transpose() * a;
  const std::string p = pair_sym(i, j);
  const std::string fwd = "(" + p + " " + p + "')";
  const std::string bwd = "(" + p + "' " + p + ")";
  const auto power_label = [&](const std::string& op, int b,
                               const std::string& head,
                               const std::string& tail) {
    if (b == 0 && !explicit_zero)
      return "<" + head + "," + tail + ">";
    std::string rhs = op + "^" + std::to_string(b) + " " + tail;
    return "<" + head + "," + rhs + ">";
  };
  Eigen::Vector3d v = ti;
  for (int b = 0; b <= 2; ++b) {
    push(out, power_label(fwd, b, "T" + std::to_string(i), "T" + std::to_string(i)),
         ti.dot(v));
    v = m * v;
  }
  v = tj;
  for (int b = 0; b <= 2; ++b) {
    push(out, power_label(bwd, b, "T" + std::to_string(j), "T" + std::to_string(j)),
         tj.dot(v));
    v = mt * v;
  }
  v = a * tj;
  for (int b = 0; b <= 2; ++b) {
    push(out,
         power_label(fwd, b, "T" + std::to_string(i),
                     p + " T" + std::to_string(j)),
         ti.dot(v));
    v = m * v;
  }
}

void append_pair_traces(InvariantVector& out, const BlochTensors& t, int i,
                        int j) {
  const Eigen::Matrix3d a = t.pair(i, j);
  const std::vector<double> p = power_sums(a * a.transpose(), 3);
  const std::string sym = "(" + pair_sym(i, j) + " " + pair_sym(i, j) + "')";
  for (int b = 1; b <= 3; ++b)
    push(out, "tr" + sym + "^" + std::to_string(b), p[b - 1]);
}

// <Tc, L^k Tc> and <Tc, L^k F' Tp> for L = F'F, F the 3 x 9 pivot fold;
// c labels the complement pair tensor read as a 9-vector.
void append_nine_groups(InvariantVector& out, const BlochTensors& t, int pivot,
                        bool with_cross) {
  const Mask full = 0b111;
  const Mask me = Mask{1} << (pivot - 1);
  const Mask rest = full & ~me;
  const RMatrix f = fold(t, full, me).matrix;
  const RMatrix l = f.transpose() * f;
  const RVector vc = t.vec(rest);
  const std::string sym = pivot_sym(3, pivot);
  const std::string op = "(" + sym + "' " + sym + ")";
  const std::string cs = subset_label(rest);
  RVector u = vc;
  for (int k = 0; k <= 8; ++k) {
    push(out, "<" + cs + "," + op + "^" + std::to_string(k) + " " + cs + ">",
         vc.dot(u));
    u = l * u;
  }
  if (!with_cross) return;
  u = f.transpose() * t.single(pivot);
  for (int k = 0; k <= 8; ++k) {
    push(out,
         "<" + cs + "," + op + "^" + std::to_string(k) + " " + sym + "' T" +
             std::to_string(pivot) + ">",
         vc.dot(u));
    u = l * u;
  }
}

void append_fold_traces(InvariantVector& out, const BlochTensors& t,
                        int pivot) {
  const Mask full = 0b111;
  const Mask me = Mask{1} << (pivot - 1);
  const RMatrix f = fold(t, full, me).matrix;
  const std::vector<double> p = power_sums(f.transpose() * f, 9);
  const std::string sym = pivot_sym(3, pivot);
  for (int l = 1; l <= 9; ++l)
    push(out, "tr(" + sym + "' " + sym + ")^" + std::to_string(l), p[l - 1]);
}

}  // namespace

InvariantVector two_qubit_invariants(const BlochTensors& t) {
  require_qubits(t, 2, "TwoQubit12");
  InvariantVector out;
  out.scheme = Scheme::TwoQubit12;
  out.n_qubits = 2;
  append_pair_group(out, t, 1, 2, /*explicit_zero=*/false);
  append_pair_traces(out, t, 1, 2);
  return out;
}

InvariantVector three_qubit_invariants(const BlochTensors& t, bool extended) {
  require_qubits(t, 3, "ThreeQubit90");
  InvariantVector out;
  out.scheme = Scheme::ThreeQubit90;
  out.n_qubits = 3;
  out.extended = extended;
  // (a) pair (1,2) inner products
  append_pair_group(out, t, 1, 2, /*explicit_zero=*/false);
  // (b) pair traces
  append_pair_traces(out, t, 1, 2);
  append_pair_traces(out, t, 1, 3);
  append_pair_traces(out, t, 2, 3);
  // (c) pivot fold moments of the single-qubit vectors
  for (int i = 1; i <= 3; ++i) {
    const Mask me = Mask{1} << (i - 1);
    const RMatrix f = fold(t, 0b111, me).matrix;
    const Eigen::Matrix3d m = f * f.transpose();
    const Eigen::Vector3d ti = t.single(i);
    const std::string op = "(" + pivot_sym(3, i) + " " + pivot_sym(3, i) + "')";
    Eigen::Vector3d v = ti;
    for (int k = 0; k <= 8; ++k) {
      push(out,
           "<T" + std::to_string(i) + "," + op + "^" + std::to_string(k) +
               " T" + std::to_string(i) + ">",
           ti.dot(v));
      v = m * v;
    }
  }
  // (d) + (e) pivot-1 nine-dimensional groups
  append_nine_groups(out, t, 1, /*with_cross=*/true);
  // (f) fold traces
  for (int i = 1; i <= 3; ++i) append_fold_traces(out, t, i);
  if (extended) {
    append_pair_group(out, t, 1, 3, /*explicit_zero=*/true);
    append_pair_group(out, t, 2, 3, /*explicit_zero=*/true);
    append_nine_groups(out, t, 2, /*with_cross=*/true);
    append_nine_groups(out, t, 3, /*with_cross=*/true);
  }
  return out;
}

std::vector<OrbitSet> families_for(int n_qubits) {
  switch (n_qubits) {
    case 2: return two_qubit_orbits();
    case 3: return three_qubit_orbits();
    case 4: return four_qubit_families();
    default:
      throw Error(ErrorCode::UnsupportedQubitCount,
                  "orbit families cover 2 to 4 qubits, got " +
                      std::to_string(n_qubits));
  }
}

InvariantVector gram_invariants(const std::vector<OrbitSet>& families,
                                const BlochTensors& t) {
  InvariantVector out;
  out.scheme = Scheme::GramGeneric;
  out.n_qubits = t.n_qubits;
  for (const OrbitSet& fam : families) {
    std::vector<RVector> vecs;
    vecs.reserve(fam.words.size());
    for (const Word& w : fam.words) vecs.push_back(evaluate_word(w, t));
    for (std::size_t i = 1; i < vecs.size(); ++i)
      if (vecs[i].size() != vecs[0].size())
        throw Error(ErrorCode::DimensionMismatch,
                    "family " + fam.label + " mixes target dimensions");
    for (std::size_t i = 0; i < vecs.size(); ++i)
      for (std::size_t j = i; j < vecs.size(); ++j)
        push(out,
             "<" + fam.words[i].str() + "," + fam.words[j].str() + ">",
             vecs[i].dot(vecs[j]));
  }
  return out;
}

InvariantVector gram_invariants(const BlochTensors& t) {
  return gram_invariants(families_for(t.n_qubits), t);
}

Scheme default_scheme(int n_qubits) {
  switch (n_qubits) {
    case 2: return Scheme::TwoQubit12;
    case 3: return Scheme::ThreeQubit90;
    case 4: return Scheme::GramGeneric;
    default:
      throw Error(ErrorCode::UnsupportedQubitCount,
                  "invariant schemes cover 2 to 4 qubits, got " +
                      std::to_string(n_qubits));
  }
}

InvariantVector invariants_for(const BlochTensors& t, Scheme scheme,
                               bool extended) {
  switch (scheme) {
    case Scheme::TwoQubit12: return two_qubit_invariants(t);
    case Scheme::ThreeQubit90: return three_qubit_invariants(t, extended);
    case Scheme::GramGeneric: return gram_invariants(t);
  }
  throw Error(ErrorCode::BadValue, "unknown scheme");
}

GenericityReport genericity(const BlochTensors& t, double rank_tol) {
  GenericityReport report;
  report.rank_tol = rank_tol;
  report.generic = true;
  for (const OrbitSet& fam : families_for(t.n_qubits)) {
    std::vector<RVector> vecs;
    vecs.reserve(fam.words.size());
    for (const Word& w : fam.words) vecs.push_back(evaluate_word(w, t));
    RMatrix m(vecs[0].size(), static_cast<Eigen::Index>(vecs.size()));
    for (std::size_t c = 0; c < vecs.size(); ++c)
      m.col(static_cast<Eigen::Index>(c)) = vecs[c];
    Eigen::JacobiSVD<RMatrix> svd(m);
    const auto& sv = svd.singularValues();
    FamilyRank fr;
    fr.label = fam.label;
    fr.dimension = m.rows();
    const double cutoff = rank_tol * std::max(1.0, sv.size() ? sv(0) : 0.0);
    for (Eigen::Index k = 0; k < sv.size(); ++k) {
      fr.singular_values.push_back(sv(k));
      if (sv(k) > cutoff) ++fr.rank;
    }
    if (fr.dimension == 3 && fr.rank != 3) report.generic = false;
    report.families.push_back(std::move(fr));
  }
  return report;
}

}  // namespace blochlu
