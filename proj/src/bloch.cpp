#include "blochlu/bloch.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace blochlu {

std::vector<int> mask_qubits(Mask mask) {
  std::vector<int> qubits;
  for (int q = 1; mask != 0; ++q, mask >>= 1)
    if (mask & 1u) qubits.push_back(q);
  return qubits;
}

Mask mask_from_qubits(const std::vector<int>& qubits) {
  Mask mask = 0;
  for (int q : qubits) mask |= Mask{1} << (q - 1);
  return mask;
}

std::string subset_label(Mask mask) {
  std::string label = "T";
  for (int q : mask_qubits(mask)) label += static_cast<char>('0' + q);
  return label;
}

const RVector& BlochTensors::vec(Mask subset) const {
  auto it = tensors.find(subset);
  if (it == tensors.end())
    throw Error(ErrorCode::MissingTensor,
                subset_label(subset) + " not present");
  return it->second;
}

Eigen::Vector3d BlochTensors::single(int qubit) const {
  return vec(Mask{1} << (qubit - 1));
}

Eigen::Matrix3d BlochTensors::pair(int i, int j) const {
  const int a = std::min(i, j), b = std::max(i, j);
  const RVector& flat = vec(mask_from_qubits({a, b}));
  Eigen::Matrix3d m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m(r, c) = flat[3 * r + c];
  return i < j ? m : Eigen::Matrix3d(m.transpose());
}

namespace {

// Action of one Pauli word on a basis state: |i> -> coeff * |flip(i)>.
// Qubit q occupies bit (N - q), so qubit 1 is the most significant bit,
// matching the Kronecker-product ordering of factors.
struct PauliWord {
  std::uint64_t flip_mask = 0;             // bits toggled by sigma_x/sigma_y
  std::vector<std::pair<int, int>> site;   // (bit position, pauli index)

  Cplx coeff(std::uint64_t basis) const {
    Cplx c(1.0, 0.0);
    for (const auto& [bit, pauli] : site) {
      const bool one = (basis >> bit) & 1u;
      if (pauli == 2) c *= one ? Cplx(0, -1) : Cplx(0, 1);
      else if (pauli == 3 && one) c = -c;
    }
    return c;
  }
};

PauliWord make_word(int n_qubits, const std::vector<int>& qubits,
                    const std::vector<int>& paulis) {
  PauliWord w;
  for (std::size_t t = 0; t < qubits.size(); ++t) {
    const int bit = n_qubits - qubits[t];
    w.site.emplace_back(bit, paulis[t]);
    if (paulis[t] == 1 || paulis[t] == 2) w.flip_mask |= std::uint64_t{1} << bit;
  }
  return w;
}

// Walks flat tensor indices as per-site Pauli labels (1..3), last site
// fastest.
std::vector<int> paulis_of_flat(Eigen::Index flat, int arity) {
  std::vector<int> paulis(arity);
  for (int t = arity - 1; t >= 0; --t) {
    paulis[t] = static_cast<int>(flat % 3) + 1;
    flat /= 3;
  }
  return paulis;
}

Eigen::Index pow3(int k) {
  Eigen::Index p = 1;
  while (k-- > 0) p *= 3;
  return p;
}

}  // namespace

BlochTensors extract_tensors(const DensityState& state, const Tolerances& tol) {
  if (state.n_qubits > 6)
    throw Error(ErrorCode::TooManyQubits,
                std::to_string(state.n_qubits) + " qubits; extraction capped at 6");
  const int n = state.n_qubits;
  const std::uint64_t dim = std::uint64_t{1} << n;
  const double scale = 1.0 / static_cast<double>(dim);
  BlochTensors out;
  out.n_qubits = n;
  for (Mask subset = 1; subset < (Mask{1} << n); ++subset) {
    const std::vector<int> qubits = mask_qubits(subset);
    const int arity = static_cast<int>(qubits.size());
    const Eigen::Index size = pow3(arity);
    RVector flat(size);
    for (Eigen::Index idx = 0; idx < size; ++idx) {
      const PauliWord w = make_word(n, qubits, paulis_of_flat(idx, arity));
      Cplx trace(0.0, 0.0);
      for (std::uint64_t i = 0; i < dim; ++i)
        trace += w.coeff(i) * state.matrix(i, i ^ w.flip_mask);
      const Cplx value = trace * scale;
      if (std::abs(value.imag()) > tol.atol)
        throw Error(ErrorCode::NotHermitian,
                    "imaginary residue " + fmt17(value.imag()) + " in " +
                        subset_label(subset));
      flat[idx] = value.real();
    }
    out.tensors.emplace(subset, std::move(flat));
  }
  return out;
}

DensityState reconstruct_density(const BlochTensors& t, const Tolerances& tol) {
  const int n = t.n_qubits;
  if (n < 1 || n > 6)
    throw Error(ErrorCode::TooManyQubits,
                "qubit count " + std::to_string(n) + " out of range");
  const std::uint64_t dim = std::uint64_t{1} << n;
  for (Mask subset = 1; subset < (Mask{1} << n); ++subset) {
    auto it = t.tensors.find(subset);
    if (it == t.tensors.end() ||
        it->second.size() != pow3(std::popcount(subset)))
      throw Error(ErrorCode::IncompleteTensors,
                  subset_label(subset) + " missing or mis-sized");
  }
  CMatrix rho = CMatrix::Identity(dim, dim) / static_cast<double>(dim);
  for (Mask subset = 1; subset < (Mask{1} << n); ++subset) {
    const std::vector<int> qubits = mask_qubits(subset);
    const int arity = static_cast<int>(qubits.size());
    const RVector& flat = t.vec(subset);
    for (Eigen::Index idx = 0; idx < flat.size(); ++idx) {
      if (flat[idx] == 0.0) continue;
      const PauliWord w = make_word(n, qubits, paulis_of_flat(idx, arity));
      for (std::uint64_t i = 0; i < dim; ++i)
        rho(i ^ w.flip_mask, i) += flat[idx] * w.coeff(i);
    }
  }
  return validate_density(rho, tol);
}

FoldedTensor fold(const BlochTensors& t, Mask subset, Mask pivot) {
  const RVector& flat = t.vec(subset);
  if (pivot == 0 || (pivot & ~subset) != 0 || pivot == subset)
    throw Error(ErrorCode::BadPartition,
                "pivot " + subset_label(pivot) +
                    " is not a nonempty proper subset of " +
                    subset_label(subset));
  const std::vector<int> qubits = mask_qubits(subset);
  const int arity = static_cast<int>(qubits.size());
  const int pivot_arity = std::popcount(pivot);
  FoldedTensor f;
  f.subset = subset;
  f.pivot = pivot;
  f.matrix.resize(pow3(pivot_arity), pow3(arity - pivot_arity));
  for (Eigen::Index idx = 0; idx < flat.size(); ++idx) {
    const std::vector<int> paulis = paulis_of_flat(idx, arity);
    Eigen::Index row = 0, col = 0;
    for (int u = 0; u < arity; ++u) {
      if (pivot & (Mask{1} << (qubits[u] - 1)))
        row = row * 3 + (paulis[u] - 1);
      else
        col = col * 3 + (paulis[u] - 1);
    }
    f.matrix(row, col) = flat[idx];
  }
  return f;
}

RVector FoldedTensor::unfold() const {
  const std::vector<int> qubits = mask_qubits(subset);
  const int arity = static_cast<int>(qubits.size());
  RVector flat(matrix.size());
  for (Eigen::Index idx = 0; idx < flat.size(); ++idx) {
    const std::vector<int> paulis = paulis_of_flat(idx, arity);
    Eigen::Index row = 0, col = 0;
    for (int u = 0; u < arity; ++u) {
      if (pivot & (Mask{1} << (qubits[u] - 1)))
        row = row * 3 + (paulis[u] - 1);
      else
        col = col * 3 + (paulis[u] - 1);
    }
    flat[idx] = matrix(row, col);
  }
  return flat;
}

std::vector<double> power_sums(const RMatrix& m, int k, const Tolerances& tol) {
  if (m.rows() != m.cols())
    throw Error(ErrorCode::BadDimension, "matrix is not square");
  const double sym_dev = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (sym_dev > tol.atol)
    throw Error(ErrorCode::NotSymmetric,
                "max |m - m^t| = " + fmt17(sym_dev) + " exceeds atol " +
                    fmt17(tol.atol));
  std::vector<double> p;
  p.reserve(k);
  RMatrix acc = m;
  for (int alpha = 1; alpha <= k; ++alpha) {
    p.push_back(acc.trace());
    if (alpha < k) acc = (acc * m).eval();
  }
  return p;
}

Elementary3 elementary_from_power(double p1, double p2, double p3) {
  Elementary3 e;
  e.e1 = p1;
  e.e2 = (p1 * p1 - p2) / 2.0;
  e.e3 = (p1 * p1 * p1 - 3.0 * p2 * p1 + 2.0 * p3) / 6.0;
  return e;
}

double cayley_hamilton_residual(const RMatrix& m, const Tolerances& tol) {
  if (m.rows() != 3 || m.cols() != 3)
    throw Error(ErrorCode::BadDimension, "expected a 3x3 matrix");
  const std::vector<double> p = power_sums(m, 3, tol);
  const Elementary3 e = elementary_from_power(p[0], p[1], p[2]);
  const RMatrix m2 = m * m;
  const RMatrix r =
      m2 * m - e.e1 * m2 + e.e2 * m - e.e3 * RMatrix::Identity(3, 3);
  return r.cwiseAbs().maxCoeff();
}

}  // namespace blochlu
