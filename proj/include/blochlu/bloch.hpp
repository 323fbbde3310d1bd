// bloch.hpp -- generalized Bloch tensors: extraction, reconstruction, folds,
// and the small symmetric-matrix helpers the invariant lists are built from.
#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "blochlu/qstate.hpp"
#include "blochlu/types.hpp"

namespace blochlu {

// Index subsets of {1..N} as bitmasks, bit q-1 for qubit q.
using Mask = std::uint32_t;

std::vector<int> mask_qubits(Mask mask);
Mask mask_from_qubits(const std::vector<int>& qubits);
// "T" + ascending qubit digits, e.g. {1,3} -> "T13".
std::string subset_label(Mask mask);

// All coefficients (1/2^N) Tr[rho sigma-word], one flat tensor per nonempty
// index subset. Flattening is row-major over the subset's qubits in ascending
// order with the last qubit's Pauli index fastest; every entry has magnitude
// at most 1/2^N.
struct BlochTensors {
  int n_qubits = 0;
  std::map<Mask, RVector> tensors;

  bool has(Mask subset) const { return tensors.count(subset) != 0; }
  // Realigned coefficient vector of one subset; throws MissingTensor.
  const RVector& vec(Mask subset) const;
  Eigen::Vector3d single(int qubit) const;
  // 3x3 pair tensor; for i > j the stored ascending tensor is served
  // transposed.
  Eigen::Matrix3d pair(int i, int j) const;
};

// A tensor reshaped against the bipartition pivot|complement: rows run over
// the pivot's multi-index, columns over the complement's, both row-major in
// ascending qubit order.
struct FoldedTensor {
  Mask subset = 0;
  Mask pivot = 0;
  RMatrix matrix;

  Mask complement() const { return subset & ~pivot; }
  // Exact inverse of fold: the flat tensor the matrix was filled from.
  RVector unfold() const;
};

// Pauli-word expectations by sparse bit-indexed application (each word is a
// signed permutation of basis states); no Kronecker products are formed.
// Throws TooManyQubits for N > 6.
BlochTensors extract_tensors(const DensityState& state,
                             const Tolerances& tol = {});

// rho = I/2^N + sum of coefficient * Pauli word. Requires every subset
// present (IncompleteTensors); the result is validated, so hand-edited
// tensors may surface NotPositive.
DensityState reconstruct_density(const BlochTensors& t,
                                 const Tolerances& tol = {});

// Entry-preserving reshape; pivot must be a nonempty proper subset of
// `subset` (BadPartition), and `subset` must be present (MissingTensor).
FoldedTensor fold(const BlochTensors& t, Mask subset, Mask pivot);

// p_alpha = tr(m^alpha) for alpha = 1..k, by repeated matrix multiplication
// (no eigensolver, so results are deterministic). Throws NotSymmetric.
std::vector<double> power_sums(const RMatrix& m, int k,
                               const Tolerances& tol = {});

// Newton's identities for a 3x3 spectrum.
struct Elementary3 {
  double e1 = 0, e2 = 0, e3 = 0;
};
Elementary3 elementary_from_power(double p1, double p2, double p3);

// max-abs of m^3 - e1 m^2 + e2 m - e3 I for symmetric 3x3 m.
double cayley_hamilton_residual(const RMatrix& m, const Tolerances& tol = {});

}  // namespace blochlu
