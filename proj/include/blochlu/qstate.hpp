// qstate.hpp -- density matrices, local unitaries, and the SU(2)/SO(3) maps.
#pragma once

#include <cstdint>
#include <vector>

#include "blochlu/rng.hpp"
#include "blochlu/types.hpp"

namespace blochlu {

// Validated N-qubit density matrix: Hermitian, unit trace, positive
// semidefinite, dimension 2^N. Construct through validate_density or the
// factory functions below so the invariants hold.
struct DensityState {
  int n_qubits = 0;
  CMatrix matrix;

  Eigen::Index dim() const { return matrix.rows(); }
};

// One SU(2) factor per qubit, qubit 1 first.
struct LocalUnitary {
  std::vector<Eigen::Matrix2cd> factors;

  int n_qubits() const { return static_cast<int>(factors.size()); }
  // Kronecker product of the factors, qubit 1 as the leftmost (most
  // significant) factor.
  CMatrix full_matrix() const;
};

using Rotation3 = Eigen::Matrix3d;

// Checks Hermiticity, unit trace, positivity (by eigendecomposition, not
// Cholesky), and power-of-two dimension. Throws BadDimension, NotHermitian,
// TraceNotOne, or NotPositive naming the offending magnitude.
DensityState validate_density(const CMatrix& m, const Tolerances& tol = {});

// Normalizes the amplitude vector and forms the projector. Throws ZeroVector
// or BadDimension.
DensityState pure_state_density(const CVector& amplitudes,
                                const Tolerances& tol = {});

// rho = G G^dagger / tr(G G^dagger) with G a 2^N x r matrix of independent
// complex Gaussians drawn in row-major order. Same (n, r, seed) gives a
// bitwise-identical matrix. Throws BadRank unless 1 <= r <= 2^N.
DensityState random_density(int n_qubits, int rank, Rng& rng);

// Haar-distributed SU(2) factors from normalized Gaussian quaternions.
LocalUnitary random_local_unitary(int n_qubits, Rng& rng);

// Throws NotSpecialUnitary if any factor fails unitarity or det = 1.
void check_local_unitary(const LocalUnitary& lu, const Tolerances& tol = {});

// (U_1 x ... x U_N) rho (...)^dagger. Throws ArityMismatch.
DensityState apply_local_unitary(const DensityState& state,
                                 const LocalUnitary& lu,
                                 const Tolerances& tol = {});

// O_kl = Tr(sigma_k U sigma_l U^dagger) / 2; the image of the double cover.
// With this orientation Bloch vectors transform as t' = O t.
Rotation3 su2_to_so3(const Eigen::Matrix2cd& u, const Tolerances& tol = {});

// Lifts a proper rotation to the SU(2) preimage with canonical sign: the one
// whose trace has nonnegative real part; if the trace vanishes, the one whose
// first nonzero entry (row-major) is lexicographically nonnegative in
// (real, imag). Throws NotRotation on improper or non-orthogonal input.
Eigen::Matrix2cd so3_to_su2(const Rotation3& o, const Tolerances& tol = {});

}  // namespace blochlu
