// Independent reference implementations for tests: dense Kronecker-product
// Pauli traces, coded without the library's sparse extraction path.
#pragma once

#include <vector>

#include "blochlu/bloch.hpp"
#include "blochlu/qstate.hpp"

namespace blochlu::oracle {

// sigma_1..sigma_3 as dense matrices; index 0 is the identity.
Eigen::Matrix2cd dense_pauli(int axis);

// Kronecker product over per-qubit 2x2 factors, qubit 1 leftmost.
CMatrix kron_chain(const std::vector<Eigen::Matrix2cd>& factors);

// (1/2^N) tr(rho * P) for the Pauli word placing `axes[k]` (1..3) on
// `qubits[k]` and the identity elsewhere.
double tensor_entry(const DensityState& rho, const std::vector<int>& qubits,
                    const std::vector<int>& axes);

// Full tensor set via the dense route.
BlochTensors all_tensors(const DensityState& rho);

// Per-qubit rotation action on every subset tensor (one 3x3 factor per
// member qubit), the transformation extraction must commute with.
BlochTensors rotate_tensors(const BlochTensors& t,
                            const std::vector<Eigen::Matrix3d>& rotations);

}  // namespace blochlu::oracle
