// io.hpp -- JSON serialization of states, tensors, and local unitaries.
//
// State files:
//   {"n_qubits": 2, "matrix": {"re": [[...]], "im": [[...]]}}
//   {"n_qubits": 2, "pure": {"re": [...], "im": [...]}}
//   {"n_qubits": 2, "ensemble": {"weights": [...], "pures": [{"re":..., "im":...}]}}
// Tensor dumps:
//   {"n_qubits": 2, "tensors": {"T1": [x,y,z], "T12": [[...],[...],[...]]}}
// Unitary files:
//   {"n_qubits": 2, "factors": [{"re": [[...]], "im": [[...]]}, ...]}
// Doubles are written in shortest round-trip form; read-back is exact.
#pragma once

#include <string>

#include "blochlu/bloch.hpp"
#include "blochlu/qstate.hpp"

namespace blochlu {

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// Parse errors carry the offending field; the result passes
// validate_density (so a bad grid raises BadDimension with its row index).
DensityState parse_state_json(const std::string& text,
                              const Tolerances& tol = {});
DensityState read_state_file(const std::string& path,
                             const Tolerances& tol = {});
std::string state_to_json(const DensityState& s);
void write_state_file(const std::string& path, const DensityState& s);

// Tensors keyed by subset label, nested 3-way per qubit, last index fastest.
std::string tensors_to_json(const BlochTensors& t);
BlochTensors parse_tensors_json(const std::string& text);

LocalUnitary parse_unitary_json(const std::string& text,
                                const Tolerances& tol = {});
LocalUnitary read_unitary_file(const std::string& path,
                               const Tolerances& tol = {});
std::string unitary_to_json(const LocalUnitary& lu);
void write_unitary_file(const std::string& path, const LocalUnitary& lu);

}  // namespace blochlu
