// types.hpp -- shared aliases, tolerances, and the error taxonomy.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace blochlu {

using Cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

// Absolute/relative tolerances for state validation and structural checks.
struct Tolerances {
  double atol = 1e-10;
  double rtol = 1e-9;
};

enum class ErrorCode {
  BadDimension,
  NotHermitian,
  TraceNotOne,
  NotPositive,
  ZeroVector,
  BadRank,
  ArityMismatch,
  NotSpecialUnitary,
  NotRotation,
  TooManyQubits,
  IncompleteTensors,
  MissingTensor,
  BadPartition,
  NotSymmetric,
  UnsupportedQubitCount,
  WrongQubitCount,
  SchemeMismatch,
  DimensionMismatch,
  QubitMismatch,
  NotGeneric,
  PreconditionViolated,
  ParseError,
  BadValue,
};

const char* to_string(ErrorCode code);

// All library failures carry a code plus a message naming the failed check
// and the offending magnitude where one exists.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Formats a double with enough digits to round-trip (17 significant).
std::string fmt17(double value);

}  // namespace blochlu
