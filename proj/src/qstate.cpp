#include "blochlu/qstate.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <cstdio>

namespace blochlu {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::BadDimension: return "BadDimension";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::TraceNotOne: return "TraceNotOne";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::BadRank: return "BadRank";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::NotSpecialUnitary: return "NotSpecialUnitary";
    case ErrorCode::NotRotation: return "NotRotation";
    case ErrorCode::TooManyQubits: return "TooManyQubits";
    case ErrorCode::IncompleteTensors: return "IncompleteTensors";
    case ErrorCode::MissingTensor: return "MissingTensor";
    case ErrorCode::BadPartition: return "BadPartition";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::UnsupportedQubitCount: return "UnsupportedQubitCount";
    case ErrorCode::WrongQubitCount: return "WrongQubitCount";
    case ErrorCode::SchemeMismatch: return "SchemeMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::QubitMismatch: return "QubitMismatch";
    case ErrorCode::NotGeneric: return "NotGeneric";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::BadValue: return "BadValue";
  }
  return "UnknownError";
}

std::string fmt17(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

namespace {

// Returns N with dim = 2^N, or -1 if dim is not a power of two >= 2.
int qubit_count_for_dim(Eigen::Index dim) {
  if (dim < 2 || (dim & (dim - 1)) != 0) return -1;
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  return n;
}

Eigen::Matrix2cd pauli(int k) {
  const Cplx i(0.0, 1.0);
  Eigen::Matrix2cd m;
  switch (k) {
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -i, i, 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

}  // namespace

CMatrix LocalUnitary::full_matrix() const {
  CMatrix full = CMatrix::Identity(1, 1);
  for (const auto& u : factors) full = Eigen::kroneckerProduct(full, u).eval();
  return full;
}

DensityState validate_density(const CMatrix& m, const Tolerances& tol) {
  if (m.rows() != m.cols())
    throw Error(ErrorCode::BadDimension,
                "matrix is " + std::to_string(m.rows()) + "x" +
                    std::to_string(m.cols()) + ", expected square");
  const int n = qubit_count_for_dim(m.rows());
  if (n < 1)
    throw Error(ErrorCode::BadDimension,
                "dimension " + std::to_string(m.rows()) +
                    " is not a power of two >= 2");
  const double herm_dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm_dev > tol.atol)
    throw Error(ErrorCode::NotHermitian,
                "max |rho - rho^dagger| = " + fmt17(herm_dev) +
                    " exceeds atol " + fmt17(tol.atol));
  const double trace_dev = std::abs(m.trace() - Cplx(1.0, 0.0));
  if (trace_dev > tol.atol)
    throw Error(ErrorCode::TraceNotOne,
                "|tr(rho) - 1| = " + fmt17(trace_dev) + " exceeds atol " +
                    fmt17(tol.atol));
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -tol.atol)
    throw Error(ErrorCode::NotPositive,
                "min eigenvalue " + fmt17(min_eig) + " below -atol " +
                    fmt17(-tol.atol));
  return DensityState{n, m};
}

DensityState pure_state_density(const CVector& amplitudes,
                                const Tolerances& tol) {
  const int n = qubit_count_for_dim(amplitudes.size());
  if (n < 1)
    throw Error(ErrorCode::BadDimension,
                "amplitude vector length " + std::to_string(amplitudes.size()) +
                    " is not a power of two >= 2");
  const double norm = amplitudes.norm();
  if (norm <= tol.atol)
    throw Error(ErrorCode::ZeroVector,
                "amplitude norm " + fmt17(norm) + " is not normalizable");
  const CVector psi = amplitudes / norm;
  return DensityState{n, psi * psi.adjoint()};
}

DensityState random_density(int n_qubits, int rank, Rng& rng) {
  if (n_qubits < 1 || n_qubits > 12)
    throw Error(ErrorCode::BadDimension,
                "n_qubits " + std::to_string(n_qubits) + " out of range");
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  if (rank < 1 || rank > dim)
    throw Error(ErrorCode::BadRank,
                "rank " + std::to_string(rank) + " not in [1, " +
                    std::to_string(dim) + "]");
  CMatrix g(dim, rank);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < rank; ++j) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(i, j) = Cplx(re, im);
    }
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityState{n_qubits, rho};
}

LocalUnitary random_local_unitary(int n_qubits, Rng& rng) {
  if (n_qubits < 1)
    throw Error(ErrorCode::BadDimension,
                "n_qubits " + std::to_string(n_qubits) + " out of range");
  LocalUnitary lu;
  lu.factors.reserve(n_qubits);
  const Cplx i(0.0, 1.0);
  for (int q = 0; q < n_qubits; ++q) {
    double w, x, y, z, norm2;
    do {
      w = rng.normal();
      x = rng.normal();
      y = rng.normal();
      z = rng.normal();
      norm2 = w * w + x * x + y * y + z * z;
    } while (norm2 < 1e-12);
    const double s = 1.0 / std::sqrt(norm2);
    w *= s; x *= s; y *= s; z *= s;
    Eigen::Matrix2cd u;
    u << Cplx(w, -z), Cplx(-y, -x), Cplx(y, -x), Cplx(w, z);
    lu.factors.push_back(u);
  }
  return lu;
}

void check_local_unitary(const LocalUnitary& lu, const Tolerances& tol) {
  for (std::size_t q = 0; q < lu.factors.size(); ++q) {
    const auto& u = lu.factors[q];
    const double unit_dev =
        (u * u.adjoint() - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
    const double det_dev = std::abs(u.determinant() - Cplx(1.0, 0.0));
    if (unit_dev > tol.atol || det_dev > tol.atol)
      throw Error(ErrorCode::NotSpecialUnitary,
                  "factor " + std::to_string(q + 1) + ": |UU^dagger - I| = " +
                      fmt17(unit_dev) + ", |det - 1| = " + fmt17(det_dev));
  }
}

DensityState apply_local_unitary(const DensityState& state,
                                 const LocalUnitary& lu,
                                 const Tolerances& tol) {
  if (lu.n_qubits() != state.n_qubits)
    throw Error(ErrorCode::ArityMismatch,
                std::to_string(lu.n_qubits()) + " factors for " +
                    std::to_string(state.n_qubits) + " qubits");
  check_local_unitary(lu, tol);
  const CMatrix full = lu.full_matrix();
  return validate_density(full * state.matrix * full.adjoint(), tol);
}

Rotation3 su2_to_so3(const Eigen::Matrix2cd& u, const Tolerances& tol) {
  const double unit_dev =
      (u * u.adjoint() - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
  const double det_dev = std::abs(u.determinant() - Cplx(1.0, 0.0));
  if (unit_dev > tol.atol || det_dev > tol.atol)
    throw Error(ErrorCode::NotSpecialUnitary,
                "|UU^dagger - I| = " + fmt17(unit_dev) + ", |det - 1| = " +
                    fmt17(det_dev));
  Rotation3 o;
  for (int k = 1; k <= 3; ++k)
    for (int l = 1; l <= 3; ++l)
      o(k - 1, l - 1) =
          0.5 * (pauli(k) * u * pauli(l) * u.adjoint()).trace().real();
  return o;
}

Eigen::Matrix2cd so3_to_su2(const Rotation3& o, const Tolerances& tol) {
  const double orth_dev =
      (o * o.transpose() - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
  const double det = o.determinant();
  if (orth_dev > tol.atol)
    throw Error(ErrorCode::NotRotation, "max |OO^t - I| = " + fmt17(orth_dev) +
                                            " exceeds atol " + fmt17(tol.atol));
  if (std::abs(det - 1.0) > tol.atol)
    throw Error(ErrorCode::NotRotation,
                "det = " + fmt17(det) + ", expected +1");

  // Quaternion extraction, largest-pivot branch for stability.
  double w, x, y, z;
  const double tr = o(0, 0) + o(1, 1) + o(2, 2);
  if (tr > 0.0) {
    double s = std::sqrt(tr + 1.0) * 2.0;
    w = 0.25 * s;
    x = (o(2, 1) - o(1, 2)) / s;
    y = (o(0, 2) - o(2, 0)) / s;
    z = (o(1, 0) - o(0, 1)) / s;
  } else if (o(0, 0) >= o(1, 1) && o(0, 0) >= o(2, 2)) {
    double s = std::sqrt(1.0 + o(0, 0) - o(1, 1) - o(2, 2)) * 2.0;
    w = (o(2, 1) - o(1, 2)) / s;
    x = 0.25 * s;
    y = (o(0, 1) + o(1, 0)) / s;
    z = (o(0, 2) + o(2, 0)) / s;
  } else if (o(1, 1) >= o(2, 2)) {
    double s = std::sqrt(1.0 + o(1, 1) - o(0, 0) - o(2, 2)) * 2.0;
    w = (o(0, 2) - o(2, 0)) / s;
    x = (o(0, 1) + o(1, 0)) / s;
    y = 0.25 * s;
    z = (o(1, 2) + o(2, 1)) / s;
  } else {
    double s = std::sqrt(1.0 + o(2, 2) - o(0, 0) - o(1, 1)) * 2.0;
    w = (o(1, 0) - o(0, 1)) / s;
    x = (o(0, 2) + o(2, 0)) / s;
    y = (o(1, 2) + o(2, 1)) / s;
    z = 0.25 * s;
  }
  const double qn = std::sqrt(w * w + x * x + y * y + z * z);
  w /= qn; x /= qn; y /= qn; z /= qn;

  Eigen::Matrix2cd u;
  u << Cplx(w, -z), Cplx(-y, -x), Cplx(y, -x), Cplx(w, z);

  // Canonical sign: nonnegative real trace (= 2w); on a tie, first nonzero
  // entry row-major must be (Re, Im)-lexicographically nonnegative.
  bool flip = false;
  if (w < -1e-12) {
    flip = true;
  } else if (std::abs(w) <= 1e-12) {
    const Cplx entries[4] = {u(0, 0), u(0, 1), u(1, 0), u(1, 1)};
    for (const Cplx& e : entries) {
      if (std::abs(e) <= 1e-12) continue;
      if (std::abs(e.real()) > 1e-12)
        flip = e.real() < 0.0;
      else
        flip = e.imag() < 0.0;
      break;
    }
  }
  if (flip) u = -u;
  return u;
}

}  // namespace blochlu
