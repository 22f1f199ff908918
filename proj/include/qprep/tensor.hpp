#pragma once

// Dense complex linear algebra kernel for few-qubit density-matrix work:
// Kronecker products, partial traces over qubit subsets, and a Hermitian
// eigensolver. Matrices here are at most 64x64 (6 qubits).

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace qprep {

using Real = double;
using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

// Thrown when an operation is asked to run on incompatible dimensions.
struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Thrown when a numerical precondition fails (non-Hermitian input,
// vanishing outcome probabilities, non-finite values).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Register of `qubit_count` qubits, each of local dimension 2.
// Qubit 0 maps to the most significant bit of a basis index, matching the
// leftmost factor of a Kronecker product.
struct RegisterShape {
  int qubit_count = 0;

  explicit RegisterShape(int n) : qubit_count(n) {
    if (n < 0 || n > 16) throw ShapeError("RegisterShape: bad qubit count");
  }
  Eigen::Index dim() const { return Eigen::Index(1) << qubit_count; }
  // Bit position (from lsb) of qubit q in a basis index.
  int bit(int q) const { return qubit_count - 1 - q; }
};

template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic>
kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> out(
      a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b.derived();
  return out;
}

// Partial trace over the qubits NOT in `keep`. The result is indexed by the
// kept qubits in their original relative order (qubit 0 still leftmost).
CMat partial_trace(const CMat& m, const RegisterShape& shape, const std::vector<int>& keep);

// Partial trace keeping the `n_keep` most significant qubits, with the bits
// of the next `n_sel` qubits pinned to `sel_bits` (the Tr(P m P) contraction
// used by projective ancilla measurement); the remaining low qubits are
// summed over freely.
CMat partial_trace_selected(const CMat& m, int n_keep, int n_sel, int n_free,
                            std::uint32_t sel_bits);

// Adjoint of partial_trace_selected: embeds g back into the larger register,
// identity on the freely traced qubits, zero elsewhere.
CMat embed_selected(const CMat& g, int n_keep, int n_sel, int n_free, std::uint32_t sel_bits);

struct EigResult {
  RVec eigenvalues;   // ascending
  CMat eigenvectors;  // columns, orthonormal
};

// Eigendecomposition of a Hermitian matrix. Rejects inputs with
// max |h - h^dag| entry above `herm_tol`.
EigResult hermitian_eig(const CMat& h, double herm_tol = 1e-10);

// Pauli matrices and friends.
const CMat& pauli_i();
const CMat& pauli_x();
const CMat& pauli_y();
const CMat& pauli_z();
const CMat& pauli(char label);  // 'I','X','Y','Z'

// e^{i(theta/2) sigma} for sigma in {X, Y, Z}; 2x2.
CMat rotation_gate(char axis, double theta);

// |bits><bits| on an n-qubit register (bits read msb-first, qubit 0 first).
CMat basis_projector(int n, std::uint32_t bits);

// Controlled-X on an n-qubit register, control qubit c, target qubit t.
CMat controlled_x(int n, int c, int t);

// Controlled-Rz(phi) on an n-qubit register.
CMat controlled_rz(int n, int c, int t, double phi);

// Single-qubit gate g embedded on qubit q of an n-qubit register.
CMat embed_gate(const CMat& g, int n, int q);

inline void check_finite(const CMat& m, const char* what) {
  if (!m.allFinite()) throw NumericalError(std::string(what) + ": non-finite entries");
}

}  // namespace qprep
