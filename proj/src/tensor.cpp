#include "qprep/tensor.hpp"

#include <algorithm>

namespace qprep {

namespace {

// Scatters the low bits of `x` into the bit positions listed in `pos`
// (pos[0] receives the most significant of the scattered bits).
std::uint32_t scatter_bits(std::uint32_t x, const std::vector<int>& pos) {
  std::uint32_t out = 0;
  const int k = int(pos.size());
  for (int i = 0; i < k; ++i) {
    if ((x >> (k - 1 - i)) & 1u) out |= 1u << pos[i];
  }
  return out;
}

}  // namespace

CMat partial_trace(const CMat& m, const RegisterShape& shape, const std::vector<int>& keep) {
  if (m.rows() != m.cols() || m.rows() != shape.dim())
    throw ShapeError("partial_trace: matrix does not match register");
  if (keep.empty()) throw ShapeError("partial_trace: keep set is empty");

  std::vector<int> keep_sorted = keep;
  std::sort(keep_sorted.begin(), keep_sorted.end());
  std::vector<bool> is_kept(shape.qubit_count, false);
  for (int q : keep_sorted) {
    if (q < 0 || q >= shape.qubit_count || is_kept[q])
      throw ShapeError("partial_trace: bad keep set");
    is_kept[q] = true;
  }

  std::vector<int> keep_pos, trace_pos;
  for (int q = 0; q < shape.qubit_count; ++q)
    (is_kept[q] ? keep_pos : trace_pos).push_back(shape.bit(q));

  const Eigen::Index dk = Eigen::Index(1) << keep_pos.size();
  const Eigen::Index dt = Eigen::Index(1) << trace_pos.size();
  CMat out = CMat::Zero(dk, dk);
  for (Eigen::Index a = 0; a < dk; ++a) {
    const std::uint32_t ra = scatter_bits(std::uint32_t(a), keep_pos);
    for (Eigen::Index b = 0; b < dk; ++b) {
      const std::uint32_t rb = scatter_bits(std::uint32_t(b), keep_pos);
      Complex acc = 0;
      for (Eigen::Index c = 0; c < dt; ++c) {
        const std::uint32_t rc = scatter_bits(std::uint32_t(c), trace_pos);
        acc += m(ra | rc, rb | rc);
      }
      out(a, b) = acc;
    }
  }
  return out;
}

CMat partial_trace_selected(const CMat& m, int n_keep, int n_sel, int n_free,
                            std::uint32_t sel_bits) {
  const int n = n_keep + n_sel + n_free;
  const Eigen::Index dim = Eigen::Index(1) << n;
  if (m.rows() != dim || m.cols() != dim)
    throw ShapeError("partial_trace_selected: matrix does not match register");

  const Eigen::Index dk = Eigen::Index(1) << n_keep;
  const Eigen::Index df = Eigen::Index(1) << n_free;
  const std::uint32_t sel = sel_bits << n_free;
  CMat out(dk, dk);
  for (Eigen::Index a = 0; a < dk; ++a) {
    const std::uint32_t ra = (std::uint32_t(a) << (n_sel + n_free)) | sel;
    for (Eigen::Index b = 0; b < dk; ++b) {
      const std::uint32_t rb = (std::uint32_t(b) << (n_sel + n_free)) | sel;
      Complex acc = 0;
      for (Eigen::Index c = 0; c < df; ++c) acc += m(ra | c, rb | c);
      out(a, b) = acc;
    }
  }
  return out;
}

CMat embed_selected(const CMat& g, int n_keep, int n_sel, int n_free, std::uint32_t sel_bits) {
  const Eigen::Index dk = Eigen::Index(1) << n_keep;
  if (g.rows() != dk || g.cols() != dk) throw ShapeError("embed_selected: bad input size");
  const int n = n_keep + n_sel + n_free;
  const Eigen::Index df = Eigen::Index(1) << n_free;
  const std::uint32_t sel = sel_bits << n_free;
  CMat out = CMat::Zero(Eigen::Index(1) << n, Eigen::Index(1) << n);
  for (Eigen::Index a = 0; a < dk; ++a) {
    const std::uint32_t ra = (std::uint32_t(a) << (n_sel + n_free)) | sel;
    for (Eigen::Index b = 0; b < dk; ++b) {
      const std::uint32_t rb = (std::uint32_t(b) << (n_sel + n_free)) | sel;
      for (Eigen::Index c = 0; c < df; ++c) out(ra | c, rb | c) = g(a, b);
    }
  }
  return out;
}

EigResult hermitian_eig(const CMat& h, double herm_tol) {
  if (h.rows() != h.cols()) throw ShapeError("hermitian_eig: matrix not square");
  const double dev = (h - h.adjoint()).cwiseAbs().maxCoeff();
  if (dev > herm_tol) throw NumericalError("hermitian_eig: input not Hermitian");

  Eigen::SelfAdjointEigenSolver<CMat> solver(h);
  if (solver.info() != Eigen::Success) throw NumericalError("hermitian_eig: no convergence");
  return EigResult{solver.eigenvalues(), solver.eigenvectors()};
}

const CMat& pauli_i() {
  static const CMat m = CMat::Identity(2, 2);
  return m;
}
const CMat& pauli_x() {
  static const CMat m = [] {
    CMat s(2, 2);
    s << 0, 1, 1, 0;
    return s;
  }();
  return m;
}
const CMat& pauli_y() {
  static const CMat m = [] {
    CMat s(2, 2);
    s << 0, Complex(0, -1), Complex(0, 1), 0;
    return s;
  }();
  return m;
}
const CMat& pauli_z() {
  static const CMat m = [] {
    CMat s(2, 2);
    s << 1, 0, 0, -1;
    return s;
  }();
  return m;
}

const CMat& pauli(char label) {
  switch (label) {
    case 'I': return pauli_i();
    case 'X': return pauli_x();
    case 'Y': return pauli_y();
    case 'Z': return pauli_z();
    default: throw ShapeError("pauli: unknown label");
  }
}

CMat rotation_gate(char axis, double theta) {
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  return c * pauli_i() + Complex(0, s) * pauli(axis);
}

CMat basis_projector(int n, std::uint32_t bits) {
  const Eigen::Index d = Eigen::Index(1) << n;
  if (bits >= std::uint32_t(d)) throw ShapeError("basis_projector: bits out of range");
  CMat out = CMat::Zero(d, d);
  out(bits, bits) = 1.0;
  return out;
}

CMat controlled_x(int n, int c, int t) {
  RegisterShape shape(n);
  if (c == t || c < 0 || t < 0 || c >= n || t >= n) throw ShapeError("controlled_x: bad qubits");
  const Eigen::Index d = shape.dim();
  CMat out = CMat::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    Eigen::Index j = i;
    if ((i >> shape.bit(c)) & 1) j = i ^ (Eigen::Index(1) << shape.bit(t));
    out(j, i) = 1.0;
  }
  return out;
}

CMat controlled_rz(int n, int c, int t, double phi) {
  RegisterShape shape(n);
  if (c == t || c < 0 || t < 0 || c >= n || t >= n) throw ShapeError("controlled_rz: bad qubits");
  const Eigen::Index d = shape.dim();
  const Complex e0 = std::exp(Complex(0, phi / 2.0));   // target |0>
  const Complex e1 = std::exp(Complex(0, -phi / 2.0));  // target |1>
  CMat out = CMat::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    if ((i >> shape.bit(c)) & 1)
      out(i, i) = ((i >> shape.bit(t)) & 1) ? e1 : e0;
    else
      out(i, i) = 1.0;
  }
  return out;
}

CMat embed_gate(const CMat& g, int n, int q) {
  if (g.rows() != 2 || g.cols() != 2) throw ShapeError("embed_gate: gate must be 2x2");
  if (q < 0 || q >= n) throw ShapeError("embed_gate: bad qubit");
  CMat out = CMat::Identity(1, 1);
  for (int k = 0; k < n; ++k) out = kron(out, k == q ? g : pauli_i());
  return out;
}

}  // namespace qprep
