#pragma once

// Reverse-mode autodiff over real and complex dense matrices.
//
// Complex quantities are differentiated as pairs of reals. The gradient of a
// complex node is packed as G = dL/dRe + i*dL/dIm, which turns the real-pair
// chain rule into compact matrix identities, e.g. for C = A*B:
//   GA = G * B^dag,   GB = A^dag * G.
// The loss must be a real scalar, so no Wirtinger machinery is needed.
//
// Forward values are computed eagerly as ops are recorded; backward() walks
// the tape once in reverse. A tape serves one rollout; independent tapes may
// run on independent threads.

#include "qprep/tensor.hpp"

#include <array>
#include <cstdint>
#include <variant>
#include <vector>

namespace qprep {

using Value = std::variant<RMat, CMat>;

inline bool is_real(const Value& v) { return v.index() == 0; }
inline const RMat& as_r(const Value& v) { return std::get<RMat>(v); }
inline const CMat& as_c(const Value& v) { return std::get<CMat>(v); }

struct NodeId {
  std::int32_t v = -1;
  bool valid() const { return v >= 0; }
};

enum class Op : std::uint8_t {
  Leaf,
  Add,
  Sub,
  ScaleConst,  // value * payload.x
  ScaleNode,   // matrix * real scalar node
  Hadamard,
  MatMul,
  Kron,
  PTrace,    // block partial trace, optionally with pinned measured bits
  TraceRe,   // Re Tr(A) -> real 1x1
  Adjoint,
  Sin,
  Cos,
  Tanh,
  Sigmoid,
  Log,
  Recip,
  RotGate,  // e^{i(theta/2) sigma_axis} from one entry of a real vector
  Concat,
  Slice,
};

class Tape {
 public:
  Tape() { nodes_.reserve(1024); }

  // Differentiable inputs.
  NodeId leaf(RMat v) { return push(Op::Leaf, {}, Value(std::move(v)), true); }
  NodeId leaf(CMat v) { return push(Op::Leaf, {}, Value(std::move(v)), true); }
  NodeId leaf_scalar(double x) { return leaf(RMat::Constant(1, 1, x)); }

  // Non-differentiable data; backward never propagates into these.
  NodeId constant(RMat v) { return push(Op::Leaf, {}, Value(std::move(v)), false); }
  NodeId constant(CMat v) { return push(Op::Leaf, {}, Value(std::move(v)), false); }
  NodeId constant_scalar(double x) { return constant(RMat::Constant(1, 1, x)); }

  NodeId add(NodeId a, NodeId b);
  NodeId sub(NodeId a, NodeId b);
  NodeId scale(NodeId a, double factor);
  NodeId scale_by(NodeId m, NodeId scalar);  // m * s, s a real 1x1 node
  NodeId hadamard(NodeId a, NodeId b);
  NodeId matmul(NodeId a, NodeId b);
  NodeId kron(NodeId a, NodeId b);
  // Traces out the (n_sel + n_free) least significant qubits, keeping the top
  // n_keep. When n_sel > 0 the selected qubits are pinned to sel_bits instead
  // of summed, realizing Tr(P m P) for a computational-basis projector P.
  NodeId ptrace(NodeId a, int n_keep, int n_sel, int n_free, std::uint32_t sel_bits = 0);
  NodeId trace_re(NodeId a);
  NodeId adjoint(NodeId a);
  NodeId sin(NodeId a);
  NodeId cos(NodeId a);
  NodeId tanh(NodeId a);
  NodeId sigmoid(NodeId a);
  NodeId log(NodeId a);
  NodeId recip(NodeId a);
  NodeId rot_gate(NodeId theta_vec, char axis, int index);
  NodeId concat(NodeId a, NodeId b);
  NodeId slice(NodeId a, int begin, int len);

  const Value& value(NodeId id) const { return node(id).val; }
  const RMat& value_r(NodeId id) const { return as_r(value(id)); }
  const CMat& value_c(NodeId id) const { return as_c(value(id)); }
  double value_scalar(NodeId id) const;

  // dLoss/d(node). Runs once per forward pass; the loss must be a real
  // scalar node. Interior gradients are freed as soon as they have been
  // consumed; leaf gradients stay readable until the tape is cleared.
  void backward(NodeId loss);

  // Gradient of a leaf (zeros if the leaf did not participate in the loss).
  RMat grad_r(NodeId id) const;
  CMat grad_c(NodeId id) const;

  std::size_t size() const { return nodes_.size(); }
  void clear() { nodes_.clear(); ran_backward_ = false; }

 private:
  struct Payload {
    double x = 0;
    std::int32_t a = 0, b = 0, c = 0, d = 0;
    char axis = 0;
  };
  struct Node {
    Op op = Op::Leaf;
    bool requires_grad = false;
    std::array<std::int32_t, 2> in{-1, -1};
    Payload payload;
    Value val;
    Value grad;  // empty until touched by backward
    bool has_grad = false;
  };

  const Node& node(NodeId id) const { return nodes_.at(std::size_t(id.v)); }
  Node& node(NodeId id) { return nodes_.at(std::size_t(id.v)); }

  NodeId push(Op op, std::array<std::int32_t, 2> in, Value val, bool req,
              Payload payload = {});
  Value& grad_buffer(Node& n);
  void accum_r(Node& n, const RMat& g);
  void accum_c(Node& n, const CMat& g);
  void step_backward(std::size_t i);

  std::vector<Node> nodes_;
  bool ran_backward_ = false;
};

}  // namespace qprep
