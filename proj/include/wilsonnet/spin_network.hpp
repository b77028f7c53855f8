#pragma once

#include <vector>

#include "wilsonnet/diagrams.hpp"
#include "wilsonnet/graph.hpp"
#include "wilsonnet/tensor.hpp"

namespace wilsonnet {

/// Per-edge tensor degrees: edge i carries V^{(x)p_i} (x) (V*)^{(x)q_i}.
struct EdgeDegree {
  int p = 0;
  int q = 0;
  friend bool operator==(const EdgeDegree&, const EdgeDegree&) = default;
};

class MixedSignature {
 public:
  explicit MixedSignature(std::vector<EdgeDegree> edges);

  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<EdgeDegree>& edges() const { return edges_; }
  int p() const { return p_; }
  int q() const { return q_; }
  int degree() const { return p_ + q_; }

  /// Throws when duals appear for a group with an invariant form.
  void require_compatible(const GroupKind& kind) const;

  /// Edge (0-based) owning gathered slot a (1-based): primal slots 1..p are
  /// gathered by edge, dual slots p+1..p+q likewise.
  int gathered_edge(int a) const;

  /// For each slot in per-edge order, its gathered index (1-based).
  std::vector<int> per_edge_to_gathered() const;

  friend bool operator==(const MixedSignature&, const MixedSignature&) = default;

 private:
  std::vector<EdgeDegree> edges_;
  int p_ = 0;
  int q_ = 0;
};

/// pi(sigma): the factor in slot i moves to slot sigma(i). Homomorphic:
/// pi(a) pi(b) = pi(a * b).
IntTensor perm_operator(const Permutation& sigma, int m);

/// I_sigma in per-edge slot order; dual slots use dual-basis coordinates.
IntTensor mixed_operator(const Permutation& sigma, const MixedSignature& signature, int m);

/// J_tau on V^{(x)d} built from the invariant form of `kind`.
IntTensor brauer_operator(const Pairing& tau, const GroupKind& kind, int d);

/// Integer Gram matrix entries, row-major.
std::vector<std::int64_t> integer_gram(const GroupKind& kind);

/// T_i: swap input and output of slot i (1-based) through the form.
/// For the Gram matrices in use G^{-T} = G, so slot i becomes G X^T G.
template <class T>
DenseTensor<T> apply_slot_transpose(const DenseTensor<T>& op, int slot, const GroupKind& kind);

/// Per-slot action matrices (per-edge order): g_i on primal slots and
/// the contragredient (g_i^{-1})^T on dual slots.
std::vector<Matrix> slot_actions(const MixedSignature& signature,
                                 const std::vector<GroupElement>& edge_values);

/// Oracle: tr(alpha_1(g_1) (x) ... (x) alpha_r(g_r) o op) by dense contraction.
Complex eval_spin_network(const Configuration& config, const MixedSignature& signature,
                          const IntTensor& op);
Complex eval_spin_network(const Configuration& config, const MixedSignature& signature,
                          const ComplexTensor& op);

struct WilsonProduct {
  int sign = 1;
  std::vector<Loop> loops;  // over the bouquet L_r
  friend bool operator==(const WilsonProduct&, const WilsonProduct&) = default;
};

Complex evaluate(const WilsonProduct& product, const Configuration& config);

/// Least rotation of the letter sequence; rotations share a Wilson loop value.
Loop canonical_rotation(const Loop& loop);

WilsonProduct compile_unitary(const Permutation& sigma, const MixedSignature& signature);
WilsonProduct compile_orthosymplectic(const Pairing& tau, const MixedSignature& signature,
                                      const GroupKind& kind);

/// max-entry of [R, op] with R the tensor product of `actions` (slot order).
double commutator_defect(const IntTensor& op, const std::vector<Matrix>& actions);
double commutator_defect(const ComplexTensor& op, const std::vector<Matrix>& actions);

/// Kronecker product of per-slot matrices, slot 1 most significant.
Matrix kron_all(const std::vector<Matrix>& factors);

// ---------------------------------------------------------------------------

template <class T>
DenseTensor<T> apply_slot_transpose(const DenseTensor<T>& op, int slot, const GroupKind& kind) {
  if (slot < 1 || slot > op.slots())
    throw std::out_of_range("slot " + std::to_string(slot) + " outside 1.." +
                            std::to_string(op.slots()));
  const int m = op.dim();
  if (m != kind.matrix_dim()) throw std::invalid_argument("operator dimension does not match group");
  const std::vector<std::int64_t> gram = integer_gram(kind);
  auto g = [&](int r, int c) { return gram[static_cast<std::size_t>(r * m + c)]; };

  const int s = slot - 1;
  int stride = 1;
  for (int k = op.slots() - 1; k > s; --k) stride *= m;

  DenseTensor<T> out(m, op.slots());
  for (int c = 0; c < op.side(); ++c) {
    const int ci = op.digit(c, s);
    const int c_rest = c - ci * stride;
    for (int b = 0; b < op.side(); ++b) {
      const int bi = op.digit(b, s);
      const int b_rest = b - bi * stride;
      T acc{};
      for (int x = 0; x < m; ++x) {
        const std::int64_t gx = g(ci, x);
        if (gx == 0) continue;
        for (int y = 0; y < m; ++y) {
          const std::int64_t gy = g(y, bi);
          if (gy == 0) continue;
          // (X^T)[c|x, b|y] = X[c|y, b|x] on slot s
          acc += static_cast<T>(gx * gy) * op.at(c_rest + y * stride, b_rest + x * stride);
        }
      }
      out.at(c, b) = acc;
    }
  }
  return out;
}

}  // namespace wilsonnet
