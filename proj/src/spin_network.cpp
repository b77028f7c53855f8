#include "wilsonnet/spin_network.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace wilsonnet {

MixedSignature::MixedSignature(std::vector<EdgeDegree> edges) : edges_(std::move(edges)) {
  if (edges_.empty()) throw std::invalid_argument("signature needs at least one edge");
  for (const auto& e : edges_) {
    if (e.p < 0 || e.q < 0) throw std::invalid_argument("signature degrees must be non-negative");
    p_ += e.p;
    q_ += e.q;
  }
  if (p_ + q_ < 1) throw std::invalid_argument("signature has total degree zero");
}

void MixedSignature::require_compatible(const GroupKind& kind) const {
  if (kind.has_form() && q_ != 0)
    throw std::invalid_argument(kind.name() + " identifies V* with V; dual degrees must be zero");
}

int MixedSignature::gathered_edge(int a) const {
  if (a < 1 || a > degree()) throw std::out_of_range("slot outside signature");
  int acc = 0;
  if (a <= p_) {
    for (int i = 0; i < edge_count(); ++i) {
      acc += edges_[static_cast<std::size_t>(i)].p;
      if (a <= acc) return i;
    }
  } else {
    acc = p_;
    for (int i = 0; i < edge_count(); ++i) {
      acc += edges_[static_cast<std::size_t>(i)].q;
      if (a <= acc) return i;
    }
  }
  throw std::logic_error("unreachable slot lookup");
}

std::vector<int> MixedSignature::per_edge_to_gathered() const {
  std::vector<int> order;
  int primal = 0;
  int dual = p_;
  for (const auto& e : edges_) {
    for (int k = 0; k < e.p; ++k) order.push_back(++primal);
    for (int k = 0; k < e.q; ++k) order.push_back(++dual);
  }
  return order;
}

IntTensor perm_operator(const Permutation& sigma, int m) {
  const int d = sigma.size();
  IntTensor out(m, d);
  std::vector<int> dest(static_cast<std::size_t>(d));
  for (int in = 0; in < out.side(); ++in) {
    const auto digits = out.decode(in);
    for (int i = 1; i <= d; ++i)
      dest[static_cast<std::size_t>(sigma(i) - 1)] = digits[static_cast<std::size_t>(i - 1)];
    out.at(out.encode(dest), in) = 1;
  }
  return out;
}

IntTensor mixed_operator(const Permutation& sigma, const MixedSignature& signature, int m) {
  if (sigma.size() != signature.degree())
    throw std::invalid_argument("permutation degree " + std::to_string(sigma.size()) +
                                " does not match signature degree " +
                                std::to_string(signature.degree()));
  const IntTensor gathered = perm_operator(sigma, m);
  const int p = signature.p();
  const int d = signature.degree();
  const std::vector<int> order = signature.per_edge_to_gathered();

  IntTensor out(m, d);
  std::vector<int> c_edge(static_cast<std::size_t>(d)), b_edge(static_cast<std::size_t>(d));
  for (int b = 0; b < gathered.side(); ++b) {
    for (int c = 0; c < gathered.side(); ++c) {
      const std::int64_t v = gathered.at(c, b);
      if (v == 0) continue;
      auto cd = gathered.decode(c);
      auto bd = gathered.decode(b);
      // Dual slots: End(V) back to End(V*) is a transpose.
      for (int s = p; s < d; ++s) std::swap(cd[static_cast<std::size_t>(s)], bd[static_cast<std::size_t>(s)]);
      for (int k = 0; k < d; ++k) {
        c_edge[static_cast<std::size_t>(k)] = cd[static_cast<std::size_t>(order[static_cast<std::size_t>(k)] - 1)];
        b_edge[static_cast<std::size_t>(k)] = bd[static_cast<std::size_t>(order[static_cast<std::size_t>(k)] - 1)];
      }
      out.at(out.encode(c_edge), out.encode(b_edge)) = v;
    }
  }
  return out;
}

std::vector<std::int64_t> integer_gram(const GroupKind& kind) {
  const Matrix gram = gram_matrix(kind);
  const int m = kind.matrix_dim();
  std::vector<std::int64_t> out(static_cast<std::size_t>(m * m));
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c)
      out[static_cast<std::size_t>(r * m + c)] = static_cast<std::int64_t>(std::lround(gram(r, c).real()));
  return out;
}

IntTensor brauer_operator(const Pairing& tau, const GroupKind& kind, int d) {
  if (!kind.has_form()) throw std::invalid_argument("J_tau needs an orthogonal or symplectic group");
  if (tau.half() != d)
    throw std::invalid_argument("pairing lives on {1.." + std::to_string(2 * tau.half()) +
                                "}, expected {1.." + std::to_string(2 * d) + "}");
  const int m = kind.matrix_dim();
  const auto gram = integer_gram(kind);
  auto g = [&](int r, int c) { return gram[static_cast<std::size_t>(r * m + c)]; };
  const auto blocks = tau.blocks();

  // Nonzero rows of each Gram column: <e_a, w> pairs input coordinate b with a.
  std::vector<std::vector<int>> col_support(static_cast<std::size_t>(m));
  for (int c = 0; c < m; ++c)
    for (int r = 0; r < m; ++r)
      if (g(r, c) != 0) col_support[static_cast<std::size_t>(c)].push_back(r);

  IntTensor out(m, d);
  std::vector<std::vector<int>> digits;
  for (int c = 0; c < out.side(); ++c) digits.push_back(out.decode(c));
  std::vector<int> x(static_cast<std::size_t>(2 * d));
  for (int b = 0; b < out.side(); ++b) {
    const auto& bd = digits[static_cast<std::size_t>(b)];
    // Enumerate the first-half indices a compatible with the input b.
    std::vector<std::size_t> pick(static_cast<std::size_t>(d), 0);
    while (true) {
      std::int64_t weight = 1;
      for (int i = 0; i < d; ++i) {
        const auto& support = col_support[static_cast<std::size_t>(bd[static_cast<std::size_t>(i)])];
        const int a = support[pick[static_cast<std::size_t>(i)]];
        x[static_cast<std::size_t>(i)] = a;
        weight *= g(a, bd[static_cast<std::size_t>(i)]);
      }
      for (int c = 0; c < out.side(); ++c) {
        const auto& cd = digits[static_cast<std::size_t>(c)];
        for (int i = 0; i < d; ++i) x[static_cast<std::size_t>(d + i)] = cd[static_cast<std::size_t>(i)];
        std::int64_t coef = weight;
        for (const auto& [k, l] : blocks) {
          coef *= g(x[static_cast<std::size_t>(k - 1)], x[static_cast<std::size_t>(l - 1)]);
          if (coef == 0) break;
        }
        out.at(c, b) += coef;
      }
      int i = d - 1;
      for (; i >= 0; --i) {
        auto& pk = pick[static_cast<std::size_t>(i)];
        if (++pk < col_support[static_cast<std::size_t>(bd[static_cast<std::size_t>(i)])].size()) break;
        pk = 0;
      }
      if (i < 0) break;
    }
  }
  return out;
}

std::vector<Matrix> slot_actions(const MixedSignature& signature,
                                 const std::vector<GroupElement>& edge_values) {
  if (static_cast<int>(edge_values.size()) != signature.edge_count())
    throw std::invalid_argument("need one group element per signature edge");
  std::vector<Matrix> actions;
  for (int i = 0; i < signature.edge_count(); ++i) {
    const auto& deg = signature.edges()[static_cast<std::size_t>(i)];
    const Matrix& g = edge_values[static_cast<std::size_t>(i)].matrix();
    for (int k = 0; k < deg.p; ++k) actions.push_back(g);
    if (deg.q > 0) {
      const Matrix contragredient = g.adjoint().transpose();
      for (int k = 0; k < deg.q; ++k) actions.push_back(contragredient);
    }
  }
  return actions;
}

namespace {

void require_shape(const Configuration& config, const MixedSignature& signature, int dim, int slots) {
  if (!config.graph().is_bouquet() || config.graph().edge_count() != signature.edge_count())
    throw std::invalid_argument("spin networks are evaluated on L_r with r = signature length");
  if (dim != config.kind().matrix_dim() || slots != signature.degree())
    throw std::invalid_argument("operator shape does not match signature and group dimension");
}

template <class T>
Complex trace_against(const DenseTensor<T>& op, const std::vector<Matrix>& actions) {
  const int d = op.slots();
  Complex acc = 0.0;
  for (int c = 0; c < op.side(); ++c) {
    const auto cd = op.decode(c);
    for (int b = 0; b < op.side(); ++b) {
      const T v = op.at(c, b);
      if (v == T{}) continue;
      const auto bd = op.decode(b);
      Complex term = static_cast<Complex>(v);
      for (int s = 0; s < d; ++s)
        term *= actions[static_cast<std::size_t>(s)](bd[static_cast<std::size_t>(s)],
                                                     cd[static_cast<std::size_t>(s)]);
      acc += term;
    }
  }
  return acc;
}

}  // namespace

Complex eval_spin_network(const Configuration& config, const MixedSignature& signature,
                          const IntTensor& op) {
  require_shape(config, signature, op.dim(), op.slots());
  return trace_against(op, slot_actions(signature, config.values()));
}

Complex eval_spin_network(const Configuration& config, const MixedSignature& signature,
                          const ComplexTensor& op) {
  require_shape(config, signature, op.dim(), op.slots());
  return trace_against(op, slot_actions(signature, config.values()));
}

Complex evaluate(const WilsonProduct& product, const Configuration& config) {
  Complex value = static_cast<double>(product.sign);
  for (const auto& l : product.loops) value *= wilson_loop(config, l);
  return value;
}

Loop canonical_rotation(const Loop& loop) {
  const std::size_t n = loop.steps.size();
  std::size_t best = 0;
  for (std::size_t start = 1; start < n; ++start) {
    for (std::size_t k = 0; k < n; ++k) {
      const auto& a = loop.steps[(start + k) % n];
      const auto& b = loop.steps[(best + k) % n];
      if (a == b) continue;
      if (a < b) best = start;
      break;
    }
  }
  Loop out;
  for (std::size_t k = 0; k < n; ++k) out.steps.push_back(loop.steps[(best + k) % n]);
  return out;
}

// tr(h_1 (x) ... (x) h_d o pi(sigma)) = prod over cycles (a_1 ... a_k) of
// tr(h_{a_k} ... h_{a_1}); the loop (a_1, ..., a_k) has exactly that holonomy.
WilsonProduct compile_unitary(const Permutation& sigma, const MixedSignature& signature) {
  if (sigma.size() != signature.degree())
    throw std::invalid_argument("permutation degree does not match signature");
  WilsonProduct out;
  for (const auto& cycle : cycles(sigma)) {
    Loop l;
    for (int a : cycle) l.steps.push_back({signature.gathered_edge(a), a <= signature.p() ? 1 : -1});
    out.loops.push_back(canonical_rotation(l));
  }
  return out;
}

WilsonProduct compile_orthosymplectic(const Pairing& tau, const MixedSignature& signature,
                                      const GroupKind& kind) {
  if (!kind.has_form()) throw std::invalid_argument("compile_orthosymplectic needs O, SO or Sp");
  if (signature.q() != 0) throw std::invalid_argument("orthogonal/symplectic signatures carry no duals");
  if (tau.half() != signature.p())
    throw std::invalid_argument("pairing size does not match signature degree");
  const FlipNormalization norm = normalize_pairing(tau);
  WilsonProduct out;
  // Each flipped slot turns h into eps * h^{-1}. For a skew form the flips
  // also reverse some blocks of tau, and T_flips(J_tau) = -pi(sigma) when an
  // odd number of them do.
  if (symmetry_sign(kind) < 0) {
    const std::size_t k = norm.flips.size() + static_cast<std::size_t>(reversed_blocks(tau, norm.flips));
    if (k % 2 == 1) out.sign = -1;
  }
  for (const auto& cycle : cycles(norm.sigma)) {
    Loop l;
    for (int a : cycle) {
      const bool flipped = std::binary_search(norm.flips.begin(), norm.flips.end(), a);
      l.steps.push_back({signature.gathered_edge(a), flipped ? -1 : 1});
    }
    out.loops.push_back(canonical_rotation(l));
  }
  return out;
}

Matrix kron_all(const std::vector<Matrix>& factors) {
  Matrix acc = Matrix::Identity(1, 1);
  for (const auto& f : factors) {
    Matrix next(acc.rows() * f.rows(), acc.cols() * f.cols());
    for (Eigen::Index i = 0; i < acc.rows(); ++i)
      for (Eigen::Index j = 0; j < acc.cols(); ++j)
        next.block(i * f.rows(), j * f.cols(), f.rows(), f.cols()) = acc(i, j) * f;
    acc = std::move(next);
  }
  return acc;
}

double commutator_defect(const IntTensor& op, const std::vector<Matrix>& actions) {
  if (static_cast<int>(actions.size()) != op.slots())
    throw std::invalid_argument("need one action matrix per slot");
  const Matrix r = kron_all(actions);
  const int n = op.side();
  Matrix left = Matrix::Zero(n, n);   // R * op
  Matrix right = Matrix::Zero(n, n);  // op * R
  for (int c = 0; c < n; ++c)
    for (int b = 0; b < n; ++b) {
      const std::int64_t v = op.at(c, b);
      if (v == 0) continue;
      const double dv = static_cast<double>(v);
      left.col(b) += dv * r.col(c);
      right.row(c) += dv * r.row(b);
    }
  return max_abs(left - right);
}

double commutator_defect(const ComplexTensor& op, const std::vector<Matrix>& actions) {
  if (static_cast<int>(actions.size()) != op.slots())
    throw std::invalid_argument("need one action matrix per slot");
  const Matrix r = kron_all(actions);
  const Matrix x = to_matrix(op);
  return max_abs(r * x - x * r);
}

}  // namespace wilsonnet
