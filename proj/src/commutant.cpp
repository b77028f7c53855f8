#include "wilsonnet/commutant.hpp"

#include <stdexcept>
#include <string>

#include "wilsonnet/spin_network.hpp"

namespace wilsonnet {

int numerical_rank(const Matrix& m, double rel_threshold) {
  if (m.size() == 0) return 0;
  Eigen::BDCSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > rel_threshold * sv(0)) ++rank;
  return rank;
}

int commutant_dimension(const GroupKind& kind, int d, int samples, Rng& rng,
                        std::int64_t max_unknowns) {
  if (d < 1 || samples < 1) throw std::invalid_argument("commutant needs d >= 1 and samples >= 1");
  const int m = kind.matrix_dim();
  const std::int64_t unknowns = int_pow(m, 2 * d);
  if (unknowns > max_unknowns)
    throw std::length_error("commutant system with " + std::to_string(unknowns) +
                            " unknowns exceeds the bound " + std::to_string(max_unknowns));
  const int n = static_cast<int>(int_pow(m, d));
  const int nn = n * n;
  const Matrix id = Matrix::Identity(n, n);

  // vec(R X - X R) = (I (x) R - R^T (x) I) vec(X), column-major vec.
  Matrix system(static_cast<Eigen::Index>(samples) * nn, nn);
  for (int s = 0; s < samples; ++s) {
    const GroupElement g = haar_sample(kind, rng);
    const Matrix r = kron_all(std::vector<Matrix>(static_cast<std::size_t>(d), g.matrix()));
    const Matrix block = kron_all({id, r}) - kron_all({Matrix(r.transpose()), id});
    system.block(static_cast<Eigen::Index>(s) * nn, 0, nn, nn) = block;
  }
  return nn - numerical_rank(system);
}

namespace {

template <class T>
int span_rank_impl(const std::vector<DenseTensor<T>>& operators) {
  if (operators.empty()) return 0;
  const int side = operators.front().side();
  Matrix stacked(static_cast<Eigen::Index>(side) * side, static_cast<Eigen::Index>(operators.size()));
  for (std::size_t k = 0; k < operators.size(); ++k) {
    if (operators[k].side() != side) throw std::invalid_argument("span_rank: operators differ in shape");
    const auto& e = operators[k].entries();
    for (std::size_t i = 0; i < e.size(); ++i)
      stacked(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = static_cast<Complex>(e[i]);
  }
  return numerical_rank(stacked);
}

}  // namespace

int span_rank(const std::vector<IntTensor>& operators) { return span_rank_impl(operators); }
int span_rank(const std::vector<ComplexTensor>& operators) { return span_rank_impl(operators); }

}  // namespace wilsonnet
