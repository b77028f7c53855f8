#pragma once

#include <vector>

#include "wilsonnet/group.hpp"
#include "wilsonnet/tensor.hpp"

namespace wilsonnet {

/// Singular values at or below this fraction of the largest count as zero.
inline constexpr double kRankThreshold = 1e-8;

/// Cap on m^{2d}, the number of unknowns in the commutant system.
inline constexpr std::int64_t kMaxCommutantUnknowns = 4096;

int numerical_rank(const Matrix& m, double rel_threshold = kRankThreshold);

/// Nullity of the stacked constraints [rho(g_s)^{(x)d}, X] = 0 over
/// `samples` Haar elements.
int commutant_dimension(const GroupKind& kind, int d, int samples, Rng& rng,
                        std::int64_t max_unknowns = kMaxCommutantUnknowns);

/// Numerical rank of the vectorized operators.
int span_rank(const std::vector<IntTensor>& operators);
int span_rank(const std::vector<ComplexTensor>& operators);

}  // namespace wilsonnet
