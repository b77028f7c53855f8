#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "wilsonnet/group.hpp"

namespace wilsonnet {

/// Entry-count cap for any dense operator (side * side).
inline constexpr std::int64_t kMaxDenseEntries = std::int64_t{1} << 22;

inline std::int64_t int_pow(int base, int exp) {
  std::int64_t out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

/// Endomorphism of a tensor power W^{(x)slots} with dim W = dim, stored as a
/// dense side x side array (row = output multi-index, column = input).
/// Multi-indices put slot 1 most significant.
template <class T>
class DenseTensor {
 public:
  DenseTensor(int dim, int slots) : dim_(dim), slots_(slots) {
    if (dim < 1 || slots < 0) throw std::invalid_argument("bad tensor shape");
    const std::int64_t side = int_pow(dim, slots);
    if (side * side > kMaxDenseEntries)
      throw std::length_error("operator with " + std::to_string(side * side) +
                              " entries exceeds the dense memory bound");
    side_ = static_cast<int>(side);
    entries_.assign(static_cast<std::size_t>(side * side), T{});
  }

  int dim() const { return dim_; }
  int slots() const { return slots_; }
  int side() const { return side_; }

  /// Shape as a tensor of order 2 * slots: output slots then input slots.
  std::vector<int> shape() const { return std::vector<int>(static_cast<std::size_t>(2 * slots_), dim_); }

  T& at(int out, int in) { return entries_[index(out, in)]; }
  const T& at(int out, int in) const { return entries_[index(out, in)]; }

  const std::vector<T>& entries() const { return entries_; }
  std::vector<T>& entries() { return entries_; }

  /// Digit of `slot` (0-based) in a multi-index.
  int digit(int multi, int slot) const {
    for (int s = slots_ - 1; s > slot; --s) multi /= dim_;
    return multi % dim_;
  }

  std::vector<int> decode(int multi) const {
    std::vector<int> d(static_cast<std::size_t>(slots_));
    for (int s = slots_ - 1; s >= 0; --s) {
      d[static_cast<std::size_t>(s)] = multi % dim_;
      multi /= dim_;
    }
    return d;
  }

  int encode(const std::vector<int>& digits) const {
    int multi = 0;
    for (int d : digits) multi = multi * dim_ + d;
    return multi;
  }

  friend bool operator==(const DenseTensor&, const DenseTensor&) = default;

 private:
  std::size_t index(int out, int in) const {
    return static_cast<std::size_t>(out) * static_cast<std::size_t>(side_) +
           static_cast<std::size_t>(in);
  }

  int dim_;
  int slots_;
  int side_ = 1;
  std::vector<T> entries_;
};

using IntTensor = DenseTensor<std::int64_t>;
using ComplexTensor = DenseTensor<Complex>;

inline ComplexTensor to_complex(const IntTensor& t) {
  ComplexTensor out(t.dim(), t.slots());
  for (int r = 0; r < t.side(); ++r)
    for (int c = 0; c < t.side(); ++c) out.at(r, c) = static_cast<double>(t.at(r, c));
  return out;
}

/// Embeds a matrix as a one-slot operator.
inline ComplexTensor from_matrix(const Matrix& m) {
  ComplexTensor out(static_cast<int>(m.rows()), 1);
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) out.at(r, c) = m(r, c);
  return out;
}

inline Matrix to_matrix(const ComplexTensor& t) {
  Matrix m(t.side(), t.side());
  for (int r = 0; r < t.side(); ++r)
    for (int c = 0; c < t.side(); ++c) m(r, c) = t.at(r, c);
  return m;
}

}  // namespace wilsonnet
