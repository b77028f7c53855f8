#pragma once

#include <optional>
#include <utility>
#include <vector>

// Points are 1-based here, matching {1, ..., 2p}. JSON uses 0-based points.

namespace wilsonnet {

class Permutation {
 public:
  /// `images[i - 1]` is the image of i; must be a bijection of {1..d}.
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int d);
  /// Builds from disjoint cycles; points not mentioned are fixed.
  static Permutation from_cycles(int d, const std::vector<std::vector<int>>& cycles);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_.at(static_cast<std::size_t>(i - 1)); }
  const std::vector<int>& images() const { return images_; }

  Permutation inverse() const;

  /// (a * b)(i) = a(b(i)): b acts first.
  friend Permutation operator*(const Permutation& a, const Permutation& b);
  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

using Cycle = std::vector<int>;

/// Disjoint cycles including fixed points; each starts at its minimum and the
/// list is sorted by minimum. Within a cycle, c[t+1] = sigma(c[t]).
std::vector<Cycle> cycles(const Permutation& sigma);

/// A fixed-point-free involution of {1..2p}.
class Pairing {
 public:
  explicit Pairing(std::vector<int> partner);

  static Pairing from_blocks(int p, const std::vector<std::pair<int, int>>& blocks);

  int half() const { return static_cast<int>(partner_.size()) / 2; }
  int operator()(int i) const { return partner_.at(static_cast<std::size_t>(i - 1)); }
  const std::vector<int>& partners() const { return partner_; }

  /// Blocks {a, b} with a < b, sorted by a.
  std::vector<std::pair<int, int>> blocks() const;

  friend bool operator==(const Pairing&, const Pairing&) = default;

 private:
  std::vector<int> partner_;
};

/// theta_i tau theta_i with theta_i = (i, p + i).
Pairing conjugate_by_flip(const Pairing& tau, int i);
Pairing conjugate_by_flips(const Pairing& tau, const std::vector<int>& flips);

/// Blocks {k < l} of tau whose images under the flips come out in the
/// opposite order. Each one costs a factor -1 on J_tau for a skew form.
int reversed_blocks(const Pairing& tau, const std::vector<int>& flips);

/// True iff tau pairs every top point i <= p with a bottom point.
bool is_permutation_form(const Pairing& tau);

struct FlipNormalization {
  std::vector<int> flips;  // ascending subset of {1..p}
  Permutation sigma;
};

/// Flip normalization by orbit tracing of x -> theta(tau(x)), seeded at the
/// least uncovered top point. Conjugating tau by the flips pairs i with
/// sigma(i) + p.
FlipNormalization normalize_pairing(const Pairing& tau);

/// The pairing i <-> sigma(i) + p.
Pairing pairing_from_permutation(const Permutation& sigma);

/// Reads off sigma from a pairing in permutation form.
Permutation permutation_from_pairing(const Pairing& tau);

inline constexpr int kMaxEnumeratedHalf = 7;

/// Yields all (2p-1)!! pairings of {1..2p} once each: the least unpaired
/// point is matched with each larger free point in increasing order.
class PairingEnumerator {
 public:
  explicit PairingEnumerator(int p);

  std::optional<Pairing> next();

 private:
  Pairing build() const;

  int p_;
  bool started_ = false;
  bool done_ = false;
  std::vector<int> choices_;  // per level: index among the larger free points
};

std::vector<Pairing> enumerate_pairings(int p);

std::vector<Permutation> all_permutations(int d);

}  // namespace wilsonnet
