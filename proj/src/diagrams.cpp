#include "wilsonnet/diagrams.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace wilsonnet {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (int x : images_) {
    if (x < 1 || x > size() || seen[static_cast<std::size_t>(x - 1)])
      throw std::invalid_argument("not a bijection of {1.." + std::to_string(size()) + "}");
    seen[static_cast<std::size_t>(x - 1)] = true;
  }
}

Permutation Permutation::identity(int d) {
  std::vector<int> images(static_cast<std::size_t>(d));
  std::iota(images.begin(), images.end(), 1);
  return Permutation(std::move(images));
}

Permutation Permutation::from_cycles(int d, const std::vector<std::vector<int>>& cycles) {
  std::vector<int> images(static_cast<std::size_t>(d));
  std::iota(images.begin(), images.end(), 1);
  std::vector<bool> used(static_cast<std::size_t>(d), false);
  for (const auto& c : cycles) {
    for (std::size_t t = 0; t < c.size(); ++t) {
      const int x = c[t];
      if (x < 1 || x > d || used[static_cast<std::size_t>(x - 1)])
        throw std::invalid_argument("cycles are not disjoint within {1..d}");
      used[static_cast<std::size_t>(x - 1)] = true;
      images[static_cast<std::size_t>(x - 1)] = c[(t + 1) % c.size()];
    }
  }
  return Permutation(std::move(images));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (int i = 1; i <= size(); ++i) inv[static_cast<std::size_t>((*this)(i) - 1)] = i;
  return Permutation(std::move(inv));
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw std::invalid_argument("composing permutations of different degree");
  std::vector<int> out(a.images_.size());
  for (int i = 1; i <= a.size(); ++i) out[static_cast<std::size_t>(i - 1)] = a(b(i));
  return Permutation(std::move(out));
}

std::vector<Cycle> cycles(const Permutation& sigma) {
  std::vector<Cycle> out;
  std::vector<bool> seen(static_cast<std::size_t>(sigma.size()), false);
  for (int start = 1; start <= sigma.size(); ++start) {
    if (seen[static_cast<std::size_t>(start - 1)]) continue;
    Cycle c;
    for (int x = start; !seen[static_cast<std::size_t>(x - 1)]; x = sigma(x)) {
      seen[static_cast<std::size_t>(x - 1)] = true;
      c.push_back(x);
    }
    out.push_back(std::move(c));
  }
  return out;
}

Pairing::Pairing(std::vector<int> partner) : partner_(std::move(partner)) {
  const int n = static_cast<int>(partner_.size());
  if (n == 0 || n % 2 != 0) throw std::invalid_argument("a pairing needs an even, nonzero point count");
  for (int i = 1; i <= n; ++i) {
    const int j = partner_[static_cast<std::size_t>(i - 1)];
    if (j < 1 || j > n || j == i || partner_[static_cast<std::size_t>(j - 1)] != i)
      throw std::invalid_argument("not a fixed-point-free involution at point " + std::to_string(i));
  }
}

Pairing Pairing::from_blocks(int p, const std::vector<std::pair<int, int>>& blocks) {
  if (p < 1 || static_cast<int>(blocks.size()) != p)
    throw std::invalid_argument("a pairing of {1..2p} needs exactly p blocks");
  std::vector<int> partner(static_cast<std::size_t>(2 * p), 0);
  for (const auto& [a, b] : blocks) {
    if (a < 1 || a > 2 * p || b < 1 || b > 2 * p || partner[static_cast<std::size_t>(a - 1)] != 0 ||
        partner[static_cast<std::size_t>(b - 1)] != 0)
      throw std::invalid_argument("pairing blocks overlap or leave {1..2p}");
    partner[static_cast<std::size_t>(a - 1)] = b;
    partner[static_cast<std::size_t>(b - 1)] = a;
  }
  return Pairing(std::move(partner));
}

std::vector<std::pair<int, int>> Pairing::blocks() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 1; i <= 2 * half(); ++i)
    if (i < (*this)(i)) out.emplace_back(i, (*this)(i));
  return out;
}

Pairing conjugate_by_flip(const Pairing& tau, int i) {
  const int p = tau.half();
  if (i < 1 || i > p) throw std::invalid_argument("flip index out of range");
  auto theta = [&](int x) { return x == i ? i + p : (x == i + p ? i : x); };
  std::vector<int> partner(tau.partners().size());
  for (int x = 1; x <= 2 * p; ++x) partner[static_cast<std::size_t>(x - 1)] = theta(tau(theta(x)));
  return Pairing(std::move(partner));
}

Pairing conjugate_by_flips(const Pairing& tau, const std::vector<int>& flips) {
  Pairing out = tau;
  for (int i : flips) out = conjugate_by_flip(out, i);
  return out;
}

int reversed_blocks(const Pairing& tau, const std::vector<int>& flips) {
  const int p = tau.half();
  std::vector<int> image(static_cast<std::size_t>(2 * p + 1));
  std::iota(image.begin(), image.end(), 0);
  for (int i : flips) {
    if (i < 1 || i > p) throw std::out_of_range("flip outside 1..p");
    std::swap(image[static_cast<std::size_t>(i)], image[static_cast<std::size_t>(i + p)]);
  }
  int count = 0;
  for (const auto& [k, l] : tau.blocks())
    if (image[static_cast<std::size_t>(k)] > image[static_cast<std::size_t>(l)]) ++count;
  return count;
}

bool is_permutation_form(const Pairing& tau) {
  const int p = tau.half();
  for (int i = 1; i <= p; ++i)
    if (tau(i) <= p) return false;
  return true;
}

FlipNormalization normalize_pairing(const Pairing& tau) {
  const int p = tau.half();
  auto theta = [p](int x) { return x <= p ? x + p : x - p; };
  auto top = [p](int x) { return x <= p ? x : x - p; };

  std::vector<int> images(static_cast<std::size_t>(p), 0);
  std::vector<bool> covered(static_cast<std::size_t>(p), false);
  std::vector<int> flips;
  for (int seed = 1; seed <= p; ++seed) {
    if (covered[static_cast<std::size_t>(seed - 1)]) continue;
    // Orbit of the seed under theta o tau, projected to the top row.
    std::vector<int> orbit;
    int x = seed;
    do {
      orbit.push_back(x);
      x = theta(tau(x));
    } while (x != seed);
    for (std::size_t t = 0; t < orbit.size(); ++t) {
      const int here = top(orbit[t]);
      const int next = top(orbit[(t + 1) % orbit.size()]);
      covered[static_cast<std::size_t>(here - 1)] = true;
      images[static_cast<std::size_t>(here - 1)] = next;
      if (orbit[t] > p) flips.push_back(here);
    }
  }
  std::sort(flips.begin(), flips.end());
  return FlipNormalization{std::move(flips), Permutation(std::move(images))};
}

Pairing pairing_from_permutation(const Permutation& sigma) {
  const int p = sigma.size();
  if (p < 1) throw std::invalid_argument("empty permutation has no pairing");
  std::vector<int> partner(static_cast<std::size_t>(2 * p));
  for (int i = 1; i <= p; ++i) {
    partner[static_cast<std::size_t>(i - 1)] = sigma(i) + p;
    partner[static_cast<std::size_t>(sigma(i) + p - 1)] = i;
  }
  return Pairing(std::move(partner));
}

Permutation permutation_from_pairing(const Pairing& tau) {
  if (!is_permutation_form(tau)) throw std::invalid_argument("pairing is not of permutation form");
  const int p = tau.half();
  std::vector<int> images(static_cast<std::size_t>(p));
  for (int i = 1; i <= p; ++i) images[static_cast<std::size_t>(i - 1)] = tau(i) - p;
  return Permutation(std::move(images));
}

PairingEnumerator::PairingEnumerator(int p) : p_(p) {
  if (p < 1 || p > kMaxEnumeratedHalf)
    throw std::invalid_argument("pairing enumeration supports 1 <= p <= " +
                                std::to_string(kMaxEnumeratedHalf));
  choices_.assign(static_cast<std::size_t>(p), 0);
}

Pairing PairingEnumerator::build() const {
  std::vector<int> partner(static_cast<std::size_t>(2 * p_), 0);
  for (int level = 0; level < p_; ++level) {
    std::vector<int> free;
    for (int x = 1; x <= 2 * p_; ++x)
      if (partner[static_cast<std::size_t>(x - 1)] == 0) free.push_back(x);
    const int low = free.front();
    const int high = free[static_cast<std::size_t>(choices_[static_cast<std::size_t>(level)] + 1)];
    partner[static_cast<std::size_t>(low - 1)] = high;
    partner[static_cast<std::size_t>(high - 1)] = low;
  }
  return Pairing(std::move(partner));
}

std::optional<Pairing> PairingEnumerator::next() {
  if (done_) return std::nullopt;
  if (!started_) {
    started_ = true;
    return build();
  }
  // Odometer: level k has 2(p - k) - 1 choices for the least free point.
  for (int level = p_ - 1; level >= 0; --level) {
    auto& c = choices_[static_cast<std::size_t>(level)];
    if (c + 1 < 2 * (p_ - level) - 1) {
      ++c;
      return build();
    }
    c = 0;
  }
  done_ = true;
  return std::nullopt;
}

std::vector<Pairing> enumerate_pairings(int p) {
  PairingEnumerator it(p);
  std::vector<Pairing> out;
  while (auto tau = it.next()) out.push_back(std::move(*tau));
  return out;
}

std::vector<Permutation> all_permutations(int d) {
  std::vector<int> images(static_cast<std::size_t>(d));
  std::iota(images.begin(), images.end(), 1);
  std::vector<Permutation> out;
  do {
    out.push_back(Permutation(images));
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

}  // namespace wilsonnet
