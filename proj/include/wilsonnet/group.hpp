#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace wilsonnet {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Rng = std::mt19937_64;

inline constexpr double kDefaultMembershipTol = 1e-10;

enum class Family { U, SU, O, SO, Sp };

std::string_view family_name(Family family);
Family parse_family(std::string_view name);

struct GroupKind {
  Family family = Family::U;
  int n = 1;

  GroupKind() = default;
  GroupKind(Family f, int rank);

  /// Size of the defining matrices: n, or 2n for Sp(n).
  int matrix_dim() const { return family == Family::Sp ? 2 * n : n; }

  bool is_unitary_track() const { return family == Family::U || family == Family::SU; }
  bool has_form() const { return !is_unitary_track(); }

  std::string name() const;

  friend bool operator==(const GroupKind&, const GroupKind&) = default;
};

/// Gram matrix of the invariant bilinear form: identity for O/SO,
/// [[0, I], [-I, 0]] for Sp. Throws for U/SU.
Matrix gram_matrix(const GroupKind& kind);

/// +1 for a symmetric form, -1 for the symplectic one.
int symmetry_sign(const GroupKind& kind);

/// Complex-bilinear v^T * gram * w.
Complex form_eval(const GroupKind& kind, const Vector& v, const Vector& w);

class GroupElement {
 public:
  GroupElement(GroupKind kind, Matrix mat);

  static GroupElement identity(const GroupKind& kind);

  const GroupKind& kind() const { return kind_; }
  const Matrix& matrix() const { return mat_; }

  // All families sit inside a unitary group, so the inverse is the adjoint.
  GroupElement inverse() const;

  friend GroupElement operator*(const GroupElement& a, const GroupElement& b);

 private:
  GroupKind kind_;
  Matrix mat_;
};

struct Deviation {
  std::string invariant;
  double value = 0.0;
};

struct MembershipReport {
  double tol = kDefaultMembershipTol;
  std::vector<Deviation> deviations;

  bool passed() const;
  double worst() const;
};

MembershipReport membership_check(const GroupKind& kind, const Matrix& mat,
                                  double tol = kDefaultMembershipTol);
MembershipReport membership_check(const GroupElement& g, double tol = kDefaultMembershipTol);

/// Haar-distributed element. Consumes normal variates from `rng` only.
GroupElement haar_sample(const GroupKind& kind, Rng& rng);

/// Independent, reproducible stream for one task of a seeded run.
Rng task_stream(std::uint64_t seed, std::uint64_t task);

double max_abs(const Matrix& m);

}  // namespace wilsonnet
