#include "wilsonnet/group.hpp"

#include <algorithm>
#include <stdexcept>

namespace wilsonnet {

std::string_view family_name(Family family) {
  switch (family) {
    case Family::U: return "U";
    case Family::SU: return "SU";
    case Family::O: return "O";
    case Family::SO: return "SO";
    case Family::Sp: return "Sp";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  if (name == "U") return Family::U;
  if (name == "SU") return Family::SU;
  if (name == "O") return Family::O;
  if (name == "SO") return Family::SO;
  if (name == "Sp") return Family::Sp;
  throw std::invalid_argument("unknown group family: " + std::string(name));
}

GroupKind::GroupKind(Family f, int rank) : family(f), n(rank) {
  if (rank < 1) throw std::invalid_argument("group rank must be positive");
}

std::string GroupKind::name() const {
  return std::string(family_name(family)) + "(" + std::to_string(n) + ")";
}

Matrix gram_matrix(const GroupKind& kind) {
  if (!kind.has_form())
    throw std::invalid_argument(kind.name() + " carries no invariant bilinear form");
  const int m = kind.matrix_dim();
  if (kind.family != Family::Sp) return Matrix::Identity(m, m);
  Matrix omega = Matrix::Zero(m, m);
  for (int i = 0; i < kind.n; ++i) {
    omega(i, i + kind.n) = 1.0;
    omega(i + kind.n, i) = -1.0;
  }
  return omega;
}

int symmetry_sign(const GroupKind& kind) {
  if (!kind.has_form())
    throw std::invalid_argument(kind.name() + " carries no invariant bilinear form");
  return kind.family == Family::Sp ? -1 : 1;
}

Complex form_eval(const GroupKind& kind, const Vector& v, const Vector& w) {
  const Matrix gram = gram_matrix(kind);
  if (v.size() != gram.rows() || w.size() != gram.rows())
    throw std::invalid_argument("form_eval: vector length does not match " + kind.name());
  return (v.transpose() * gram * w)(0, 0);
}

GroupElement::GroupElement(GroupKind kind, Matrix mat) : kind_(kind), mat_(std::move(mat)) {
  const int m = kind_.matrix_dim();
  if (mat_.rows() != m || mat_.cols() != m)
    throw std::invalid_argument("matrix of size " + std::to_string(mat_.rows()) + "x" +
                                std::to_string(mat_.cols()) + " cannot belong to " +
                                kind_.name());
}

GroupElement GroupElement::identity(const GroupKind& kind) {
  const int m = kind.matrix_dim();
  return GroupElement(kind, Matrix::Identity(m, m));
}

GroupElement GroupElement::inverse() const { return GroupElement(kind_, mat_.adjoint()); }

GroupElement operator*(const GroupElement& a, const GroupElement& b) {
  if (!(a.kind_ == b.kind_)) throw std::invalid_argument("product of elements of different groups");
  return GroupElement(a.kind_, a.mat_ * b.mat_);
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

bool MembershipReport::passed() const {
  return std::all_of(deviations.begin(), deviations.end(),
                     [&](const Deviation& d) { return d.value <= tol; });
}

double MembershipReport::worst() const {
  double w = 0.0;
  for (const auto& d : deviations) w = std::max(w, d.value);
  return w;
}

MembershipReport membership_check(const GroupKind& kind, const Matrix& mat, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("membership tolerance must be positive");
  const int m = kind.matrix_dim();
  if (mat.rows() != m || mat.cols() != m)
    throw std::invalid_argument("dimension mismatch: " + kind.name() + " expects " +
                                std::to_string(m) + "x" + std::to_string(m));

  MembershipReport report;
  report.tol = tol;
  const Matrix id = Matrix::Identity(m, m);
  report.deviations.push_back({"unitary", max_abs(mat.adjoint() * mat - id)});
  if (kind.family == Family::O || kind.family == Family::SO)
    report.deviations.push_back({"real", mat.imag().cwiseAbs().maxCoeff()});
  if (kind.family == Family::SU || kind.family == Family::SO)
    report.deviations.push_back({"det", std::abs(mat.determinant() - Complex(1.0))});
  if (kind.family == Family::Sp) {
    const Matrix omega = gram_matrix(kind);
    report.deviations.push_back({"symplectic", max_abs(mat.transpose() * omega * mat - omega)});
  }
  return report;
}

MembershipReport membership_check(const GroupElement& g, double tol) {
  return membership_check(g.kind(), g.matrix(), tol);
}

namespace {

// Complex Gaussian with E|z|^2 = 1.
Complex complex_normal(Rng& rng, std::normal_distribution<double>& normal) {
  const double re = normal(rng);
  const double im = normal(rng);
  return Complex(re, im) * std::sqrt(0.5);
}

Matrix haar_unitary(int m, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix z(m, m);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i) z(i, j) = complex_normal(rng, normal);
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < m; ++j) {
    const double mod = std::abs(r(j, j));
    const Complex phase = mod > 0.0 ? r(j, j) / mod : Complex(1.0);
    q.col(j) *= phase;
  }
  return q;
}

Matrix haar_orthogonal(int m, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd z(m, m);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i) z(i, j) = normal(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(z);
  Eigen::MatrixXd q = qr.householderQ();
  for (int j = 0; j < m; ++j)
    if (qr.matrixQR()(j, j) < 0.0) q.col(j) *= -1.0;
  return q.cast<Complex>();
}

// J * conj(v) with J = [[0, -I], [I, 0]]: the quaternionic partner column.
Vector quaternionic_partner(const Vector& v, int n) {
  Vector out(2 * n);
  out.head(n) = -v.tail(n).conjugate();
  out.tail(n) = v.head(n).conjugate();
  return out;
}

Matrix haar_symplectic(int n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  // Columns of [[A, -conj(B)], [B, conj(A)]]; only the first n are drawn.
  std::vector<Vector> cols;
  for (int j = 0; j < n; ++j) {
    Vector c(2 * n);
    for (int i = 0; i < 2 * n; ++i) c(i) = complex_normal(rng, normal);
    cols.push_back(std::move(c));
  }
  Matrix g(2 * n, 2 * n);
  std::vector<Vector> basis;
  for (int j = 0; j < n; ++j) {
    Vector u = cols[j];
    // Two passes of Gram-Schmidt against the quaternionic span built so far.
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) u -= b * b.dot(u);
    u /= u.norm();
    const Vector partner = quaternionic_partner(u, n);
    basis.push_back(u);
    basis.push_back(partner);
    g.col(j) = u;
    g.col(j + n) = partner;
  }
  return g;
}

}  // namespace

GroupElement haar_sample(const GroupKind& kind, Rng& rng) {
  const int m = kind.matrix_dim();
  switch (kind.family) {
    case Family::U:
      return GroupElement(kind, haar_unitary(m, rng));
    case Family::SU: {
      Matrix g = haar_unitary(m, rng);
      const Complex det = g.determinant();
      g.col(0) /= det;
      return GroupElement(kind, std::move(g));
    }
    case Family::O:
      return GroupElement(kind, haar_orthogonal(m, rng));
    case Family::SO: {
      Matrix g = haar_orthogonal(m, rng);
      if (g.real().determinant() < 0.0) g.col(0) *= -1.0;
      return GroupElement(kind, std::move(g));
    }
    case Family::Sp:
      return GroupElement(kind, haar_symplectic(kind.n, rng));
  }
  throw std::logic_error("unreachable group family");
}

Rng task_stream(std::uint64_t seed, std::uint64_t task) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(task), static_cast<std::uint32_t>(task >> 32)};
  return Rng(seq);
}

}  // namespace wilsonnet
