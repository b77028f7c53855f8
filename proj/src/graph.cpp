#include "wilsonnet/graph.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <string>

namespace wilsonnet {

Graph::Graph(int vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
  if (vertex_count_ < 1) throw std::invalid_argument("graph needs at least one vertex");
  std::vector<bool> touched(static_cast<std::size_t>(vertex_count_), false);
  for (const auto& e : edges_) {
    if (e.source < 0 || e.source >= vertex_count_ || e.target < 0 || e.target >= vertex_count_)
      throw std::invalid_argument("edge endpoint out of range");
    touched[static_cast<std::size_t>(e.source)] = true;
    touched[static_cast<std::size_t>(e.target)] = true;
  }
  for (int v = 0; v < vertex_count_; ++v)
    if (!touched[static_cast<std::size_t>(v)])
      throw std::invalid_argument("vertex " + std::to_string(v) + " is isolated");
}

Graph Graph::bouquet(int r) {
  if (r < 1) throw std::invalid_argument("bouquet needs at least one edge");
  return Graph(1, std::vector<Edge>(static_cast<std::size_t>(r), Edge{0, 0}));
}

bool operator==(const Graph& a, const Graph& b) {
  if (a.vertex_count_ != b.vertex_count_ || a.edges_.size() != b.edges_.size()) return false;
  for (std::size_t i = 0; i < a.edges_.size(); ++i)
    if (a.edges_[i].source != b.edges_[i].source || a.edges_[i].target != b.edges_[i].target)
      return false;
  return true;
}

int step_source(const Graph& graph, const SignedEdge& step) {
  const Edge& e = graph.edge(step.edge);
  return step.sign > 0 ? e.source : e.target;
}

int step_target(const Graph& graph, const SignedEdge& step) {
  const Edge& e = graph.edge(step.edge);
  return step.sign > 0 ? e.target : e.source;
}

Path Path::reversed() const {
  Path out;
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) out.steps.push_back({it->edge, -it->sign});
  return out;
}

Path Path::then(const Path& next) const {
  Path out = *this;
  out.steps.insert(out.steps.end(), next.steps.begin(), next.steps.end());
  return out;
}

void validate_path(const Graph& graph, const Path& path) {
  if (path.steps.empty()) throw std::invalid_argument("path is empty");
  for (const auto& s : path.steps) {
    if (s.edge < 0 || s.edge >= graph.edge_count())
      throw std::invalid_argument("path step refers to unknown edge " + std::to_string(s.edge));
    if (s.sign != 1 && s.sign != -1) throw std::invalid_argument("path step sign must be +1 or -1");
  }
  for (std::size_t i = 0; i + 1 < path.steps.size(); ++i)
    if (step_target(graph, path.steps[i]) != step_source(graph, path.steps[i + 1]))
      throw std::invalid_argument("path breaks between steps " + std::to_string(i) + " and " +
                                  std::to_string(i + 1));
}

bool is_loop(const Graph& graph, const Path& path) {
  validate_path(graph, path);
  return step_target(graph, path.steps.back()) == step_source(graph, path.steps.front());
}

int base_vertex(const Graph& graph, const Loop& loop) {
  if (!is_loop(graph, loop)) throw std::invalid_argument("path is not closed");
  return step_source(graph, loop.steps.front());
}

std::vector<Loop> loops_up_to(const Graph& graph, int max_len) {
  if (max_len < 1) throw std::invalid_argument("max_len must be at least 1");
  std::vector<Loop> out;
  Path current;
  auto extend = [&](auto&& self, int start, int at) -> void {
    if (!current.steps.empty() && at == start) out.push_back(current);
    if (static_cast<int>(current.steps.size()) == max_len) return;
    for (int e = 0; e < graph.edge_count(); ++e)
      for (int sign : {1, -1}) {
        const SignedEdge step{e, sign};
        if (step_source(graph, step) != at) continue;
        current.steps.push_back(step);
        self(self, start, step_target(graph, step));
        current.steps.pop_back();
      }
  };
  for (int v = 0; v < graph.vertex_count(); ++v) extend(extend, v, v);
  return out;
}

namespace {

void require_members(const GroupKind& kind, const std::vector<GroupElement>& values, double tol,
                     const char* what) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i].kind() == kind))
      throw std::invalid_argument(std::string(what) + " mixes group kinds");
    const auto report = membership_check(values[i], tol);
    if (!report.passed())
      throw std::invalid_argument(std::string(what) + " value " + std::to_string(i) +
                                  " is not in " + kind.name());
  }
}

}  // namespace

Configuration::Configuration(Graph graph, GroupKind kind, std::vector<GroupElement> values,
                             double tol)
    : graph_(std::move(graph)), kind_(kind), values_(std::move(values)) {
  if (static_cast<int>(values_.size()) != graph_.edge_count())
    throw std::invalid_argument("configuration needs one value per edge");
  require_members(kind_, values_, tol, "configuration");
}

Configuration Configuration::identity(Graph graph, GroupKind kind) {
  std::vector<GroupElement> values(static_cast<std::size_t>(graph.edge_count()),
                                   GroupElement::identity(kind));
  return Configuration(std::move(graph), kind, std::move(values));
}

Configuration Configuration::haar(Graph graph, GroupKind kind, Rng& rng) {
  std::vector<GroupElement> values;
  for (int e = 0; e < graph.edge_count(); ++e) values.push_back(haar_sample(kind, rng));
  return Configuration(std::move(graph), kind, std::move(values));
}

GaugeTransform::GaugeTransform(GroupKind kind, std::vector<GroupElement> values, double tol)
    : kind_(kind), values_(std::move(values)) {
  require_members(kind_, values_, tol, "gauge transform");
}

GaugeTransform GaugeTransform::identity(const GroupKind& kind, int vertex_count) {
  return GaugeTransform(kind, std::vector<GroupElement>(static_cast<std::size_t>(vertex_count),
                                                        GroupElement::identity(kind)));
}

GaugeTransform GaugeTransform::haar(const GroupKind& kind, int vertex_count, Rng& rng) {
  std::vector<GroupElement> values;
  for (int v = 0; v < vertex_count; ++v) values.push_back(haar_sample(kind, rng));
  return GaugeTransform(kind, std::move(values));
}

Configuration gauge_apply(const GaugeTransform& phi, const Configuration& g) {
  if (!(phi.kind() == g.kind())) throw std::invalid_argument("gauge transform has the wrong kind");
  if (phi.vertex_count() != g.graph().vertex_count())
    throw std::invalid_argument("gauge transform has the wrong vertex count");
  std::vector<GroupElement> values;
  values.reserve(g.values().size());
  for (int e = 0; e < g.graph().edge_count(); ++e) {
    const Edge& edge = g.graph().edge(e);
    values.push_back(phi.at(edge.target).inverse() * g.value(e) * phi.at(edge.source));
  }
  return Configuration(g.graph(), g.kind(), std::move(values));
}

GroupElement holonomy(const Configuration& g, const Path& path) {
  validate_path(g.graph(), path);
  Matrix h = Matrix::Identity(g.kind().matrix_dim(), g.kind().matrix_dim());
  for (const auto& s : path.steps) {
    const Matrix& ge = g.value(s.edge).matrix();
    h = (s.sign > 0 ? ge : Matrix(ge.adjoint())) * h;
  }
  return GroupElement(g.kind(), std::move(h));
}

Complex wilson_loop(const Configuration& g, const Loop& loop) {
  if (!is_loop(g.graph(), loop)) throw std::invalid_argument("wilson_loop needs a closed path");
  return holonomy(g, loop).matrix().trace();
}

TreeFixing spanning_tree_fix(const Configuration& g, int root) {
  const Graph& graph = g.graph();
  const int nv = graph.vertex_count();
  if (root < 0 || root >= nv) throw std::invalid_argument("root vertex out of range");

  std::vector<std::optional<GroupElement>> phi(static_cast<std::size_t>(nv));
  std::vector<bool> is_tree(static_cast<std::size_t>(graph.edge_count()), false);
  phi[static_cast<std::size_t>(root)] = GroupElement::identity(g.kind());
  std::deque<int> queue{root};
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    const GroupElement& phi_u = *phi[static_cast<std::size_t>(u)];
    for (int e = 0; e < graph.edge_count(); ++e) {
      const Edge& edge = graph.edge(e);
      if (edge.source == edge.target) continue;
      // phi_t^{-1} g_e phi_s = 1 fixes the far endpoint from the near one.
      if (edge.source == u && !phi[static_cast<std::size_t>(edge.target)]) {
        phi[static_cast<std::size_t>(edge.target)] = g.value(e) * phi_u;
        is_tree[static_cast<std::size_t>(e)] = true;
        queue.push_back(edge.target);
      } else if (edge.target == u && !phi[static_cast<std::size_t>(edge.source)]) {
        phi[static_cast<std::size_t>(edge.source)] = g.value(e).inverse() * phi_u;
        is_tree[static_cast<std::size_t>(e)] = true;
        queue.push_back(edge.source);
      }
    }
  }
  std::vector<GroupElement> gauge_values;
  for (int v = 0; v < nv; ++v) {
    if (!phi[static_cast<std::size_t>(v)])
      throw std::invalid_argument("graph is disconnected: vertex " + std::to_string(v) +
                                  " unreachable from root");
    gauge_values.push_back(*phi[static_cast<std::size_t>(v)]);
  }
  GaugeTransform gauge(g.kind(), std::move(gauge_values));

  std::vector<GroupElement> values;
  std::vector<int> tree_edges;
  for (int e = 0; e < graph.edge_count(); ++e) {
    if (is_tree[static_cast<std::size_t>(e)]) {
      values.push_back(GroupElement::identity(g.kind()));
      tree_edges.push_back(e);
    } else {
      const Edge& edge = graph.edge(e);
      values.push_back(gauge.at(edge.target).inverse() * g.value(e) * gauge.at(edge.source));
    }
  }
  return TreeFixing{Configuration(graph, g.kind(), std::move(values)), std::move(tree_edges),
                    std::move(gauge)};
}

namespace {

Matrix polar_factor(const Matrix& k) {
  Eigen::JacobiSVD<Matrix> svd(k, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

// Nearest-ish group element; exact for U and O, and the remaining families
// only differ from it by central or structure-restoring corrections.
Matrix project_to_group(const GroupKind& kind, const Matrix& k) {
  const int m = kind.matrix_dim();
  switch (kind.family) {
    case Family::U:
      return polar_factor(k);
    case Family::SU: {
      Matrix u = polar_factor(k);
      const Complex det = u.determinant();
      return u * std::pow(det, -1.0 / m);
    }
    case Family::O:
    case Family::SO: {
      const Eigen::MatrixXd re = k.real();
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(re, Eigen::ComputeFullU | Eigen::ComputeFullV);
      Eigen::MatrixXd u = svd.matrixU();
      if (kind.family == Family::SO && (u * svd.matrixV().transpose()).determinant() < 0.0)
        u.col(m - 1) *= -1.0;
      return (u * svd.matrixV().transpose()).cast<Complex>();
    }
    case Family::Sp: {
      const int n = kind.n;
      Matrix j = Matrix::Zero(m, m);
      for (int i = 0; i < n; ++i) {
        j(i, i + n) = -1.0;
        j(i + n, i) = 1.0;
      }
      const Matrix sym = 0.5 * (k + j * k.conjugate() * j.adjoint());
      return polar_factor(sym);
    }
  }
  return k;
}

double objective(const std::vector<Matrix>& a, const std::vector<Matrix>& b, const Matrix& k) {
  double f = 0.0;
  for (std::size_t l = 0; l < a.size(); ++l) f += (b[l] * k - k * a[l]).squaredNorm();
  return f;
}

}  // namespace

double alignment_residual(const Configuration& g, const Configuration& g_prime,
                          const std::vector<Loop>& loops, const Matrix& k) {
  double worst = 0.0;
  const Matrix k_inv = k.adjoint();
  for (const auto& l : loops)
    worst = std::max(worst, max_abs(holonomy(g_prime, l).matrix() -
                                    k * holonomy(g, l).matrix() * k_inv));
  return worst;
}

std::optional<GroupElement> align_configurations(const Configuration& g,
                                                 const Configuration& g_prime, int v,
                                                 const std::vector<Loop>& loops, double tol,
                                                 const AlignmentOptions& options) {
  if (!(g.graph() == g_prime.graph()) || !(g.kind() == g_prime.kind()))
    throw std::invalid_argument("align_configurations: graph or kind mismatch");
  for (const auto& l : loops)
    if (base_vertex(g.graph(), l) != v)
      throw std::invalid_argument("align_configurations: loop not based at vertex " +
                                  std::to_string(v));
  const GroupKind& kind = g.kind();
  const int m = kind.matrix_dim();
  if (loops.empty()) return GroupElement::identity(kind);

  std::vector<Matrix> a, b;
  for (const auto& l : loops) {
    a.push_back(holonomy(g, l).matrix());
    b.push_back(holonomy(g_prime, l).matrix());
  }

  // Linear stage: B_l K - K A_l = 0 on vec(K), column-major.
  const int mm = m * m;
  Matrix system = Matrix::Zero(static_cast<Eigen::Index>(loops.size()) * mm, mm);
  const Matrix id = Matrix::Identity(m, m);
  for (std::size_t l = 0; l < loops.size(); ++l) {
    Matrix block = Matrix::Zero(mm, mm);
    for (int p = 0; p < m; ++p)
      for (int q = 0; q < m; ++q) {
        block.block(p * m, q * m, m, m) += id(p, q) * b[l];
        block.block(p * m, q * m, m, m) -= a[l](q, p) * id;
      }
    system.block(static_cast<Eigen::Index>(l) * mm, 0, mm, mm) = block;
  }
  Eigen::JacobiSVD<Matrix> svd(system, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = std::max(1e-8 * sv(0), 1e-12);
  Vector combo = Vector::Zero(mm);
  int null_count = 0;
  for (int c = mm - 1; c >= 0 && sv(c) <= cutoff; --c, ++null_count)
    combo += Complex(1.0 / (null_count + 1), 0.3 * (null_count + 1)) * svd.matrixV().col(c);
  if (null_count == 0) combo = svd.matrixV().col(mm - 1);
  Matrix k = project_to_group(kind, Eigen::Map<Matrix>(combo.data(), m, m));

  // Polishing stage: projected gradient on the group.
  double f = objective(a, b, k);
  double step = options.step / static_cast<double>(loops.size());
  for (int it = 0; it < options.max_iterations && f > 1e-28; ++it) {
    Matrix grad = Matrix::Zero(m, m);
    for (std::size_t l = 0; l < a.size(); ++l) {
      const Matrix r = b[l] * k - k * a[l];
      grad += b[l].adjoint() * r - r * a[l].adjoint();
    }
    const Matrix candidate = project_to_group(kind, k - step * grad);
    const double fc = objective(a, b, candidate);
    if (fc < f) {
      k = candidate;
      f = fc;
      step *= 1.2;
    } else {
      step *= 0.5;
      if (step < 1e-14) break;
    }
  }

  if (alignment_residual(g, g_prime, loops, k) > tol) return std::nullopt;
  return GroupElement(kind, std::move(k));
}

}  // namespace wilsonnet
