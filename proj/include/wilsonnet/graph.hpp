#pragma once

#include <optional>
#include <vector>

#include "wilsonnet/group.hpp"

namespace wilsonnet {

// Vertices and edges are identified by position, 0-based.
struct Edge {
  int source = 0;
  int target = 0;
};

class Graph {
 public:
  /// Throws if an endpoint is out of range or a vertex is isolated.
  Graph(int vertex_count, std::vector<Edge> edges);

  /// The bouquet L_r: one vertex carrying r self-loops.
  static Graph bouquet(int r);

  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int e) const { return edges_.at(static_cast<std::size_t>(e)); }

  bool is_bouquet() const { return vertex_count_ == 1; }

  friend bool operator==(const Graph& a, const Graph& b);

 private:
  int vertex_count_;
  std::vector<Edge> edges_;
};

struct SignedEdge {
  int edge = 0;
  int sign = 1;  // +1 natural orientation, -1 reversed

  friend bool operator==(const SignedEdge&, const SignedEdge&) = default;
  friend auto operator<=>(const SignedEdge&, const SignedEdge&) = default;
};

int step_source(const Graph& graph, const SignedEdge& step);
int step_target(const Graph& graph, const SignedEdge& step);

/// A nonempty chain of signed edges; a loop when it closes up.
struct Path {
  std::vector<SignedEdge> steps;

  Path reversed() const;
  Path then(const Path& next) const;

  friend bool operator==(const Path&, const Path&) = default;
};
using Loop = Path;

/// Throws std::invalid_argument if `path` is empty or does not chain in `graph`.
void validate_path(const Graph& graph, const Path& path);
bool is_loop(const Graph& graph, const Path& path);
int base_vertex(const Graph& graph, const Loop& loop);

/// Every closed path with 1..max_len steps, from every base vertex.
std::vector<Loop> loops_up_to(const Graph& graph, int max_len);

class Configuration {
 public:
  /// Every value must be a member of `kind` within `tol`.
  Configuration(Graph graph, GroupKind kind, std::vector<GroupElement> values,
                double tol = kDefaultMembershipTol);

  static Configuration identity(Graph graph, GroupKind kind);
  static Configuration haar(Graph graph, GroupKind kind, Rng& rng);

  const Graph& graph() const { return graph_; }
  const GroupKind& kind() const { return kind_; }
  const std::vector<GroupElement>& values() const { return values_; }
  const GroupElement& value(int e) const { return values_.at(static_cast<std::size_t>(e)); }

 private:
  Graph graph_;
  GroupKind kind_;
  std::vector<GroupElement> values_;
};

class GaugeTransform {
 public:
  GaugeTransform(GroupKind kind, std::vector<GroupElement> values,
                 double tol = kDefaultMembershipTol);

  static GaugeTransform identity(const GroupKind& kind, int vertex_count);
  static GaugeTransform haar(const GroupKind& kind, int vertex_count, Rng& rng);

  const GroupKind& kind() const { return kind_; }
  const std::vector<GroupElement>& values() const { return values_; }
  const GroupElement& at(int v) const { return values_.at(static_cast<std::size_t>(v)); }
  int vertex_count() const { return static_cast<int>(values_.size()); }

 private:
  GroupKind kind_;
  std::vector<GroupElement> values_;
};

/// Edge e carries phi_{t(e)}^{-1} g_e phi_{s(e)}.
Configuration gauge_apply(const GaugeTransform& phi, const Configuration& g);

/// g_{e_n} ... g_{e_1}: the last step is the leftmost factor.
GroupElement holonomy(const Configuration& g, const Path& path);

/// Trace of the holonomy in the natural representation.
Complex wilson_loop(const Configuration& g, const Loop& loop);

struct TreeFixing {
  Configuration fixed;
  std::vector<int> tree_edges;  // ascending
  GaugeTransform gauge;         // fixed == gauge_apply(gauge, input) up to rounding
};

/// Gauge-fixes a breadth-first spanning tree rooted at `root` to the identity.
/// Throws if the graph is disconnected.
TreeFixing spanning_tree_fix(const Configuration& g, int root);

struct AlignmentOptions {
  int max_iterations = 500;
  double step = 0.25;
};

/// Searches for k in the group with h_l(g') = k h_l(g) k^{-1} for every loop
/// in `loops` (all based at `v`). Empty when no such k is found within `tol`.
std::optional<GroupElement> align_configurations(const Configuration& g,
                                                 const Configuration& g_prime, int v,
                                                 const std::vector<Loop>& loops, double tol,
                                                 const AlignmentOptions& options = {});

/// max_l ||h_l(g') - k h_l(g) k^{-1}||_max
double alignment_residual(const Configuration& g, const Configuration& g_prime,
                          const std::vector<Loop>& loops, const Matrix& k);

}  // namespace wilsonnet
