#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wilsonnet/json_io.hpp"

namespace wilsonnet {

/// Generator index is 1-based; exponent is +1 or -1.
struct Letter {
  int generator = 1;
  int exponent = 1;
  friend bool operator==(const Letter&, const Letter&) = default;
};
using Word = std::vector<Letter>;

/// Product with the last letter leftmost, so w(g) = h_l(g) for the matching loop on L_r.
GroupElement word_eval(const Word& w, const std::vector<GroupElement>& tuple);

Loop word_to_loop(const Word& w);
std::string word_to_string(const Word& w);

/// All freely reduced words of length 1..max_len, by length then
/// lexicographically over (1,+1) < (1,-1) < (2,+1) < ...
std::vector<Word> reduced_words(int r, int max_len);

/// Eigenvalues of the natural representation, sorted by (re, im), flattened.
std::vector<double> conjugacy_fingerprint(const GroupElement& g);

/// Bottleneck distance between two eigenvalue multisets: the least t such
/// that some perfect matching pairs eigenvalues within t.
double fingerprint_distance(const std::vector<double>& a, const std::vector<double>& b);

struct ExperimentReport {
  std::string command;
  std::uint64_t seed = 0;
  Json job = Json::object();
  Json records = Json::array();
  Json summary = Json::object();
  bool passed = true;
  double wall_time_s = 0.0;

  /// Stable document; wall time is the only field that varies between runs.
  Json to_json() const;
};

struct SeparationConfig {
  GroupKind kind;
  int r = 2;
  int max_len = 6;
  int trials = 100;
  double tol = 1e-9;
  std::uint64_t seed = 0;
};

/// Conjugate arm: B = k A k^{-1}, every reduced word up to max_len must agree.
/// Independent arm: fresh B, records the shortest separating word.
ExperimentReport separation_experiment(const SeparationConfig& config);

struct IdentitySuiteOptions {
  double tol = 1e-9;
  std::uint64_t seed = 0;
  int configs_per_diagram = 1;
  int commutator_samples = 0;  // 0 disables the commutant check
  int gauge_samples = 0;       // 0 disables the gauge-invariance check
  double invariance_tol = 1e-10;
};

/// Job forms: a single job {"kind", "signature", "diagram"}, a list
/// {"jobs": [...]}, or a random {"sweep": {"kind", "trials", "max_r", "max_degree"}}.
ExperimentReport run_identity_suite(const Json& job, const IdentitySuiteOptions& options);

struct DiagramSuiteOptions {
  double tol = 1e-12;  // for the transpose check; the flip check is exact
  std::uint64_t seed = 0;
  int transpose_samples = 100;
};

/// Job: {"kinds": [kind, ...], "max_p": 4}. For every pairing with p <= max_p,
/// transposing J_tau over the computed flips must give pi(sigma) exactly; for
/// Haar g, T(g) must equal eps g^{-1}.
ExperimentReport run_diagram_suite(const Json& job, const DiagramSuiteOptions& options);

struct CommutantOptions {
  std::uint64_t seed = 0;
  int samples = 3;
};

/// Job: {"checks": [{"kind": kind, "d": d}, ...]}. Compares the rank of the
/// diagram operators with the numerically computed commutant dimension.
ExperimentReport run_commutant_checks(const Json& job, const CommutantOptions& options);

/// Deviation measure shared by the suite: |compiled - oracle| / (1 + |oracle|).
double scaled_deviation(Complex compiled, Complex oracle);

}  // namespace wilsonnet
