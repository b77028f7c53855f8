// Acceptance run: one line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>

#include "wilsonnet/commutant.hpp"
#include "wilsonnet/verify.hpp"

using namespace wilsonnet;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

Json sweep_job(const GroupKind& kind) {
  return Json{{"sweep", {{"kind", to_json(kind)}, {"trials", 50}, {"max_r", 3}, {"max_degree", 5}}}};
}

double max_field(const ExperimentReport& r, const char* field) {
  double worst = 0.0;
  for (const auto& rec : r.records) {
    if (rec.contains(field)) worst = std::max(worst, rec[field].get<double>());
    if (rec.contains("evaluations"))
      for (const auto& e : rec["evaluations"])
        if (e.contains(field)) worst = std::max(worst, e[field].get<double>());
  }
  return worst;
}

// Suites of criteria 1 and 3, run once with the invariance checks switched on
// so criterion 6 can read its numbers off the same diagrams.
struct SweepResults {
  std::vector<std::pair<GroupKind, ExperimentReport>> unitary;
  std::vector<std::pair<GroupKind, ExperimentReport>> forms;
};

ExperimentReport run_sweep(const GroupKind& kind, std::uint64_t seed) {
  IdentitySuiteOptions options;
  options.seed = seed;
  options.tol = 1e-9;
  options.commutator_samples = 20;
  options.gauge_samples = 10;
  options.invariance_tol = 1e-10;
  return run_identity_suite(sweep_job(kind), options);
}

SweepResults& sweeps() {
  static SweepResults results = [] {
    SweepResults s;
    std::uint64_t seed = 100;
    for (const GroupKind kind : {GroupKind(Family::U, 3), GroupKind(Family::SU, 2)})
      s.unitary.emplace_back(kind, run_sweep(kind, seed++));
    for (const GroupKind kind : {GroupKind(Family::O, 2), GroupKind(Family::O, 3), GroupKind(Family::SO, 3),
                                 GroupKind(Family::Sp, 1), GroupKind(Family::Sp, 2)})
      s.forms.emplace_back(kind, run_sweep(kind, seed++));
    return s;
  }();
  return results;
}

Outcome unitary_decomposition() {
  Outcome out{true, ""};
  for (const auto& [kind, report] : sweeps().unitary) {
    const double worst = max_field(report, "scaled_deviation");
    out.pass = out.pass && worst <= 1e-9 && report.records.size() == 50;
    out.detail += kind.name() + fmt(": 50 trials, max |c-o|/(1+|o|) = %.2e; ", worst);
  }
  return out;
}

Outcome inverse_square_loop() {
  const MixedSignature sig({{0, 1}, {2, 0}});
  const Permutation sigma = Permutation::from_cycles(3, {{1, 2, 3}});
  const WilsonProduct compiled = compile_unitary(sigma, sig);
  const bool loop_ok = compiled.sign == 1 && compiled.loops == std::vector<Loop>{Loop{{{0, -1}, {1, 1}, {1, 1}}}};
  double worst = 0.0;
  for (const GroupKind kind : {GroupKind(Family::U, 2), GroupKind(Family::U, 3)}) {
    const IntTensor op = mixed_operator(sigma, sig, kind.matrix_dim());
    Rng rng = task_stream(2, static_cast<std::uint64_t>(kind.n));
    for (int t = 0; t < 20; ++t) {
      const Configuration c = Configuration::haar(Graph::bouquet(2), kind, rng);
      const Matrix& g = c.value(0).matrix();
      const Matrix& h = c.value(1).matrix();
      const Complex expected = (g.adjoint() * h * h).trace();
      worst = std::max(worst, std::abs(eval_spin_network(c, sig, op) - expected));
      worst = std::max(worst, std::abs(evaluate(compiled, c) - expected));
    }
  }
  return {loop_ok && worst <= 1e-12,
          fmt("20 pairs each in U(2), U(3): max deviation from tr(g^-1 h^2) = %.2e; compiled loop ", worst) +
              (loop_ok ? "(e1^-1, e2, e2)" : "WRONG")};
}

Outcome orthosymplectic_decomposition() {
  Outcome out{true, ""};
  for (const auto& [kind, report] : sweeps().forms) {
    const double worst = max_field(report, "deviation");
    out.pass = out.pass && worst <= 1e-9 && report.records.size() == 50;
    out.detail += kind.name() + fmt(": %.2e; ", worst);
  }
  out.detail = "50 trials each, max |compiled - oracle|: " + out.detail;
  return out;
}

Outcome exact_flip_normalization() {
  DiagramSuiteOptions options;
  options.transpose_samples = 0;
  const Json job = Json::parse(R"({"kinds": [{"family": "O", "n": 2}, {"family": "O", "n": 3},
                                             {"family": "Sp", "n": 1}, {"family": "Sp", "n": 2}], "max_p": 4})");
  const ExperimentReport report = run_diagram_suite(job, options);
  Outcome out{report.summary["mismatches"] == 0, ""};
  std::map<std::string, std::pair<long, long>> per_kind;
  std::map<std::string, long> sign_only;
  for (const auto& rec : report.records) {
    if (rec["check"] != "flip_normalization") continue;
    const std::string name = kind_from_json(rec["kind"]).name();
    per_kind[name].first += rec["pairings"].get<long>();
    per_kind[name].second += rec["mismatches"].get<long>();
    sign_only[name] += rec["sign_only_mismatches"].get<long>();
  }
  for (const auto& [name, counts] : per_kind) {
    out.detail += name + ": " + std::to_string(counts.first - counts.second) + "/" +
                  std::to_string(counts.first) + " exact";
    if (counts.second > 0) out.detail += " (" + std::to_string(sign_only[name]) + " equal -pi(sigma))";
    out.detail += "; ";
  }
  return out;
}

Outcome transpose_check() {
  Outcome out{true, ""};
  std::uint64_t task = 0;
  for (const GroupKind kind : {GroupKind(Family::O, 3), GroupKind(Family::SO, 4), GroupKind(Family::Sp, 2)}) {
    Rng rng = task_stream(5, task++);
    const double eps = symmetry_sign(kind);
    double worst = 0.0;
    for (int s = 0; s < 100; ++s) {
      const GroupElement g = haar_sample(kind, rng);
      const Matrix t = to_matrix(apply_slot_transpose(from_matrix(g.matrix()), 1, kind));
      worst = std::max(worst, max_abs(t - eps * g.inverse().matrix()));
    }
    out.pass = out.pass && worst <= 1e-12;
    out.detail += kind.name() + fmt(" (eps %+.0f): %.2e; ", eps, worst);
  }
  out.detail = "100 samples, max ||T(g) - eps g^-1||_max: " + out.detail;
  return out;
}

Outcome invariance() {
  double commutator = 0.0;
  double gauge = 0.0;
  std::size_t diagrams = 0;
  for (const auto* list : {&sweeps().unitary, &sweeps().forms})
    for (const auto& [kind, report] : *list) {
      commutator = std::max(commutator, report.summary["max_commutator_defect"].get<double>());
      gauge = std::max(gauge, report.summary["max_gauge_deviation"].get<double>());
      diagrams += report.records.size();
    }
  return {commutator <= 1e-10 && gauge <= 1e-10,
          std::to_string(diagrams) +
              fmt(" diagrams: max commutator entry %.2e (20 samples), max gauge deviation %.2e (10 transforms)",
                  commutator, gauge)};
}

Outcome rank_check() {
  const Json job = Json::parse(R"({"checks": [
      {"kind": {"family": "U", "n": 2}, "d": 2}, {"kind": {"family": "U", "n": 2}, "d": 3},
      {"kind": {"family": "U", "n": 3}, "d": 2}, {"kind": {"family": "O", "n": 2}, "d": 2},
      {"kind": {"family": "O", "n": 3}, "d": 2}, {"kind": {"family": "Sp", "n": 1}, "d": 2}]})");
  CommutantOptions options;
  options.seed = 7;
  const ExperimentReport report = run_commutant_checks(job, options);
  std::string detail;
  for (const auto& rec : report.records)
    detail += kind_from_json(rec["kind"]).name() + " d=" + std::to_string(rec["d"].get<int>()) + ": " +
              std::to_string(rec["span_rank"].get<int>()) + "/" +
              std::to_string(rec["commutant_dimension"].get<int>()) + "; ";
  return {report.passed, "span_rank/commutant_dimension " + detail};
}

Outcome separation() {
  SeparationConfig config;
  config.kind = {Family::U, 2};
  config.r = 2;
  config.max_len = 6;
  config.trials = 100;
  config.tol = 1e-9;
  config.seed = 8;
  const ExperimentReport report = separation_experiment(config);
  int short_separations = 0;
  for (const auto& rec : report.records)
    if (!rec["independent_shortest_length"].is_null() && rec["independent_shortest_length"].get<int>() <= 2)
      ++short_separations;
  const long conj = report.summary["conjugate_separations_total"].get<long>();
  return {conj == 0 && short_separations >= 99,
          fmt("conjugate arm: %.0f separations over 100 trials x %.0f words; independent arm: %.0f/100 separated "
              "by a word of length <= 2",
              static_cast<double>(conj), report.summary["words_per_trial"].get<double>(),
              static_cast<double>(short_separations))};
}

Outcome tree_fixing() {
  const GroupKind kind{Family::U, 2};
  Rng rng = task_stream(9, 0);
  double worst = 0.0;
  bool tree_exact = true;
  std::size_t loops_checked = 0;
  for (int t = 0; t < 20; ++t) {
    std::uniform_int_distribution<int> vdist(1, 5);
    const int vertices = vdist(rng);
    std::uniform_int_distribution<int> edist(std::max(vertices - 1, 1), 8);
    const int edge_count = edist(rng);
    std::vector<Edge> edges;
    for (int v = 1; v < vertices; ++v) edges.push_back({std::uniform_int_distribution<int>(0, v - 1)(rng), v});
    std::uniform_int_distribution<int> any(0, vertices - 1);
    while (static_cast<int>(edges.size()) < edge_count) edges.push_back({any(rng), any(rng)});
    std::shuffle(edges.begin(), edges.end(), rng);
    const Graph graph(vertices, edges);

    const Configuration c = Configuration::haar(graph, kind, rng);
    const TreeFixing fix = spanning_tree_fix(c, 0);
    for (int e : fix.tree_edges) tree_exact = tree_exact && fix.fixed.value(e).matrix() == Matrix::Identity(2, 2);
    for (const auto& l : loops_up_to(graph, 4)) {
      worst = std::max(worst, std::abs(wilson_loop(fix.fixed, l) - wilson_loop(c, l)));
      ++loops_checked;
    }
  }
  return {tree_exact && worst <= 1e-10,
          fmt("20 graphs, %.0f loops of length <= 4: max trace change %.2e; tree edges ",
              static_cast<double>(loops_checked), worst) +
              (tree_exact ? "exactly identity" : "NOT identity")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 unitary decomposition", unitary_decomposition},
      {"2 tr(g^-1 h^2) loop", inverse_square_loop},
      {"3 orthogonal/symplectic decomposition", orthosymplectic_decomposition},
      {"4 exact flip normalization", exact_flip_normalization},
      {"5 slot transpose of group elements", transpose_check},
      {"6 invariance", invariance},
      {"7 span rank vs commutant dimension", rank_check},
      {"8 separation experiment", separation},
      {"9 spanning-tree fixing", tree_fixing},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] criterion %s: %s [%.1f s]\n", outcome.pass ? "PASS" : "FAIL", name.c_str(),
                outcome.detail.c_str(), secs);
    std::fflush(stdout);
    if (!outcome.pass) ++failures;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
