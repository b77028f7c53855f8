#include "wilsonnet/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <variant>

#include "wilsonnet/commutant.hpp"

namespace wilsonnet {

GroupElement word_eval(const Word& w, const std::vector<GroupElement>& tuple) {
  if (w.empty()) throw std::invalid_argument("empty word");
  if (tuple.empty()) throw std::invalid_argument("word evaluated on an empty tuple");
  const GroupKind& kind = tuple.front().kind();
  Matrix acc = Matrix::Identity(kind.matrix_dim(), kind.matrix_dim());
  for (const auto& letter : w) {
    if (letter.generator < 1 || letter.generator > static_cast<int>(tuple.size()))
      throw std::out_of_range("generator index " + std::to_string(letter.generator) +
                              " outside the tuple");
    if (letter.exponent != 1 && letter.exponent != -1)
      throw std::invalid_argument("letter exponent must be +1 or -1");
    const Matrix& g = tuple[static_cast<std::size_t>(letter.generator - 1)].matrix();
    acc = (letter.exponent > 0 ? g : Matrix(g.adjoint())) * acc;
  }
  return GroupElement(kind, std::move(acc));
}

Loop word_to_loop(const Word& w) {
  Loop l;
  for (const auto& letter : w) l.steps.push_back({letter.generator - 1, letter.exponent});
  return l;
}

std::string word_to_string(const Word& w) {
  std::string s;
  for (const auto& letter : w) {
    if (!s.empty()) s += ' ';
    s += "e" + std::to_string(letter.generator);
    if (letter.exponent < 0) s += "^-1";
  }
  return s;
}

std::vector<Word> reduced_words(int r, int max_len) {
  if (r < 1 || max_len < 1) throw std::invalid_argument("reduced_words needs r >= 1 and max_len >= 1");
  std::vector<Letter> alphabet;
  for (int g = 1; g <= r; ++g) {
    alphabet.push_back({g, 1});
    alphabet.push_back({g, -1});
  }
  std::vector<Word> out;
  std::vector<Word> frontier{Word{}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const auto& w : frontier)
      for (const auto& letter : alphabet) {
        if (!w.empty() && w.back().generator == letter.generator &&
            w.back().exponent == -letter.exponent)
          continue;
        Word extended = w;
        extended.push_back(letter);
        next.push_back(std::move(extended));
      }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

std::vector<double> conjugacy_fingerprint(const GroupElement& g) {
  Eigen::ComplexEigenSolver<Matrix> solver(g.matrix(), false);
  std::vector<Complex> eig(solver.eigenvalues().data(),
                           solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(eig.begin(), eig.end(), [](const Complex& a, const Complex& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  std::vector<double> out;
  for (const auto& z : eig) {
    out.push_back(z.real());
    out.push_back(z.imag());
  }
  return out;
}

namespace {

// Kuhn's augmenting-path matching restricted to pairs within `limit`.
bool perfect_matching_within(const std::vector<std::vector<double>>& dist, double limit) {
  const std::size_t n = dist.size();
  std::vector<int> match(n, -1);
  for (std::size_t u = 0; u < n; ++u) {
    std::vector<bool> visited(n, false);
    std::function<bool(std::size_t)> augment = [&](std::size_t x) {
      for (std::size_t v = 0; v < n; ++v) {
        if (dist[x][v] > limit || visited[v]) continue;
        visited[v] = true;
        if (match[v] < 0 || augment(static_cast<std::size_t>(match[v]))) {
          match[v] = static_cast<int>(x);
          return true;
        }
      }
      return false;
    };
    if (!augment(u)) return false;
  }
  return true;
}

}  // namespace

double fingerprint_distance(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.size() % 2 != 0)
    throw std::invalid_argument("fingerprints of different sizes");
  const std::size_t n = a.size() / 2;
  std::vector<std::vector<double>> dist(n, std::vector<double>(n));
  std::vector<double> candidates;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      dist[i][j] = std::abs(Complex(a[2 * i], a[2 * i + 1]) - Complex(b[2 * j], b[2 * j + 1]));
      candidates.push_back(dist[i][j]);
    }
  std::sort(candidates.begin(), candidates.end());
  std::size_t lo = 0, hi = candidates.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (perfect_matching_within(dist, candidates[mid])) hi = mid;
    else lo = mid + 1;
  }
  return candidates[lo];
}

double scaled_deviation(Complex compiled, Complex oracle) {
  return std::abs(compiled - oracle) / (1.0 + std::abs(oracle));
}

Json ExperimentReport::to_json() const {
  return Json{{"schema", kReportSchema}, {"command", command},  {"seed", seed},
              {"job", job},              {"records", records},  {"summary", summary},
              {"verdict", passed ? "pass" : "fail"}, {"wall_time_s", wall_time_s}};
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<GroupElement> haar_tuple(const GroupKind& kind, int r, Rng& rng) {
  std::vector<GroupElement> out;
  for (int i = 0; i < r; ++i) out.push_back(haar_sample(kind, rng));
  return out;
}

}  // namespace

ExperimentReport separation_experiment(const SeparationConfig& config) {
  const auto start = Clock::now();
  if (config.max_len < 1) throw std::invalid_argument("max_len must be at least 1");
  if (config.r < 1) throw std::invalid_argument("r must be at least 1");

  ExperimentReport report;
  report.command = "separate";
  report.seed = config.seed;
  report.job = Json{{"kind", to_json(config.kind)}, {"r", config.r},     {"max_len", config.max_len},
                    {"trials", config.trials},      {"tol", config.tol}};

  const std::vector<Word> words = reduced_words(config.r, config.max_len);
  long conjugate_total = 0;
  int independent_separated = 0;
  std::map<int, int> histogram;

  for (int t = 0; t < config.trials; ++t) {
    Rng rng = task_stream(config.seed, static_cast<std::uint64_t>(t));
    const auto a = haar_tuple(config.kind, config.r, rng);
    const GroupElement k = haar_sample(config.kind, rng);
    std::vector<GroupElement> conj;
    for (const auto& g : a) conj.push_back(k * g * k.inverse());
    const auto b = haar_tuple(config.kind, config.r, rng);

    int conjugate_separations = 0;
    double conjugate_worst = 0.0;
    const Word* shortest = nullptr;
    double shortest_gap = 0.0;
    for (const auto& w : words) {
      const auto fa = conjugacy_fingerprint(word_eval(w, a));
      const double dc = fingerprint_distance(fa, conjugacy_fingerprint(word_eval(w, conj)));
      conjugate_worst = std::max(conjugate_worst, dc);
      if (dc > config.tol) ++conjugate_separations;
      if (!shortest) {
        const double di = fingerprint_distance(fa, conjugacy_fingerprint(word_eval(w, b)));
        if (di > config.tol) {
          shortest = &w;
          shortest_gap = di;
        }
      }
    }
    conjugate_total += conjugate_separations;
    Json record{{"trial", t},
                {"conjugate_separations", conjugate_separations},
                {"conjugate_max_distance", conjugate_worst}};
    if (shortest) {
      ++independent_separated;
      ++histogram[static_cast<int>(shortest->size())];
      record["independent_shortest_length"] = shortest->size();
      record["independent_word"] = word_to_string(*shortest);
      record["independent_distance"] = shortest_gap;
    } else {
      record["independent_shortest_length"] = nullptr;
    }
    report.records.push_back(std::move(record));
  }

  Json hist = Json::object();
  for (const auto& [len, count] : histogram) hist[std::to_string(len)] = count;
  const bool finer_classes = config.kind.family != Family::U && config.kind.family != Family::SU;
  report.summary = Json{{"words_per_trial", words.size()},
                        {"conjugate_separations_total", conjugate_total},
                        {"independent_separated", independent_separated},
                        {"shortest_word_histogram", hist},
                        {"certificate", "eigenvalue multiset: certifies conjugacy in U(m)"},
                        {"subgroup_conjugacy_flag", finer_classes}};
  report.passed = conjugate_total == 0;
  report.wall_time_s = seconds_since(start);
  return report;
}

namespace {

struct ConcreteJob {
  GroupKind kind;
  MixedSignature signature;
  std::variant<Permutation, Pairing> diagram;
};

Json diagram_json(const ConcreteJob& job) {
  if (const auto* sigma = std::get_if<Permutation>(&job.diagram)) return Json{{"perm", to_json(*sigma)}};
  return Json{{"pairing", to_json(std::get<Pairing>(job.diagram))}};
}

ConcreteJob parse_job(const Json& j) {
  const GroupKind kind = kind_from_json(j.at("kind"));
  MixedSignature signature = signature_from_json(j.at("signature"));
  const Json& diagram = j.at("diagram");
  if (diagram.contains("perm")) {
    if (!kind.is_unitary_track()) throw std::invalid_argument("permutation diagrams need U or SU");
    Permutation sigma = permutation_from_json(diagram.at("perm"));
    if (sigma.size() != signature.degree())
      throw std::invalid_argument("permutation degree does not match signature");
    return ConcreteJob{kind, std::move(signature), std::move(sigma)};
  }
  if (diagram.contains("pairing")) {
    if (kind.is_unitary_track()) throw std::invalid_argument("pairing diagrams need O, SO or Sp");
    signature.require_compatible(kind);
    Pairing tau = pairing_from_json(diagram.at("pairing"));
    if (tau.half() != signature.p()) throw std::invalid_argument("pairing size does not match signature");
    return ConcreteJob{kind, std::move(signature), std::move(tau)};
  }
  throw std::invalid_argument("diagram needs a \"perm\" or a \"pairing\"");
}

ConcreteJob random_job(const GroupKind& kind, int max_r, int max_degree, Rng& rng) {
  std::uniform_int_distribution<int> r_dist(1, max_r);
  std::uniform_int_distribution<int> deg_dist(1, max_degree);
  const int r = r_dist(rng);
  const int degree = deg_dist(rng);
  std::vector<EdgeDegree> edges(static_cast<std::size_t>(r));
  std::uniform_int_distribution<int> edge_dist(0, r - 1);
  std::bernoulli_distribution dual_coin(0.5);
  for (int s = 0; s < degree; ++s) {
    auto& e = edges[static_cast<std::size_t>(edge_dist(rng))];
    if (kind.is_unitary_track() && dual_coin(rng)) ++e.q;
    else ++e.p;
  }
  MixedSignature signature(std::move(edges));
  if (kind.is_unitary_track()) {
    std::vector<int> images(static_cast<std::size_t>(degree));
    std::iota(images.begin(), images.end(), 1);
    std::shuffle(images.begin(), images.end(), rng);
    return ConcreteJob{kind, std::move(signature), Permutation(std::move(images))};
  }
  std::vector<int> points(static_cast<std::size_t>(2 * degree));
  std::iota(points.begin(), points.end(), 1);
  std::shuffle(points.begin(), points.end(), rng);
  std::vector<std::pair<int, int>> blocks;
  for (int i = 0; i < degree; ++i)
    blocks.emplace_back(points[static_cast<std::size_t>(2 * i)], points[static_cast<std::size_t>(2 * i + 1)]);
  return ConcreteJob{kind, std::move(signature), Pairing::from_blocks(degree, blocks)};
}

}  // namespace

ExperimentReport run_identity_suite(const Json& job, const IdentitySuiteOptions& options) {
  const auto start = Clock::now();
  ExperimentReport report;
  report.command = "verify-identities";
  report.seed = options.seed;
  report.job = job;

  // Each concrete job pairs with its own stream.
  std::vector<std::pair<ConcreteJob, Rng>> work;
  if (job.contains("sweep")) {
    const Json& sweep = job.at("sweep");
    const GroupKind kind = kind_from_json(sweep.at("kind"));
    const int trials = sweep.value("trials", 50);
    const int max_r = sweep.value("max_r", 3);
    const int max_degree = sweep.value("max_degree", 5);
    if (max_r < 1 || max_degree < 1) throw std::invalid_argument("sweep bounds must be positive");
    for (int t = 0; t < trials; ++t) {
      Rng rng = task_stream(options.seed, static_cast<std::uint64_t>(t));
      ConcreteJob concrete = random_job(kind, max_r, max_degree, rng);
      work.emplace_back(std::move(concrete), std::move(rng));
    }
  } else if (job.contains("jobs")) {
    std::uint64_t t = 0;
    for (const auto& j : job.at("jobs")) work.emplace_back(parse_job(j), task_stream(options.seed, t++));
  } else {
    work.emplace_back(parse_job(job), task_stream(options.seed, 0));
  }

  double worst_scaled = 0.0;
  double worst_commutator = 0.0;
  double worst_gauge = 0.0;
  for (auto& [concrete, rng] : work) {
    const GroupKind& kind = concrete.kind;
    const int m = kind.matrix_dim();
    const int r = concrete.signature.edge_count();
    IntTensor op(m, 0);
    WilsonProduct compiled;
    if (const auto* sigma = std::get_if<Permutation>(&concrete.diagram)) {
      op = mixed_operator(*sigma, concrete.signature, m);
      compiled = compile_unitary(*sigma, concrete.signature);
    } else {
      const Pairing& tau = std::get<Pairing>(concrete.diagram);
      op = brauer_operator(tau, kind, tau.half());
      compiled = compile_orthosymplectic(tau, concrete.signature, kind);
    }

    Json record{{"kind", to_json(kind)},
                {"signature", to_json(concrete.signature)},
                {"diagram", diagram_json(concrete)},
                {"compiled", to_json(compiled)}};
    bool ok = true;

    Json evaluations = Json::array();
    double job_gauge = 0.0;
    for (int c = 0; c < options.configs_per_diagram; ++c) {
      const Configuration config = Configuration::haar(Graph::bouquet(r), kind, rng);
      const Complex oracle = eval_spin_network(config, concrete.signature, op);
      const Complex value = evaluate(compiled, config);
      const double dev = std::abs(value - oracle);
      const double scaled = scaled_deviation(value, oracle);
      worst_scaled = std::max(worst_scaled, scaled);
      ok = ok && scaled <= options.tol;
      evaluations.push_back(Json{{"oracle", to_json(oracle)},
                                 {"compiled", to_json(value)},
                                 {"deviation", dev},
                                 {"scaled_deviation", scaled}});
      for (int s = 0; s < options.gauge_samples; ++s) {
        const Configuration moved = gauge_apply(GaugeTransform::haar(kind, 1, rng), config);
        job_gauge = std::max(job_gauge, std::abs(eval_spin_network(moved, concrete.signature, op) - oracle));
        for (const auto& l : compiled.loops)
          job_gauge = std::max(job_gauge, std::abs(wilson_loop(moved, l) - wilson_loop(config, l)));
      }
    }
    record["evaluations"] = std::move(evaluations);

    if (options.gauge_samples > 0) {
      record["gauge_deviation"] = job_gauge;
      worst_gauge = std::max(worst_gauge, job_gauge);
      ok = ok && job_gauge <= options.invariance_tol;
    }
    if (options.commutator_samples > 0) {
      double defect = 0.0;
      for (int s = 0; s < options.commutator_samples; ++s) {
        const GroupElement g = haar_sample(kind, rng);
        const std::vector<GroupElement> diag(static_cast<std::size_t>(r), g);
        defect = std::max(defect, commutator_defect(op, slot_actions(concrete.signature, diag)));
      }
      record["commutator_defect"] = defect;
      worst_commutator = std::max(worst_commutator, defect);
      ok = ok && defect <= options.invariance_tol;
    }
    record["pass"] = ok;
    report.passed = report.passed && ok;
    report.records.push_back(std::move(record));
  }

  report.summary = Json{{"diagrams", work.size()},
                        {"tol", options.tol},
                        {"max_scaled_deviation", worst_scaled}};
  if (options.commutator_samples > 0) report.summary["max_commutator_defect"] = worst_commutator;
  if (options.gauge_samples > 0) report.summary["max_gauge_deviation"] = worst_gauge;
  report.wall_time_s = seconds_since(start);
  return report;
}

ExperimentReport run_diagram_suite(const Json& job, const DiagramSuiteOptions& options) {
  const auto start = Clock::now();
  ExperimentReport report;
  report.command = "verify-diagrams";
  report.seed = options.seed;
  report.job = job;
  const int max_p = job.value("max_p", 4);
  if (max_p < 1 || max_p > kMaxEnumeratedHalf)
    throw std::invalid_argument("max_p must lie in 1.." + std::to_string(kMaxEnumeratedHalf));

  long total_pairings = 0;
  long total_mismatches = 0;
  double worst_transpose = 0.0;
  std::uint64_t task = 0;
  for (const auto& kj : job.at("kinds")) {
    const GroupKind kind = kind_from_json(kj);
    if (!kind.has_form()) throw std::invalid_argument(kind.name() + " has no invariant form");
    for (int p = 1; p <= max_p; ++p) {
      long count = 0;
      long mismatches = 0;
      long signed_matches = 0;
      Json first_failure = nullptr;
      PairingEnumerator pairings(p);
      while (auto tau = pairings.next()) {
        ++count;
        const FlipNormalization norm = normalize_pairing(*tau);
        IntTensor op = brauer_operator(*tau, kind, p);
        for (int i : norm.flips) op = apply_slot_transpose(op, i, kind);
        const IntTensor target = perm_operator(norm.sigma, kind.matrix_dim());
        if (op == target) continue;
        ++mismatches;
        if (first_failure.is_null()) first_failure = to_json(*tau);
        // A skew form can only be off by the sign of the reversed blocks.
        IntTensor negated = target;
        for (auto& x : negated.entries()) x = -x;
        if (symmetry_sign(kind) < 0 && reversed_blocks(*tau, norm.flips) % 2 == 1 && op == negated)
          ++signed_matches;
      }
      total_pairings += count;
      total_mismatches += mismatches;
      report.records.push_back(Json{{"check", "flip_normalization"},
                                    {"kind", to_json(kind)},
                                    {"p", p},
                                    {"pairings", count},
                                    {"mismatches", mismatches},
                                    {"sign_only_mismatches", signed_matches},
                                    {"first_failure", first_failure}});
    }

    Rng rng = task_stream(options.seed, task++);
    const double eps = symmetry_sign(kind);
    double worst = 0.0;
    for (int s = 0; s < options.transpose_samples; ++s) {
      const GroupElement g = haar_sample(kind, rng);
      ComplexTensor op = from_matrix(g.matrix());
      const Matrix t = to_matrix(apply_slot_transpose(op, 1, kind));
      worst = std::max(worst, max_abs(t - eps * g.inverse().matrix()));
    }
    worst_transpose = std::max(worst_transpose, worst);
    report.records.push_back(Json{{"check", "slot_transpose"},
                                  {"kind", to_json(kind)},
                                  {"samples", options.transpose_samples},
                                  {"max_deviation", worst}});
  }
  report.passed = total_mismatches == 0 && worst_transpose <= options.tol;
  report.summary = Json{{"pairings", total_pairings},
                        {"mismatches", total_mismatches},
                        {"max_transpose_deviation", worst_transpose},
                        {"tol", options.tol}};
  report.wall_time_s = seconds_since(start);
  return report;
}

ExperimentReport run_commutant_checks(const Json& job, const CommutantOptions& options) {
  const auto start = Clock::now();
  ExperimentReport report;
  report.command = "commutant";
  report.seed = options.seed;
  report.job = job;
  std::uint64_t task = 0;
  for (const auto& check : job.at("checks")) {
    const GroupKind kind = kind_from_json(check.at("kind"));
    const int d = check.at("d").get<int>();
    if (d < 1) throw std::invalid_argument("d must be positive");
    const int m = kind.matrix_dim();
    std::vector<IntTensor> ops;
    if (kind.is_unitary_track()) {
      for (const auto& sigma : all_permutations(d)) ops.push_back(perm_operator(sigma, m));
    } else {
      for (const auto& tau : enumerate_pairings(d)) ops.push_back(brauer_operator(tau, kind, d));
    }
    Rng rng = task_stream(options.seed, task++);
    const int dimension = commutant_dimension(kind, d, options.samples, rng);
    const int rank = span_rank(ops);
    const bool ok = dimension == rank;
    report.passed = report.passed && ok;
    report.records.push_back(Json{{"kind", to_json(kind)},
                                  {"d", d},
                                  {"diagrams", ops.size()},
                                  {"span_rank", rank},
                                  {"commutant_dimension", dimension},
                                  {"pass", ok}});
  }
  report.summary = Json{{"checks", report.records.size()}, {"samples", options.samples}};
  report.wall_time_s = seconds_since(start);
  return report;
}

}  // namespace wilsonnet
