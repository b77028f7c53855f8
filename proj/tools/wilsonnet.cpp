// wilsonnet: sample, evaluate and compile gauge-invariant functions; run the
// identity, diagram, commutant and separation harnesses.
//
// Every verb reads a JSON job from a file (or stdin when the path is omitted
// or "-") and writes a report. Exit status is 0 iff the verdict is "pass".

#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>

#include "CLI11.hpp"
#include "wilsonnet/commutant.hpp"
#include "wilsonnet/verify.hpp"

namespace {

using namespace wilsonnet;

struct Flags {
  std::string input = "-";
  std::string out;
  std::uint64_t seed = 0;
  std::optional<double> tol;
  std::optional<int> trials;
  std::optional<int> max_len;
  int commutator_samples = 0;
  int gauge_samples = 0;
};

Json read_job(const std::string& path) {
  std::string text;
  if (path.empty() || path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  } else {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  return Json::parse(text);
}

double elapsed(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

ExperimentReport run_sample(const Json& job, const Flags& f) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport report;
  report.command = "sample";
  report.seed = f.seed;
  report.job = job;
  const GroupKind kind = kind_from_json(job.at("kind"));
  const Graph graph = job.contains("graph") ? graph_from_json(job.at("graph"))
                                            : Graph::bouquet(job.value("r", 1));
  const int count = f.trials.value_or(job.value("count", 1));
  const double tol = f.tol.value_or(kDefaultMembershipTol);
  for (int t = 0; t < count; ++t) {
    Rng rng = task_stream(f.seed, static_cast<std::uint64_t>(t));
    const Configuration config = Configuration::haar(graph, kind, rng);
    double worst = 0.0;
    for (const auto& g : config.values()) worst = std::max(worst, membership_check(g, tol).worst());
    report.passed = report.passed && worst <= tol;
    report.records.push_back(Json{{"trial", t}, {"configuration", to_json(config)}, {"membership", worst}});
  }
  report.summary = Json{{"samples", count}, {"tol", tol}};
  report.wall_time_s = elapsed(start);
  return report;
}

WilsonProduct compile_job(const Json& job, const GroupKind& kind, const MixedSignature& signature,
                          IntTensor* oracle_op) {
  const Json& diagram = job.at("diagram");
  if (diagram.contains("perm")) {
    const Permutation sigma = permutation_from_json(diagram.at("perm"));
    if (oracle_op) *oracle_op = mixed_operator(sigma, signature, kind.matrix_dim());
    return compile_unitary(sigma, signature);
  }
  const Pairing tau = pairing_from_json(diagram.at("pairing"));
  if (oracle_op) *oracle_op = brauer_operator(tau, kind, tau.half());
  return compile_orthosymplectic(tau, signature, kind);
}

ExperimentReport run_compile(const Json& job, const Flags& f) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport report;
  report.command = "compile";
  report.seed = f.seed;
  report.job = job;
  const GroupKind kind = kind_from_json(job.at("kind"));
  const MixedSignature signature = signature_from_json(job.at("signature"));
  const WilsonProduct product = compile_job(job, kind, signature, nullptr);
  report.records.push_back(Json{{"compiled", to_json(product)}});
  report.wall_time_s = elapsed(start);
  return report;
}

ExperimentReport run_eval(const Json& job, const Flags& f) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport report;
  report.command = "eval";
  report.seed = f.seed;
  report.job = job;
  const Configuration config = configuration_from_json(job.at("configuration"));
  const double tol = f.tol.value_or(1e-9);
  if (job.contains("loops")) {
    for (const auto& lj : job.at("loops")) {
      const Loop loop = path_from_json(lj);
      report.records.push_back(Json{{"loop", to_json(loop)}, {"value", to_json(wilson_loop(config, loop))}});
    }
  }
  if (job.contains("diagram")) {
    const MixedSignature signature = signature_from_json(job.at("signature"));
    IntTensor op(config.kind().matrix_dim(), 0);
    const WilsonProduct product = compile_job(job, config.kind(), signature, &op);
    const Complex oracle = eval_spin_network(config, signature, op);
    const Complex value = evaluate(product, config);
    const double scaled = scaled_deviation(value, oracle);
    report.passed = scaled <= tol;
    report.records.push_back(Json{{"compiled", to_json(product)},
                                  {"oracle", to_json(oracle)},
                                  {"value", to_json(value)},
                                  {"deviation", std::abs(value - oracle)},
                                  {"scaled_deviation", scaled}});
  }
  report.summary = Json{{"tol", tol}};
  report.wall_time_s = elapsed(start);
  return report;
}

ExperimentReport run_verb(const std::string& verb, Json job, const Flags& f) {
  if (verb == "sample") return run_sample(job, f);
  if (verb == "eval") return run_eval(job, f);
  if (verb == "compile") return run_compile(job, f);
  if (verb == "verify-identities") {
    if (f.trials && job.contains("sweep")) job["sweep"]["trials"] = *f.trials;
    IdentitySuiteOptions options;
    options.seed = f.seed;
    options.tol = f.tol.value_or(options.tol);
    options.commutator_samples = f.commutator_samples;
    options.gauge_samples = f.gauge_samples;
    return run_identity_suite(job, options);
  }
  if (verb == "verify-diagrams") {
    DiagramSuiteOptions options;
    options.seed = f.seed;
    options.tol = f.tol.value_or(options.tol);
    options.transpose_samples = f.trials.value_or(options.transpose_samples);
    return run_diagram_suite(job, options);
  }
  if (verb == "commutant") {
    CommutantOptions options;
    options.seed = f.seed;
    options.samples = f.trials.value_or(options.samples);
    return run_commutant_checks(job, options);
  }
  SeparationConfig config;
  config.kind = kind_from_json(job.at("kind"));
  config.r = job.value("r", config.r);
  config.max_len = f.max_len.value_or(job.value("max_len", config.max_len));
  config.trials = f.trials.value_or(job.value("trials", config.trials));
  config.tol = f.tol.value_or(job.value("tol", config.tol));
  config.seed = f.seed;
  return separation_experiment(config);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wilson loops, spin networks and their invariant-theory identities"};
  app.require_subcommand(1);
  Flags flags;

  const std::vector<std::pair<std::string, std::string>> verbs = {
      {"sample", "Haar-sample a configuration and check membership"},
      {"eval", "Evaluate Wilson loops and a spin network on a configuration"},
      {"compile", "Compile a diagram into a signed product of Wilson loops"},
      {"verify-identities", "Compare compiled products with the tensor oracle"},
      {"verify-diagrams", "Check flip normalization and the slot-transpose identity"},
      {"commutant", "Compare diagram spans with numerically computed commutants"},
      {"separate", "Run the conjugate / independent separation experiment"},
  };
  for (const auto& [name, help] : verbs) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("job", flags.input, "Job JSON file; '-' or omitted reads stdin");
    sub->add_option("--seed", flags.seed, "Random seed");
    sub->add_option("--tol", flags.tol, "Tolerance");
    sub->add_option("--trials", flags.trials, "Trial / sample count");
    sub->add_option("--max-len", flags.max_len, "Longest word in the separation experiment");
    sub->add_option("--out", flags.out, "Write the report here instead of stdout");
    if (name == "verify-identities") {
      sub->add_option("--commutator-samples", flags.commutator_samples,
                      "Haar samples for the commutant check (0 disables)");
      sub->add_option("--gauge-samples", flags.gauge_samples,
                      "Gauge transforms per configuration (0 disables)");
    }
  }
  CLI11_PARSE(app, argc, argv);

  const std::string verb = app.get_subcommands().front()->get_name();
  try {
    const ExperimentReport report = run_verb(verb, read_job(flags.input), flags);
    const std::string text = dump_json(report.to_json()) + "\n";
    if (flags.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(flags.out);
      if (!out) throw std::runtime_error("cannot write " + flags.out);
      out << text;
    }
    return report.passed ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "wilsonnet " << verb << ": " << e.what() << "\n";
    return 2;
  }
}
