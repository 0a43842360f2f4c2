// Command-line entry point: ldim, run, check, and repro subcommands.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "eqlab/harness.hpp"
#include "eqlab/littlestone.hpp"

namespace {

using namespace eqlab;
using ordered_json = nlohmann::ordered_json;

// "singletons(6)", "linear(3,2)", "random(6,2,64,1)", or a class-file path.
ClassSpec parse_class_string(const std::string& s) {
  ClassSpec spec;
  int a = 0, b = 0, c = 0;
  unsigned long long u = 0;
  if (std::sscanf(s.c_str(), "singletons(%d)", &a) == 1) {
    spec.kind = ClassSpec::Kind::kSingletons;
    spec.n = a;
  } else if (std::sscanf(s.c_str(), "linear(%d,%d)", &a, &b) == 2) {
    spec.kind = ClassSpec::Kind::kLinear;
    spec.p = a;
    spec.d = b;
  } else if (std::sscanf(s.c_str(), "random(%d,%d,%d,%llu)", &a, &b, &c, &u) == 4) {
    spec.kind = ClassSpec::Kind::kRandom;
    spec.n = a;
    spec.k = b;
    spec.m = c;
    spec.seed = u;
  } else {
    spec.kind = ClassSpec::Kind::kFile;
    spec.path = s;
  }
  return spec;
}

void write_witness(const MistakeTree& tree, int depth, const std::string& path) {
  ordered_json root;
  root["depth"] = depth;
  root["nodes"] = ordered_json::array();
  for (const MistakeTree::Node& node : tree.nodes) {
    ordered_json nj;
    nj["instance"] = node.instance;
    nj["edges"] = ordered_json::array();
    for (const MistakeTree::Edge& e : node.edges) {
      ordered_json ej;
      ej["label"] = e.label;
      ej["child"] = e.child;
      nj["edges"].push_back(std::move(ej));
    }
    root["nodes"].push_back(std::move(nj));
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << root.dump(2) << "\n";
}

int cmd_ldim(const std::string& class_str, const std::string& witness_path) {
  const HypothesisClass cls = parse_class_string(class_str).make();
  const VersionSpace v = full_space(cls);
  const int d = ldim(v);
  std::cout << "class " << parse_class_string(class_str).display_name() << ": m="
            << cls.size() << " n=" << cls.domain_size() << " k=" << cls.num_labels()
            << "\n"
            << "ldim = " << d << "\n";
  if (!witness_path.empty()) {
    const MistakeTree tree = shattered_tree(v);
    if (!verify_shattered(tree, v)) throw Error("witness tree failed verification");
    write_witness(tree, d, witness_path);
    std::cout << "witness tree written to " << witness_path << "\n";
  }
  return 0;
}

int cmd_run(const std::string& config_path, const std::string& out_csv,
            const std::string& out_stats, const std::string& out_trace,
            const std::string& out_plot, const std::string& dump_dir) {
  const ExperimentConfig config = load_config_file(config_path);
  ResultsTable table;
  if (!out_trace.empty()) {
    std::vector<Transcript> transcripts;
    table = run_experiment_with_transcripts(config, transcripts);
    write_trace(transcripts, out_trace);
  } else {
    table = run_experiment(config);
  }
  const std::vector<SummaryStats> stats = summarize(table);
  for (const SummaryStats& s : stats) {
    std::printf("%s: trials=%d mean=%.4f stddev=%.4f ci99=%.4f min=%d max=%d\n",
                s.experiment_id.c_str(), s.trials, s.mean, s.stddev,
                s.ci99_half_width, s.min, s.max);
  }
  OutputPaths paths;
  paths.csv = out_csv;
  paths.stats = out_stats;
  paths.svg = out_plot;
  emit_outputs(table, stats, paths);
  if (!dump_dir.empty()) dump_game(config, dump_dir);
  return 0;
}

bool report(bool ok, const std::string& what) {
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << what << "\n";
  return ok;
}

int cmd_check() {
  bool all = true;

  const HypothesisClass s6 = gen_singletons(6);
  const HypothesisClass l31 = gen_linear_functionals(3, 1);
  for (const HypothesisClass* cls : {&s6, &l31}) {
    const std::string cname = cls == &s6 ? "singletons(6)" : "linear(3,1)";
    std::vector<std::unique_ptr<Adversary>> advs;
    advs.push_back(
        std::make_unique<RandomCEAdversary>(RandomCEAdversary::uniform(cls->domain_size())));
    std::vector<int> order(cls->domain_size());
    for (int x = 0; x < cls->domain_size(); ++x) order[x] = x;
    advs.push_back(std::make_unique<OrderInducedAdversary>(order));
    AdversarySpec dtree_spec;
    dtree_spec.kind = AdversarySpec::Kind::kDtree;
    advs.push_back(dtree_spec.make(*cls));
    advs.push_back(std::make_unique<LdimTreeAdversary>(*cls));
    for (const auto& adv : advs) {
      const SymmetryReport r = check_symmetric(*adv, *cls);
      all &= report(r.pass, "symmetric: " + adv->name() + " on " + cname);
    }
  }
  {
    const MinIndexPositiveAdversary bad;
    const SymmetryReport r = check_symmetric(bad, s6);
    const bool expected_fail = !r.pass;
    std::string what = "asymmetry detected: min_index_positive on singletons(6)";
    if (expected_fail)
      what += " (witness h=" + std::to_string(r.h) + " c=" + std::to_string(r.c) + ")";
    all &= report(expected_fail, what);
  }

  struct Sweep {
    const char* id;
    ClassSpec cls;
    AdversarySpec::Kind adv;
    LearnerConfig::Kind learner;
    FeedbackMode feedback;
    TargetPolicySpec::Kind target;
    int trials;
  };
  ClassSpec cs6, cl31, cs8;
  cs6.kind = ClassSpec::Kind::kSingletons;
  cs6.n = 6;
  cl31.kind = ClassSpec::Kind::kLinear;
  cl31.p = 3;
  cl31.d = 1;
  cs8.kind = ClassSpec::Kind::kSingletons;
  cs8.n = 8;
  const Sweep sweeps[] = {
      {"minimax-random", cs6, AdversarySpec::Kind::kRandom,
       LearnerConfig::Kind::kMinimaxFull, FeedbackMode::kFullInfo,
       TargetPolicySpec::Kind::kUniform, 50},
      {"score-random", cs6, AdversarySpec::Kind::kRandom, LearnerConfig::Kind::kScoreDet,
       FeedbackMode::kFullInfo, TargetPolicySpec::Kind::kUniform, 50},
      {"minimax-order", cs6, AdversarySpec::Kind::kOrder,
       LearnerConfig::Kind::kMinimaxFull, FeedbackMode::kFullInfo,
       TargetPolicySpec::Kind::kUniform, 50},
      {"minimax-tree", cs6, AdversarySpec::Kind::kLdimTree,
       LearnerConfig::Kind::kMinimaxFull, FeedbackMode::kFullInfo,
       TargetPolicySpec::Kind::kUniformLeaves, 50},
      {"bandit-random", cl31, AdversarySpec::Kind::kRandom, LearnerConfig::Kind::kBandit,
       FeedbackMode::kBandit, TargetPolicySpec::Kind::kUniform, 30},
      {"minimax-adaptive", cs8, AdversarySpec::Kind::kRandom,
       LearnerConfig::Kind::kMinimaxFull, FeedbackMode::kFullInfo,
       TargetPolicySpec::Kind::kAdaptiveUniform, 50},
  };
  for (const Sweep& sw : sweeps) {
    ExperimentConfig config;
    config.experiment_id = sw.id;
    config.cls = sw.cls;
    config.adversary.kind = sw.adv;
    config.learner.kind = sw.learner;
    config.feedback = sw.feedback;
    config.target.kind = sw.target;
    config.trials = sw.trials;
    config.master_seed = 7;
    std::vector<Transcript> transcripts;
    run_experiment_with_transcripts(config, transcripts);
    const HypothesisClass cls = sw.cls.make();
    bool ok = true;
    std::string detail;
    for (const Transcript& tr : transcripts) {
      const ValidationReport r = validate_transcript(tr, cls);
      if (!r.pass) {
        ok = false;
        detail = " (round " + std::to_string(r.round) + ": " + r.detail + ")";
        break;
      }
    }
    all &= report(ok, "transcript invariants: " + std::string(sw.id) +
                          " x" + std::to_string(sw.trials) + detail);
  }
  return all ? 0 : 2;
}

ExperimentConfig canned(const std::string& id, ClassSpec cls, AdversarySpec::Kind adv,
                        LearnerConfig::Kind learner, FeedbackMode feedback,
                        TargetPolicySpec::Kind target, int trials) {
  ExperimentConfig config;
  config.experiment_id = id;
  config.cls = cls;
  config.adversary.kind = adv;
  config.learner.kind = learner;
  config.feedback = feedback;
  config.target.kind = target;
  config.trials = trials;
  config.master_seed = 1;
  const unsigned hw = std::thread::hardware_concurrency();
  config.threads = static_cast<int>(hw == 0 ? 1 : std::min(hw, 8u));
  return config;
}

bool verdict(const SummaryStats& s, bool upper, double bound) {
  const bool ok = upper ? s.mean <= bound : s.mean >= bound;
  std::printf("%s: trials=%d mean=%.4f ci99=%.4f (threshold %s %.4f) %s\n",
              s.experiment_id.c_str(), s.trials, s.mean, s.ci99_half_width,
              upper ? "<=" : ">=", bound, ok ? "PASS" : "FAIL");
  return ok;
}

int cmd_repro(const std::string& name) {
  ClassSpec s16, l32, cube6;
  s16.kind = ClassSpec::Kind::kSingletons;
  s16.n = 16;
  l32.kind = ClassSpec::Kind::kLinear;
  l32.p = 3;
  l32.d = 2;
  cube6.kind = ClassSpec::Kind::kRandom;
  cube6.n = 6;
  cube6.k = 2;
  cube6.m = 64;
  cube6.seed = 1;

  bool all = true;
  if (name == "theorem1") {
    // Minimax learner against uniform random counterexamples: expected
    // queries at most 2d + 1, with sampling slack 0.5.
    for (const auto& [cls, bound] : {std::pair{s16, 3.5}, std::pair{l32, 5.5}}) {
      ExperimentConfig config =
          canned("theorem1-" + cls.display_name(), cls, AdversarySpec::Kind::kRandom,
                 LearnerConfig::Kind::kMinimaxFull, FeedbackMode::kFullInfo,
                 TargetPolicySpec::Kind::kUniform, 2000);
      all &= verdict(summarize(run_experiment(config)).front(), true, bound);
    }
  } else if (name == "theorem1-lb") {
    // Tree adversary on a depth-6 class with uniform leaf targets: expected
    // queries at least d/2, with 10 percent sampling slack.
    for (const auto learner :
         {LearnerConfig::Kind::kMinimaxFull, LearnerConfig::Kind::kScoreDet}) {
      const std::string lname =
          learner == LearnerConfig::Kind::kMinimaxFull ? "minimax" : "score";
      ExperimentConfig config =
          canned("theorem1-lb-" + lname, cube6, AdversarySpec::Kind::kLdimTree, learner,
                 FeedbackMode::kFullInfo, TargetPolicySpec::Kind::kUniformLeaves, 2000);
      all &= verdict(summarize(run_experiment(config)).front(), false, 2.7);
    }
  } else if (name == "theorem2") {
    // Bandit learner, pruning off: expected queries at most 120 d k ln k and
    // no budget exhaustion.
    ExperimentConfig config =
        canned("theorem2", l32, AdversarySpec::Kind::kRandom, LearnerConfig::Kind::kBandit,
               FeedbackMode::kBandit, TargetPolicySpec::Kind::kUniform, 300);
    const ResultsTable table = run_experiment(config);
    const double bound = 120.0 * 2 * 3 * std::log(3.0);
    all &= verdict(summarize(table).front(), true, bound);
    bool in_budget = true;
    for (const TrialRow& row : table.rows) in_budget &= row.status != "budget_exhausted";
    all &= report(in_budget, "every trial terminated within budget");
  } else if (name == "theorem2-lb") {
    // Lower bound floor d p log2(p) / 6 on the same run, reported with the
    // bandit to full-information mean ratio on shared seeds.
    ExperimentConfig bandit =
        canned("theorem2-lb", l32, AdversarySpec::Kind::kRandom,
               LearnerConfig::Kind::kBandit, FeedbackMode::kBandit,
               TargetPolicySpec::Kind::kUniform, 300);
    ExperimentConfig full =
        canned("theorem2-lb-fullinfo", l32, AdversarySpec::Kind::kRandom,
               LearnerConfig::Kind::kMinimaxFull, FeedbackMode::kFullInfo,
               TargetPolicySpec::Kind::kUniform, 300);
    const SummaryStats sb = summarize(run_experiment(bandit)).front();
    const SummaryStats sf = summarize(run_experiment(full)).front();
    const double floor = 2.0 * 3.0 * std::log2(3.0) / 6.0;
    all &= verdict(sb, false, floor);
    std::printf("bandit/full-information mean ratio: %.4f / %.4f = %.4f\n", sb.mean,
                sf.mean, sb.mean / sf.mean);
  } else {
    std::cerr << "unknown repro target: " << name << "\n";
    return 1;
  }
  return all ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"equivalence-query learning laboratory"};
  app.require_subcommand(1);

  std::string class_str, witness_path;
  CLI::App* ldim_cmd = app.add_subcommand("ldim", "Littlestone dimension of a class");
  ldim_cmd->add_option("--class", class_str,
                       "singletons(N) | linear(P,D) | random(N,K,M,SEED) | file")
      ->required();
  ldim_cmd->add_option("--witness", witness_path, "write a shattered tree as JSON");

  std::string config_path, out_csv, out_stats, out_trace, out_plot, dump_dir;
  CLI::App* run_cmd = app.add_subcommand("run", "run a configured experiment");
  run_cmd->add_option("--config", config_path, "experiment config JSON")->required();
  run_cmd->add_option("--out", out_csv, "write per-trial results CSV");
  run_cmd->add_option("--stats", out_stats, "write summary statistics JSON");
  run_cmd->add_option("--trace", out_trace, "write per-round transcript JSONL");
  run_cmd->add_option("--plot", out_plot, "write an ECDF plot SVG");
  run_cmd->add_option("--dump-game", dump_dir, "write trial 0 payoff matrices");

  CLI::App* check_cmd =
      app.add_subcommand("check", "symmetry and transcript invariant suites");

  std::string repro_name;
  CLI::App* repro_cmd = app.add_subcommand("repro", "reproduce a reported bound");
  repro_cmd->add_option("target", repro_name, "theorem1 | theorem1-lb | theorem2 | theorem2-lb")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (ldim_cmd->parsed()) return cmd_ldim(class_str, witness_path);
    if (run_cmd->parsed())
      return cmd_run(config_path, out_csv, out_stats, out_trace, out_plot, dump_dir);
    if (check_cmd->parsed()) return cmd_check();
    if (repro_cmd->parsed()) return cmd_repro(repro_name);
  } catch (const eqlab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
