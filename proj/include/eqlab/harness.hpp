// Experiment configuration, Monte Carlo sweeps, statistics, and file outputs.
#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "eqlab/adversary.hpp"
#include "eqlab/protocol.hpp"

namespace eqlab {

// Which hypothesis class an experiment runs on. Builtin kinds carry their
// generator parameters; kFile loads a JSON label matrix.
struct ClassSpec {
  enum class Kind { kSingletons, kLinear, kRandom, kFile };
  Kind kind = Kind::kSingletons;
  int n = 2;               // singletons, random
  int p = 2;               // linear
  int d = 1;               // linear
  int k = 2;               // random
  int m = 2;               // random
  std::uint64_t seed = 0;  // random
  std::string path;        // file

  HypothesisClass make() const;
  std::string display_name() const;
};

struct AdversarySpec {
  enum class Kind { kRandom, kOrder, kDtree, kLdimTree };
  Kind kind = Kind::kRandom;
  std::vector<double> mu;     // random; empty means uniform
  std::vector<int> order;     // order; empty means identity
  LabeledDecisionTree tree;   // dtree; empty means the identity-order path tree
  bool tree_given = false;

  std::unique_ptr<Adversary> make(const HypothesisClass& cls) const;
  std::string display_name() const;
};

struct TargetPolicySpec {
  enum class Kind { kFixed, kUniform, kUniformLeaves, kAdaptiveUniform };
  Kind kind = Kind::kUniform;
  int index = 0;  // fixed
};

struct LearnerSpec {
  LearnerConfig::Kind kind = LearnerConfig::Kind::kMinimaxFull;
  double epsilon = 1e-9;
  std::vector<double> mu;  // score rule; empty defers to the adversary's mu
  BanditPruning pruning;

  std::string display_name() const;
};

struct ExperimentConfig {
  std::string experiment_id;
  ClassSpec cls;
  AdversarySpec adversary;
  LearnerSpec learner;
  FeedbackMode feedback = FeedbackMode::kFullInfo;
  TargetPolicySpec target;
  int trials = 1;
  std::uint64_t master_seed = 0;
  int budget = 100000;
  int threads = 1;
};

// Parses the lower_snake_case config JSON. Throws ConfigError on schema
// violations and IoError when a referenced file is missing.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config_file(const std::string& path);

// Loads a class from JSON with integer fields "domain_size" and "num_labels"
// and a "hypotheses" array of label rows (row and column order significant).
HypothesisClass load_class_file(const std::string& path);

struct TrialRow {
  std::string experiment_id;
  std::string class_name;
  std::string adversary;
  std::string learner;
  std::string feedback;
  int d = 0;
  int k = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  int queries = 0;
  std::string status;
  int repeat_rounds = 0;
};

struct ResultsTable {
  std::vector<TrialRow> rows;
};

// Runs config.trials episodes with per-trial seeds derive_seed(master, trial).
// Deterministic for a fixed config, independent of thread count. Config
// errors (bad policy for the adversary, learner/feedback mismatch) surface
// before any trial runs.
ResultsTable run_experiment(const ExperimentConfig& config);

// Same sweep, also returning each trial's transcript in trial order.
ResultsTable run_experiment_with_transcripts(const ExperimentConfig& config,
                                             std::vector<Transcript>& transcripts);

struct SummaryStats {
  std::string experiment_id;
  int trials = 0;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation
  double ci99_half_width = 0.0;
  int min = 0;
  int max = 0;
};

// Per-experiment-id query statistics. The confidence half-width uses the
// normal approximation z = 2.5758... * stddev / sqrt(n), appropriate at
// n >= 30. Throws EmptyTable on an empty table.
std::vector<SummaryStats> summarize(const ResultsTable& table);

// CSV with the fixed header; fields containing commas or quotes are quoted
// RFC-4180 style so that class names like linear(3,2) round-trip.
std::string csv_string(const ResultsTable& table);
ResultsTable parse_csv(const std::string& text);

std::string stats_json(const std::vector<SummaryStats>& stats);

// Minimal ECDF plot of per-experiment query counts. Well-formed XML.
std::string svg_ecdf(const ResultsTable& table);

struct OutputPaths {
  std::string csv;    // empty disables
  std::string stats;  // empty disables
  std::string svg;    // empty disables
};

// Writes whichever outputs have paths. Throws EmptyTable before touching any
// file when the table has no rows, IoError when a path is unwritable.
void emit_outputs(const ResultsTable& table, const std::vector<SummaryStats>& stats,
                  const OutputPaths& paths);

// One JSON object per line, one line per round per trial, trial order.
void write_trace(const std::vector<Transcript>& transcripts, const std::string& path);

// Re-derives trial 0's per-round payoff matrices from its transcript and
// writes round_<t>_payoff.csv files plus a round summary into `dir`.
void dump_game(const ExperimentConfig& config, const std::string& dir);

}  // namespace eqlab
