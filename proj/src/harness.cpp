// Monte Carlo experiment harness: config parsing, sweeps, stats, outputs.
#include "eqlab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "eqlab/littlestone.hpp"
#include "eqlab/minimax.hpp"
#include "eqlab/rng.hpp"

namespace eqlab {
namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

constexpr char kCsvHeader[] =
    "experiment_id,class,adversary,learner,feedback,d,k,trial,seed,queries,status,"
    "repeat_rounds";

// Normal 99% two-sided quantile.
constexpr double kZ99 = 2.5758293035489004;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << content;
  if (!out) throw IoError("write failed: " + path);
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

HypothesisClass ClassSpec::make() const {
  switch (kind) {
    case Kind::kSingletons: return gen_singletons(n);
    case Kind::kLinear: return gen_linear_functionals(p, d);
    case Kind::kRandom: return gen_random_class(n, k, m, seed);
    case Kind::kFile: return load_class_file(path);
  }
  throw ConfigError("unknown class kind");
}

std::string ClassSpec::display_name() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::kSingletons:
      out << "singletons(" << n << ")";
      break;
    case Kind::kLinear:
      out << "linear(" << p << "," << d << ")";
      break;
    case Kind::kRandom:
      out << "random(n=" << n << ",k=" << k << ",m=" << m << ",seed=" << seed << ")";
      break;
    case Kind::kFile:
      return std::filesystem::path(path).filename().string();
  }
  return out.str();
}

std::unique_ptr<Adversary> AdversarySpec::make(const HypothesisClass& cls) const {
  const int n = cls.domain_size();
  switch (kind) {
    case Kind::kRandom: {
      if (mu.empty()) return std::make_unique<RandomCEAdversary>(RandomCEAdversary::uniform(n));
      if (static_cast<int>(mu.size()) != n)
        throw ConfigError("adversary mu length does not match the domain size");
      return std::make_unique<RandomCEAdversary>(mu);
    }
    case Kind::kOrder: {
      std::vector<int> seq = order;
      if (seq.empty()) {
        seq.resize(n);
        for (int x = 0; x < n; ++x) seq[x] = x;
      }
      for (int x : seq)
        if (x < 0 || x >= n) throw ConfigError("order entry outside the domain");
      return std::make_unique<OrderInducedAdversary>(std::move(seq));
    }
    case Kind::kDtree: {
      if (tree_given) return std::make_unique<DecisionTreeAdversary>(tree);
      // Default: the identity-order path tree, one node per instance, every
      // edge of node x leading to node x + 1.
      LabeledDecisionTree t;
      t.nodes.resize(n);
      for (int x = 0; x < n; ++x) {
        t.nodes[x].instance = x;
        for (int j = 0; j < cls.num_labels(); ++j)
          t.nodes[x].edges.push_back({j, x + 1 < n ? x + 1 : -1});
      }
      return std::make_unique<DecisionTreeAdversary>(std::move(t));
    }
    case Kind::kLdimTree:
      return std::make_unique<LdimTreeAdversary>(cls);
  }
  throw ConfigError("unknown adversary kind");
}

std::string AdversarySpec::display_name() const {
  switch (kind) {
    case Kind::kRandom: return "random";
    case Kind::kOrder: return "order";
    case Kind::kDtree: return "dtree";
    case Kind::kLdimTree: return "ldim_tree";
  }
  return "unknown";
}

std::string LearnerSpec::display_name() const {
  switch (kind) {
    case LearnerConfig::Kind::kMinimaxFull: return "minimax_full";
    case LearnerConfig::Kind::kScoreDet: return "score_det";
    case LearnerConfig::Kind::kBandit: return "bandit";
  }
  return "unknown";
}

HypothesisClass load_class_file(const std::string& path) {
  try {
    const json j = json::parse(read_file(path));
    const int n = j.at("domain_size").get<int>();
    const int k = j.at("num_labels").get<int>();
    const auto rows = j.at("hypotheses").get<std::vector<std::vector<int>>>();
    for (const auto& row : rows)
      if (static_cast<int>(row.size()) != n)
        throw ConfigError("class file " + path + ": row length differs from domain_size");
    return build_class(rows, k);
  } catch (const json::exception& e) {
    throw ConfigError("class file " + path + ": " + e.what());
  }
}

namespace {

ClassSpec parse_class_spec(const json& j) {
  ClassSpec spec;
  if (j.contains("file")) {
    spec.kind = ClassSpec::Kind::kFile;
    spec.path = j.at("file").get<std::string>();
    if (!std::filesystem::exists(spec.path))
      throw ConfigError("class file does not exist: " + spec.path);
    return spec;
  }
  const std::string builtin = j.at("builtin").get<std::string>();
  if (builtin == "singletons") {
    spec.kind = ClassSpec::Kind::kSingletons;
    spec.n = j.at("n").get<int>();
  } else if (builtin == "linear") {
    spec.kind = ClassSpec::Kind::kLinear;
    spec.p = j.at("p").get<int>();
    spec.d = j.at("d").get<int>();
  } else if (builtin == "random") {
    spec.kind = ClassSpec::Kind::kRandom;
    spec.n = j.at("n").get<int>();
    spec.k = j.at("k").get<int>();
    spec.m = j.at("m").get<int>();
    spec.seed = j.at("seed").get<std::uint64_t>();
  } else {
    throw ConfigError("unknown builtin class: " + builtin);
  }
  return spec;
}

LabeledDecisionTree parse_tree(const json& j) {
  LabeledDecisionTree tree;
  for (const json& nj : j.at("nodes")) {
    LabeledDecisionTree::Node node;
    node.instance = nj.at("instance").get<int>();
    for (const json& ej : nj.at("edges"))
      node.edges.push_back({ej.at("label").get<int>(), ej.at("child").get<int>()});
    tree.nodes.push_back(std::move(node));
  }
  return tree;
}

AdversarySpec parse_adversary_spec(const json& j) {
  AdversarySpec spec;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "random") {
    spec.kind = AdversarySpec::Kind::kRandom;
    if (j.contains("mu")) spec.mu = j.at("mu").get<std::vector<double>>();
  } else if (kind == "order") {
    spec.kind = AdversarySpec::Kind::kOrder;
    if (j.contains("sequence")) spec.order = j.at("sequence").get<std::vector<int>>();
  } else if (kind == "dtree") {
    spec.kind = AdversarySpec::Kind::kDtree;
    if (j.contains("tree")) {
      spec.tree = parse_tree(j.at("tree"));
      spec.tree_given = true;
    }
  } else if (kind == "ldim_tree") {
    spec.kind = AdversarySpec::Kind::kLdimTree;
  } else {
    throw ConfigError("unknown adversary kind: " + kind);
  }
  return spec;
}

LearnerSpec parse_learner_spec(const json& j, double default_epsilon) {
  LearnerSpec spec;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "minimax_full") {
    spec.kind = LearnerConfig::Kind::kMinimaxFull;
  } else if (kind == "score_det") {
    spec.kind = LearnerConfig::Kind::kScoreDet;
    if (j.contains("mu")) spec.mu = j.at("mu").get<std::vector<double>>();
  } else if (kind == "bandit") {
    spec.kind = LearnerConfig::Kind::kBandit;
    if (j.contains("pruning")) {
      const json& pj = j.at("pruning");
      spec.pruning.enabled = pj.value("enabled", false);
      spec.pruning.threshold = pj.value("threshold", 1e-15);
    }
  } else {
    throw ConfigError("unknown learner kind: " + kind);
  }
  spec.epsilon = j.value("epsilon", default_epsilon);
  return spec;
}

TargetPolicySpec parse_target_spec(const json& j) {
  TargetPolicySpec spec;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "fixed") {
    spec.kind = TargetPolicySpec::Kind::kFixed;
    spec.index = j.at("index").get<int>();
  } else if (kind == "uniform") {
    spec.kind = TargetPolicySpec::Kind::kUniform;
  } else if (kind == "uniform_leaves") {
    spec.kind = TargetPolicySpec::Kind::kUniformLeaves;
  } else if (kind == "adaptive_uniform") {
    spec.kind = TargetPolicySpec::Kind::kAdaptiveUniform;
  } else {
    throw ConfigError("unknown target policy: " + kind);
  }
  return spec;
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  try {
    const json j = json::parse(json_text);
    ExperimentConfig config;
    config.experiment_id = j.at("experiment_id").get<std::string>();
    config.cls = parse_class_spec(j.at("class"));
    config.adversary = parse_adversary_spec(j.at("adversary"));
    const double epsilon = j.value("epsilon", 1e-9);
    config.learner = parse_learner_spec(j.at("learner"), epsilon);
    const std::string fb = j.at("feedback").get<std::string>();
    if (fb == "full") {
      config.feedback = FeedbackMode::kFullInfo;
    } else if (fb == "bandit") {
      config.feedback = FeedbackMode::kBandit;
    } else {
      throw ConfigError("unknown feedback mode: " + fb);
    }
    config.target = parse_target_spec(j.at("target_policy"));
    config.trials = j.at("trials").get<int>();
    config.master_seed = j.at("master_seed").get<std::uint64_t>();
    config.budget = j.value("budget", 100000);
    config.threads = j.value("threads", 1);
    if (config.trials < 1) throw ConfigError("trials must be >= 1");
    if (config.budget < 1) throw ConfigError("budget must be >= 1");
    if (config.threads < 1) throw ConfigError("threads must be >= 1");
    return config;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config parse: ") + e.what());
  }
}

ExperimentConfig load_config_file(const std::string& path) {
  return parse_config(read_file(path));
}

namespace {

// Everything resolve-time that can fail, done once before any trial.
struct ResolvedExperiment {
  HypothesisClass cls;
  std::unique_ptr<Adversary> adv;
  LearnerConfig learner;
  TargetPolicy policy;
  std::string class_name;
  int d = 0;
};

ResolvedExperiment resolve_experiment(const ExperimentConfig& config) {
  if (config.trials < 1) throw ConfigError("trials must be >= 1");
  if (config.budget < 1) throw ConfigError("budget must be >= 1");
  if (config.threads < 1) throw ConfigError("threads must be >= 1");
  const bool bandit_mode = config.feedback == FeedbackMode::kBandit;
  if (bandit_mode != (config.learner.kind == LearnerConfig::Kind::kBandit))
    throw ConfigError("learner kind does not match the feedback mode");
  if (config.target.kind == TargetPolicySpec::Kind::kAdaptiveUniform && bandit_mode)
    throw ConfigError("adaptive_uniform targets require full information");

  ResolvedExperiment r{config.cls.make(), nullptr, {}, {}, config.cls.display_name(), 0};
  r.adv = config.adversary.make(r.cls);
  r.d = ldim(full_space(r.cls));

  r.learner.kind = config.learner.kind;
  r.learner.epsilon = config.learner.epsilon;
  r.learner.pruning = config.learner.pruning;
  if (config.learner.kind == LearnerConfig::Kind::kScoreDet) {
    if (!config.learner.mu.empty()) {
      if (static_cast<int>(config.learner.mu.size()) != r.cls.domain_size())
        throw ConfigError("learner mu length does not match the domain size");
      r.learner.mu = config.learner.mu;
    } else if (const std::vector<double>* mu = r.adv->instance_distribution()) {
      // The score rule evaluates against the measure the counterexamples are
      // drawn from when the adversary exposes one.
      r.learner.mu = *mu;
    }
  }

  switch (config.target.kind) {
    case TargetPolicySpec::Kind::kFixed:
      if (config.target.index < 0 || config.target.index >= r.cls.size())
        throw InconsistentTarget("fixed target index outside the class");
      r.policy = TargetPolicy::fixed(config.target.index);
      break;
    case TargetPolicySpec::Kind::kUniform: {
      std::vector<int> pool(r.cls.size());
      for (int h = 0; h < r.cls.size(); ++h) pool[h] = h;
      r.policy = TargetPolicy::pool(std::move(pool));
      break;
    }
    case TargetPolicySpec::Kind::kUniformLeaves: {
      const auto* tree_adv = dynamic_cast<const LdimTreeAdversary*>(r.adv.get());
      if (tree_adv == nullptr)
        throw ConfigError("uniform_leaves targets require the ldim_tree adversary");
      std::vector<int> pool;
      for (int leaf : tree_adv->state().leaves) {
        const auto constraints = tree_path_constraints(tree_adv->state(), leaf);
        VersionSpace v = space_from_constraints(r.cls, constraints);
        if (v.empty())
          throw ConfigError("shattered-tree leaf has no consistent hypothesis");
        pool.push_back(v.members().front());
      }
      r.policy = TargetPolicy::pool(std::move(pool));
      break;
    }
    case TargetPolicySpec::Kind::kAdaptiveUniform:
      r.policy = TargetPolicy::adaptive_uniform();
      break;
  }
  return r;
}

ResultsTable run_sweep(const ExperimentConfig& config, std::vector<Transcript>* capture) {
  const ResolvedExperiment r = resolve_experiment(config);
  const std::string learner_name = config.learner.display_name();
  const std::string adversary_name = config.adversary.display_name();
  const std::string feedback_name =
      config.feedback == FeedbackMode::kBandit ? "bandit" : "full";

  ResultsTable table;
  table.rows.resize(config.trials);
  if (capture != nullptr) capture->resize(config.trials);

  auto run_trial = [&](int trial) {
    const std::uint64_t seed = derive_seed(config.master_seed, trial);
    Transcript tr = run_episode(r.cls, r.learner, *r.adv, r.policy, config.feedback,
                                config.budget, seed);
    TrialRow& row = table.rows[trial];
    row.experiment_id = config.experiment_id;
    row.class_name = r.class_name;
    row.adversary = adversary_name;
    row.learner = learner_name;
    row.feedback = feedback_name;
    row.d = r.d;
    row.k = r.cls.num_labels();
    row.trial = trial;
    row.seed = seed;
    row.queries = tr.total_queries;
    row.status = to_string(tr.status);
    row.repeat_rounds = tr.repeat_rounds;
    if (capture != nullptr) (*capture)[trial] = std::move(tr);
  };

  const int workers = std::min(config.threads, config.trials);
  if (workers <= 1) {
    for (int trial = 0; trial < config.trials; ++trial) run_trial(trial);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      threads.emplace_back([&] {
        for (int trial = next.fetch_add(1); trial < config.trials;
             trial = next.fetch_add(1))
          run_trial(trial);
      });
    }
    for (std::thread& t : threads) t.join();
  }
  return table;
}

}  // namespace

ResultsTable run_experiment(const ExperimentConfig& config) {
  return run_sweep(config, nullptr);
}

ResultsTable run_experiment_with_transcripts(const ExperimentConfig& config,
                                             std::vector<Transcript>& transcripts) {
  return run_sweep(config, &transcripts);
}

std::vector<SummaryStats> summarize(const ResultsTable& table) {
  if (table.rows.empty()) throw EmptyTable("summarize on an empty table");
  std::vector<SummaryStats> out;
  std::vector<std::vector<int>> samples;
  for (const TrialRow& row : table.rows) {
    std::size_t g = 0;
    while (g < out.size() && out[g].experiment_id != row.experiment_id) ++g;
    if (g == out.size()) {
      out.push_back({});
      out.back().experiment_id = row.experiment_id;
      samples.push_back({});
    }
    samples[g].push_back(row.queries);
  }
  for (std::size_t g = 0; g < out.size(); ++g) {
    const std::vector<int>& q = samples[g];
    SummaryStats& s = out[g];
    s.trials = static_cast<int>(q.size());
    double sum = 0.0;
    s.min = q.front();
    s.max = q.front();
    for (int v : q) {
      sum += v;
      s.min = std::min(s.min, v);
      s.max = std::max(s.max, v);
    }
    s.mean = sum / s.trials;
    double ss = 0.0;
    for (int v : q) ss += (v - s.mean) * (v - s.mean);
    s.stddev = s.trials > 1 ? std::sqrt(ss / (s.trials - 1)) : 0.0;
    s.ci99_half_width = kZ99 * s.stddev / std::sqrt(static_cast<double>(s.trials));
  }
  return out;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += "\"\"";
    else out += ch;
  }
  out += "\"";
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

std::string csv_string(const ResultsTable& table) {
  std::ostringstream out;
  out << kCsvHeader << "\n";
  for (const TrialRow& r : table.rows) {
    out << csv_field(r.experiment_id) << ',' << csv_field(r.class_name) << ','
        << csv_field(r.adversary) << ',' << csv_field(r.learner) << ','
        << csv_field(r.feedback) << ',' << r.d << ',' << r.k << ',' << r.trial << ','
        << r.seed << ',' << r.queries << ',' << r.status << ',' << r.repeat_rounds
        << "\n";
  }
  return out.str();
}

ResultsTable parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw IoError("csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw IoError("csv: unexpected header");
  ResultsTable table;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> f = split_csv_line(line);
    if (f.size() != 12) throw IoError("csv: wrong field count");
    TrialRow row;
    row.experiment_id = f[0];
    row.class_name = f[1];
    row.adversary = f[2];
    row.learner = f[3];
    row.feedback = f[4];
    try {
      row.d = std::stoi(f[5]);
      row.k = std::stoi(f[6]);
      row.trial = std::stoi(f[7]);
      row.seed = std::stoull(f[8]);
      row.queries = std::stoi(f[9]);
      row.status = f[10];
      row.repeat_rounds = std::stoi(f[11]);
    } catch (const std::exception&) {
      throw IoError("csv: malformed numeric field");
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string stats_json(const std::vector<SummaryStats>& stats) {
  ordered_json root;
  root["experiments"] = ordered_json::array();
  for (const SummaryStats& s : stats) {
    ordered_json e;
    e["experiment_id"] = s.experiment_id;
    e["trials"] = s.trials;
    e["mean"] = s.mean;
    e["stddev"] = s.stddev;
    e["ci99_half_width"] = s.ci99_half_width;
    e["min"] = s.min;
    e["max"] = s.max;
    root["experiments"].push_back(std::move(e));
  }
  return root.dump(2) + "\n";
}

namespace {

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace

std::string svg_ecdf(const ResultsTable& table) {
  if (table.rows.empty()) throw EmptyTable("svg_ecdf on an empty table");
  // Group query counts by experiment id in order of first appearance.
  std::vector<std::pair<std::string, std::vector<int>>> groups;
  for (const TrialRow& row : table.rows) {
    std::size_t g = 0;
    while (g < groups.size() && groups[g].first != row.experiment_id) ++g;
    if (g == groups.size()) groups.push_back({row.experiment_id, {}});
    groups[g].second.push_back(row.queries);
  }
  int max_q = 1;
  for (auto& [id, q] : groups) {
    std::sort(q.begin(), q.end());
    max_q = std::max(max_q, q.back());
  }

  const double width = 640, height = 400;
  const double left = 60, right = 20, top = 20, bottom = 45;
  auto sx = [&](double v) { return left + v / max_q * (width - left - right); };
  auto sy = [&](double f) { return (height - bottom) - f * (height - top - bottom); };
  const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                           "#ff7f0e", "#8c564b"};

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height
      << "\">\n"
      << "<rect width=\"" << width << "\" height=\"" << height
      << "\" fill=\"white\"/>\n"
      << "<line x1=\"" << coord(left) << "\" y1=\"" << coord(sy(0)) << "\" x2=\""
      << coord(width - right) << "\" y2=\"" << coord(sy(0))
      << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << coord(left) << "\" y1=\"" << coord(sy(0)) << "\" x2=\""
      << coord(left) << "\" y2=\"" << coord(sy(1)) << "\" stroke=\"black\"/>\n";
  for (double f : {0.0, 0.5, 1.0})
    out << "<text x=\"" << coord(left - 8) << "\" y=\"" << coord(sy(f) + 4)
        << "\" font-size=\"12\" text-anchor=\"end\">" << coord(f) << "</text>\n";
  for (double v : {0.0, max_q / 2.0, static_cast<double>(max_q)})
    out << "<text x=\"" << coord(sx(v)) << "\" y=\"" << coord(height - bottom + 18)
        << "\" font-size=\"12\" text-anchor=\"middle\">" << static_cast<int>(v)
        << "</text>\n";
  out << "<text x=\"" << coord((left + width - right) / 2) << "\" y=\""
      << coord(height - 8) << "\" font-size=\"13\" text-anchor=\"middle\">queries"
      << "</text>\n"
      << "<text x=\"14\" y=\"" << coord((top + height - bottom) / 2)
      << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
      << coord((top + height - bottom) / 2) << ")\">fraction of trials</text>\n";

  for (std::size_t g = 0; g < groups.size(); ++g) {
    const std::vector<int>& q = groups[g].second;
    const int n = static_cast<int>(q.size());
    std::ostringstream pts;
    pts << coord(sx(0)) << "," << coord(sy(0));
    int i = 0;
    while (i < n) {
      int j = i;
      while (j < n && q[j] == q[i]) ++j;
      pts << " " << coord(sx(q[i])) << "," << coord(sy(static_cast<double>(i) / n));
      pts << " " << coord(sx(q[i])) << "," << coord(sy(static_cast<double>(j) / n));
      i = j;
    }
    pts << " " << coord(sx(max_q)) << "," << coord(sy(1));
    const char* color = palette[g % (sizeof(palette) / sizeof(palette[0]))];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" "
        << "points=\"" << pts.str() << "\"/>\n"
        << "<text x=\"" << coord(left + 10) << "\" y=\"" << coord(top + 14 + 16 * g)
        << "\" font-size=\"12\" fill=\"" << color << "\">"
        << xml_escape(groups[g].first) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

void emit_outputs(const ResultsTable& table, const std::vector<SummaryStats>& stats,
                  const OutputPaths& paths) {
  if (table.rows.empty()) throw EmptyTable("emit_outputs on an empty table");
  if (!paths.csv.empty()) write_file(paths.csv, csv_string(table));
  if (!paths.stats.empty()) write_file(paths.stats, stats_json(stats));
  if (!paths.svg.empty()) write_file(paths.svg, svg_ecdf(table));
}

void write_trace(const std::vector<Transcript>& transcripts, const std::string& path) {
  std::ostringstream out;
  for (std::size_t trial = 0; trial < transcripts.size(); ++trial) {
    for (const RoundRecord& r : transcripts[trial].rounds) {
      ordered_json j;
      j["trial"] = trial;
      j["round"] = r.round;
      j["hypothesis"] = r.hypothesis;
      j["target"] = r.target;
      j["accepted"] = r.accepted;
      j["counterexample"] = r.counterexample;
      j["revealed_label"] = r.revealed_label;
      j["vs_size_after"] = r.vs_size_after;
      j["vs_ldim_after"] = r.vs_ldim_after;
      j["certificate"] = r.certificate;
      j["repeat"] = r.repeat;
      if (r.bandit_diag) {
        ordered_json b;
        b["prenorm_sum"] = r.bandit_diag->prenorm_sum;
        b["posterior_sum"] = r.bandit_diag->posterior_sum;
        b["true_sequence_mass"] = r.bandit_diag->true_sequence_mass;
        b["branch_excluded_mass"] = r.bandit_diag->branch_excluded_mass;
        b["support_size"] = r.bandit_diag->support_size;
        j["bandit"] = std::move(b);
      }
      out << j.dump() << "\n";
    }
  }
  write_file(path, out.str());
}

namespace {

std::string matrix_csv(const PayoffMatrix& m) {
  std::ostringstream out;
  for (int h = 0; h < m.dim; ++h) {
    for (int c = 0; c < m.dim; ++c) {
      if (c > 0) out << ',';
      out << format_double(m.at(h, c));
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace

void dump_game(const ExperimentConfig& config, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir + ": " + ec.message());

  ExperimentConfig first = config;
  first.trials = 1;
  first.threads = 1;
  std::vector<Transcript> transcripts;
  run_experiment_with_transcripts(first, transcripts);
  const Transcript& tr = transcripts.front();
  const ResolvedExperiment r = resolve_experiment(config);

  History history;
  std::ostringstream summary;
  summary << "round,hypothesis,target,accepted,counterexample,certificate\n";
  if (config.feedback == FeedbackMode::kFullInfo) {
    VersionSpace v = full_space(r.cls);
    for (const RoundRecord& rec : tr.rounds) {
      if (v.size() > 1) {
        const PayoffMatrix m = fullinfo_payoff_matrix(v, *r.adv, history);
        write_file(dir + "/round_" + std::to_string(rec.round) + "_payoff.csv",
                   matrix_csv(m));
      }
      summary << rec.round << ',' << rec.hypothesis << ',' << rec.target << ','
              << (rec.accepted ? 1 : 0) << ',' << rec.counterexample << ','
              << format_double(rec.certificate) << "\n";
      if (!rec.accepted) {
        v = restrict(v, rec.counterexample, rec.revealed_label);
        history.push_back(rec.hypothesis);
      }
    }
  } else {
    BanditState state = bandit_init(r.cls);
    for (const RoundRecord& rec : tr.rounds) {
      const PayoffMatrix m = bandit_payoff_matrix(r.cls, state, *r.adv, history);
      write_file(dir + "/round_" + std::to_string(rec.round) + "_payoff.csv",
                 matrix_csv(m));
      summary << rec.round << ',' << rec.hypothesis << ',' << rec.target << ','
              << (rec.accepted ? 1 : 0) << ',' << rec.counterexample << ','
              << format_double(rec.certificate) << "\n";
      if (!rec.accepted) {
        state = bandit_update(state, r.cls, rec.counterexample,
                              r.cls.label(rec.hypothesis, rec.counterexample),
                              config.learner.pruning);
        history.push_back(rec.hypothesis);
      }
    }
  }
  write_file(dir + "/summary.csv", summary.str());
}

}  // namespace eqlab
