#include "psph/cli.hpp"

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "psph/dataset.hpp"
#include "psph/error.hpp"
#include "psph/estimator.hpp"
#include "psph/evaluation.hpp"
#include "psph/histogram.hpp"
#include "psph/miner.hpp"
#include "psph/pattern_file.hpp"
#include "psph/synth.hpp"
#include "psph/workload.hpp"

namespace psph::cli {

namespace {

namespace fs = std::filesystem;

std::shared_ptr<spdlog::logger> logger() {
  if (auto existing = spdlog::get("psph")) return existing;
  auto log = spdlog::stderr_color_st("psph");
  log->set_pattern("psph: %l: %v");
  log->set_level(spdlog::level::warn);
  if (const char* env = std::getenv("PSPH_LOG")) log->set_level(spdlog::level::from_str(env));
  return log;
}

/// Writes through a sibling temporary file so a failed run never leaves a partial
/// output behind.
void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
  fs::path tmp = path;
  tmp += ".tmp";
  try {
    {
      std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
      if (!file) throw Error("cannot write '" + path.string() + "'");
      body(file);
      file.flush();
      if (!file) throw Error("error while writing '" + path.string() + "'");
    }
    fs::rename(tmp, path);
  } catch (...) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw;
  }
}

struct Options {
  // mine
  std::string input;
  std::string minsup;
  std::string mode = "positional";
  std::string report = "closed";
  bool no_backscan = false;
  std::optional<std::size_t> max_literals;
  // build
  std::string patterns;
  std::size_t buckets = 2048;
  double rpe_delta = 0.00216;
  bool no_rpe = false;
  double t_percent = 10.0;
  // estimate / evaluate
  std::string catalog;
  std::string pattern;
  std::string queries;
  double epsilon = 1.0;
  std::optional<double> t_override;
  bool no_partition = false;
  bool relax = false;
  bool timing = false;
  // genq
  std::string dataset;
  int group = 1;
  std::size_t count = 100;
  std::uint64_t seed = 1;
  // synth
  SynthSpec synth;
  std::string out;
};

EstimatorConfig estimator_config(const Options& o) {
  EstimatorConfig cfg;
  cfg.epsilon = o.epsilon;
  cfg.t_percent = o.t_override;
  cfg.partitioning_enabled = !o.no_partition;
  cfg.relax_adjacency = o.relax;
  return cfg;
}

std::string number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string describe_witness(const EstimateResult& r) {
  std::string out;
  for (const auto& w : r.witness) {
    if (!out.empty()) out += ',';
    if (w.part) out += w.part->render() + "->";
    out += w.endpoint.render() + ":" + std::to_string(w.frequency);
  }
  return out.empty() ? "-" : out;
}

void cmd_mine(const Options& o) {
  const SequenceDatabase db = load_dataset(o.input);
  MinerConfig cfg;
  cfg.minsup = Minsup::parse(o.minsup);
  cfg.mode = parse_pattern_mode(o.mode);
  cfg.pruning = o.no_backscan ? BackScan::kOff : BackScan::kOn;
  cfg.report = o.report == "frontier" ? Report::kSearchFrontier : Report::kClosed;
  cfg.max_pattern_literals = o.max_literals;

  PatternFile file;
  file.db_size = db.size();
  file.minsup_count = db.empty() ? 1 : cfg.minsup.resolve(db.size());
  file.mode = cfg.mode;
  logger()->info("mining {} rows at minsup {} ({})", db.size(), file.minsup_count, o.mode);
  file.patterns = mine(db, cfg);
  logger()->info("{} patterns", file.patterns.size());
  write_file(o.out, [&](std::ostream& s) { write_patterns(s, file); });
}

void cmd_build(const Options& o) {
  const PatternFile file = load_patterns(o.patterns);
  RedundancyConfig rpe;
  rpe.enabled = !o.no_rpe;
  rpe.delta = o.rpe_delta;
  const RedundancyResult kept = eliminate_redundant(file.patterns, rpe, file.db_size);
  logger()->info("redundancy elimination removed {} of {} patterns", kept.removals.size(), file.patterns.size());
  const Histogram h = build_histogram(kept.kept, o.buckets, {file.db_size, file.minsup_count, o.t_percent});
  logger()->info("{} buckets", h.buckets.size());
  write_file(o.out, [&](std::ostream& s) { save_histogram(s, h); });
}

void cmd_estimate(const Options& o, std::ostream& out) {
  const Estimator estimator(load_histogram(o.catalog));
  const EstimatorConfig cfg = estimator_config(o);
  if (!o.pattern.empty()) {
    const EstimateResult r = estimator.estimate(parse_like(o.pattern), cfg);
    std::ostringstream line;
    line << o.pattern << '\t' << number(r.selectivity) << '\t' << to_string(r.match_case) << '\t' << describe_witness(r)
         << '\n';
    if (o.out.empty()) {
      out << line.str();
    } else {
      write_file(o.out, [&](std::ostream& s) { s << line.str(); });
    }
    return;
  }
  const Workload w = load_queries(o.queries);
  auto body = [&](std::ostream& s) {
    s << "pattern\tselectivity\tmatch_case\n";
    for (const auto& q : w.queries) {
      const EstimateResult r = estimator.estimate(q.predicate, cfg);
      s << q.predicate.raw << '\t' << number(r.selectivity) << '\t' << to_string(r.match_case) << '\n';
    }
  };
  if (o.out.empty()) {
    body(out);
  } else {
    write_file(o.out, body);
  }
}

void cmd_evaluate(const Options& o) {
  const SequenceDatabase db = load_dataset(o.dataset);
  const Histogram h = load_histogram(o.catalog);
  const Workload w = load_queries(o.queries);
  EvaluationConfig cfg;
  cfg.estimator = estimator_config(o);
  const EvaluationReport report = evaluate(w, db, h, cfg);
  write_file(o.out, [&](std::ostream& s) { write_report(s, report, o.timing); });
}

void cmd_genq(const Options& o) {
  const SequenceDatabase db = load_dataset(o.dataset);
  WorkloadSpec spec;
  spec.count = o.count;
  spec.seed = o.seed;
  std::vector<LikePredicate> queries;
  switch (o.group) {
    case 1: queries = gen_group1(db, spec); break;
    case 2: queries = gen_group2(db, spec); break;
    default: queries = gen_group3(db, spec); break;
  }
  logger()->info("group {}: {} queries", o.group, queries.size());
  write_file(o.out, [&](std::ostream& s) { write_queries(s, o.group, queries); });
}

void cmd_synth(const Options& o) {
  const SequenceDatabase db = synth(o.synth);
  write_file(o.out, [&](std::ostream& s) { write_dataset(s, db); });
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Selectivity estimation for LIKE predicates with positional pattern histograms", "psph"};
  app.require_subcommand(1);

  auto* mine_cmd = app.add_subcommand("mine", "Mine frequent closed positional (or regular) patterns");
  mine_cmd->add_option("--input", o.input, "Dataset, one row per line")->required();
  mine_cmd->add_option("--minsup", o.minsup, "Row count N or percentage X%")->required();
  mine_cmd->add_option("--mode", o.mode)->check(CLI::IsMember({"positional", "regular"}, CLI::ignore_case));
  mine_cmd->add_option("--report", o.report, "closed, or frontier for every prefix the search keeps")
      ->check(CLI::IsMember({"closed", "frontier"}));
  mine_cmd->add_option("--max-literals", o.max_literals, "Cap on pattern length")->check(CLI::PositiveNumber);
  mine_cmd->add_flag("--no-backscan", o.no_backscan, "Disable BackScan pruning");
  mine_cmd->add_option("--out", o.out)->required();

  auto* build_cmd = app.add_subcommand("build", "Build a histogram catalog from a pattern file");
  build_cmd->add_option("--patterns", o.patterns)->required();
  build_cmd->add_option("--buckets", o.buckets)->check(CLI::PositiveNumber);
  auto* delta = build_cmd->add_option("--rpe-delta", o.rpe_delta, "Redundancy threshold")->check(CLI::NonNegativeNumber);
  build_cmd->add_flag("--no-rpe", o.no_rpe, "Keep redundant patterns")->excludes(delta);
  build_cmd->add_option("--t-percent", o.t_percent, "No-match fraction stored in the catalog")
      ->check(CLI::Range(0.0, 100.0));
  build_cmd->add_option("--out", o.out)->required();

  auto add_estimator_flags = [&](CLI::App* cmd) {
    cmd->add_option("--epsilon", o.epsilon, "Partition length slack")->check(CLI::NonNegativeNumber);
    cmd->add_option("--t-percent", o.t_override, "Override the catalog's no-match fraction")
        ->check(CLI::Range(0.0, 100.0));
    cmd->add_flag("--no-partition", o.no_partition, "Disable partitioned matching");
    cmd->add_flag("--regular", o.relax, "Catalog holds regular patterns: match predicates in regular form");
  };

  auto* est_cmd = app.add_subcommand("estimate", "Estimate predicate selectivity from a catalog");
  est_cmd->add_option("--catalog", o.catalog)->required();
  auto* single = est_cmd->add_option("--pattern", o.pattern, "One LIKE predicate");
  auto* many = est_cmd->add_option("--queries", o.queries, "Query file");
  single->excludes(many);
  est_cmd->add_option("--out", o.out, "Write to a file instead of stdout");
  add_estimator_flags(est_cmd);

  auto* eval_cmd = app.add_subcommand("evaluate", "Compare estimates with true selectivities");
  eval_cmd->add_option("--dataset", o.dataset)->required();
  eval_cmd->add_option("--catalog", o.catalog)->required();
  eval_cmd->add_option("--queries", o.queries)->required();
  eval_cmd->add_option("--out", o.out)->required();
  eval_cmd->add_flag("--timing", o.timing, "Append mean estimation time per group");
  add_estimator_flags(eval_cmd);

  auto* genq_cmd = app.add_subcommand("genq", "Generate a query workload");
  genq_cmd->add_option("--dataset", o.dataset)->required();
  genq_cmd->add_option("--group", o.group)->required()->check(CLI::IsMember({1, 2, 3}));
  genq_cmd->add_option("--count", o.count);
  genq_cmd->add_option("--seed", o.seed);
  genq_cmd->add_option("--out", o.out)->required();

  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic dataset");
  synth_cmd->add_option("--rows", o.synth.rows)->check(CLI::PositiveNumber);
  synth_cmd->add_option("--alphabet", o.synth.alphabet_size)->check(CLI::Range(1, 52));
  synth_cmd->add_option("--min-len", o.synth.min_length)->check(CLI::PositiveNumber);
  synth_cmd->add_option("--max-len", o.synth.max_length)->check(CLI::PositiveNumber);
  synth_cmd->add_option("--vocabulary", o.synth.vocabulary)->check(CLI::PositiveNumber);
  synth_cmd->add_option("--word-skew", o.synth.zipf_exponent, "Zipf exponent of word choice")
      ->check(CLI::NonNegativeNumber);
  synth_cmd->add_option("--letter-skew", o.synth.letter_exponent, "Zipf exponent of letters")
      ->check(CLI::NonNegativeNumber);
  synth_cmd->add_option("--seed", o.synth.seed);
  synth_cmd->add_option("--out", o.out)->required();

  try {
    app.parse(argc, argv);
    if (est_cmd->parsed() && o.pattern.empty() && o.queries.empty()) {
      throw CLI::RequiredError("--pattern or --queries");
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (mine_cmd->parsed()) cmd_mine(o);
    if (build_cmd->parsed()) cmd_build(o);
    if (est_cmd->parsed()) cmd_estimate(o, out);
    if (eval_cmd->parsed()) cmd_evaluate(o);
    if (genq_cmd->parsed()) cmd_genq(o);
    if (synth_cmd->parsed()) cmd_synth(o);
  } catch (const std::exception& e) {
    err << "psph: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace psph::cli
