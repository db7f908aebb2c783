//
// Copyright 2026 The rsmiles Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "rsmiles/cli.h"

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "rsmiles/align.h"
#include "rsmiles/augment.h"
#include "rsmiles/dataio.h"
#include "rsmiles/error.h"
#include "rsmiles/metrics.h"
#include "rsmiles/parallel.h"
#include "rsmiles/scoring.h"
#include "rsmiles/smiles.h"

namespace fs = std::filesystem;

namespace rsmiles {
namespace {
constexpr std::uint64_t kDefaultSeed = 42;

struct Common {
  int threads = 0;
  std::string format = "auto";
  bool mixed = false;
};

int effective_threads(int flag) {
  if (flag > 0)
    return flag;
  if (const char *env = std::getenv("RSMILES_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0)
        return n;
    } catch (const std::exception &) {
    }
    throw ConfigError(std::string("invalid RSMILES_THREADS value '") + env
                      + "'");
  }
  return 1;
}

InputFormat resolve_format(const std::string &flag, const fs::path &input) {
  if (flag == "auto") {
    std::string ext = input.extension().string();
    return ext == ".csv" || ext == ".CSV" ? InputFormat::kCsv
                                          : InputFormat::kLines;
  }
  auto f = parse_format(flag);
  if (!f)
    throw ConfigError("unknown format '" + flag + "'");
  return *f;
}

std::string joined_tokens(std::string_view line) {
  std::string out;
  for (char c: line) {
    if (c != ' ' && c != '\t')
      out += c;
  }
  return out;
}

void log_config(std::string_view cmd, const std::vector<std::pair<std::string,
                                                        std::string>> &kv) {
  std::string line = fmt::format("rsmiles {}:", cmd);
  for (const auto &[k, v]: kv)
    line += fmt::format(" {}={}", k, v);
  std::fprintf(stderr, "%s\n", line.c_str());
}

void emit(const std::string &path, const std::string &text) {
  if (path.empty() || path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    std::fflush(stdout);
  } else {
    write_text(path, text);
  }
}

CleanResult load(const fs::path &input, const Common &c, int threads) {
  if (!fs::exists(input))
    throw DataError(DataError::Kind::kIo, "input not found: " + input.string());
  const InputFormat format = resolve_format(c.format, input);
  return clean(read_dataset(input, format), { c.mixed, threads });
}

// ---- align ----------------------------------------------------------------

struct AlignArgs {
  std::string input;
  std::string output;
  std::string task = "p2r";
  int factor = 1;
  std::uint64_t seed = kDefaultSeed;
  std::optional<int> root_map;
};

int cmd_align(const AlignArgs &a, const Common &c) {
  const int threads = effective_threads(c.threads);
  const auto task = parse_task(a.task);
  if (!task)
    throw ConfigError("unknown task '" + a.task + "'");
  if (a.factor < 1)
    throw ConfigError("--factor must be >= 1");
  if (a.root_map && a.factor != 1)
    throw ConfigError("--root-map requires --factor 1");
  log_config("align", { { "input", a.input },
                        { "output", a.output },
                        { "task", std::string(task_name(*task)) },
                        { "factor", std::to_string(a.factor) },
                        { "seed", std::to_string(a.seed) },
                        { "root_map", a.root_map ? std::to_string(*a.root_map)
                                                 : "default" },
                        { "format", c.format },
                        { "mixed", c.mixed ? "true" : "false" },
                        { "threads", std::to_string(threads) } });

  const CleanResult data = load(a.input, c, threads);
  struct Slot {
    std::vector<AlignedPair> pairs;
    std::string error;
  };
  std::vector<Slot> slots(data.reactions.size());
  parallel_for(slots.size(), threads, [&](std::size_t i) {
    try {
      if (a.root_map) {
        slots[i].pairs.push_back(align(data.reactions[i], *task, *a.root_map));
      } else {
        AugmentConfig cfg { a.factor, record_seed(a.seed, i), *task };
        slots[i].pairs = augment_training(data.reactions[i], cfg);
      }
    } catch (const Error &e) {
      slots[i].error = e.what();
    }
  });

  std::vector<AlignedPair> pairs;
  std::size_t failed = 0;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i].error.empty()) {
      ++failed;
      std::fprintf(stderr, "record %zu: %s\n", i, slots[i].error.c_str());
      continue;
    }
    for (AlignedPair &p: slots[i].pairs)
      pairs.push_back(std::move(p));
  }

  const fs::path out(a.output);
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec)
    throw DataError(DataError::Kind::kIo,
                    "cannot create " + out.string() + ": " + ec.message());
  write_pairs(pairs, out / "src.txt", out / "tgt.txt");

  nlohmann::ordered_json report =
      nlohmann::ordered_json::parse(clean_report_json(data.report));
  report["align_failed"] = failed;
  report["pairs"] = pairs.size();
  write_text(out / "clean_report.json", report.dump(2) + "\n");
  std::fprintf(stderr, "wrote %zu pairs, %zu alignment failures\n",
               pairs.size(), failed);
  return kExitOk;
}

// ---- score ----------------------------------------------------------------

struct ScoreArgs {
  std::string input;
  std::string output;
  int augmentation = 1;
  int beam = 1;
  int topk = 0;
  int topk_out = 10;
  double alpha = 1.0;
};

int cmd_score(const ScoreArgs &a) {
  log_config("score", { { "input", a.input },
                        { "output", a.output.empty() ? "-" : a.output },
                        { "augmentation", std::to_string(a.augmentation) },
                        { "beam", std::to_string(a.beam) },
                        { "topk", std::to_string(a.topk) },
                        { "topk_out", std::to_string(a.topk_out) },
                        { "alpha", fmt::format("{}", a.alpha) } });
  if (!fs::exists(a.input))
    throw DataError(DataError::Kind::kIo, "input not found: " + a.input);
  std::vector<std::string> lines;
  for (const std::string &l: read_lines(a.input))
    lines.push_back(joined_tokens(l));

  std::vector<BeamOutputs> records;
  try {
    records = split_predictions(lines, a.augmentation, a.beam, a.topk);
  } catch (const ConfigError &e) {
    throw DataError(DataError::Kind::kFormat, e.what());
  }
  const ScoringConfig cfg { a.alpha, a.topk_out };
  std::string out = "rank\tscore\tcanonical_smiles\n";
  for (std::size_t r = 0; r < records.size(); ++r) {
    if (r > 0)
      out += "\n";
    for (const ScoredCandidate &c: aggregate(records[r], cfg))
      out += fmt::format("{}\t{}\t{}\n", c.final_rank, c.score, c.canonical);
  }
  emit(a.output, out);
  return kExitOk;
}

// ---- stats ----------------------------------------------------------------

struct StatsArgs {
  std::string input;
  std::string output;
  std::string json;
  int factor = 1;
  std::uint64_t seed = kDefaultSeed;
  bool token_level = false;
};

int cmd_stats(const StatsArgs &a, const Common &c) {
  const int threads = effective_threads(c.threads);
  log_config("stats", { { "input", a.input },
                        { "factor", std::to_string(a.factor) },
                        { "seed", std::to_string(a.seed) },
                        { "token_level", a.token_level ? "true" : "false" },
                        { "format", c.format },
                        { "mixed", c.mixed ? "true" : "false" },
                        { "threads", std::to_string(threads) } });
  const CleanResult data = load(a.input, c, threads);

  // Records that cannot be aligned are excluded from both means.
  std::vector<char> ok(data.reactions.size(), 1);
  parallel_for(ok.size(), threads, [&](std::size_t i) {
    try {
      root_candidates(data.reactions[i], Task::kP2R);
    } catch (const Error &) {
      ok[i] = 0;
    }
  });
  std::vector<Reaction> usable;
  for (std::size_t i = 0; i < ok.size(); ++i) {
    if (ok[i])
      usable.push_back(data.reactions[i]);
  }
  if (usable.size() != data.reactions.size()) {
    std::fprintf(stderr, "skipped %zu unalignable records\n",
                 data.reactions.size() - usable.size());
  }

  const DatasetStats s =
      table2_stats(usable, { a.factor, a.seed, a.token_level, threads });
  emit(a.output, stats_tsv(s));
  if (!a.json.empty())
    write_text(a.json, stats_json(s));
  return kExitOk;
}

// ---- eval -----------------------------------------------------------------

struct EvalArgs {
  std::string predictions;
  std::string truth;
  std::string dataset;
  std::string output;
  std::string json;
  int n_best = 10;
  std::vector<int> ks { 1, 3, 5, 10 };
};

int cmd_eval(const EvalArgs &a, const Common &c) {
  const int threads = effective_threads(c.threads);
  log_config("eval", { { "predictions", a.predictions },
                       { "truth", a.truth.empty() ? "-" : a.truth },
                       { "dataset", a.dataset.empty() ? "-" : a.dataset },
                       { "n_best", std::to_string(a.n_best) },
                       { "threads", std::to_string(threads) } });
  if (a.truth.empty() == a.dataset.empty())
    throw ConfigError("exactly one of --truth and --dataset is required");
  if (a.n_best < 1)
    throw ConfigError("--n-best must be >= 1");

  std::vector<Reaction> rxns;
  std::vector<AlignedPair> pairs;
  std::vector<std::string> truths;
  if (!a.dataset.empty()) {
    CleanResult data = load(a.dataset, c, threads);
    pairs.resize(data.reactions.size());
    parallel_for(pairs.size(), threads, [&](std::size_t i) {
      pairs[i] = align(data.reactions[i], Task::kP2R);
    });
    rxns = std::move(data.reactions);
    for (const AlignedPair &p: pairs)
      truths.push_back(p.target);
  } else {
    if (!fs::exists(a.truth))
      throw DataError(DataError::Kind::kIo, "input not found: " + a.truth);
    for (const std::string &l: read_lines(a.truth))
      truths.push_back(joined_tokens(l));
  }

  if (!fs::exists(a.predictions))
    throw DataError(DataError::Kind::kIo, "input not found: " + a.predictions);
  const std::vector<std::string> lines = read_lines(a.predictions);
  if (lines.size() != truths.size() * static_cast<std::size_t>(a.n_best)) {
    throw DataError(DataError::Kind::kFormat,
                    fmt::format("{} prediction lines for {} records x n-best "
                                "{}",
                                lines.size(), truths.size(), a.n_best));
  }
  std::vector<std::vector<std::string>> preds(truths.size());
  for (std::size_t i = 0; i < lines.size(); ++i)
    preds[i / a.n_best].push_back(joined_tokens(lines[i]));

  const std::vector<double> top = topk_accuracy(preds, truths, a.ks);
  const std::vector<double> maxfrag = maxfrag_accuracy(preds, truths, a.ks);
  std::string out = "metric\tk\taccuracy\n";
  nlohmann::ordered_json j;
  j["n_records"] = truths.size();
  for (std::size_t i = 0; i < a.ks.size(); ++i) {
    out += fmt::format("topk\t{}\t{:.4f}\n", a.ks[i], top[i]);
    j["topk"]["top" + std::to_string(a.ks[i])] = top[i];
  }
  for (std::size_t i = 0; i < a.ks.size(); ++i) {
    out += fmt::format("maxfrag\t{}\t{:.4f}\n", a.ks[i], maxfrag[i]);
    j["maxfrag"]["top" + std::to_string(a.ks[i])] = maxfrag[i];
  }
  if (!rxns.empty()) {
    const CohortReport cohort = cohort_report(rxns, pairs, preds, a.ks);
    out += "\n" + cohort_tsv(cohort);
    j["cohorts"] = nlohmann::ordered_json::parse(cohort_json(cohort));
  }
  emit(a.output, out);
  if (!a.json.empty())
    write_text(a.json, j.dump(2) + "\n");
  return kExitOk;
}

// ---- mask -----------------------------------------------------------------

struct MaskArgs {
  std::string input;
  std::string output;
  std::string labels;
  double rate = 0.15;
  std::string unknown = "<unk>";
  std::uint64_t seed = kDefaultSeed;
};

int cmd_mask(const MaskArgs &a) {
  const std::string labels =
      a.labels.empty() ? a.output + ".labels.tsv" : a.labels;
  log_config("mask", { { "input", a.input },
                       { "output", a.output },
                       { "labels", labels },
                       { "rate", fmt::format("{}", a.rate) },
                       { "unknown", a.unknown },
                       { "seed", std::to_string(a.seed) } });
  if (!fs::exists(a.input))
    throw DataError(DataError::Kind::kIo, "input not found: " + a.input);
  std::vector<TokenSeq> lines;
  for (const std::string &l: read_lines(a.input))
    lines.push_back(split_spaced(l));

  MaskConfig cfg;
  cfg.mask_rate = a.rate;
  cfg.unknown_token = a.unknown;
  cfg.seed = a.seed;
  const std::vector<MaskedLine> masked = mask_corpus(lines, cfg);

  std::string text, sidecar;
  for (std::size_t i = 0; i < masked.size(); ++i) {
    text += masked[i].tokens.spaced() + "\n";
    for (std::size_t k = 0; k < masked[i].positions.size(); ++k) {
      sidecar += fmt::format("{}\t{}\t{}\n", i, masked[i].positions[k],
                             masked[i].originals[k]);
    }
  }
  write_text(a.output, text);
  write_text(labels, sidecar);
  return kExitOk;
}

void add_common(CLI::App *cmd, Common &c, bool dataset) {
  cmd->add_option("--threads", c.threads,
                  "Worker threads (default: $RSMILES_THREADS or 1)")
      ->check(CLI::NonNegativeNumber);
  if (dataset) {
    cmd->add_option("--format", c.format, "Input format: auto, lines, csv");
    cmd->add_flag("--mixed", c.mixed, "Merge reagents into reactants");
  }
}
}  // namespace

int run_cli(int argc, char **argv) {
  CLI::App app { "Root-aligned SMILES toolkit", "rsmiles" };
  app.require_subcommand(1);

  Common common;

  AlignArgs align_args;
  auto *align_cmd = app.add_subcommand(
      "align", "Clean, augment and align a reaction dataset");
  align_cmd->add_option("input", align_args.input, "Reaction dataset")
      ->required();
  align_cmd->add_option("output", align_args.output, "Output directory")
      ->required();
  align_cmd->add_option("--task", align_args.task, "p2r, p2s, s2r or r2p");
  align_cmd->add_option("--factor", align_args.factor,
                        "Augmentation factor");
  align_cmd->add_option("--seed", align_args.seed, "Random seed (default 42)");
  align_cmd->add_option("--root-map", align_args.root_map,
                        "Force the root atom map number (factor 1 only)");
  add_common(align_cmd, common, true);

  ScoreArgs score_args;
  auto *score_cmd = app.add_subcommand(
      "score", "Aggregate augmented beam-search outputs");
  score_cmd->add_option("input", score_args.input,
                        "Predictions, variant-major, one per line")
      ->required();
  score_cmd->add_option("--augmentation", score_args.augmentation,
                        "Input variants per record")
      ->required();
  score_cmd->add_option("--beam", score_args.beam,
                        "Predictions per variant")
      ->required();
  score_cmd->add_option("--topk", score_args.topk,
                        "Predictions per variant that are scored (0 = all)");
  score_cmd->add_option("--topk-out", score_args.topk_out,
                        "Candidates listed per record (0 = all)");
  score_cmd->add_option("--alpha", score_args.alpha, "Rank weight")
      ->check(CLI::NonNegativeNumber);
  score_cmd->add_option("-o,--output", score_args.output, "Output TSV");

  StatsArgs stats_args;
  auto *stats_cmd = app.add_subcommand(
      "stats", "Edit-distance statistics with and without alignment");
  stats_cmd->add_option("input", stats_args.input, "Reaction dataset")
      ->required();
  stats_cmd->add_option("--factor", stats_args.factor,
                        "Augmentation factor");
  stats_cmd->add_option("--seed", stats_args.seed, "Random seed (default 42)");
  stats_cmd->add_flag("--token-level", stats_args.token_level,
                      "Measure distances in tokens instead of characters");
  stats_cmd->add_option("-o,--output", stats_args.output, "Output TSV");
  stats_cmd->add_option("--json", stats_args.json, "Also write JSON here");
  add_common(stats_cmd, common, true);

  EvalArgs eval_args;
  auto *eval_cmd = app.add_subcommand(
      "eval", "Top-k and MaxFrag accuracy, optionally per reaction class");
  eval_cmd->add_option("predictions", eval_args.predictions,
                       "Ranked predictions, n-best lines per record")
      ->required();
  eval_cmd->add_option("--truth", eval_args.truth,
                       "Ground truth, one per line");
  eval_cmd->add_option("--dataset", eval_args.dataset,
                       "Reaction dataset; truths are its P2R targets");
  eval_cmd->add_option("--n-best", eval_args.n_best,
                       "Predictions per record");
  eval_cmd->add_option("--k", eval_args.ks, "Cutoffs")->delimiter(',');
  eval_cmd->add_option("-o,--output", eval_args.output, "Output TSV");
  eval_cmd->add_option("--json", eval_args.json, "Also write JSON here");
  add_common(eval_cmd, common, true);

  MaskArgs mask_args;
  auto *mask_cmd = app.add_subcommand(
      "mask", "Masked-token corpus for pretraining");
  mask_cmd->add_option("input", mask_args.input, "Token file")->required();
  mask_cmd->add_option("output", mask_args.output, "Masked token file")
      ->required();
  mask_cmd->add_option("--labels", mask_args.labels,
                       "Label sidecar (default: <output>.labels.tsv)");
  mask_cmd->add_option("--rate", mask_args.rate, "Mask probability")
      ->check(CLI::Range(0.0, 1.0));
  mask_cmd->add_option("--unk", mask_args.unknown, "Unknown token");
  mask_cmd->add_option("--seed", mask_args.seed, "Random seed (default 42)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (align_cmd->parsed())
      return cmd_align(align_args, common);
    if (score_cmd->parsed())
      return cmd_score(score_args);
    if (stats_cmd->parsed())
      return cmd_stats(stats_args, common);
    if (eval_cmd->parsed())
      return cmd_eval(eval_args, common);
    if (mask_cmd->parsed())
      return cmd_mask(mask_args);
  } catch (const DataError &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitData;
  } catch (const ConfigError &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception &e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace rsmiles
