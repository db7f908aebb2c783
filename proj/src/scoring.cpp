//
// Copyright 2026 The rsmiles Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "rsmiles/scoring.h"

#include <algorithm>
#include <map>

#include "rsmiles/error.h"
#include "rsmiles/smiles.h"

namespace rsmiles {

double score_of_rank(int k, double alpha) {
  return 1.0 / (1.0 + alpha * static_cast<double>(k - 1));
}

std::optional<std::string> canonicalize(std::string_view smiles) {
  if (smiles.empty())
    return std::nullopt;
  try {
    Molecule m = parse(smiles);
    if (m.empty())
      return std::nullopt;
    return write_canonical(m);
  } catch (const Error &) {
    return std::nullopt;
  }
}

std::vector<ScoredCandidate> aggregate(const BeamOutputs &outputs,
                                       const ScoringConfig &cfg) {
  if (cfg.alpha < 0)
    throw ConfigError("alpha must be >= 0");

  // Per-candidate contributions are summed in sorted order so that the
  // result does not depend on the order of the variants.
  std::map<std::string, std::vector<double>> parts;
  std::map<std::string, std::optional<std::string>, std::less<>> cache;
  for (const auto &variant: outputs.variants) {
    const int n = outputs.topk > 0
                      ? std::min<int>(outputs.topk,
                                      static_cast<int>(variant.size()))
                      : static_cast<int>(variant.size());
    for (int k = 1; k <= n; ++k) {
      const std::string &pred = variant[k - 1];
      auto it = cache.find(pred);
      if (it == cache.end())
        it = cache.emplace(pred, canonicalize(pred)).first;
      if (it->second)
        parts[*it->second].push_back(score_of_rank(k, cfg.alpha));
    }
  }

  std::vector<ScoredCandidate> out;
  out.reserve(parts.size());
  for (auto &[canon, scores]: parts) {
    std::sort(scores.begin(), scores.end());
    double sum = 0;
    for (double s: scores)
      sum += s;
    out.push_back({ canon, sum, 0 });
  }
  std::sort(out.begin(), out.end(),
            [](const ScoredCandidate &x, const ScoredCandidate &y) {
              if (x.score != y.score)
                return x.score > y.score;
              return x.canonical < y.canonical;
            });
  if (cfg.topk_out > 0 && static_cast<int>(out.size()) > cfg.topk_out)
    out.resize(cfg.topk_out);
  for (int i = 0; i < static_cast<int>(out.size()); ++i)
    out[i].final_rank = i + 1;
  return out;
}

std::vector<BeamOutputs> split_predictions(
    const std::vector<std::string> &lines, int augmentation, int beam,
    int topk) {
  if (augmentation < 1 || beam < 1)
    throw ConfigError("augmentation and beam must be >= 1");
  const std::size_t block = static_cast<std::size_t>(augmentation) * beam;
  if (lines.size() % block != 0) {
    throw ConfigError("prediction count " + std::to_string(lines.size())
                      + " is not a multiple of augmentation x beam = "
                      + std::to_string(block));
  }
  std::vector<BeamOutputs> out;
  for (std::size_t start = 0; start < lines.size(); start += block) {
    BeamOutputs rec;
    rec.beam = beam;
    rec.topk = topk;
    for (int v = 0; v < augmentation; ++v) {
      auto first = lines.begin() + static_cast<std::ptrdiff_t>(start)
                   + static_cast<std::ptrdiff_t>(v) * beam;
      rec.variants.emplace_back(first, first + beam);
    }
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace rsmiles
