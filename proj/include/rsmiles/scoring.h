//
// Copyright 2026 The rsmiles Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RSMILES_SCORING_H_
#define RSMILES_SCORING_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rsmiles {

/// Ranked predictions of one record: one list per augmented input variant.
struct BeamOutputs {
  std::vector<std::vector<std::string>> variants;
  int beam = 0;
  /// Predictions per variant that take part in scoring; 0 keeps all.
  int topk = 0;
};

struct ScoringConfig {
  double alpha = 1.0;
  /// Length of the returned list; 0 returns every candidate.
  int topk_out = 10;
};

struct ScoredCandidate {
  std::string canonical;
  double score = 0;
  int final_rank = 0;

  friend bool operator==(const ScoredCandidate &,
                         const ScoredCandidate &) = default;
};

/// 1 / (1 + alpha * (k - 1)) for the k-th prediction of a variant.
double score_of_rank(int k, double alpha);

/// Canonical form of a predicted SMILES, or nothing when it does not parse.
std::optional<std::string> canonicalize(std::string_view smiles);

/// Canonicalizes every prediction, sums the rank scores of equal canonical
/// forms over all variants and sorts by descending score, ties by canonical
/// string. Unparseable predictions score zero and are not listed.
std::vector<ScoredCandidate> aggregate(const BeamOutputs &outputs,
                                       const ScoringConfig &cfg);

/// Cuts a variant-major prediction stream (augmentation x beam lines per
/// record) into records. Throws ConfigError when the line count is not a
/// multiple of augmentation x beam.
std::vector<BeamOutputs> split_predictions(
    const std::vector<std::string> &lines, int augmentation, int beam,
    int topk = 0);

}  // namespace rsmiles

#endif  // RSMILES_SCORING_H_
