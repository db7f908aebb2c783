//
// Copyright 2026 The rsmiles Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RSMILES_AUGMENT_H_
#define RSMILES_AUGMENT_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "rsmiles/align.h"
#include "rsmiles/molgraph.h"
#include "rsmiles/smiles.h"

namespace rsmiles {

struct AugmentConfig {
  int factor = 1;
  std::uint64_t seed = 0;
  Task task = Task::kP2R;
};

/// Seed used for record `index` of a corpus, so that records can be
/// processed in any order or in parallel with identical output.
inline std::uint64_t record_seed(std::uint64_t seed, std::size_t index) {
  return seed ^ static_cast<std::uint64_t>(index);
}

/// `cfg.factor` aligned pairs. The first uses the task's default root; the
/// others use the remaining candidate roots in random order, then roots
/// drawn with replacement once all have been used.
std::vector<AlignedPair> augment_training(const Reaction &rxn,
                                          const AugmentConfig &cfg);

/// `cfg.factor` SMILES of `product`: the canonical string first, then
/// distinct random enumerations. When the molecule has fewer distinct
/// spellings than requested the list is padded by cycling through them.
std::vector<std::string> augment_test(const Molecule &product,
                                      const AugmentConfig &cfg);

struct MaskConfig {
  double mask_rate = 0.15;
  double unknown_rate = 0.80;
  double random_rate = 0.10;
  double keep_rate = 0.10;
  std::string unknown_token = "<unk>";
  std::uint64_t seed = 0;
};

struct MaskedLine {
  TokenSeq tokens;
  std::vector<int> positions;
  std::vector<std::string> originals;
};

/// Sorted distinct tokens of the corpus, the unknown token excluded.
std::vector<std::string> build_vocabulary(const std::vector<TokenSeq> &lines,
                                          const std::string &unknown_token);

/// Selects each token independently with probability `mask_rate` and
/// replaces it by the unknown token, a uniformly drawn vocabulary token or
/// itself according to the three conditional rates. Line i uses
/// record_seed(cfg.seed, i). Throws ConfigError for inconsistent rates or an
/// empty vocabulary.
std::vector<MaskedLine> mask_corpus(const std::vector<TokenSeq> &lines,
                                    const MaskConfig &cfg);

}  // namespace rsmiles

#endif  // RSMILES_AUGMENT_H_
