//
// Copyright 2026 The rsmiles Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "rsmiles/augment.h"

#include <cmath>
#include <set>
#include <span>

#include "rsmiles/error.h"
#include "rsmiles/random.h"

namespace rsmiles {

std::vector<AlignedPair> augment_training(const Reaction &rxn,
                                          const AugmentConfig &cfg) {
  if (cfg.factor < 1)
    throw ConfigError("augmentation factor must be >= 1");

  const std::vector<int> candidates = root_candidates(rxn, cfg.task);
  std::vector<int> rest(candidates.begin() + 1, candidates.end());
  Rng rng(cfg.seed);
  shuffle(std::span<int>(rest), rng);

  std::vector<AlignedPair> out;
  out.reserve(cfg.factor);
  for (int k = 0; k < cfg.factor; ++k) {
    int root = 0;
    if (k == 0) {
      root = candidates.front();
    } else if (k - 1 < static_cast<int>(rest.size())) {
      root = rest[k - 1];
    } else {
      root = candidates[uniform_below(rng, candidates.size())];
    }
    AlignedPair pair = align(rxn, cfg.task, root);
    pair.aug_index = k;
    pair.seed = cfg.seed;
    out.push_back(std::move(pair));
  }
  return out;
}

std::vector<std::string> augment_test(const Molecule &product,
                                      const AugmentConfig &cfg) {
  if (cfg.factor < 1)
    throw ConfigError("augmentation factor must be >= 1");

  std::vector<std::string> out { write_canonical(product) };
  if (cfg.factor == 1 || product.empty())
    return std::vector<std::string>(cfg.factor, out.front());

  std::set<std::string> seen(out.begin(), out.end());
  for (std::string &s: enumerate_random(product, cfg.factor * 32, cfg.seed)) {
    if (static_cast<int>(out.size()) == cfg.factor)
      break;
    if (seen.insert(s).second)
      out.push_back(std::move(s));
  }
  const std::size_t distinct = out.size();
  for (std::size_t i = 0; static_cast<int>(out.size()) < cfg.factor; ++i)
    out.push_back(out[i % distinct]);
  return out;
}

std::vector<std::string> build_vocabulary(const std::vector<TokenSeq> &lines,
                                          const std::string &unknown_token) {
  std::set<std::string> vocab;
  for (const TokenSeq &line: lines)
    vocab.insert(line.tokens.begin(), line.tokens.end());
  vocab.erase(unknown_token);
  return { vocab.begin(), vocab.end() };
}

std::vector<MaskedLine> mask_corpus(const std::vector<TokenSeq> &lines,
                                    const MaskConfig &cfg) {
  if (cfg.mask_rate < 0 || cfg.mask_rate > 1)
    throw ConfigError("mask rate must lie in [0, 1]");
  if (cfg.unknown_rate < 0 || cfg.random_rate < 0 || cfg.keep_rate < 0
      || std::abs(cfg.unknown_rate + cfg.random_rate + cfg.keep_rate - 1.0)
             > 1e-9)
    throw ConfigError("unknown, random and keep rates must sum to 1");

  const std::vector<std::string> vocab =
      build_vocabulary(lines, cfg.unknown_token);
  if (vocab.empty())
    throw ConfigError("empty vocabulary");

  std::vector<MaskedLine> out(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    Rng rng(record_seed(cfg.seed, i));
    MaskedLine &ml = out[i];
    ml.tokens = lines[i];
    for (std::size_t p = 0; p < ml.tokens.tokens.size(); ++p) {
      if (!(uniform01(rng) < cfg.mask_rate))
        continue;
      std::string &tok = ml.tokens.tokens[p];
      ml.positions.push_back(static_cast<int>(p));
      ml.originals.push_back(tok);
      const double u = uniform01(rng);
      if (u < cfg.unknown_rate)
        tok = cfg.unknown_token;
      else if (u < cfg.unknown_rate + cfg.random_rate)
        tok = vocab[uniform_below(rng, vocab.size())];
    }
  }
  return out;
}

}  // namespace rsmiles
