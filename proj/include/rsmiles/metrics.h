//
// Copyright 2026 The rsmiles Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RSMILES_METRICS_H_
#define RSMILES_METRICS_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rsmiles/align.h"
#include "rsmiles/molgraph.h"

namespace rsmiles {

/// Levenshtein distance over characters.
std::size_t edit_distance(std::string_view a, std::string_view b);

/// Levenshtein distance over SMILES tokens.
std::size_t token_edit_distance(const std::vector<std::string> &a,
                                const std::vector<std::string> &b);

struct DatasetStats {
  std::size_t n_records = 0;
  int factor = 1;
  double mean_product_len = 0;
  double mean_reactant_len = 0;
  double mean_edit_distance_plain = 0;
  double mean_edit_distance_aligned = 0;

  /// Relative reduction of the aligned over the plain mean, in [0, 1] when
  /// alignment helps.
  double reduction() const;
};

struct StatsOptions {
  int factor = 1;
  std::uint64_t seed = 0;
  bool token_level = false;
  int threads = 1;
};

/// Unaligned distances compare the canonical product and reactant strings
/// for the first variant and independently randomized strings for the
/// others; aligned distances use the P2R pairs of augment_training. Lengths
/// are those of the canonical strings. Records are summed in index order.
DatasetStats table2_stats(const std::vector<Reaction> &rxns,
                          const StatsOptions &opts);

/// Fraction of records whose truth is among the first k canonicalized
/// predictions, for each k. Fragment order does not matter. Throws
/// ConfigError when the record counts differ.
std::vector<double> topk_accuracy(
    const std::vector<std::vector<std::string>> &predictions,
    const std::vector<std::string> &truths, const std::vector<int> &ks);

/// Like topk_accuracy but only the largest fragment has to match.
std::vector<double> maxfrag_accuracy(
    const std::vector<std::vector<std::string>> &predictions,
    const std::vector<std::string> &truths, const std::vector<int> &ks);

/// Canonical string of the largest fragment, empty when unparseable.
std::string largest_fragment(std::string_view smiles);

enum class RingKind : std::uint8_t {
  kNonRing,
  kRingOpening,
  kRingForming,
};

std::string_view ring_kind_name(RingKind kind);

struct ReactionClass {
  RingKind kind = RingKind::kNonRing;
  bool chirality = false;
  int new_atom_count = 0;

  friend bool operator==(const ReactionClass &,
                         const ReactionClass &) = default;
};

/// Ring forming: a broken bond lies on a product ring. Ring opening: a
/// formed bond lies on a ring of its reactant. When both occur the kind with
/// more bonds wins, ring forming on a tie.
ReactionClass classify_reaction(const Reaction &rxn);

/// Bin label used for new-atom counts: "0".."3", "4-5", "6-10", "11+".
std::string new_atom_bin(int count);

struct CohortRow {
  std::string group;   // "all", "kind", "chirality" or "new_atoms"
  std::string bucket;
  std::size_t count = 0;
  double mean_edit_distance = 0;
  std::vector<double> topk;  // empty when no predictions were given
};

struct CohortReport {
  std::vector<int> ks;
  std::vector<CohortRow> rows;
};

/// Mean pair edit distance and top-k accuracy per reaction class bucket.
/// Truths are the pair targets. `predictions` may be empty; otherwise it
/// needs one ranked list per record. Empty buckets are left out.
CohortReport cohort_report(
    const std::vector<Reaction> &rxns, const std::vector<AlignedPair> &pairs,
    const std::vector<std::vector<std::string>> &predictions,
    const std::vector<int> &ks);

std::string stats_tsv(const DatasetStats &s);
std::string stats_json(const DatasetStats &s);
std::string cohort_tsv(const CohortReport &r);
std::string cohort_json(const CohortReport &r);

}  // namespace rsmiles

#endif  // RSMILES_METRICS_H_
