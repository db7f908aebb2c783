//
// Copyright 2026 The rsmiles Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RSMILES_DATAIO_H_
#define RSMILES_DATAIO_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rsmiles/align.h"
#include "rsmiles/molgraph.h"

namespace rsmiles {

enum class InputFormat {
  kLines,  // one reaction SMILES per line, extra whitespace fields ignored
  kCsv,    // header-driven: id, class and a reaction column
};

std::optional<InputFormat> parse_format(std::string_view name);

struct RawRecord {
  std::size_t line_no = 0;
  std::string reaction_smiles;
  std::optional<std::string> class_label;
  std::optional<std::string> id;
};

/// Throws DataError(kIo) when the file cannot be read and DataError(kFormat)
/// with the 1-based line number for rows without exactly two '>' outside
/// bracket atoms or a CSV header without a reaction column.
std::vector<RawRecord> read_dataset(const std::filesystem::path &path,
                                    InputFormat format);
std::vector<RawRecord> read_dataset_text(std::string_view text,
                                         InputFormat format);

struct CleanReport {
  std::size_t input_records = 0;
  std::size_t kept = 0;
  std::size_t duplicated_multiproduct = 0;
  std::size_t dropped_no_product = 0;
  std::size_t dropped_single_ion = 0;
  std::size_t dropped_parse_error = 0;

  friend bool operator==(const CleanReport &, const CleanReport &) = default;
};

struct CleanOptions {
  /// Merge reagents into the reactants.
  bool mixed = false;
  int threads = 1;
};

struct CleanResult {
  std::vector<Reaction> reactions;
  CleanReport report;
};

/// One reaction per product fragment. Records are dropped when a segment
/// fails to parse, there is no product, or the reactant side is a single
/// charged heavy atom. Reactant and reagent sides are split into fragments.
CleanResult clean(const std::vector<RawRecord> &records,
                  const CleanOptions &opts = {});

/// Reaction SMILES with atom maps and explicit hydrogen counts.
std::string reaction_smiles(const Reaction &rxn);

std::string clean_report_json(const CleanReport &r);

/// Space-separated tokens of source and target, one pair per line, LF line
/// ends. Throws DataError(kIo).
void write_pairs(const std::vector<AlignedPair> &pairs,
                 const std::filesystem::path &src_path,
                 const std::filesystem::path &tgt_path);

std::vector<std::string> read_lines(const std::filesystem::path &path);
void write_text(const std::filesystem::path &path, std::string_view text);

}  // namespace rsmiles

#endif  // RSMILES_DATAIO_H_
