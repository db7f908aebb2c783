//
// Copyright 2026 The rsmiles Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RSMILES_TESTS_FIXTURES_H_
#define RSMILES_TESTS_FIXTURES_H_

#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "rsmiles/align.h"
#include "rsmiles/dataio.h"
#include "rsmiles/molgraph.h"
#include "rsmiles/smiles.h"

namespace rsmiles {

inline void PrintTo(const AlignedPair &p, std::ostream *os) {
  *os << task_name(p.task) << " root " << p.root_map << " aug "
      << p.aug_index << ": " << p.source << " >> " << p.target;
}

}  // namespace rsmiles

namespace rsmiles::testing {

inline std::filesystem::path data_dir() {
  return RSMILES_TEST_DATA;
}

// Acryloyl chloride + 2,2,2-trichloroethanol, atom-mapped.
inline constexpr std::string_view kEsterReaction =
    "Cl[C:1]([CH:2]=[CH2:3])=[O:4].[OH:5][CH2:6][C:7]([Cl:8])([Cl:9])[Cl:10]"
    ">>[C:1]([CH:2]=[CH2:3])(=[O:4])[O:5][CH2:6][C:7]([Cl:8])([Cl:9])"
    "[Cl:10]";

// Cyclic hemiacetal opening to the hydroxy aldehyde.
inline constexpr std::string_view kRingReaction =
    "[CH2:1]1[CH:2]([NH2:3])[CH:4]([OH:5])[O:6][CH2:7]1"
    ">>[OH:6][CH2:7][CH2:1][CH:2]([NH2:3])[CH:4]=[O:5]";

inline Reaction reaction(std::string_view text, bool mixed = false) {
  const CleanResult r = clean(
      read_dataset_text(std::string(text) + "\n", InputFormat::kLines),
      { mixed, 1 });
  return r.reactions.at(0);
}

inline std::vector<std::string> corpus() {
  std::vector<std::string> out;
  std::ifstream in(data_dir() / "molecules.smi");
  for (std::string line; std::getline(in, line);) {
    if (!line.empty())
      out.push_back(line);
  }
  return out;
}

inline std::vector<Reaction> sample_reactions() {
  return clean(read_dataset(data_dir() / "uspto_sample_1k.csv",
                            InputFormat::kCsv))
      .reactions;
}

}  // namespace rsmiles::testing

#endif  // RSMILES_TESTS_FIXTURES_H_
