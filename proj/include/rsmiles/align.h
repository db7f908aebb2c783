//
// Copyright 2026 The rsmiles Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RSMILES_ALIGN_H_
#define RSMILES_ALIGN_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rsmiles/molgraph.h"

namespace rsmiles {

enum class Task : std::uint8_t {
  kP2R,  // product -> reactants (retrosynthesis)
  kP2S,  // product -> synthons
  kS2R,  // product + synthons -> reactants
  kR2P,  // reactants -> product (forward prediction)
};

std::string_view task_name(Task task);
/// Accepts "p2r", "p2s", "s2r", "r2p" in any case.
std::optional<Task> parse_task(std::string_view name);

struct AlignedPair {
  Task task = Task::kP2R;
  std::string source;
  std::string target;
  int root_map = 0;
  int aug_index = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const AlignedPair &, const AlignedPair &) = default;
};

struct SynthonSet {
  /// Product fragments left after deleting the broken bonds; map numbers
  /// kept. Atoms that lost a bond have their bracket hydrogen count cleared.
  std::vector<Molecule> synthons;
  std::vector<int> broken_bonds;
};

Molecule strip_atom_maps(const Molecule &m);

/// Index of the largest molecule: more heavy atoms, then the longer
/// canonical string, then the lexicographically smaller one. -1 if empty.
int largest_index(const std::vector<Molecule> &mols);

SynthonSet extract_synthons(const Reaction &rxn);

/// Product written from the atom mapped `root_map` (canonical neighbor
/// order); every reactant fragment is rooted at its mapped atom that comes
/// first in the product string and the fragments follow that same order.
/// Fragments sharing no map with the product are appended in canonical form.
AlignedPair align_p2r(const Reaction &rxn, int root_map);

/// Product rooted inside the largest synthon. Without `root_map` the root is
/// the lowest-ranked atom of the largest synthon.
AlignedPair align_p2s(const Reaction &rxn,
                      std::optional<int> root_map = std::nullopt);

/// Source is the P2S source and target separated by the split token.
AlignedPair align_s2r(const Reaction &rxn,
                      std::optional<int> root_map = std::nullopt);

/// Largest reactant first, rooted at `root_map`; the product is written from
/// the same mapped atom. Without `root_map` the lowest-ranked atom of the
/// largest reactant that also occurs in the product is used.
AlignedPair align_r2p(const Reaction &rxn,
                      std::optional<int> root_map = std::nullopt);

AlignedPair align(const Reaction &rxn, Task task,
                  std::optional<int> root_map = std::nullopt);

/// Map numbers usable as roots for `task`, default root first, the rest in
/// ascending map order.
std::vector<int> root_candidates(const Reaction &rxn, Task task);

}  // namespace rsmiles

#endif  // RSMILES_ALIGN_H_
