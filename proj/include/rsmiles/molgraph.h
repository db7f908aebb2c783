//
// Copyright 2026 The rsmiles Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RSMILES_MOLGRAPH_H_
#define RSMILES_MOLGRAPH_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rsmiles {

enum class Chirality : std::uint8_t {
  kNone,
  kAnticlockwise,  // @
  kClockwise,      // @@
};

enum class BondOrder : std::uint8_t {
  kSingle,
  kDouble,
  kTriple,
  kAromatic,
};

enum class BondStereo : std::uint8_t {
  kNone,
  kUp,    // "/" read from atom a towards atom b
  kDown,  // "\"
};

/// Atomic number of a capitalized element symbol, or 0 when unknown.
int atomic_number(std::string_view symbol);

/// Elements allowed in lowercase (aromatic) SMILES form.
bool aromatic_capable(std::string_view symbol);

/// The element is stored capitalized ("C", "Cl"); `aromatic` selects the
/// lowercase spelling. `explicit_h` is only set for bracket atoms; hydrogens
/// of organic-subset atoms are implied by valence and never materialized.
struct Atom {
  std::string element;
  int charge = 0;
  std::optional<int> isotope;
  bool aromatic = false;
  std::optional<int> explicit_h;
  Chirality chirality = Chirality::kNone;
  std::optional<int> map_num;

  bool is_hydrogen() const { return element == "H"; }

  friend bool operator==(const Atom &, const Atom &) = default;
};

struct Bond {
  int a;
  int b;
  BondOrder order = BondOrder::kSingle;
  BondStereo stereo = BondStereo::kNone;

  int other(int atom) const { return atom == a ? b : a; }

  friend bool operator==(const Bond &, const Bond &) = default;
};

struct Neighbor {
  int atom;
  int bond;
};

class Molecule {
public:
  Molecule() = default;

  /// Appends an atom and returns its index. Throws GraphError when the map
  /// number is < 1 or already used, or the aromatic flag is not allowed for
  /// the element.
  int add_atom(Atom atom);

  /// Throws GraphError on self loops, duplicate bonds or invalid indices.
  int add_bond(int a, int b, BondOrder order,
               BondStereo stereo = BondStereo::kNone);

  int num_atoms() const { return static_cast<int>(atoms_.size()); }
  int num_bonds() const { return static_cast<int>(bonds_.size()); }
  bool empty() const { return atoms_.empty(); }

  const Atom &atom(int i) const { return atoms_[i]; }
  const Bond &bond(int i) const { return bonds_[i]; }
  std::span<const Atom> atoms() const { return atoms_; }
  std::span<const Bond> bonds() const { return bonds_; }
  std::span<const Neighbor> neighbors(int atom) const { return adj_[atom]; }
  int degree(int atom) const { return static_cast<int>(adj_[atom].size()); }

  std::optional<int> find_bond(int a, int b) const;
  std::optional<int> find_map(int map_num) const;

  /// Replaces the atom-map number; throws GraphError on duplicates.
  void set_map_num(int atom, std::optional<int> map_num);
  void set_explicit_h(int atom, std::optional<int> count);

private:
  std::vector<Atom> atoms_;
  std::vector<Bond> bonds_;
  std::vector<std::vector<Neighbor>> adj_;
};

struct Reaction {
  std::vector<Molecule> reactants;
  std::vector<Molecule> reagents;
  std::vector<Molecule> products;
  std::optional<std::string> source_id;
  std::optional<std::string> class_label;

  /// The single product of a cleaned reaction; throws AlignError otherwise.
  const Molecule &product() const;
};

/// Valence-implied hydrogen count ignoring any bracket count; -1 when the
/// atom is charged or not an organic-subset element.
int valence_hydrogens(const Molecule &m, int atom);

/// Hydrogens implied by the default valence of an organic-subset atom
/// written without brackets. Zero for anything else.
int implicit_hydrogens(const Molecule &m, int atom);

/// Explicit bracket count when present, valence-implied count otherwise.
int total_hydrogens(const Molecule &m, int atom);

/// Sorted ids of bonds lying on at least one cycle.
std::vector<int> ring_bond_set(const Molecule &m);

/// Connected component of every atom. Components are numbered in order of
/// their lowest atom index.
std::vector<int> fragment_ids(const Molecule &m, int *count = nullptr);

std::vector<Molecule> split_fragments(const Molecule &m);

/// Sub-molecule induced by `atoms` (kept in the given order). When
/// `old_to_new` is non-null it receives the index translation, -1 for
/// dropped atoms.
Molecule induced_subgraph(const Molecule &m, std::span<const int> atoms,
                          std::vector<int> *old_to_new = nullptr);

/// Disjoint union, atoms of `a` first.
Molecule combine(const Molecule &a, const Molecule &b);

/// Attribute-preserving isomorphism test over element, charge, isotope,
/// aromaticity, chirality tag and bond order. Bracket hydrogen counts and
/// bond stereo marks are ignored. With `respect_maps` the map numbers must
/// correspond too.
bool is_isomorphic(const Molecule &m1, const Molecule &m2, bool respect_maps);

int heavy_atom_count(const Molecule &m);

/// Stable partition refinement: starting from `initial` (only the relative
/// order of the values matters), atoms are repeatedly split by the sorted
/// (neighbor class, bond order) lists of their neighborhoods until the
/// partition is stable. Returns dense class ranks in [0, classes). Classes
/// are ordered by invariant values, never by atom index, so isomorphic
/// inputs get corresponding ranks.
std::vector<int> refine_classes(const Molecule &m,
                                std::vector<std::uint64_t> initial);

struct MappedBond {
  int molecule;  // index into Reaction::reactants
  int bond;
  int map_a;
  int map_b;

  friend bool operator==(const MappedBond &, const MappedBond &) = default;
};

struct BondDiff {
  /// Product bonds whose mapped pair is not bonded with the same order in
  /// any reactant.
  std::vector<int> broken;
  /// Reactant bonds between atoms whose maps both occur in the product but
  /// which are not bonded with the same order there.
  std::vector<MappedBond> formed;
};

/// Throws AlignError(kUnmappedProduct) when a product atom lacks a map.
BondDiff bond_diff(const Reaction &rxn);

}  // namespace rsmiles

#endif  // RSMILES_MOLGRAPH_H_
