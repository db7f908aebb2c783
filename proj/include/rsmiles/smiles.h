//
// Copyright 2026 The rsmiles Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RSMILES_SMILES_H_
#define RSMILES_SMILES_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rsmiles/molgraph.h"

namespace rsmiles {

/// Separator between the product and synthon parts of a synthon-to-reactant
/// source. Not part of SMILES; reserved by the tokenizer.
inline constexpr std::string_view kSplitToken = "<split>";

/// Maximal SMILES tokens; concatenating them reproduces the source string.
struct TokenSeq {
  std::vector<std::string> tokens;

  std::string joined() const;
  /// Tokens separated by single spaces, the token-file line layout.
  std::string spaced() const;

  friend bool operator==(const TokenSeq &, const TokenSeq &) = default;
};

/// Splits a SMILES string into bracket atoms, organic-subset atoms, bond
/// symbols, branches, dots, ring-closure labels and the split token. Throws
/// TokenizeError at the first character outside that grammar.
TokenSeq tokenize(std::string_view smiles);

/// Splits a space-separated token-file line.
TokenSeq split_spaced(std::string_view line);

/// Throws ParseError (with the offending position) on unmatched ring
/// closures, unbalanced parentheses, dangling bond symbols and malformed
/// bracket atoms. Dots yield disconnected components.
Molecule parse(std::string_view smiles);

/// Root atom plus a total order used to sort the neighbors of each atom
/// during the depth-first walk.
struct WriteOrder {
  int root = 0;
  std::vector<int> neighbor_rank;
};

struct RootedSmiles {
  std::string smiles;
  /// Atom indices in the order they appear in `smiles`.
  std::vector<int> atom_order;
};

/// Depth-first SMILES of a connected molecule starting at `order.root`.
/// Neighbors are visited by ascending rank; every child except the last
/// becomes a parenthesized branch; ring-closure labels take the lowest free
/// digit when the ring bond opens.
///
/// With `keep_maps` atoms carrying a map are written `[El:N]`; a hydrogen
/// count is only written when it differs from the valence-implied one.
/// Without it, map numbers are dropped and bracket atoms collapse to the
/// organic subset whenever that is lossless.
///
/// Throws InvalidRootError when the root is out of range and GraphError
/// when the molecule is not connected.
RootedSmiles write_rooted_traced(const Molecule &m, const WriteOrder &order,
                                 bool keep_maps);

std::string write_rooted(const Molecule &m, const WriteOrder &order,
                         bool keep_maps);

/// Canonical atom ranks: iterative refinement of (degree, element,
/// isotope, charge, hydrogens, aromaticity, chirality) over bonded
/// neighborhoods; remaining ties are split at the lowest atom index of the
/// lowest tied class followed by re-refinement. Map numbers are ignored.
std::vector<int> canonical_ranks(const Molecule &m);

/// Per-fragment rooted SMILES (root = lowest canonical rank, neighbors in
/// canonical order), fragments sorted and joined with '.'. Maps stripped.
std::string write_canonical(const Molecule &m);

/// Lossless serialization keeping map numbers: every mapped atom is
/// bracketed with its hydrogen count. Fragments in order of their lowest
/// atom index.
std::string write_mapped(const Molecule &m);

/// Writes each connected fragment of `m` from its lowest-ranked atom using
/// `rank`, fragments in order of their lowest atom index.
std::string write_fragments(const Molecule &m, const std::vector<int> &rank,
                            bool keep_maps);

/// Random SMILES: roots are drawn without replacement while atoms remain
/// (then with replacement) and neighbor order is shuffled per string.
/// Duplicates are dropped, so at most `count` strings are returned.
/// Deterministic under (m, count, seed).
std::vector<std::string> enumerate_random(const Molecule &m, int count,
                                          std::uint64_t seed);

}  // namespace rsmiles

#endif  // RSMILES_SMILES_H_
