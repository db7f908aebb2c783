//
// Copyright 2026 The rsmiles Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "fixtures.h"
#include "oracles.h"
#include "rsmiles/align.h"
#include "rsmiles/error.h"
#include "rsmiles/molgraph.h"
#include "rsmiles/smiles.h"

namespace rsmiles {
namespace {
using testing::corpus;
using testing::kRingReaction;
using testing::kEsterReaction;
using testing::reaction;

std::set<int> bond_pairs(const Molecule &m, const std::vector<int> &bonds) {
  // encode each bond by its sorted endpoint elements and map numbers
  std::set<int> out;
  for (int b: bonds) {
    int x = m.atom(m.bond(b).a).map_num.value_or(0);
    int y = m.atom(m.bond(b).b).map_num.value_or(0);
    out.insert(std::min(x, y) * 1000 + std::max(x, y));
  }
  return out;
}

// Same molecule with atoms listed in a different order.
Molecule permuted(const Molecule &m, std::mt19937 &rng) {
  std::vector<int> order(m.num_atoms());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> old_to_new;
  Molecule out = induced_subgraph(m, order, &old_to_new);
  return out;
}

TEST(MolGraph, AddAtomValidation) {
  Molecule m;
  Atom a;
  a.element = "C";
  a.map_num = 0;
  EXPECT_THROW(m.add_atom(a), GraphError);
  a.map_num = 3;
  m.add_atom(a);
  EXPECT_THROW(m.add_atom(a), GraphError);
  Atom f;
  f.element = "F";
  f.aromatic = true;
  EXPECT_THROW(m.add_atom(f), GraphError);
}

TEST(MolGraph, AddBondValidation) {
  Molecule m = parse("CC");
  EXPECT_THROW(m.add_bond(0, 0, BondOrder::kSingle), GraphError);
  EXPECT_THROW(m.add_bond(0, 1, BondOrder::kSingle), GraphError);
  EXPECT_THROW(m.add_bond(0, 5, BondOrder::kSingle), GraphError);
}

TEST(RingBondSet, Benzene) {
  const Molecule m = parse("c1ccccc1");
  EXPECT_EQ(ring_bond_set(m).size(), 6u);
}

TEST(RingBondSet, Ethanol) {
  EXPECT_TRUE(ring_bond_set(parse("CCO")).empty());
}

TEST(RingBondSet, OxolaneRingOnly) {
  const Molecule m = parse("O1CCC(N)C1O");
  const std::vector<int> ring = ring_bond_set(m);
  ASSERT_EQ(ring.size(), 5u);
  // the exocyclic C-N and C-O bonds are not ring bonds
  for (int b: ring) {
    const Bond &bond = m.bond(b);
    EXPECT_NE(m.atom(bond.a).element == "N" || m.atom(bond.b).element == "N",
              true);
  }
  const int exo_o = m.num_atoms() - 1;
  for (const Neighbor &nb: m.neighbors(exo_o))
    EXPECT_FALSE(std::binary_search(ring.begin(), ring.end(), nb.bond));
}

TEST(RingBondSet, MatchesCycleEnumeration) {
  std::size_t checked = 0;
  for (const std::string &s: corpus()) {
    const Molecule m = parse(s);
    if (m.num_atoms() > 10)
      continue;
    const std::vector<int> got = ring_bond_set(m);
    const std::set<int> want = testing::brute_ring_bonds(m);
    EXPECT_EQ(std::set<int>(got.begin(), got.end()), want) << s;
    ++checked;
  }
  EXPECT_GT(checked, 20u);
}

TEST(RingBondSet, MatchesCycleEnumerationOnSampleProducts) {
  std::size_t checked = 0;
  for (const Reaction &r: testing::sample_reactions()) {
    for (const Molecule &m: r.reactants) {
      if (m.num_atoms() > 10)
        continue;
      const std::vector<int> got = ring_bond_set(m);
      EXPECT_EQ(std::set<int>(got.begin(), got.end()),
                testing::brute_ring_bonds(m));
      ++checked;
    }
  }
  EXPECT_GT(checked, 100u);
}

TEST(SplitFragments, EsterReactants) {
  const auto frags = split_fragments(parse("ClC(Cl)(Cl)CO.C(=O)(Cl)C=C"));
  ASSERT_EQ(frags.size(), 2u);
  EXPECT_EQ(frags[0].num_atoms(), 6);
  EXPECT_EQ(frags[1].num_atoms(), 5);
}

TEST(SplitFragments, SingleAndEmpty) {
  const Molecule m = parse("CCO");
  const auto frags = split_fragments(m);
  ASSERT_EQ(frags.size(), 1u);
  EXPECT_EQ(frags[0].atoms().size(), m.atoms().size());
  EXPECT_TRUE(std::equal(frags[0].atoms().begin(), frags[0].atoms().end(),
                         m.atoms().begin()));
  EXPECT_TRUE(split_fragments(Molecule {}).empty());
}

TEST(SplitFragments, OrderByLowestAtomIndex) {
  const auto frags = split_fragments(parse("C.[Na+].CC(C)O"));
  ASSERT_EQ(frags.size(), 3u);
  EXPECT_EQ(frags[0].num_atoms(), 1);
  EXPECT_EQ(frags[1].atom(0).element, "Na");
  EXPECT_EQ(frags[2].num_atoms(), 4);
}

TEST(SplitFragments, ReunionIsIsomorphic) {
  for (const std::string &s: corpus()) {
    const Molecule m = parse(s);
    Molecule joined;
    for (const Molecule &f: split_fragments(m))
      joined = combine(joined, f);
    EXPECT_TRUE(is_isomorphic(joined, m, true)) << s;
  }
}

TEST(Isomorphism, Examples) {
  EXPECT_TRUE(is_isomorphic(parse("OCC"), parse("CCO"), false));
  EXPECT_FALSE(is_isomorphic(parse("CCO"), parse("CCN"), false));
  EXPECT_FALSE(is_isomorphic(parse("C=CO"), parse("CCO"), false));
  EXPECT_FALSE(is_isomorphic(parse("C[C@H](N)O"), parse("CC(N)O"), false));
  EXPECT_FALSE(is_isomorphic(parse("[13CH4]"), parse("C"), false));
  EXPECT_FALSE(is_isomorphic(parse("C1CCCCC1"), parse("C1CCC1.C1CC1"),
                             false));
}

TEST(Isomorphism, EsterProductAgainstRootedRewrite) {
  const Reaction rxn = reaction(kEsterReaction);
  const Molecule &p = rxn.product();
  const std::string rooted =
      write_rooted(p, { *p.find_map(8), canonical_ranks(p) }, true);
  EXPECT_TRUE(is_isomorphic(parse(rooted), p, true));
  EXPECT_TRUE(testing::brute_isomorphic(parse(rooted), p, true));

  Molecule wrong = p;
  wrong.set_map_num(*p.find_map(8), 99);
  wrong.set_map_num(*p.find_map(9), 8);
  wrong.set_map_num(*wrong.find_map(99), 9);
  EXPECT_TRUE(is_isomorphic(wrong, p, true));  // the Cl atoms are equivalent
  Molecule swapped = p;
  swapped.set_map_num(*p.find_map(1), 99);
  swapped.set_map_num(*p.find_map(2), 1);
  swapped.set_map_num(*swapped.find_map(99), 2);
  EXPECT_FALSE(is_isomorphic(swapped, p, true));
  EXPECT_TRUE(is_isomorphic(swapped, p, false));
}

TEST(Isomorphism, ReflexiveAndSymmetric) {
  const auto mols = corpus();
  for (const std::string &a: mols) {
    const Molecule ma = parse(a);
    EXPECT_TRUE(is_isomorphic(ma, ma, true)) << a;
    for (const std::string &b: mols) {
      const Molecule mb = parse(b);
      EXPECT_EQ(is_isomorphic(ma, mb, false), is_isomorphic(mb, ma, false))
          << a << " vs " << b;
    }
  }
}

TEST(Isomorphism, AgreesWithPermutationOracle) {
  std::mt19937 rng(7);
  std::vector<Molecule> small;
  for (const std::string &s: corpus()) {
    Molecule m = parse(s);
    if (m.num_atoms() <= 8)
      small.push_back(std::move(m));
  }
  for (const char *extra: { "CC(C)CO", "CCCCO", "OCC(C)C", "C1CCCO1",
                            "C1CCOC1", "CC1CCO1", "C=CC=C", "C#CCC" })
    small.push_back(parse(extra));
  ASSERT_GT(small.size(), 20u);

  std::size_t positives = 0;
  for (const Molecule &a: small) {
    for (const Molecule &b: small) {
      const bool want = testing::brute_isomorphic(a, b, false);
      EXPECT_EQ(is_isomorphic(a, b, false), want);
    }
    const Molecule p = permuted(a, rng);
    EXPECT_TRUE(testing::brute_isomorphic(a, p, true));
    EXPECT_TRUE(is_isomorphic(a, p, true));
    ++positives;
  }
  EXPECT_GT(positives, 0u);
}

TEST(HeavyAtomCount, Examples) {
  EXPECT_EQ(heavy_atom_count(parse("ClC(Cl)(Cl)CO")), 6);
  EXPECT_EQ(heavy_atom_count(parse("[H][H]")), 0);
  EXPECT_EQ(heavy_atom_count(reaction(kEsterReaction).product()), 10);
}

TEST(Hydrogens, ValenceModel) {
  const Molecule m = parse("CC(=O)[O-].c1ccccc1.[NH4+].C[SH](=O)=O");
  EXPECT_EQ(total_hydrogens(m, 0), 3);
  EXPECT_EQ(total_hydrogens(m, 1), 0);
  EXPECT_EQ(total_hydrogens(m, 3), 0);
  EXPECT_EQ(total_hydrogens(m, 4), 1);  // aromatic CH
  EXPECT_EQ(total_hydrogens(m, 10), 4);
  EXPECT_EQ(implicit_hydrogens(parse("S(=O)(=O)(O)O"), 0), 0);
  EXPECT_EQ(implicit_hydrogens(parse("P(=O)(O)O"), 0), 1);
}

TEST(BondDiff, BreaksEsterBond) {
  const Reaction rxn = reaction(kEsterReaction);
  const BondDiff diff = bond_diff(rxn);
  const Molecule &p = rxn.product();
  EXPECT_EQ(bond_pairs(p, diff.broken), (std::set<int> { 1 * 1000 + 5 }));
  // the C:1-Cl bond has an unmapped end and is not reported as formed
  EXPECT_TRUE(diff.formed.empty());
}

TEST(BondDiff, IdentityReaction) {
  const Reaction rxn = reaction("[CH3:1][CH2:2][OH:3]>>[CH3:1][CH2:2][OH:3]");
  const BondDiff diff = bond_diff(rxn);
  EXPECT_TRUE(diff.broken.empty());
  EXPECT_TRUE(diff.formed.empty());
}

TEST(BondDiff, RingReactionFormsOxygenBond) {
  const Reaction rxn = reaction(kRingReaction);
  const BondDiff diff = bond_diff(rxn);
  std::set<std::pair<int, int>> formed;
  for (const MappedBond &b: diff.formed)
    formed.insert({ std::min(b.map_a, b.map_b), std::max(b.map_a, b.map_b) });
  EXPECT_TRUE(formed.count({ 4, 6 }));
  // C4-O5 changes order, so it is both broken and formed
  EXPECT_TRUE(formed.count({ 4, 5 }));
  EXPECT_EQ(bond_pairs(rxn.product(), diff.broken),
            (std::set<int> { 4 * 1000 + 5 }));
}

TEST(BondDiff, UnmappedProductAtom) {
  const Reaction rxn = reaction("[CH3:1][OH:2]>>[CH3:1]O");
  try {
    bond_diff(rxn);
    FAIL();
  } catch (const AlignError &e) {
    EXPECT_EQ(e.kind(), AlignError::Kind::kUnmappedProduct);
  }
}

TEST(BondDiff, MapIdenticalReactionsAreEmpty) {
  std::size_t n = 0;
  for (const Reaction &r: testing::sample_reactions()) {
    Reaction same;
    same.products = { r.product() };
    same.reactants = { r.product() };
    const BondDiff diff = bond_diff(same);
    EXPECT_TRUE(diff.broken.empty());
    EXPECT_TRUE(diff.formed.empty());
    if (++n == 200)
      break;
  }
}

}  // namespace
}  // namespace rsmiles
