//
// Copyright 2026 The rsmiles Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "rsmiles/align.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>

#include "rsmiles/error.h"
#include "rsmiles/smiles.h"

namespace rsmiles {
namespace {
using PositionMap = std::unordered_map<int, int>;  // map number -> position

void check_reaction(const Reaction &rxn) {
  const Molecule &product = rxn.product();
  std::set<int> reactant_maps;
  for (const Molecule &r: rxn.reactants) {
    for (const Atom &a: r.atoms()) {
      if (a.map_num)
        reactant_maps.insert(*a.map_num);
    }
  }
  for (const Atom &a: product.atoms()) {
    if (!a.map_num) {
      throw AlignError(AlignError::Kind::kUnmappedProduct,
                       "product atom " + a.element + " has no atom map");
    }
    if (reactant_maps.count(*a.map_num) == 0) {
      throw AlignError(AlignError::Kind::kMapNotInReactants,
                       "product map " + std::to_string(*a.map_num)
                           + " does not occur in any reactant");
    }
  }
}

std::vector<Molecule> reactant_fragments(const Reaction &rxn) {
  std::vector<Molecule> out;
  for (const Molecule &r: rxn.reactants) {
    for (Molecule &f: split_fragments(r))
      out.push_back(std::move(f));
  }
  return out;
}

int atom_of_map(const Molecule &m, int map_num, AlignError::Kind kind,
                const char *where) {
  auto atom = m.find_map(map_num);
  if (!atom) {
    throw AlignError(kind, "map " + std::to_string(map_num) + " not found in "
                               + where);
  }
  return *atom;
}

struct Written {
  std::string smiles;
  PositionMap position;
};

Written write_from(const Molecule &m, int root) {
  const RootedSmiles rs = write_rooted_traced(
      m, { root, canonical_ranks(m) }, false);
  Written w { rs.smiles, {} };
  for (int i = 0; i < static_cast<int>(rs.atom_order.size()); ++i) {
    const auto &map_num = m.atom(rs.atom_order[i]).map_num;
    if (map_num)
      w.position.emplace(*map_num, i);
  }
  return w;
}

std::string rooted_at_map(const Molecule &m, int map_num) {
  return write_from(m, *m.find_map(map_num)).smiles;
}

struct Placement {
  int index;
  int root_map;
  int position;
};

// Each fragment sharing a map with the anchor string goes first, rooted at
// its earliest-occurring atom; the rest are returned separately.
std::vector<Placement> place(const std::vector<Molecule> &frags,
                             const PositionMap &anchor,
                             std::vector<int> *unshared) {
  std::vector<Placement> out;
  for (int f = 0; f < static_cast<int>(frags.size()); ++f) {
    Placement best { f, 0, -1 };
    for (const Atom &a: frags[f].atoms()) {
      if (!a.map_num)
        continue;
      auto it = anchor.find(*a.map_num);
      if (it != anchor.end()
          && (best.position < 0 || it->second < best.position)) {
        best.position = it->second;
        best.root_map = *a.map_num;
      }
    }
    if (best.position >= 0)
      out.push_back(best);
    else if (unshared != nullptr)
      unshared->push_back(f);
  }
  std::sort(out.begin(), out.end(), [](const Placement &x, const Placement &y) {
    return x.position < y.position;
  });
  return out;
}

std::string join(const std::vector<std::string> &parts) {
  std::string out;
  for (const std::string &p: parts) {
    if (!out.empty())
      out += '.';
    out += p;
  }
  return out;
}

std::vector<std::string> canonical_sorted(const std::vector<Molecule> &frags,
                                          const std::vector<int> &which) {
  std::vector<std::string> out;
  for (int f: which)
    out.push_back(write_canonical(frags[f]));
  std::sort(out.begin(), out.end());
  return out;
}

std::string aligned_fragments(const std::vector<Molecule> &frags,
                              const PositionMap &anchor) {
  std::vector<int> unshared;
  std::vector<std::string> parts;
  for (const Placement &p: place(frags, anchor, &unshared))
    parts.push_back(rooted_at_map(frags[p.index], p.root_map));
  for (std::string &s: canonical_sorted(frags, unshared))
    parts.push_back(std::move(s));
  return join(parts);
}

int lowest_ranked(const Molecule &m, const std::set<int> *allowed_maps) {
  const std::vector<int> rank = canonical_ranks(m);
  int best = -1;
  for (int i = 0; i < m.num_atoms(); ++i) {
    const auto &map_num = m.atom(i).map_num;
    if (allowed_maps != nullptr
        && (!map_num || allowed_maps->count(*map_num) == 0))
      continue;
    if (best < 0 || rank[i] < rank[best])
      best = i;
  }
  return best;
}

std::set<int> maps_of(const Molecule &m) {
  std::set<int> out;
  for (const Atom &a: m.atoms()) {
    if (a.map_num)
      out.insert(*a.map_num);
  }
  return out;
}

struct SharedReactants {
  std::vector<Molecule> frags;
  int largest = -1;
};

SharedReactants largest_shared_reactant(const Reaction &rxn) {
  SharedReactants out;
  out.frags = reactant_fragments(rxn);
  const std::set<int> product_maps = maps_of(rxn.product());
  std::vector<int> shared;
  std::vector<Molecule> candidates;
  for (int f = 0; f < static_cast<int>(out.frags.size()); ++f) {
    for (int m: maps_of(out.frags[f])) {
      if (product_maps.count(m) != 0) {
        shared.push_back(f);
        candidates.push_back(out.frags[f]);
        break;
      }
    }
  }
  const int pick = largest_index(candidates);
  if (pick < 0) {
    throw AlignError(AlignError::Kind::kRootNotShared,
                     "no reactant shares an atom map with the product");
  }
  out.largest = shared[pick];
  return out;
}

int default_synthon_root(const SynthonSet &set) {
  const int big = largest_index(set.synthons);
  const Molecule &s = set.synthons[big];
  return *s.atom(lowest_ranked(s, nullptr)).map_num;
}

void check_in_largest_synthon(const SynthonSet &set, int root_map) {
  const Molecule &s = set.synthons[largest_index(set.synthons)];
  if (!s.find_map(root_map)) {
    throw AlignError(AlignError::Kind::kRootNotInLargest,
                     "root map " + std::to_string(root_map)
                         + " is not in the largest synthon");
  }
}

std::vector<int> with_default_first(int first, std::set<int> maps) {
  std::vector<int> out { first };
  maps.erase(first);
  out.insert(out.end(), maps.begin(), maps.end());
  return out;
}
}  // namespace

std::string_view task_name(Task task) {
  switch (task) {
  case Task::kP2R:
    return "p2r";
  case Task::kP2S:
    return "p2s";
  case Task::kS2R:
    return "s2r";
  case Task::kR2P:
    return "r2p";
  }
  return "p2r";
}

std::optional<Task> parse_task(std::string_view name) {
  std::string lower(name);
  for (char &c: lower)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  for (Task t: { Task::kP2R, Task::kP2S, Task::kS2R, Task::kR2P }) {
    if (lower == task_name(t))
      return t;
  }
  return std::nullopt;
}

Molecule strip_atom_maps(const Molecule &m) {
  Molecule out = m;
  for (int i = 0; i < out.num_atoms(); ++i)
    out.set_map_num(i, std::nullopt);
  return out;
}

int largest_index(const std::vector<Molecule> &mols) {
  int best = -1;
  std::tuple<int, std::size_t, std::string> best_key;
  for (int i = 0; i < static_cast<int>(mols.size()); ++i) {
    std::string canon = write_canonical(mols[i]);
    const int heavy = heavy_atom_count(mols[i]);
    const std::size_t len = canon.size();
    if (best < 0 || heavy > std::get<0>(best_key)
        || (heavy == std::get<0>(best_key)
            && (len > std::get<1>(best_key)
                || (len == std::get<1>(best_key)
                    && canon < std::get<2>(best_key))))) {
      best = i;
      best_key = { heavy, len, std::move(canon) };
    }
  }
  return best;
}

SynthonSet extract_synthons(const Reaction &rxn) {
  const BondDiff diff = bond_diff(rxn);
  const Molecule &product = rxn.product();

  const std::set<int> broken(diff.broken.begin(), diff.broken.end());
  Molecule cut;
  for (const Atom &a: product.atoms())
    cut.add_atom(a);
  for (int b = 0; b < product.num_bonds(); ++b) {
    const Bond &bond = product.bond(b);
    if (broken.count(b) != 0) {
      cut.set_explicit_h(bond.a, std::nullopt);
      cut.set_explicit_h(bond.b, std::nullopt);
      continue;
    }
    cut.add_bond(bond.a, bond.b, bond.order, bond.stereo);
  }
  return { split_fragments(cut), diff.broken };
}

AlignedPair align_p2r(const Reaction &rxn, int root_map) {
  check_reaction(rxn);
  const Molecule &product = rxn.product();
  const int root = atom_of_map(product, root_map,
                               AlignError::Kind::kRootNotInProduct, "product");
  const Written src = write_from(product, root);

  AlignedPair pair;
  pair.task = Task::kP2R;
  pair.source = src.smiles;
  pair.target = aligned_fragments(reactant_fragments(rxn), src.position);
  pair.root_map = root_map;
  return pair;
}

AlignedPair align_p2s(const Reaction &rxn, std::optional<int> root_map) {
  check_reaction(rxn);
  const Molecule &product = rxn.product();
  const SynthonSet set = extract_synthons(rxn);
  const int map_num = root_map.value_or(default_synthon_root(set));
  const int root = atom_of_map(product, map_num,
                               AlignError::Kind::kRootNotInProduct, "product");
  check_in_largest_synthon(set, map_num);

  const Written src = write_from(product, root);
  AlignedPair pair;
  pair.task = Task::kP2S;
  pair.source = src.smiles;
  pair.target = aligned_fragments(set.synthons, src.position);
  pair.root_map = map_num;
  return pair;
}

AlignedPair align_s2r(const Reaction &rxn, std::optional<int> root_map) {
  const AlignedPair p2s = align_p2s(rxn, root_map);
  const Molecule &product = rxn.product();
  const SynthonSet set = extract_synthons(rxn);
  const Written src = write_from(product, *product.find_map(p2s.root_map));

  const std::vector<Molecule> frags = reactant_fragments(rxn);
  std::map<int, int> frag_of_map;
  for (int f = 0; f < static_cast<int>(frags.size()); ++f) {
    for (int m: maps_of(frags[f]))
      frag_of_map[m] = f;
  }

  std::vector<std::string> parts;
  std::vector<bool> used(frags.size(), false);
  for (const Placement &p: place(set.synthons, src.position, nullptr)) {
    const int f = frag_of_map.at(p.root_map);
    for (int m: maps_of(set.synthons[p.index])) {
      if (frag_of_map.at(m) != f) {
        throw AlignError(AlignError::Kind::kSynthonReactantMismatch,
                         "synthon rooted at map " + std::to_string(p.root_map)
                             + " spans several reactants");
      }
    }
    if (used[f])
      continue;
    used[f] = true;
    parts.push_back(rooted_at_map(frags[f], p.root_map));
  }
  std::vector<int> rest;
  for (int f = 0; f < static_cast<int>(frags.size()); ++f) {
    if (!used[f])
      rest.push_back(f);
  }
  for (std::string &s: canonical_sorted(frags, rest))
    parts.push_back(std::move(s));

  AlignedPair pair;
  pair.task = Task::kS2R;
  pair.source = p2s.source + std::string(kSplitToken) + p2s.target;
  pair.target = join(parts);
  pair.root_map = p2s.root_map;
  return pair;
}

AlignedPair align_r2p(const Reaction &rxn, std::optional<int> root_map) {
  check_reaction(rxn);
  const Molecule &product = rxn.product();
  const SharedReactants shared = largest_shared_reactant(rxn);
  const Molecule &big = shared.frags[shared.largest];
  const std::set<int> product_maps = maps_of(product);

  int map_num = 0;
  if (root_map) {
    map_num = *root_map;
    if (product_maps.count(map_num) == 0) {
      throw AlignError(AlignError::Kind::kRootNotShared,
                       "root map " + std::to_string(map_num)
                           + " does not occur in the product");
    }
    if (!big.find_map(map_num)) {
      throw AlignError(AlignError::Kind::kRootNotInLargest,
                       "root map " + std::to_string(map_num)
                           + " is not in the largest reactant");
    }
  } else {
    map_num = *big.atom(lowest_ranked(big, &product_maps)).map_num;
  }

  const Written tgt = write_from(product, *product.find_map(map_num));
  std::vector<Molecule> others;
  for (int f = 0; f < static_cast<int>(shared.frags.size()); ++f) {
    if (f != shared.largest)
      others.push_back(shared.frags[f]);
  }
  std::string source = rooted_at_map(big, map_num);
  const std::string rest = aligned_fragments(others, tgt.position);
  if (!rest.empty())
    source += "." + rest;

  AlignedPair pair;
  pair.task = Task::kR2P;
  pair.source = std::move(source);
  pair.target = tgt.smiles;
  pair.root_map = map_num;
  return pair;
}

AlignedPair align(const Reaction &rxn, Task task,
                  std::optional<int> root_map) {
  switch (task) {
  case Task::kP2R:
    if (!root_map)
      root_map = root_candidates(rxn, Task::kP2R).front();
    return align_p2r(rxn, *root_map);
  case Task::kP2S:
    return align_p2s(rxn, root_map);
  case Task::kS2R:
    return align_s2r(rxn, root_map);
  case Task::kR2P:
    return align_r2p(rxn, root_map);
  }
  return align_p2r(rxn, root_map.value_or(0));
}

std::vector<int> root_candidates(const Reaction &rxn, Task task) {
  check_reaction(rxn);
  const Molecule &product = rxn.product();
  switch (task) {
  case Task::kP2R:
    return with_default_first(
        *product.atom(lowest_ranked(product, nullptr)).map_num,
        maps_of(product));
  case Task::kP2S:
  case Task::kS2R: {
    const SynthonSet set = extract_synthons(rxn);
    return with_default_first(
        default_synthon_root(set),
        maps_of(set.synthons[largest_index(set.synthons)]));
  }
  case Task::kR2P: {
    const SharedReactants shared = largest_shared_reactant(rxn);
    const Molecule &big = shared.frags[shared.largest];
    const std::set<int> product_maps = maps_of(product);
    std::set<int> usable;
    for (int m: maps_of(big)) {
      if (product_maps.count(m) != 0)
        usable.insert(m);
    }
    return with_default_first(
        *big.atom(lowest_ranked(big, &product_maps)).map_num, usable);
  }
  }
  return {};
}

}  // namespace rsmiles
