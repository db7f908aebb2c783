//
// Copyright 2026 The rsmiles Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "rsmiles/molgraph.h"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <tuple>
#include <utility>

#include "rsmiles/error.h"

namespace rsmiles {
namespace {
constexpr std::array<std::string_view, 119> kElements = {
  "",   "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na",
  "Mg", "Al", "Si", "P",  "S",  "Cl", "Ar", "K",  "Ca", "Sc", "Ti", "V",
  "Cr", "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As", "Se", "Br",
  "Kr", "Rb", "Sr", "Y",  "Zr", "Nb", "Mo", "Tc", "Ru", "Rh", "Pd", "Ag",
  "Cd", "In", "Sn", "Sb", "Te", "I",  "Xe", "Cs", "Ba", "La", "Ce", "Pr",
  "Nd", "Pm", "Sm", "Eu", "Gd", "Tb", "Dy", "Ho", "Er", "Tm", "Yb", "Lu",
  "Hf", "Ta", "W",  "Re", "Os", "Ir", "Pt", "Au", "Hg", "Tl", "Pb", "Bi",
  "Po", "At", "Rn", "Fr", "Ra", "Ac", "Th", "Pa", "U",  "Np", "Pu", "Am",
  "Cm", "Bk", "Cf", "Es", "Fm", "Md", "No", "Lr", "Rf", "Db", "Sg", "Bh",
  "Hs", "Mt", "Ds", "Rg", "Cn", "Nh", "Fl", "Mc", "Lv", "Ts", "Og",
};

int bond_valence(BondOrder order) {
  switch (order) {
  case BondOrder::kDouble:
    return 2;
  case BondOrder::kTriple:
    return 3;
  default:
    return 1;
  }
}

std::span<const int> default_valences(std::string_view element) {
  static constexpr int kB[] = { 3 }, kC[] = { 4 }, kN[] = { 3, 5 },
                       kO[] = { 2 }, kP[] = { 3, 5 }, kS[] = { 2, 4, 6 },
                       kX[] = { 1 };
  if (element == "B")
    return kB;
  if (element == "C")
    return kC;
  if (element == "N")
    return kN;
  if (element == "O")
    return kO;
  if (element == "P")
    return kP;
  if (element == "S")
    return kS;
  if (element == "F" || element == "Cl" || element == "Br" || element == "I")
    return kX;
  return {};
}

// Dense ranks of arbitrary comparable keys; equal keys share a rank.
template <class Key>
std::vector<int> dense_ranks(const std::vector<Key> &keys) {
  std::vector<int> idx(keys.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int x, int y) { return keys[x] < keys[y]; });
  std::vector<int> ranks(keys.size());
  int r = -1;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i == 0 || keys[idx[i - 1]] < keys[idx[i]])
      ++r;
    ranks[idx[i]] = r;
  }
  return ranks;
}

int count_classes(const std::vector<int> &ranks) {
  return ranks.empty() ? 0 : *std::max_element(ranks.begin(), ranks.end()) + 1;
}
}  // namespace

int atomic_number(std::string_view symbol) {
  for (std::size_t z = 1; z < kElements.size(); ++z) {
    if (kElements[z] == symbol)
      return static_cast<int>(z);
  }
  return 0;
}

bool aromatic_capable(std::string_view symbol) {
  return symbol == "B" || symbol == "C" || symbol == "N" || symbol == "O"
         || symbol == "P" || symbol == "S" || symbol == "Se" || symbol == "As"
         || symbol == "Te";
}

int Molecule::add_atom(Atom atom) {
  if (atom.map_num) {
    if (*atom.map_num < 1)
      throw GraphError("atom map number must be >= 1");
    if (find_map(*atom.map_num))
      throw GraphError("duplicate atom map number "
                       + std::to_string(*atom.map_num));
  }
  if (atom.aromatic && !aromatic_capable(atom.element))
    throw GraphError("element " + atom.element + " cannot be aromatic");
  atoms_.push_back(std::move(atom));
  adj_.emplace_back();
  return num_atoms() - 1;
}

int Molecule::add_bond(int a, int b, BondOrder order, BondStereo stereo) {
  if (a < 0 || b < 0 || a >= num_atoms() || b >= num_atoms())
    throw GraphError("bond endpoint out of range");
  if (a == b)
    throw GraphError("bond from an atom to itself");
  if (find_bond(a, b))
    throw GraphError("duplicate bond between atoms " + std::to_string(a)
                     + " and " + std::to_string(b));
  bonds_.push_back({ a, b, order, stereo });
  const int id = num_bonds() - 1;
  adj_[a].push_back({ b, id });
  adj_[b].push_back({ a, id });
  return id;
}

std::optional<int> Molecule::find_bond(int a, int b) const {
  for (const Neighbor &nb: adj_[a]) {
    if (nb.atom == b)
      return nb.bond;
  }
  return std::nullopt;
}

std::optional<int> Molecule::find_map(int map_num) const {
  for (int i = 0; i < num_atoms(); ++i) {
    if (atoms_[i].map_num == map_num)
      return i;
  }
  return std::nullopt;
}

void Molecule::set_map_num(int atom, std::optional<int> map_num) {
  if (map_num) {
    if (*map_num < 1)
      throw GraphError("atom map number must be >= 1");
    auto owner = find_map(*map_num);
    if (owner && *owner != atom)
      throw GraphError("duplicate atom map number " + std::to_string(*map_num));
  }
  atoms_[atom].map_num = map_num;
}

void Molecule::set_explicit_h(int atom, std::optional<int> count) {
  atoms_[atom].explicit_h = count;
}

const Molecule &Reaction::product() const {
  if (products.size() != 1) {
    throw AlignError(AlignError::Kind::kNotSingleProduct,
                     "reaction has " + std::to_string(products.size())
                         + " products; expected exactly one");
  }
  return products.front();
}

int valence_hydrogens(const Molecule &m, int i) {
  const Atom &atom = m.atom(i);
  if (atom.charge != 0)
    return -1;
  auto valences = default_valences(atom.element);
  if (valences.empty())
    return -1;

  int sum = 0;
  bool has_aromatic_bond = false;
  for (const Neighbor &nb: m.neighbors(i)) {
    const Bond &bond = m.bond(nb.bond);
    sum += bond_valence(bond.order);
    has_aromatic_bond |= bond.order == BondOrder::kAromatic;
  }
  if (atom.aromatic) {
    if (has_aromatic_bond
        && (atom.element == "B" || atom.element == "C" || atom.element == "N"
            || atom.element == "P"))
      ++sum;
    return std::max(0, valences.front() - sum);
  }
  for (int v: valences) {
    if (v >= sum)
      return v - sum;
  }
  return 0;
}

int implicit_hydrogens(const Molecule &m, int atom) {
  if (m.atom(atom).explicit_h)
    return 0;
  return std::max(0, valence_hydrogens(m, atom));
}

int total_hydrogens(const Molecule &m, int atom) {
  const Atom &a = m.atom(atom);
  return a.explicit_h ? *a.explicit_h : implicit_hydrogens(m, atom);
}

std::vector<int> ring_bond_set(const Molecule &m) {
  // Bridges are exactly the bonds on no cycle (iterative Tarjan lowlink).
  const int n = m.num_atoms();
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<bool> bridge(m.num_bonds(), false);
  int clock = 0;

  struct Frame {
    int atom;
    int parent_bond;
    std::size_t next;
  };
  for (int start = 0; start < n; ++start) {
    if (disc[start] >= 0)
      continue;
    std::vector<Frame> stack { { start, -1, 0 } };
    disc[start] = low[start] = clock++;
    while (!stack.empty()) {
      Frame &f = stack.back();
      auto nbs = m.neighbors(f.atom);
      if (f.next < nbs.size()) {
        const Neighbor nb = nbs[f.next++];
        if (nb.bond == f.parent_bond)
          continue;
        if (disc[nb.atom] < 0) {
          disc[nb.atom] = low[nb.atom] = clock++;
          stack.push_back({ nb.atom, nb.bond, 0 });
        } else {
          low[f.atom] = std::min(low[f.atom], disc[nb.atom]);
        }
        continue;
      }
      const Frame done = f;
      stack.pop_back();
      if (!stack.empty()) {
        Frame &parent = stack.back();
        low[parent.atom] = std::min(low[parent.atom], low[done.atom]);
        if (low[done.atom] > disc[parent.atom])
          bridge[done.parent_bond] = true;
      }
    }
  }

  std::vector<int> ring;
  for (int b = 0; b < m.num_bonds(); ++b) {
    if (!bridge[b])
      ring.push_back(b);
  }
  return ring;
}

std::vector<int> fragment_ids(const Molecule &m, int *count) {
  std::vector<int> comp(m.num_atoms(), -1);
  int next = 0;
  for (int start = 0; start < m.num_atoms(); ++start) {
    if (comp[start] >= 0)
      continue;
    std::vector<int> stack { start };
    comp[start] = next;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (const Neighbor &nb: m.neighbors(u)) {
        if (comp[nb.atom] < 0) {
          comp[nb.atom] = next;
          stack.push_back(nb.atom);
        }
      }
    }
    ++next;
  }
  if (count != nullptr)
    *count = next;
  return comp;
}

Molecule induced_subgraph(const Molecule &m, std::span<const int> atoms,
                          std::vector<int> *old_to_new) {
  std::vector<int> remap(m.num_atoms(), -1);
  Molecule sub;
  for (int a: atoms)
    remap[a] = sub.add_atom(m.atom(a));
  for (const Bond &b: m.bonds()) {
    if (remap[b.a] >= 0 && remap[b.b] >= 0)
      sub.add_bond(remap[b.a], remap[b.b], b.order, b.stereo);
  }
  if (old_to_new != nullptr)
    *old_to_new = std::move(remap);
  return sub;
}

std::vector<Molecule> split_fragments(const Molecule &m) {
  int count = 0;
  const std::vector<int> comp = fragment_ids(m, &count);
  std::vector<std::vector<int>> members(count);
  for (int i = 0; i < m.num_atoms(); ++i)
    members[comp[i]].push_back(i);

  std::vector<Molecule> frags;
  frags.reserve(count);
  for (const auto &atoms: members)
    frags.push_back(induced_subgraph(m, atoms));
  return frags;
}

Molecule combine(const Molecule &a, const Molecule &b) {
  Molecule out = a;
  const int offset = a.num_atoms();
  for (const Atom &atom: b.atoms())
    out.add_atom(atom);
  for (const Bond &bond: b.bonds())
    out.add_bond(bond.a + offset, bond.b + offset, bond.order, bond.stereo);
  return out;
}

int heavy_atom_count(const Molecule &m) {
  return static_cast<int>(std::count_if(
      m.atoms().begin(), m.atoms().end(),
      [](const Atom &a) { return !a.is_hydrogen(); }));
}

std::vector<int> refine_classes(const Molecule &m,
                                std::vector<std::uint64_t> initial) {
  std::vector<int> ranks = dense_ranks(initial);
  int classes = count_classes(ranks);

  using Signature = std::pair<int, std::vector<std::pair<int, int>>>;
  std::vector<Signature> sigs(m.num_atoms());
  while (classes < m.num_atoms()) {
    for (int i = 0; i < m.num_atoms(); ++i) {
      Signature &sig = sigs[i];
      sig.first = ranks[i];
      sig.second.clear();
      for (const Neighbor &nb: m.neighbors(i)) {
        sig.second.emplace_back(ranks[nb.atom],
                                static_cast<int>(m.bond(nb.bond).order));
      }
      std::sort(sig.second.begin(), sig.second.end());
    }
    std::vector<int> next = dense_ranks(sigs);
    const int next_classes = count_classes(next);
    ranks = std::move(next);
    if (next_classes == classes)
      break;
    classes = next_classes;
  }
  return ranks;
}

namespace {
using AtomKey = std::tuple<int, std::string, int, int, bool, int, int>;

AtomKey match_key(const Molecule &m, int i, bool respect_maps) {
  const Atom &a = m.atom(i);
  return { m.degree(i),
           a.element,
           a.charge,
           a.isotope.value_or(0),
           a.aromatic,
           static_cast<int>(a.chirality),
           respect_maps ? a.map_num.value_or(0) : 0 };
}

class Matcher {
public:
  Matcher(const Molecule &m1, const Molecule &m2, std::vector<int> color1,
          std::vector<int> color2)
      : m1_(m1), m2_(m2), color1_(std::move(color1)),
        color2_(std::move(color2)), map12_(m1.num_atoms(), -1),
        map21_(m2.num_atoms(), -1) {
    // Visit atoms of m1 in BFS order so every step after the first of each
    // component is constrained by an already-mapped neighbor.
    std::vector<bool> seen(m1.num_atoms(), false);
    for (int s = 0; s < m1.num_atoms(); ++s) {
      if (seen[s])
        continue;
      seen[s] = true;
      std::size_t head = order_.size();
      order_.push_back(s);
      while (head < order_.size()) {
        const int u = order_[head++];
        for (const Neighbor &nb: m1.neighbors(u)) {
          if (!seen[nb.atom]) {
            seen[nb.atom] = true;
            order_.push_back(nb.atom);
          }
        }
      }
    }
  }

  bool run() { return extend(0); }

private:
  bool feasible(int u, int v) const {
    if (color1_[u] != color2_[v])
      return false;
    int mapped_nbs = 0;
    for (const Neighbor &nb: m1_.neighbors(u)) {
      const int image = map12_[nb.atom];
      if (image < 0)
        continue;
      ++mapped_nbs;
      auto bond = m2_.find_bond(v, image);
      if (!bond || m2_.bond(*bond).order != m1_.bond(nb.bond).order)
        return false;
    }
    int mapped_nbs2 = 0;
    for (const Neighbor &nb: m2_.neighbors(v))
      mapped_nbs2 += map21_[nb.atom] >= 0 ? 1 : 0;
    return mapped_nbs == mapped_nbs2;
  }

  bool extend(std::size_t depth) {
    if (depth == order_.size())
      return true;
    const int u = order_[depth];

    // Candidates: neighbors of an already-mapped neighbor's image when one
    // exists, otherwise every unmapped atom of the right color.
    int anchor = -1;
    for (const Neighbor &nb: m1_.neighbors(u)) {
      if (map12_[nb.atom] >= 0) {
        anchor = map12_[nb.atom];
        break;
      }
    }
    auto try_pair = [&](int v) {
      if (map21_[v] >= 0 || !feasible(u, v))
        return false;
      map12_[u] = v;
      map21_[v] = u;
      if (extend(depth + 1))
        return true;
      map12_[u] = -1;
      map21_[v] = -1;
      return false;
    };
    if (anchor >= 0) {
      for (const Neighbor &nb: m2_.neighbors(anchor)) {
        if (try_pair(nb.atom))
          return true;
      }
      return false;
    }
    for (int v = 0; v < m2_.num_atoms(); ++v) {
      if (try_pair(v))
        return true;
    }
    return false;
  }

  const Molecule &m1_;
  const Molecule &m2_;
  std::vector<int> color1_;
  std::vector<int> color2_;
  std::vector<int> map12_;
  std::vector<int> map21_;
  std::vector<int> order_;
};
}  // namespace

bool is_isomorphic(const Molecule &m1, const Molecule &m2, bool respect_maps) {
  if (m1.num_atoms() != m2.num_atoms() || m1.num_bonds() != m2.num_bonds())
    return false;
  if (m1.empty())
    return true;

  // Refine both graphs jointly so the colors are comparable.
  std::vector<AtomKey> keys;
  keys.reserve(m1.num_atoms() + m2.num_atoms());
  for (int i = 0; i < m1.num_atoms(); ++i)
    keys.push_back(match_key(m1, i, respect_maps));
  for (int i = 0; i < m2.num_atoms(); ++i)
    keys.push_back(match_key(m2, i, respect_maps));
  // map numbers may repeat across the two inputs; they live in the keys
  auto unmapped = [](Molecule m) {
    for (int i = 0; i < m.num_atoms(); ++i)
      m.set_map_num(i, std::nullopt);
    return m;
  };
  const Molecule joint = combine(unmapped(m1), unmapped(m2));
  const std::vector<int> initial = dense_ranks(keys);
  const std::vector<int> colors = refine_classes(
      joint, std::vector<std::uint64_t>(initial.begin(), initial.end()));

  std::vector<int> c1(colors.begin(), colors.begin() + m1.num_atoms());
  std::vector<int> c2(colors.begin() + m1.num_atoms(), colors.end());
  std::vector<int> h1 = c1, h2 = c2;
  std::sort(h1.begin(), h1.end());
  std::sort(h2.begin(), h2.end());
  if (h1 != h2)
    return false;

  return Matcher(m1, m2, std::move(c1), std::move(c2)).run();
}

BondDiff bond_diff(const Reaction &rxn) {
  const Molecule &product = rxn.product();
  for (const Atom &a: product.atoms()) {
    if (!a.map_num) {
      throw AlignError(AlignError::Kind::kUnmappedProduct,
                       "product atom " + a.element + " has no atom map");
    }
  }

  // map number -> (reactant, atom)
  std::map<int, std::pair<int, int>> where;
  for (int r = 0; r < static_cast<int>(rxn.reactants.size()); ++r) {
    const Molecule &mol = rxn.reactants[r];
    for (int i = 0; i < mol.num_atoms(); ++i) {
      if (mol.atom(i).map_num)
        where.emplace(*mol.atom(i).map_num, std::make_pair(r, i));
    }
  }

  BondDiff diff;
  for (int b = 0; b < product.num_bonds(); ++b) {
    const Bond &bond = product.bond(b);
    auto ia = where.find(*product.atom(bond.a).map_num);
    auto ib = where.find(*product.atom(bond.b).map_num);
    bool kept = false;
    if (ia != where.end() && ib != where.end()
        && ia->second.first == ib->second.first) {
      const Molecule &mol = rxn.reactants[ia->second.first];
      auto rb = mol.find_bond(ia->second.second, ib->second.second);
      kept = rb && mol.bond(*rb).order == bond.order;
    }
    if (!kept)
      diff.broken.push_back(b);
  }

  for (int r = 0; r < static_cast<int>(rxn.reactants.size()); ++r) {
    const Molecule &mol = rxn.reactants[r];
    for (int b = 0; b < mol.num_bonds(); ++b) {
      const Bond &bond = mol.bond(b);
      const auto ma = mol.atom(bond.a).map_num;
      const auto mb = mol.atom(bond.b).map_num;
      if (!ma || !mb)
        continue;
      auto pa = product.find_map(*ma);
      auto pb = product.find_map(*mb);
      if (!pa || !pb)
        continue;
      auto pbond = product.find_bond(*pa, *pb);
      if (!pbond || product.bond(*pbond).order != bond.order)
        diff.formed.push_back({ r, b, *ma, *mb });
    }
  }
  return diff;
}

}  // namespace rsmiles
