//
// Copyright 2026 The rsmiles Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "rsmiles/smiles.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <tuple>
#include <utility>

#include "rsmiles/error.h"
#include "rsmiles/random.h"

namespace rsmiles {
namespace {
bool is_bond_char(char c) {
  switch (c) {
  case '-':
  case '=':
  case '#':
  case '/':
  case '\\':
  case ':':
  case '~':
    return true;
  default:
    return false;
  }
}

bool is_organic(std::string_view element) {
  return element == "B" || element == "C" || element == "N" || element == "O"
         || element == "P" || element == "S" || element == "F"
         || element == "Cl" || element == "Br" || element == "I";
}

bool is_aromatic_organic(std::string_view element) {
  return element == "B" || element == "C" || element == "N" || element == "O"
         || element == "P" || element == "S";
}
}  // namespace

std::string TokenSeq::joined() const {
  std::string out;
  for (const std::string &t: tokens)
    out += t;
  return out;
}

std::string TokenSeq::spaced() const {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0)
      out += ' ';
    out += tokens[i];
  }
  return out;
}

TokenSeq tokenize(std::string_view s) {
  TokenSeq seq;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const char c = s[pos];
    std::size_t len = 1;
    switch (c) {
    case '[': {
      const std::size_t close = s.find(']', pos + 1);
      if (close == std::string_view::npos)
        throw TokenizeError("unterminated bracket atom", pos);
      const std::size_t nested = s.find('[', pos + 1);
      if (nested < close)
        throw TokenizeError("nested bracket", nested);
      len = close - pos + 1;
      break;
    }
    case '<':
      if (s.substr(pos, kSplitToken.size()) != kSplitToken)
        throw TokenizeError("unexpected '<'", pos);
      len = kSplitToken.size();
      break;
    case 'C':
      len = pos + 1 < s.size() && s[pos + 1] == 'l' ? 2 : 1;
      break;
    case 'B':
      len = pos + 1 < s.size() && s[pos + 1] == 'r' ? 2 : 1;
      break;
    case '%':
      if (pos + 2 >= s.size() || !std::isdigit(s[pos + 1])
          || !std::isdigit(s[pos + 2]))
        throw TokenizeError("'%' must be followed by two digits", pos);
      len = 3;
      break;
    case 'N':
    case 'O':
    case 'S':
    case 'P':
    case 'F':
    case 'I':
    case 'b':
    case 'c':
    case 'n':
    case 'o':
    case 's':
    case 'p':
    case '(':
    case ')':
    case '.':
      break;
    default:
      if (std::isdigit(static_cast<unsigned char>(c)) || is_bond_char(c))
        break;
      throw TokenizeError(std::string("unexpected character '") + c + "'",
                          pos);
    }
    seq.tokens.emplace_back(s.substr(pos, len));
    pos += len;
  }
  return seq;
}

TokenSeq split_spaced(std::string_view line) {
  TokenSeq seq;
  std::size_t pos = 0;
  while (pos < line.size()) {
    const std::size_t end = std::min(line.find(' ', pos), line.size());
    if (end > pos)
      seq.tokens.emplace_back(line.substr(pos, end - pos));
    pos = end + 1;
  }
  return seq;
}

namespace {
// Bracket atom body, e.g. "13CH3+:7" for "[13CH3+:7]".
Atom parse_bracket(std::string_view body, std::size_t pos) {
  auto fail = [&](const std::string &why) -> ParseError {
    return ParseError("malformed bracket atom [" + std::string(body)
                          + "]: " + why,
                      pos);
  };

  Atom atom;
  std::size_t i = 0;
  auto read_int = [&]() -> std::optional<int> {
    const std::size_t start = i;
    while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i])))
      ++i;
    if (i == start)
      return std::nullopt;
    if (i - start > 6)
      throw fail("number too long");
    return std::stoi(std::string(body.substr(start, i - start)));
  };

  atom.isotope = read_int();
  if (atom.isotope && *atom.isotope == 0)
    throw fail("isotope must be positive");

  if (i >= body.size())
    throw fail("missing element symbol");
  if (std::isupper(static_cast<unsigned char>(body[i]))) {
    if (i + 1 < body.size()
        && std::islower(static_cast<unsigned char>(body[i + 1]))
        && atomic_number(body.substr(i, 2)) != 0) {
      atom.element = body.substr(i, 2);
      i += 2;
    } else if (atomic_number(body.substr(i, 1)) != 0) {
      atom.element = body.substr(i, 1);
      i += 1;
    } else {
      throw fail("unknown element");
    }
  } else if (std::islower(static_cast<unsigned char>(body[i]))) {
    static constexpr std::string_view kTwo[] = { "se", "as", "te" };
    static constexpr std::string_view kOne[] = { "b", "c", "n", "o", "p", "s" };
    std::string_view found;
    for (auto sym: kTwo) {
      if (body.substr(i, 2) == sym)
        found = sym;
    }
    if (found.empty()) {
      for (auto sym: kOne) {
        if (body.substr(i, 1) == sym)
          found = sym;
      }
    }
    if (found.empty())
      throw fail("unknown aromatic element");
    atom.element = std::string(found);
    atom.element[0] = static_cast<char>(std::toupper(atom.element[0]));
    atom.aromatic = true;
    i += found.size();
  } else {
    throw fail("missing element symbol");
  }

  if (i < body.size() && body[i] == '@') {
    ++i;
    atom.chirality = Chirality::kAnticlockwise;
    if (i < body.size() && body[i] == '@') {
      ++i;
      atom.chirality = Chirality::kClockwise;
    }
    if (i < body.size() && std::isupper(static_cast<unsigned char>(body[i]))
        && body[i] != 'H')
      throw fail("only @ and @@ chirality are supported");
  }

  atom.explicit_h = 0;
  if (i < body.size() && body[i] == 'H') {
    ++i;
    atom.explicit_h = read_int().value_or(1);
  }

  if (i < body.size() && (body[i] == '+' || body[i] == '-')) {
    const char sign = body[i++];
    int magnitude = 1;
    if (auto n = read_int()) {
      magnitude = *n;
    } else {
      while (i < body.size() && body[i] == sign) {
        ++magnitude;
        ++i;
      }
    }
    atom.charge = sign == '+' ? magnitude : -magnitude;
  }

  if (i < body.size() && body[i] == ':') {
    ++i;
    auto n = read_int();
    if (!n)
      throw fail("missing map number");
    if (*n > 0)
      atom.map_num = *n;
  }

  if (i != body.size())
    throw fail("unexpected trailing characters");
  return atom;
}

struct PendingBond {
  char symbol;
  std::size_t pos;
};

std::pair<BondOrder, BondStereo> bond_from_symbol(char c, std::size_t pos) {
  switch (c) {
  case '-':
    return { BondOrder::kSingle, BondStereo::kNone };
  case '=':
    return { BondOrder::kDouble, BondStereo::kNone };
  case '#':
    return { BondOrder::kTriple, BondStereo::kNone };
  case ':':
    return { BondOrder::kAromatic, BondStereo::kNone };
  case '/':
    return { BondOrder::kSingle, BondStereo::kUp };
  case '\\':
    return { BondOrder::kSingle, BondStereo::kDown };
  default:
    throw ParseError(std::string("unsupported bond symbol '") + c + "'", pos);
  }
}

struct RingOpen {
  int atom;
  std::optional<PendingBond> bond;
  std::size_t pos;
};
}  // namespace

Molecule parse(std::string_view s) {
  const TokenSeq seq = tokenize(s);
  if (seq.tokens.empty())
    throw ParseError("empty SMILES", 0);

  Molecule mol;
  int prev = -1;
  std::optional<PendingBond> pending;
  std::vector<std::pair<int, std::size_t>> branches;
  std::map<int, RingOpen> rings;
  std::string_view last_token;

  auto connect = [&](int a, int b, std::optional<PendingBond> bond,
                     std::size_t pos) {
    BondOrder order = mol.atom(a).aromatic && mol.atom(b).aromatic
                          ? BondOrder::kAromatic
                          : BondOrder::kSingle;
    BondStereo stereo = BondStereo::kNone;
    if (bond)
      std::tie(order, stereo) = bond_from_symbol(bond->symbol, bond->pos);
    if (mol.find_bond(a, b))
      throw ParseError("duplicate bond", pos);
    mol.add_bond(a, b, order, stereo);
  };

  std::size_t pos = 0;
  for (const std::string &tok: seq.tokens) {
    const std::size_t here = pos;
    pos += tok.size();
    const char c = tok[0];

    if (tok == kSplitToken)
      throw ParseError("split token inside SMILES", here);

    if (c == '[' || std::isalpha(static_cast<unsigned char>(c))) {
      Atom atom;
      if (c == '[') {
        atom = parse_bracket(std::string_view(tok).substr(1, tok.size() - 2),
                             here);
      } else if (std::islower(static_cast<unsigned char>(c))) {
        atom.element = std::string(1, static_cast<char>(std::toupper(c)));
        atom.aromatic = true;
      } else {
        atom.element = tok;
      }
      int idx;
      try {
        idx = mol.add_atom(std::move(atom));
      } catch (const GraphError &e) {
        throw ParseError(e.what(), here);
      }
      if (prev >= 0) {
        connect(prev, idx, pending, here);
      } else if (pending) {
        throw ParseError("bond symbol without a preceding atom", pending->pos);
      }
      pending.reset();
      prev = idx;
    } else if (is_bond_char(c)) {
      if (prev < 0)
        throw ParseError("bond symbol without a preceding atom", here);
      if (pending)
        throw ParseError("consecutive bond symbols", here);
      pending = PendingBond { c, here };
    } else if (c == '(') {
      if (prev < 0)
        throw ParseError("branch without a preceding atom", here);
      if (pending)
        throw ParseError("dangling bond before branch", pending->pos);
      branches.emplace_back(prev, here);
    } else if (c == ')') {
      if (branches.empty())
        throw ParseError("unbalanced parenthesis", here);
      if (pending)
        throw ParseError("dangling bond at end of branch", pending->pos);
      if (last_token == "(")
        throw ParseError("empty branch", here);
      prev = branches.back().first;
      branches.pop_back();
    } else if (c == '.') {
      if (pending)
        throw ParseError("dangling bond before '.'", pending->pos);
      if (prev < 0)
        throw ParseError("empty component", here);
      if (!branches.empty())
        throw ParseError("'.' inside a branch", here);
      prev = -1;
    } else {
      // ring closure: digit or %NN
      if (prev < 0)
        throw ParseError("ring closure without a preceding atom", here);
      const int label = c == '%' ? std::stoi(tok.substr(1)) : c - '0';
      auto it = rings.find(label);
      if (it == rings.end()) {
        rings.emplace(label, RingOpen { prev, pending, here });
      } else {
        const RingOpen open = it->second;
        rings.erase(it);
        if (open.atom == prev)
          throw ParseError("ring closure to the same atom", here);
        std::optional<PendingBond> bond = open.bond ? open.bond : pending;
        if (open.bond && pending && open.bond->symbol != pending->symbol)
          throw ParseError("conflicting ring-closure bond symbols", here);
        connect(open.atom, prev, bond, here);
      }
      pending.reset();
    }
    last_token = tok;
  }

  if (pending)
    throw ParseError("dangling bond symbol", pending->pos);
  if (!branches.empty())
    throw ParseError("unbalanced parenthesis", branches.back().second);
  if (!rings.empty()) {
    const auto &[label, open] = *rings.begin();
    throw ParseError("unmatched ring closure " + std::to_string(label),
                     open.pos);
  }
  if (prev < 0)
    throw ParseError("trailing '.'", s.size());
  return mol;
}

namespace {
std::string bond_symbol(const Molecule &m, int bond_id, int from) {
  const Bond &bond = m.bond(bond_id);
  const bool both_aromatic = m.atom(bond.a).aromatic && m.atom(bond.b).aromatic;
  switch (bond.order) {
  case BondOrder::kDouble:
    return "=";
  case BondOrder::kTriple:
    return "#";
  case BondOrder::kAromatic:
    return both_aromatic ? "" : ":";
  case BondOrder::kSingle:
    break;
  }
  if (bond.stereo != BondStereo::kNone) {
    const bool up = (bond.stereo == BondStereo::kUp) == (from == bond.a);
    return up ? "/" : "\\";
  }
  return both_aromatic ? "-" : "";
}

// Whether the atom collapses to organic-subset form (hydrogens implied).
bool organic_form(const Molecule &m, int i) {
  const Atom &a = m.atom(i);
  if (a.charge != 0 || a.isotope || a.chirality != Chirality::kNone)
    return false;
  if (a.aromatic ? !is_aromatic_organic(a.element) : !is_organic(a.element))
    return false;
  if (!a.explicit_h)
    return true;
  // A bracket count equal to the valence-implied count is redundant.
  return *a.explicit_h == valence_hydrogens(m, i);
}

std::string atom_text(const Molecule &m, int i, bool keep_maps,
                      bool lossless) {
  const Atom &a = m.atom(i);
  const bool organic = organic_form(m, i);
  const bool mapped = keep_maps && a.map_num.has_value();

  std::string symbol = a.element;
  if (a.aromatic)
    symbol[0] = static_cast<char>(std::tolower(symbol[0]));
  if (organic && !mapped)
    return symbol;

  std::string out = "[";
  if (a.isotope)
    out += std::to_string(*a.isotope);
  out += symbol;
  if (a.chirality == Chirality::kAnticlockwise)
    out += "@";
  else if (a.chirality == Chirality::kClockwise)
    out += "@@";
  // Mapped organic atoms leave their hydrogens to valence, as in the
  // atom-mapped rooted strings of the worked example.
  if (!organic || (mapped && lossless)) {
    const int h = total_hydrogens(m, i);
    if (h == 1)
      out += "H";
    else if (h > 1)
      out += "H" + std::to_string(h);
  }
  if (a.charge != 0) {
    out += a.charge > 0 ? "+" : "-";
    if (std::abs(a.charge) > 1)
      out += std::to_string(std::abs(a.charge));
  }
  if (mapped)
    out += ":" + std::to_string(*a.map_num);
  out += "]";
  return out;
}

// Spanning tree and ring-closure layout of one depth-first walk.
struct Walk {
  std::vector<int> order;
  std::vector<int> parent_bond;
  std::vector<std::vector<int>> children;  // child atoms, visit order
  std::vector<std::vector<int>> opens;     // ring bonds opened at an atom
  std::vector<std::vector<int>> closes;    // ring bonds closed at an atom
};

Walk plan_walk(const Molecule &m, int root, const std::vector<int> &rank) {
  const int n = m.num_atoms();
  Walk w;
  w.parent_bond.assign(n, -1);
  w.children.resize(n);
  w.opens.resize(n);
  w.closes.resize(n);
  std::vector<bool> visited(n, false), used(m.num_bonds(), false);
  std::vector<int> ring_open_atom(m.num_bonds(), -1);

  struct Frame {
    int atom;
    std::vector<Neighbor> nbs;
    std::size_t next;
  };
  auto sorted_neighbors = [&](int u) {
    std::vector<Neighbor> nbs(m.neighbors(u).begin(), m.neighbors(u).end());
    std::sort(nbs.begin(), nbs.end(), [&](const Neighbor &x, const Neighbor &y) {
      return std::tie(rank[x.atom], x.atom) < std::tie(rank[y.atom], y.atom);
    });
    return nbs;
  };

  std::vector<Frame> stack;
  visited[root] = true;
  w.order.push_back(root);
  stack.push_back({ root, sorted_neighbors(root), 0 });
  while (!stack.empty()) {
    Frame &f = stack.back();
    if (f.next == f.nbs.size()) {
      stack.pop_back();
      continue;
    }
    const Neighbor nb = f.nbs[f.next++];
    if (used[nb.bond])
      continue;
    used[nb.bond] = true;
    const int u = f.atom;
    if (visited[nb.atom]) {
      // back edge: the ring opens at the ancestor and closes here
      w.opens[nb.atom].push_back(nb.bond);
      w.closes[u].push_back(nb.bond);
      ring_open_atom[nb.bond] = nb.atom;
      continue;
    }
    visited[nb.atom] = true;
    w.parent_bond[nb.atom] = nb.bond;
    w.children[u].push_back(nb.atom);
    w.order.push_back(nb.atom);
    stack.push_back({ nb.atom, sorted_neighbors(nb.atom), 0 });
  }
  if (static_cast<int>(w.order.size()) != n)
    throw GraphError("rooted SMILES requires a connected molecule");

  std::vector<int> position(n);
  for (int i = 0; i < n; ++i)
    position[w.order[i]] = i;
  // Openings follow the order in which their partners are reached;
  // closings follow the order their labels were opened.
  for (int u = 0; u < n; ++u) {
    std::sort(w.opens[u].begin(), w.opens[u].end(), [&](int x, int y) {
      const int px = position[m.bond(x).other(u)];
      const int py = position[m.bond(y).other(u)];
      return std::tie(px, x) < std::tie(py, y);
    });
  }
  std::vector<int> open_rank(m.num_bonds(), 0);
  for (int u: w.order) {
    for (std::size_t k = 0; k < w.opens[u].size(); ++k)
      open_rank[w.opens[u][k]] = position[u] * (m.num_bonds() + 1)
                                 + static_cast<int>(k);
  }
  for (int u = 0; u < n; ++u) {
    std::sort(w.closes[u].begin(), w.closes[u].end(),
              [&](int x, int y) { return open_rank[x] < open_rank[y]; });
  }
  return w;
}

std::string ring_label(int digit) {
  return digit < 10 ? std::string(1, static_cast<char>('0' + digit))
                    : "%" + std::to_string(digit);
}

class Emitter {
public:
  Emitter(const Molecule &m, const Walk &w, bool keep_maps, bool lossless)
      : m_(m), w_(w), keep_maps_(keep_maps), lossless_(lossless),
        digit_(m.num_bonds(), -1) { }

  std::string run(int root) {
    // Iterative pre-order emission; parentheses wrap all but the last child.
    struct Item {
      int atom;
      bool branch;
      bool close_paren;
    };
    std::vector<Item> stack { { root, false, false } };
    while (!stack.empty()) {
      const Item item = stack.back();
      stack.pop_back();
      if (item.close_paren) {
        out_ += ")";
        continue;
      }
      const int u = item.atom;
      if (item.branch)
        out_ += "(";
      if (w_.parent_bond[u] >= 0) {
        const int parent = m_.bond(w_.parent_bond[u]).other(u);
        out_ += bond_symbol(m_, w_.parent_bond[u], parent);
      }
      emit_atom(u);

      const auto &kids = w_.children[u];
      if (item.branch)
        stack.push_back({ -1, false, true });
      for (std::size_t k = kids.size(); k-- > 0;) {
        const bool branch = k + 1 < kids.size();
        stack.push_back({ kids[k], branch, false });
      }
    }
    return std::move(out_);
  }

private:
  void emit_atom(int u) {
    out_ += atom_text(m_, u, keep_maps_, lossless_);
    for (int b: w_.closes[u]) {
      out_ += ring_label(digit_[b]);
      in_use_.erase(digit_[b]);
    }
    for (int b: w_.opens[u]) {
      int d = 1;
      while (in_use_.count(d) != 0)
        ++d;
      in_use_.insert(d);
      digit_[b] = d;
      out_ += bond_symbol(m_, b, u);
      out_ += ring_label(d);
    }
  }

  const Molecule &m_;
  const Walk &w_;
  bool keep_maps_;
  bool lossless_;
  std::vector<int> digit_;
  std::set<int> in_use_;
  std::string out_;
};
}  // namespace

namespace {
RootedSmiles write_tree(const Molecule &m, const WriteOrder &order,
                        bool keep_maps, bool lossless) {
  if (order.root < 0 || order.root >= m.num_atoms())
    throw InvalidRootError("root atom " + std::to_string(order.root)
                           + " out of range");
  std::vector<int> rank = order.neighbor_rank;
  if (static_cast<int>(rank.size()) != m.num_atoms()) {
    rank.resize(m.num_atoms());
    std::iota(rank.begin(), rank.end(), 0);
  }
  const Walk walk = plan_walk(m, order.root, rank);
  RootedSmiles out;
  out.smiles = Emitter(m, walk, keep_maps, lossless).run(order.root);
  out.atom_order = walk.order;
  return out;
}
}  // namespace

RootedSmiles write_rooted_traced(const Molecule &m, const WriteOrder &order,
                                 bool keep_maps) {
  return write_tree(m, order, keep_maps, false);
}

std::string write_rooted(const Molecule &m, const WriteOrder &order,
                         bool keep_maps) {
  return write_rooted_traced(m, order, keep_maps).smiles;
}

std::vector<int> canonical_ranks(const Molecule &m) {
  using Key = std::tuple<int, int, int, int, int, bool, int>;
  std::vector<Key> keys;
  keys.reserve(m.num_atoms());
  for (int i = 0; i < m.num_atoms(); ++i) {
    const Atom &a = m.atom(i);
    keys.emplace_back(m.degree(i), atomic_number(a.element),
                      a.isotope.value_or(0), a.charge, total_hydrogens(m, i),
                      a.aromatic, static_cast<int>(a.chirality));
  }
  std::vector<int> order(keys.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return keys[x] < keys[y]; });
  std::vector<std::uint64_t> initial(keys.size());
  for (std::size_t i = 1; i < order.size(); ++i) {
    initial[order[i]] = initial[order[i - 1]]
                        + (keys[order[i - 1]] < keys[order[i]] ? 1 : 0);
  }

  std::vector<int> ranks = refine_classes(m, initial);
  const int n = m.num_atoms();
  while (true) {
    // lowest rank value shared by more than one atom
    std::vector<int> count(n, 0);
    for (int r: ranks)
      ++count[r];
    int tied = -1;
    for (int r = 0; r < n; ++r) {
      if (count[r] > 1) {
        tied = r;
        break;
      }
    }
    if (tied < 0)
      break;
    int pick = -1;
    for (int i = 0; i < n; ++i) {
      if (ranks[i] == tied) {
        pick = i;
        break;
      }
    }
    std::vector<std::uint64_t> split(n);
    for (int i = 0; i < n; ++i) {
      split[i] = 2 * static_cast<std::uint64_t>(ranks[i])
                 + (ranks[i] == tied && i != pick ? 1 : 0);
    }
    ranks = refine_classes(m, std::move(split));
  }
  return ranks;
}

std::string write_fragments(const Molecule &m, const std::vector<int> &rank,
                            bool keep_maps) {
  int count = 0;
  const std::vector<int> comp = fragment_ids(m, &count);
  std::vector<std::vector<int>> members(count);
  for (int i = 0; i < m.num_atoms(); ++i)
    members[comp[i]].push_back(i);

  std::string out;
  for (int c = 0; c < count; ++c) {
    std::vector<int> sub_rank;
    const Molecule frag = induced_subgraph(m, members[c]);
    for (int a: members[c])
      sub_rank.push_back(rank[a]);
    const int root = static_cast<int>(
        std::min_element(sub_rank.begin(), sub_rank.end()) - sub_rank.begin());
    if (c > 0)
      out += '.';
    out += write_rooted(frag, { root, sub_rank }, keep_maps);
  }
  return out;
}

std::string write_mapped(const Molecule &m) {
  std::string out;
  for (const Molecule &frag: split_fragments(m)) {
    const std::vector<int> rank = canonical_ranks(frag);
    const int root = static_cast<int>(
        std::min_element(rank.begin(), rank.end()) - rank.begin());
    if (!out.empty())
      out += '.';
    out += write_tree(frag, { root, rank }, true, true).smiles;
  }
  return out;
}

namespace {
// Flipping every '/' and '\' mark around a double bond leaves the
// configuration unchanged. Marks are grouped by the double bonds they touch
// and each group is flipped if needed so that its first written mark is '/'.
Molecule normalize_marks(const Molecule &m, int root,
                         const std::vector<int> &rank) {
  std::vector<int> marked;
  for (int b = 0; b < m.num_bonds(); ++b) {
    if (m.bond(b).stereo != BondStereo::kNone)
      marked.push_back(b);
  }
  if (marked.empty())
    return m;

  std::vector<int> parent(m.num_atoms());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x)
      x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<bool> in_double(m.num_atoms(), false);
  for (const Bond &b: m.bonds()) {
    if (b.order == BondOrder::kDouble) {
      in_double[b.a] = in_double[b.b] = true;
      parent[find(b.a)] = find(b.b);
    }
  }
  std::map<int, int> group;  // bond -> group representative atom
  for (int b: marked) {
    const Bond &bond = m.bond(b);
    if (in_double[bond.a] && in_double[bond.b])
      parent[find(bond.a)] = find(bond.b);
  }
  for (int b: marked) {
    const Bond &bond = m.bond(b);
    group[b] = find(in_double[bond.a] || !in_double[bond.b] ? bond.a : bond.b);
  }

  const Walk walk = plan_walk(m, root, rank);
  std::vector<int> position(m.num_atoms());
  for (int i = 0; i < static_cast<int>(walk.order.size()); ++i)
    position[walk.order[i]] = i;
  // group -> (written position, symbol) of its first mark
  std::map<int, std::pair<int, std::string>> first;
  auto note = [&](int b, int pos, int from) {
    auto it = first.find(group[b]);
    if (it == first.end() || pos < it->second.first)
      first[group[b]] = { pos, bond_symbol(m, b, from) };
  };
  for (int b: marked) {
    const Bond &bond = m.bond(b);
    for (int child: { bond.a, bond.b }) {
      if (walk.parent_bond[child] == b)
        note(b, 2 * position[child], bond.other(child));
    }
    for (int u: { bond.a, bond.b }) {
      const auto &opens = walk.opens[u];
      if (std::find(opens.begin(), opens.end(), b) != opens.end())
        note(b, 2 * position[u] + 1, u);
    }
  }

  Molecule out;
  for (const Atom &a: m.atoms())
    out.add_atom(a);
  for (int b = 0; b < m.num_bonds(); ++b) {
    const Bond &bond = m.bond(b);
    BondStereo stereo = bond.stereo;
    if (stereo != BondStereo::kNone && first[group[b]].second == "\\")
      stereo = stereo == BondStereo::kUp ? BondStereo::kDown : BondStereo::kUp;
    out.add_bond(bond.a, bond.b, bond.order, stereo);
  }
  return out;
}
}  // namespace

std::string write_canonical(const Molecule &m) {
  Molecule bare = m;
  for (int i = 0; i < bare.num_atoms(); ++i)
    bare.set_map_num(i, std::nullopt);

  std::vector<std::string> parts;
  for (const Molecule &frag: split_fragments(bare)) {
    const std::vector<int> rank = canonical_ranks(frag);
    const int root = static_cast<int>(
        std::min_element(rank.begin(), rank.end()) - rank.begin());
    parts.push_back(
        write_rooted(normalize_marks(frag, root, rank), { root, rank }, false));
  }
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0)
      out += '.';
    out += parts[i];
  }
  return out;
}

namespace {
// One random SMILES rooted at `root`; the other fragments follow in random
// order, each from a random atom.
std::string random_smiles(const Molecule &m, int root, Rng &rng) {
  std::vector<int> rank(m.num_atoms());
  std::iota(rank.begin(), rank.end(), 0);
  shuffle(std::span<int>(rank), rng);

  int count = 0;
  const std::vector<int> comp = fragment_ids(m, &count);
  std::vector<int> frag_order;
  for (int c = 0; c < count; ++c) {
    if (c != comp[root])
      frag_order.push_back(c);
  }
  shuffle(std::span<int>(frag_order), rng);
  frag_order.insert(frag_order.begin(), comp[root]);

  std::string out;
  for (int c: frag_order) {
    std::vector<int> members, sub_rank;
    for (int i = 0; i < m.num_atoms(); ++i) {
      if (comp[i] == c) {
        members.push_back(i);
        sub_rank.push_back(rank[i]);
      }
    }
    int sub_root = 0;
    if (c == comp[root]) {
      sub_root = static_cast<int>(
          std::find(members.begin(), members.end(), root) - members.begin());
    } else {
      sub_root = static_cast<int>(
          std::min_element(sub_rank.begin(), sub_rank.end())
          - sub_rank.begin());
    }
    if (!out.empty())
      out += '.';
    out += write_rooted(induced_subgraph(m, members), { sub_root, sub_rank },
                        false);
  }
  return out;
}
}  // namespace

std::vector<std::string> enumerate_random(const Molecule &m, int count,
                                          std::uint64_t seed) {
  std::vector<std::string> out;
  if (m.empty() || count < 1)
    return out;

  Rng rng(seed);
  const int n = m.num_atoms();
  std::vector<int> roots(n);
  std::iota(roots.begin(), roots.end(), 0);
  shuffle(std::span<int>(roots), rng);

  Molecule bare = m;
  for (int i = 0; i < n; ++i)
    bare.set_map_num(i, std::nullopt);

  std::set<std::string> seen;
  for (int k = 0; k < count; ++k) {
    const int root = k < n ? roots[k]
                           : static_cast<int>(uniform_below(rng, n));
    std::string s = random_smiles(bare, root, rng);
    if (seen.insert(s).second)
      out.push_back(std::move(s));
  }
  return out;
}

}  // namespace rsmiles
