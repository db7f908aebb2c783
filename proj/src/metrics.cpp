//
// Copyright 2026 The rsmiles Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "rsmiles/metrics.h"

#include <algorithm>
#include <map>
#include <numeric>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "rsmiles/augment.h"
#include "rsmiles/error.h"
#include "rsmiles/parallel.h"
#include "rsmiles/random.h"
#include "rsmiles/scoring.h"
#include "rsmiles/smiles.h"

namespace rsmiles {
namespace {
template <class Seq>
std::size_t levenshtein(const Seq &a, const Seq &b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  std::iota(prev.begin(), prev.end(), std::size_t { 0 });
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({ prev[j] + 1, cur[j - 1] + 1, sub });
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

Molecule all_reactants(const Reaction &rxn) {
  Molecule out;
  for (const Molecule &r: rxn.reactants)
    out = combine(out, r);
  return out;
}

std::string random_string(const Molecule &m, std::uint64_t seed) {
  if (m.empty())
    return "";
  return enumerate_random(m, 1, seed).front();
}

void check_lengths(std::size_t a, std::size_t b) {
  if (a != b) {
    throw ConfigError("length mismatch: " + std::to_string(a)
                      + " prediction lists for " + std::to_string(b)
                      + " records");
  }
}

// 1-based rank of the first prediction satisfying `hit`, 0 for none.
template <class Hit>
std::vector<int> first_hits(
    const std::vector<std::vector<std::string>> &predictions,
    const std::vector<std::string> &truths, Hit hit) {
  check_lengths(predictions.size(), truths.size());
  std::vector<int> out(truths.size(), 0);
  for (std::size_t i = 0; i < truths.size(); ++i) {
    for (std::size_t k = 0; k < predictions[i].size(); ++k) {
      if (hit(predictions[i][k], truths[i])) {
        out[i] = static_cast<int>(k) + 1;
        break;
      }
    }
  }
  return out;
}

std::vector<double> accuracies(const std::vector<int> &hits,
                               const std::vector<int> &ks) {
  std::vector<double> out;
  for (int k: ks) {
    std::size_t n = 0;
    for (int h: hits)
      n += (h > 0 && h <= k) ? 1 : 0;
    out.push_back(hits.empty() ? 0.0
                               : static_cast<double>(n)
                                     / static_cast<double>(hits.size()));
  }
  return out;
}

bool exact_hit(const std::string &pred, const std::string &truth) {
  auto p = canonicalize(pred);
  auto t = canonicalize(truth);
  return p && t && *p == *t;
}

bool maxfrag_hit(const std::string &pred, const std::string &truth) {
  const std::string p = largest_fragment(pred);
  return !p.empty() && p == largest_fragment(truth);
}

int ring_bond_hits(const std::vector<int> &ring_bonds,
                   const std::vector<int> &bonds) {
  int n = 0;
  for (int b: bonds)
    n += std::binary_search(ring_bonds.begin(), ring_bonds.end(), b) ? 1 : 0;
  return n;
}
}  // namespace

std::size_t edit_distance(std::string_view a, std::string_view b) {
  return levenshtein(a, b);
}

std::size_t token_edit_distance(const std::vector<std::string> &a,
                                const std::vector<std::string> &b) {
  return levenshtein(a, b);
}

double DatasetStats::reduction() const {
  if (mean_edit_distance_plain <= 0)
    return 0;
  return 1.0 - mean_edit_distance_aligned / mean_edit_distance_plain;
}

DatasetStats table2_stats(const std::vector<Reaction> &rxns,
                          const StatsOptions &opts) {
  if (opts.factor < 1)
    throw ConfigError("augmentation factor must be >= 1");

  auto dist = [&](const std::string &a, const std::string &b) {
    if (opts.token_level)
      return token_edit_distance(tokenize(a).tokens, tokenize(b).tokens);
    return edit_distance(a, b);
  };

  struct Row {
    std::size_t product_len = 0, reactant_len = 0, plain = 0, aligned = 0;
  };
  std::vector<Row> rows(rxns.size());
  parallel_for(rxns.size(), opts.threads, [&](std::size_t i) {
    const Reaction &rxn = rxns[i];
    const Molecule reactants = all_reactants(rxn);
    const std::string canon_p = write_canonical(rxn.product());
    const std::string canon_r = write_canonical(reactants);
    Row &row = rows[i];
    row.product_len = canon_p.size();
    row.reactant_len = canon_r.size();

    Rng rng(record_seed(opts.seed, i));
    row.plain = dist(canon_p, canon_r);
    for (int k = 1; k < opts.factor; ++k) {
      const std::uint64_t ps = rng();
      const std::uint64_t rs = rng();
      row.plain += dist(random_string(rxn.product(), ps),
                        random_string(reactants, rs));
    }

    AugmentConfig cfg { opts.factor, record_seed(opts.seed, i), Task::kP2R };
    for (const AlignedPair &p: augment_training(rxn, cfg))
      row.aligned += dist(p.source, p.target);
  });

  DatasetStats s;
  s.n_records = rxns.size();
  s.factor = opts.factor;
  if (rxns.empty())
    return s;
  double plen = 0, rlen = 0, plain = 0, aligned = 0;
  for (const Row &row: rows) {
    plen += static_cast<double>(row.product_len);
    rlen += static_cast<double>(row.reactant_len);
    plain += static_cast<double>(row.plain);
    aligned += static_cast<double>(row.aligned);
  }
  const double n = static_cast<double>(rxns.size());
  const double pairs = n * opts.factor;
  s.mean_product_len = plen / n;
  s.mean_reactant_len = rlen / n;
  s.mean_edit_distance_plain = plain / pairs;
  s.mean_edit_distance_aligned = aligned / pairs;
  return s;
}

std::vector<double> topk_accuracy(
    const std::vector<std::vector<std::string>> &predictions,
    const std::vector<std::string> &truths, const std::vector<int> &ks) {
  return accuracies(first_hits(predictions, truths, exact_hit), ks);
}

std::vector<double> maxfrag_accuracy(
    const std::vector<std::vector<std::string>> &predictions,
    const std::vector<std::string> &truths, const std::vector<int> &ks) {
  return accuracies(first_hits(predictions, truths, maxfrag_hit), ks);
}

std::string largest_fragment(std::string_view smiles) {
  if (smiles.empty())
    return "";
  try {
    const std::vector<Molecule> frags = split_fragments(parse(smiles));
    const int big = largest_index(frags);
    return big < 0 ? "" : write_canonical(frags[big]);
  } catch (const Error &) {
    return "";
  }
}

std::string_view ring_kind_name(RingKind kind) {
  switch (kind) {
  case RingKind::kNonRing:
    return "non_ring";
  case RingKind::kRingOpening:
    return "ring_opening";
  case RingKind::kRingForming:
    return "ring_forming";
  }
  return "non_ring";
}

ReactionClass classify_reaction(const Reaction &rxn) {
  const BondDiff diff = bond_diff(rxn);
  const Molecule &product = rxn.product();

  const int forming = ring_bond_hits(ring_bond_set(product), diff.broken);
  int opening = 0;
  std::map<int, std::vector<int>> formed_by_reactant;
  for (const MappedBond &mb: diff.formed)
    formed_by_reactant[mb.molecule].push_back(mb.bond);
  for (const auto &[r, bonds]: formed_by_reactant)
    opening += ring_bond_hits(ring_bond_set(rxn.reactants[r]), bonds);

  ReactionClass c;
  if (forming > 0 || opening > 0) {
    c.kind = forming >= opening ? RingKind::kRingForming
                                : RingKind::kRingOpening;
  }

  auto chiral = [](const Molecule &m) {
    for (const Atom &a: m.atoms()) {
      if (a.chirality != Chirality::kNone)
        return true;
    }
    return false;
  };
  for (const auto *side: { &rxn.reactants, &rxn.reagents, &rxn.products }) {
    for (const Molecule &m: *side)
      c.chirality = c.chirality || chiral(m);
  }

  for (const Molecule &r: rxn.reactants) {
    for (const Atom &a: r.atoms()) {
      if (a.is_hydrogen())
        continue;
      if (!a.map_num || !product.find_map(*a.map_num))
        ++c.new_atom_count;
    }
  }
  return c;
}

std::string new_atom_bin(int count) {
  if (count <= 3)
    return std::to_string(count);
  if (count <= 5)
    return "4-5";
  if (count <= 10)
    return "6-10";
  return "11+";
}

CohortReport cohort_report(
    const std::vector<Reaction> &rxns, const std::vector<AlignedPair> &pairs,
    const std::vector<std::vector<std::string>> &predictions,
    const std::vector<int> &ks) {
  check_lengths(pairs.size(), rxns.size());
  if (!predictions.empty())
    check_lengths(predictions.size(), rxns.size());

  std::vector<int> hits;
  if (!predictions.empty()) {
    std::vector<std::string> truths;
    for (const AlignedPair &p: pairs)
      truths.push_back(p.target);
    hits = first_hits(predictions, truths, exact_hit);
  }

  // (group, bucket) -> record indices, groups in fixed order
  const std::vector<std::string> groups { "all", "kind", "chirality",
                                          "new_atoms" };
  std::map<std::pair<int, std::string>, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < rxns.size(); ++i) {
    const ReactionClass c = classify_reaction(rxns[i]);
    members[{ 0, "all" }].push_back(i);
    members[{ 1, std::string(ring_kind_name(c.kind)) }].push_back(i);
    members[{ 2, c.chirality ? "chiral" : "achiral" }].push_back(i);
    members[{ 3, new_atom_bin(c.new_atom_count) }].push_back(i);
  }

  CohortReport report;
  report.ks = ks;
  for (const auto &[key, idx]: members) {
    CohortRow row;
    row.group = groups[key.first];
    row.bucket = key.second;
    row.count = idx.size();
    double sum = 0;
    for (std::size_t i: idx)
      sum += static_cast<double>(edit_distance(pairs[i].source,
                                               pairs[i].target));
    row.mean_edit_distance = sum / static_cast<double>(idx.size());
    if (!hits.empty()) {
      std::vector<int> sub;
      for (std::size_t i: idx)
        sub.push_back(hits[i]);
      row.topk = accuracies(sub, ks);
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::string stats_tsv(const DatasetStats &s) {
  std::string out = "key\tvalue\n";
  out += fmt::format("n_records\t{}\n", s.n_records);
  out += fmt::format("factor\t{}\n", s.factor);
  out += fmt::format("mean_product_len\t{:.4f}\n", s.mean_product_len);
  out += fmt::format("mean_reactant_len\t{:.4f}\n", s.mean_reactant_len);
  out += fmt::format("mean_edit_distance_plain\t{:.4f}\n",
                     s.mean_edit_distance_plain);
  out += fmt::format("mean_edit_distance_aligned\t{:.4f}\n",
                     s.mean_edit_distance_aligned);
  out += fmt::format("reduction_percent\t{:.2f}\n", 100.0 * s.reduction());
  return out;
}

std::string stats_json(const DatasetStats &s) {
  nlohmann::ordered_json j;
  j["n_records"] = s.n_records;
  j["factor"] = s.factor;
  j["mean_product_len"] = s.mean_product_len;
  j["mean_reactant_len"] = s.mean_reactant_len;
  j["mean_edit_distance_plain"] = s.mean_edit_distance_plain;
  j["mean_edit_distance_aligned"] = s.mean_edit_distance_aligned;
  j["reduction"] = s.reduction();
  return j.dump(2) + "\n";
}

std::string cohort_tsv(const CohortReport &r) {
  std::string out = "group\tbucket\tcount\tmean_edit_distance";
  for (int k: r.ks)
    out += fmt::format("\ttop{}", k);
  out += "\n";
  for (const CohortRow &row: r.rows) {
    out += fmt::format("{}\t{}\t{}\t{:.4f}", row.group, row.bucket, row.count,
                       row.mean_edit_distance);
    for (std::size_t i = 0; i < r.ks.size(); ++i) {
      if (row.topk.empty())
        out += "\tNA";
      else
        out += fmt::format("\t{:.4f}", row.topk[i]);
    }
    out += "\n";
  }
  return out;
}

std::string cohort_json(const CohortReport &r) {
  nlohmann::ordered_json j;
  j["ks"] = r.ks;
  j["rows"] = nlohmann::ordered_json::array();
  for (const CohortRow &row: r.rows) {
    nlohmann::ordered_json e;
    e["group"] = row.group;
    e["bucket"] = row.bucket;
    e["count"] = row.count;
    e["mean_edit_distance"] = row.mean_edit_distance;
    if (!row.topk.empty()) {
      nlohmann::ordered_json acc;
      for (std::size_t i = 0; i < r.ks.size(); ++i)
        acc["top" + std::to_string(r.ks[i])] = row.topk[i];
      e["topk"] = acc;
    }
    j["rows"].push_back(e);
  }
  return j.dump(2) + "\n";
}

}  // namespace rsmiles
