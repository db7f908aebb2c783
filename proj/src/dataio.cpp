//
// Copyright 2026 The rsmiles Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "rsmiles/dataio.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rsmiles/error.h"
#include "rsmiles/parallel.h"
#include "rsmiles/smiles.h"

namespace rsmiles {
namespace {
std::string lower(std::string_view s) {
  std::string out(s);
  for (char &c: out)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

// Positions of '>' outside bracket atoms.
std::vector<std::size_t> arrow_positions(std::string_view s) {
  std::vector<std::size_t> out;
  bool in_bracket = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '[')
      in_bracket = true;
    else if (s[i] == ']')
      in_bracket = false;
    else if (s[i] == '>' && !in_bracket)
      out.push_back(i);
  }
  return out;
}

void check_reaction_field(std::string_view rxn, std::size_t line_no) {
  if (arrow_positions(rxn).size() != 2) {
    throw DataError(DataError::Kind::kFormat,
                    "line " + std::to_string(line_no)
                        + ": reaction must have the form "
                          "reactants>reagents>products",
                    line_no);
  }
}

std::vector<std::string> split_csv_row(std::string_view row,
                                       std::size_t line_no) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < row.size(); ++i) {
    const char c = row[i];
    if (quoted) {
      if (c == '"' && i + 1 < row.size() && row[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
  if (quoted) {
    throw DataError(DataError::Kind::kFormat,
                    "line " + std::to_string(line_no) + ": unterminated quote",
                    line_no);
  }
  out.push_back(std::move(field));
  return out;
}

std::vector<std::string_view> text_lines(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos)
      end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r')
      line.remove_suffix(1);
    out.push_back(line);
    pos = end + 1;
  }
  return out;
}

std::string read_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw DataError(DataError::Kind::kIo, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<Molecule> fragments_of(std::string_view smiles) {
  if (smiles.empty())
    return {};
  return split_fragments(parse(smiles));
}

bool single_ion(const std::vector<Molecule> &reactants) {
  if (reactants.size() != 1 || heavy_atom_count(reactants[0]) != 1)
    return false;
  for (const Atom &a: reactants[0].atoms()) {
    if (!a.is_hydrogen() && a.charge != 0)
      return true;
  }
  return false;
}

std::string join_mapped(const std::vector<Molecule> &mols) {
  std::string out;
  for (const Molecule &m: mols) {
    if (!out.empty())
      out += '.';
    out += write_mapped(m);
  }
  return out;
}
}  // namespace

std::optional<InputFormat> parse_format(std::string_view name) {
  const std::string n = lower(name);
  if (n == "lines" || n == "txt" || n == "smi")
    return InputFormat::kLines;
  if (n == "csv")
    return InputFormat::kCsv;
  return std::nullopt;
}

std::vector<RawRecord> read_dataset_text(std::string_view text,
                                         InputFormat format) {
  const std::vector<std::string_view> lines = text_lines(text);
  std::vector<RawRecord> out;

  if (format == InputFormat::kLines) {
    for (std::size_t i = 0; i < lines.size(); ++i) {
      std::string_view line = trim(lines[i]);
      if (line.empty())
        continue;
      const std::size_t ws = line.find_first_of(" \t");
      const std::string_view rxn = line.substr(0, ws);
      check_reaction_field(rxn, i + 1);
      out.push_back({ i + 1, std::string(rxn), std::nullopt, std::nullopt });
    }
    return out;
  }

  std::size_t header_line = 0;
  while (header_line < lines.size() && trim(lines[header_line]).empty())
    ++header_line;
  if (header_line == lines.size())
    return out;
  const std::vector<std::string> header =
      split_csv_row(lines[header_line], header_line + 1);
  int id_col = -1, class_col = -1, rxn_col = -1;
  for (int c = 0; c < static_cast<int>(header.size()); ++c) {
    const std::string name = lower(trim(header[c]));
    if (name == "id" && id_col < 0)
      id_col = c;
    else if (name == "class" && class_col < 0)
      class_col = c;
    else if ((name == "reaction_smiles" || name == "rxn_smiles"
              || name.find('>') != std::string::npos)
             && rxn_col < 0)
      rxn_col = c;
  }
  if (rxn_col < 0) {
    throw DataError(DataError::Kind::kFormat,
                    "line " + std::to_string(header_line + 1)
                        + ": CSV header has no reaction column",
                    header_line + 1);
  }

  for (std::size_t i = header_line + 1; i < lines.size(); ++i) {
    if (trim(lines[i]).empty())
      continue;
    const std::vector<std::string> row = split_csv_row(lines[i], i + 1);
    auto field = [&](int col) -> std::optional<std::string> {
      if (col < 0 || col >= static_cast<int>(row.size()))
        return std::nullopt;
      return std::string(trim(row[col]));
    };
    auto rxn = field(rxn_col);
    if (!rxn) {
      throw DataError(DataError::Kind::kFormat,
                      "line " + std::to_string(i + 1)
                          + ": missing reaction column",
                      i + 1);
    }
    check_reaction_field(*rxn, i + 1);
    out.push_back({ i + 1, std::move(*rxn), field(class_col), field(id_col) });
  }
  return out;
}

std::vector<RawRecord> read_dataset(const std::filesystem::path &path,
                                    InputFormat format) {
  return read_dataset_text(read_file(path), format);
}

CleanResult clean(const std::vector<RawRecord> &records,
                  const CleanOptions &opts) {
  enum class Outcome { kKept, kParseError, kNoProduct, kSingleIon };
  struct Slot {
    Outcome outcome = Outcome::kKept;
    std::vector<Reaction> reactions;
  };
  std::vector<Slot> slots(records.size());

  parallel_for(records.size(), opts.threads, [&](std::size_t i) {
    const RawRecord &rec = records[i];
    Slot &slot = slots[i];
    const std::string_view s = rec.reaction_smiles;
    const std::vector<std::size_t> arrows = arrow_positions(s);
    if (arrows.size() != 2) {
      slot.outcome = Outcome::kParseError;
      return;
    }
    std::vector<Molecule> reactants, reagents, products;
    try {
      reactants = fragments_of(s.substr(0, arrows[0]));
      reagents = fragments_of(s.substr(arrows[0] + 1, arrows[1] - arrows[0] - 1));
      products = fragments_of(s.substr(arrows[1] + 1));
    } catch (const Error &) {
      slot.outcome = Outcome::kParseError;
      return;
    }
    if (products.empty()) {
      slot.outcome = Outcome::kNoProduct;
      return;
    }
    if (single_ion(reactants)) {
      slot.outcome = Outcome::kSingleIon;
      return;
    }
    if (opts.mixed) {
      for (Molecule &r: reagents)
        reactants.push_back(std::move(r));
      reagents.clear();
    }
    for (Molecule &p: products) {
      Reaction rxn;
      rxn.reactants = reactants;
      rxn.reagents = reagents;
      rxn.products.push_back(std::move(p));
      rxn.source_id = rec.id;
      rxn.class_label = rec.class_label;
      slot.reactions.push_back(std::move(rxn));
    }
  });

  CleanResult result;
  result.report.input_records = records.size();
  for (Slot &slot: slots) {
    switch (slot.outcome) {
    case Outcome::kParseError:
      ++result.report.dropped_parse_error;
      break;
    case Outcome::kNoProduct:
      ++result.report.dropped_no_product;
      break;
    case Outcome::kSingleIon:
      ++result.report.dropped_single_ion;
      break;
    case Outcome::kKept:
      result.report.kept += slot.reactions.size();
      result.report.duplicated_multiproduct += slot.reactions.size() - 1;
      for (Reaction &r: slot.reactions)
        result.reactions.push_back(std::move(r));
      break;
    }
  }
  return result;
}

std::string reaction_smiles(const Reaction &rxn) {
  return join_mapped(rxn.reactants) + ">" + join_mapped(rxn.reagents) + ">"
         + join_mapped(rxn.products);
}

std::string clean_report_json(const CleanReport &r) {
  nlohmann::ordered_json j;
  j["input_records"] = r.input_records;
  j["kept"] = r.kept;
  j["duplicated_multiproduct"] = r.duplicated_multiproduct;
  j["dropped_no_product"] = r.dropped_no_product;
  j["dropped_single_ion"] = r.dropped_single_ion;
  j["dropped_parse_error"] = r.dropped_parse_error;
  return j.dump(2) + "\n";
}

void write_text(const std::filesystem::path &path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw DataError(DataError::Kind::kIo, "cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out)
    throw DataError(DataError::Kind::kIo, "write failed: " + path.string());
}

std::vector<std::string> read_lines(const std::filesystem::path &path) {
  const std::string text = read_file(path);
  std::vector<std::string> out;
  for (std::string_view line: text_lines(text))
    out.emplace_back(line);
  return out;
}

void write_pairs(const std::vector<AlignedPair> &pairs,
                 const std::filesystem::path &src_path,
                 const std::filesystem::path &tgt_path) {
  std::string src, tgt;
  for (const AlignedPair &p: pairs) {
    src += tokenize(p.source).spaced() + "\n";
    tgt += tokenize(p.target).spaced() + "\n";
  }
  write_text(src_path, src);
  write_text(tgt_path, tgt);
}

}  // namespace rsmiles
