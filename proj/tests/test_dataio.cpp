//
// Copyright 2026 The rsmiles Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "fixtures.h"
#include "rsmiles/align.h"
#include "rsmiles/dataio.h"
#include "rsmiles/error.h"
#include "rsmiles/smiles.h"

namespace rsmiles {
namespace {
namespace fs = std::filesystem;
using testing::kEsterReaction;

class TempDir: public ::testing::Test {
protected:
  void SetUp() override {
    const auto *info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path()
           / (std::string("rsmiles_dataio_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  static std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  fs::path dir_;
};

TEST(ParseFormat, Names) {
  EXPECT_EQ(parse_format("lines"), InputFormat::kLines);
  EXPECT_EQ(parse_format("CSV"), InputFormat::kCsv);
  EXPECT_FALSE(parse_format("xml"));
}

TEST(ReadDataset, LinesFormat) {
  const auto recs = read_dataset(testing::data_dir() / "ester.smi",
                                 InputFormat::kLines);
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0].reaction_smiles, kEsterReaction);
  EXPECT_EQ(recs[0].line_no, 1u);
  EXPECT_FALSE(recs[0].id);
}

TEST(ReadDataset, LinesIgnoreExtraFieldsAndBlankLines) {
  const auto recs = read_dataset_text(
      "\nCCO>>CC=O  some comment\r\n\n[CH4]>O>C\n", InputFormat::kLines);
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[0].reaction_smiles, "CCO>>CC=O");
  EXPECT_EQ(recs[0].line_no, 2u);
  EXPECT_EQ(recs[1].reaction_smiles, "[CH4]>O>C");
  EXPECT_EQ(recs[1].line_no, 4u);
}

TEST(ReadDataset, CsvHeaderDriven) {
  const auto recs = read_dataset_text(
      "Class,ID,reactants>reagents>production\n"
      "1,US1,CCO>>CC=O\n"
      "2,US2,\"CC(=O)O.N>>CC(N)=O\"\n"
      "3,US3,CCBr.O>>CCO\n",
      InputFormat::kCsv);
  ASSERT_EQ(recs.size(), 3u);
  EXPECT_EQ(recs[0].id, "US1");
  EXPECT_EQ(recs[1].class_label, "2");
  EXPECT_EQ(recs[1].reaction_smiles, "CC(=O)O.N>>CC(N)=O");
  EXPECT_EQ(recs[2].line_no, 4u);
}

TEST(ReadDataset, CsvNamedColumn) {
  const auto recs = read_dataset_text("id,rxn_smiles\na,C>>C\n",
                                      InputFormat::kCsv);
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0].reaction_smiles, "C>>C");
  EXPECT_FALSE(recs[0].class_label);
}

TEST(ReadDataset, BundledSample) {
  const auto recs = read_dataset(testing::data_dir() / "uspto_sample_1k.csv",
                                 InputFormat::kCsv);
  EXPECT_EQ(recs.size(), 1000u);
  for (const RawRecord &r: recs)
    EXPECT_TRUE(r.id);
}

TEST(ReadDataset, FormatErrorCarriesLine) {
  try {
    read_dataset_text("CCO>>CC=O\nCC>O\nC>>C\n", InputFormat::kLines);
    FAIL();
  } catch (const DataError &e) {
    EXPECT_EQ(e.kind(), DataError::Kind::kFormat);
    EXPECT_EQ(e.line(), 2u);
  }
  try {
    read_dataset_text("id,reaction_smiles\n1,C>>C\n2,C>C>C>C\n",
                      InputFormat::kCsv);
    FAIL();
  } catch (const DataError &e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(read_dataset_text("id,name\n1,x\n", InputFormat::kCsv),
               DataError);
}

TEST(ReadDataset, MissingFile) {
  try {
    read_dataset("/nonexistent/rsmiles.txt", InputFormat::kLines);
    FAIL();
  } catch (const DataError &e) {
    EXPECT_EQ(e.kind(), DataError::Kind::kIo);
    EXPECT_NE(std::string(e.what()).find("/nonexistent/rsmiles.txt"),
              std::string::npos);
  }
}

CleanResult clean_text(std::string_view text, CleanOptions opts = {}) {
  return clean(read_dataset_text(text, InputFormat::kLines), opts);
}

TEST(Clean, MultiProductExpanded) {
  const CleanResult r = clean_text("CC(=O)Cl.OCC>>CC(=O)OCC.Cl\n");
  ASSERT_EQ(r.reactions.size(), 2u);
  EXPECT_EQ(r.report.kept, 2u);
  EXPECT_EQ(r.report.duplicated_multiproduct, 1u);
  for (const Reaction &rxn: r.reactions)
    EXPECT_EQ(rxn.reactants.size(), 2u);
  EXPECT_EQ(write_canonical(r.reactions[0].product()),
            write_canonical(parse("CC(=O)OCC")));
  EXPECT_EQ(write_canonical(r.reactions[1].product()), "Cl");
}

TEST(Clean, Drops) {
  const CleanResult r = clean_text(
      "[Na+]>>C\n"
      "CCO>>\n"
      "CC(>>C\n"
      "CCO>>CC=O\n"
      "[Na+].[Cl-]>>[Na]Cl\n");
  EXPECT_EQ(r.report.input_records, 5u);
  EXPECT_EQ(r.report.dropped_single_ion, 1u);
  EXPECT_EQ(r.report.dropped_no_product, 1u);
  EXPECT_EQ(r.report.dropped_parse_error, 1u);
  EXPECT_EQ(r.report.kept, 2u);
  EXPECT_EQ(r.report.duplicated_multiproduct, 0u);
}

TEST(Clean, NeutralSingleAtomKept) {
  EXPECT_EQ(clean_text("[Na]>>C\n").report.kept, 1u);
}

TEST(Clean, ReagentsAndMixedMode) {
  const std::string text = "CC(=O)O.N>CCN(CC)CC.O>CC(N)=O\n";
  const CleanResult sep = clean_text(text);
  ASSERT_EQ(sep.reactions.size(), 1u);
  EXPECT_EQ(sep.reactions[0].reactants.size(), 2u);
  EXPECT_EQ(sep.reactions[0].reagents.size(), 2u);
  const CleanResult mix = clean_text(text, { true, 1 });
  EXPECT_EQ(mix.reactions[0].reactants.size(), 4u);
  EXPECT_TRUE(mix.reactions[0].reagents.empty());
}

TEST(Clean, ConservationOnSample) {
  auto recs = read_dataset(testing::data_dir() / "uspto_sample_1k.csv",
                           InputFormat::kCsv);
  recs.push_back({ 2001, "[K+]>>CC", std::nullopt, std::nullopt });
  recs.push_back({ 2002, "CC>>", std::nullopt, std::nullopt });
  recs.push_back({ 2003, "C1CC>>CC", std::nullopt, std::nullopt });
  recs.push_back({ 2004, "CCO>>CC.O.C", std::nullopt, std::nullopt });
  const CleanReport r = clean(recs, { false, 4 }).report;
  EXPECT_EQ(r.input_records,
            r.kept + r.dropped_no_product + r.dropped_single_ion
                + r.dropped_parse_error - r.duplicated_multiproduct);
  EXPECT_EQ(r.duplicated_multiproduct, 2u);
  EXPECT_EQ(r.dropped_single_ion, 1u);
  EXPECT_EQ(r.dropped_no_product, 1u);
  EXPECT_EQ(r.dropped_parse_error, 1u);
}

TEST(Clean, ThreadCountDoesNotMatter) {
  const auto recs = read_dataset(testing::data_dir() / "uspto_sample_1k.csv",
                                 InputFormat::kCsv);
  const CleanResult a = clean(recs, { false, 1 });
  const CleanResult b = clean(recs, { false, 7 });
  EXPECT_EQ(a.report, b.report);
  ASSERT_EQ(a.reactions.size(), b.reactions.size());
  for (std::size_t i = 0; i < a.reactions.size(); ++i)
    EXPECT_EQ(reaction_smiles(a.reactions[i]), reaction_smiles(b.reactions[i]));
}

TEST(Clean, Idempotent) {
  const auto recs = read_dataset(testing::data_dir() / "uspto_sample_1k.csv",
                                 InputFormat::kCsv);
  const CleanResult once = clean(recs);
  std::string text;
  for (const Reaction &r: once.reactions)
    text += reaction_smiles(r) + "\n";
  const CleanResult twice = clean(read_dataset_text(text, InputFormat::kLines));
  ASSERT_EQ(twice.reactions.size(), once.reactions.size());
  EXPECT_EQ(twice.report.kept, once.reactions.size());
  EXPECT_EQ(twice.report.duplicated_multiproduct, 0u);
  for (std::size_t i = 0; i < once.reactions.size(); ++i) {
    EXPECT_EQ(reaction_smiles(twice.reactions[i]),
              reaction_smiles(once.reactions[i]));
    EXPECT_EQ(align(twice.reactions[i], Task::kP2R),
              align(once.reactions[i], Task::kP2R));
  }
}

TEST(CleanReportJson, Fields) {
  const auto j = nlohmann::json::parse(
      clean_report_json(clean_text("CCO>>CC=O\n[Na+]>>C\n").report));
  EXPECT_EQ(j["input_records"], 2);
  EXPECT_EQ(j["kept"], 1);
  EXPECT_EQ(j["dropped_single_ion"], 1);
}

TEST_F(TempDir, WritePairsEster) {
  const Reaction rxn = testing::reaction(kEsterReaction);
  write_pairs({ align_p2r(rxn, 8) }, dir_ / "src.txt", dir_ / "tgt.txt");
  EXPECT_EQ(slurp(dir_ / "src.txt"),
            "Cl C ( Cl ) ( Cl ) C O C ( = O ) C = C\n");
  EXPECT_EQ(slurp(dir_ / "tgt.txt"),
            "Cl C ( Cl ) ( Cl ) C O . C ( = O ) ( Cl ) C = C\n");
}

TEST_F(TempDir, WritePairsEmpty) {
  write_pairs({}, dir_ / "src.txt", dir_ / "tgt.txt");
  EXPECT_TRUE(fs::exists(dir_ / "src.txt"));
  EXPECT_EQ(fs::file_size(dir_ / "src.txt"), 0u);
  EXPECT_EQ(fs::file_size(dir_ / "tgt.txt"), 0u);
}

TEST_F(TempDir, WritePairsRoundTrip) {
  std::vector<AlignedPair> pairs;
  const auto rxns = testing::sample_reactions();
  for (std::size_t i = 0; i < rxns.size(); i += 7) {
    for (Task t: { Task::kP2R, Task::kS2R })
      pairs.push_back(align(rxns[i], t));
  }
  write_pairs(pairs, dir_ / "src.txt", dir_ / "tgt.txt");
  const auto src = read_lines(dir_ / "src.txt");
  const auto tgt = read_lines(dir_ / "tgt.txt");
  ASSERT_EQ(src.size(), pairs.size());
  ASSERT_EQ(tgt.size(), pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    EXPECT_EQ(split_spaced(src[i]).joined(), pairs[i].source);
    EXPECT_EQ(split_spaced(tgt[i]).joined(), pairs[i].target);
  }
  EXPECT_EQ(slurp(dir_ / "src.txt").back(), '\n');
  EXPECT_EQ(slurp(dir_ / "src.txt").find('\r'), std::string::npos);
}

TEST_F(TempDir, WriteFailsOnMissingDirectory) {
  EXPECT_THROW(write_text(dir_ / "no" / "such" / "file", "x"), DataError);
}

}  // namespace
}  // namespace rsmiles
