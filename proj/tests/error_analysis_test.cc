// Copyright 2026 The FtF Toolkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ftf/error_analysis.h"

#include <algorithm>
#include <random>

#include "doctest.h"
#include "ftf/report.h"

namespace ftf {
namespace {

using enum SlotRole;
using enum ErrorCategory;

AnnotationRecord Gold(std::string id, FallacyType type, int number, SlotMap slots) {
  AnnotationRecord a;
  a.argument_id = std::move(id);
  a.annotator_id = "gold";
  a.instantiation = {type, number, std::move(slots)};
  return a;
}

PredictionRecord Pred(std::string id, FallacyType type, int number, SlotMap slots) {
  PredictionRecord p;
  p.argument_id = std::move(id);
  p.model_id = "mock";
  p.parse_ok = true;
  p.parsed = Instantiation{type, number, std::move(slots)};
  return p;
}

PredictionRecord Unparsed(std::string id) {
  PredictionRecord p;
  p.argument_id = std::move(id);
  p.model_id = "mock";
  p.raw_output = "I cannot answer that.";
  return p;
}

constexpr auto FD = FallacyType::FalseDilemma;
constexpr auto FG = FallacyType::FaultyGeneralization;
constexpr auto FC = FallacyType::FalseCausality;
constexpr auto CR = FallacyType::FallacyOfCredibility;

struct Case {
  AnnotationRecord gold;
  PredictionRecord pred;
  ErrorCategory expected;
};

// The five worked failure cases of the Mistral error table.
std::vector<Case> WorkedExamples() {
  return {
      {Gold("t1", FD, 2, {{A, "Love it"}, {C, "leave it"}}), Pred("t1", FD, 5, {}),
       Pred5GoldInstantiable},
      {Gold("t2", FD, 4, {{A, "hairspray"}, {C, "the world will end"}}),
       Pred("t2", FD, 2, {{A, "ban hairspray"}, {C, "the world will end"}}),
       DiffTemplateDiffSlots},
      {Gold("t3", FC, 4, {{A, "vitamins"}, {C, "flu"}}),
       Pred("t3", FC, 3, {{A, "vitamins"}, {C, "flu"}}), DiffTemplateSimilarSlots},
      {Gold("t4", FG, 2,
            {{A, "test"},
             {C, "critical methodolical flaws"},
             {APrime,
              "3 studies that supported its validity turned out to have critical "
              "methodological flaws"}}),
       Pred("t4", FG, 5, {}), Pred5GoldInstantiable},
      {Gold("t5", CR, 5, {}),
       Pred("t5", CR, 2,
            {{A, "this theory"}, {C, "Albert Einstein"}, {X, "extremely impressed"}}),
       InstantiatedGold5},
  };
}

TEST_CASE("worked examples land in their narrated categories") {
  for (const auto& c : WorkedExamples()) {
    CAPTURE(c.gold.argument_id);
    CHECK(Categorize(c.pred, c.gold) == c.expected);
  }
}

TEST_CASE("hairspray is the boundary between similar and different slots") {
  // "hairspray" vs "ban hairspray": recall 1.0, Jaccard 0.5 (not > 0.5).
  const auto c = WorkedExamples()[1];
  CHECK(Categorize(c.pred, c.gold, OverlapMode::Jaccard) == DiffTemplateDiffSlots);
  CHECK(Categorize(c.pred, c.gold, OverlapMode::Recall) == DiffTemplateSimilarSlots);
}

TEST_CASE("category rules") {
  SUBCASE("same template is correct, whatever the slots") {
    CHECK(Categorize(Pred("a", FD, 3, {{A, "x"}}), Gold("a", FD, 3, {{A, "y"}})) == Correct);
    CHECK(Categorize(Pred("a", FD, 5, {}), Gold("a", FD, 5, {})) == Correct);
  }
  SUBCASE("no shared role means different slots") {
    CHECK(Categorize(Pred("a", FG, 1, {{APrime, "cats"}}), Gold("a", FG, 2, {{A, "cats"}})) ==
          DiffTemplateDiffSlots);
  }
  SUBCASE("one weak role spoils similarity") {
    CHECK(Categorize(Pred("a", FD, 1, {{A, "vitamins"}, {C, "a cold"}}),
                     Gold("a", FD, 2, {{A, "vitamins"}, {C, "flu"}})) == DiffTemplateDiffSlots);
  }
  SUBCASE("parse failures") {
    CHECK(Categorize(Unparsed("a"), Gold("a", FD, 2, {{A, "x"}, {C, "y"}})) ==
          Pred5GoldInstantiable);
    CHECK(Categorize(Unparsed("a"), Gold("a", FD, 5, {})) == DiffTemplateDiffSlots);
  }
  SUBCASE("argument ids must match") {
    CHECK_THROWS_AS(Categorize(Pred("a", FD, 1, {}), Gold("b", FD, 1, {})), ArgumentMismatch);
  }
}

TEST_CASE("categorize is total over template pairs") {
  for (int g = 1; g <= 5; ++g) {
    for (int p = 1; p <= 5; ++p) {
      const ErrorCategory got =
          Categorize(Pred("a", FD, p, p == 5 ? SlotMap{} : SlotMap{{A, "x"}, {C, "y"}}),
                     Gold("a", FD, g, g == 5 ? SlotMap{} : SlotMap{{A, "x"}, {C, "y"}}));
      if (g == p) CHECK(got == Correct);
      else if (p == 5) CHECK(got == Pred5GoldInstantiable);
      else if (g == 5) CHECK(got == InstantiatedGold5);
      else CHECK(got == DiffTemplateSimilarSlots);
    }
  }
}

// 40 wrong pairs split 13/13/7/7, spread across the four types.
void FortyPairs(std::vector<PredictionRecord>& preds, std::vector<AnnotationRecord>& gold) {
  const FallacyType types[] = {FD, FG, FC, CR};
  int n = 0;
  auto add = [&](ErrorCategory category) {
    const std::string id = "e" + std::to_string(n);
    const FallacyType t = types[n++ % 4];
    switch (category) {
      case Pred5GoldInstantiable:
        gold.push_back(Gold(id, t, 1, {{A, "taxes"}, {C, "growth"}}));
        preds.push_back(Pred(id, t, 5, {}));
        break;
      case DiffTemplateDiffSlots:
        gold.push_back(Gold(id, t, 1, {{A, "taxes"}, {C, "growth"}}));
        preds.push_back(Pred(id, t, 2, {{A, "lower taxes"}, {C, "growth"}}));
        break;
      case DiffTemplateSimilarSlots:
        gold.push_back(Gold(id, t, 1, {{A, "taxes"}, {C, "growth"}}));
        preds.push_back(Pred(id, t, 3, {{A, "taxes"}, {C, "Growth"}}));
        break;
      default:
        gold.push_back(Gold(id, t, 5, {}));
        preds.push_back(Pred(id, t, 4, {{A, "taxes"}, {C, "growth"}}));
    }
  };
  for (int i = 0; i < 13; ++i) add(Pred5GoldInstantiable);
  for (int i = 0; i < 13; ++i) add(DiffTemplateDiffSlots);
  for (int i = 0; i < 7; ++i) add(DiffTemplateSimilarSlots);
  for (int i = 0; i < 7; ++i) add(InstantiatedGold5);
}

TEST_CASE("40-pair distribution") {
  std::vector<PredictionRecord> preds;
  std::vector<AnnotationRecord> gold;
  FortyPairs(preds, gold);
  const ErrorReport r = MakeErrorReport(preds, gold);
  CHECK(r.overall.errors == 40);
  CHECK(r.correct == 0);
  CHECK(r.overall.Fraction(Pred5GoldInstantiable) == 0.325);
  CHECK(r.overall.Fraction(DiffTemplateDiffSlots) == 0.325);
  CHECK(r.overall.Fraction(DiffTemplateSimilarSlots) == 0.175);
  CHECK(r.overall.Fraction(InstantiatedGold5) == 0.175);
  std::size_t per_type_total = 0;
  for (const auto& [type, c] : r.per_type) per_type_total += c.errors;
  CHECK(per_type_total == 40);

  SUBCASE("input order does not matter") {
    // `r` points into the vectors; freeze it before shuffling them.
    const std::string frozen = ToJson(r).dump();
    const auto counts = r.overall.counts;
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
      std::shuffle(preds.begin(), preds.end(), rng);
      std::shuffle(gold.begin(), gold.end(), rng);
      const ErrorReport s = MakeErrorReport(preds, gold);
      CHECK(s.overall.counts == counts);
      CHECK(ToJson(s).dump() == frozen);
    }
  }
}

TEST_CASE("degenerate distributions") {
  SUBCASE("all correct") {
    std::vector<AnnotationRecord> gold{Gold("a", FD, 1, {}), Gold("b", FC, 5, {})};
    std::vector<PredictionRecord> preds{Pred("a", FD, 1, {}), Pred("b", FC, 5, {})};
    const ErrorReport r = MakeErrorReport(preds, gold);
    CHECK(r.overall.errors == 0);
    CHECK(r.correct == 2);
    CHECK(r.pairs.empty());
    for (ErrorCategory c : kErrorCategories) CHECK(r.overall.Fraction(c) == 0.0);
  }
  SUBCASE("single wrong pair") {
    std::vector<AnnotationRecord> gold{Gold("a", FD, 1, {}), Gold("b", FC, 5, {})};
    std::vector<PredictionRecord> preds{Pred("a", FD, 1, {}), Pred("b", FC, 2, {{A, "x"}})};
    const ErrorReport r = MakeErrorReport(preds, gold);
    CHECK(r.overall.Fraction(InstantiatedGold5) == 1.0);
    REQUIRE(r.pairs.size() == 1);
    CHECK(r.pairs[0].gold->argument_id == "b");
  }
  SUBCASE("missing prediction counts like a parse failure") {
    std::vector<AnnotationRecord> gold{Gold("a", FD, 1, {{A, "x"}})};
    const ErrorReport r = MakeErrorReport({}, gold);
    REQUIRE(r.pairs.size() == 1);
    CHECK(r.pairs[0].pred == nullptr);
    CHECK(r.pairs[0].category == Pred5GoldInstantiable);
  }
  SUBCASE("duplicate gold is ambiguous") {
    std::vector<AnnotationRecord> gold{Gold("a", FD, 1, {}), Gold("a", FD, 2, {})};
    CHECK_THROWS_AS(MakeErrorReport({}, gold), AmbiguousInput);
  }
}

TEST_CASE("audit listing and table") {
  std::vector<AnnotationRecord> gold;
  std::vector<PredictionRecord> preds;
  for (auto& c : WorkedExamples()) {
    gold.push_back(c.gold);
    preds.push_back(c.pred);
  }
  ArgumentRecord arg;
  arg.id = "t2";
  arg.text = "We either ban hairspray or the world will end.";
  std::vector<ArgumentRecord> args{arg};
  const ErrorReport r = MakeErrorReport(preds, gold);
  const std::string listing = AuditListing(r, args);
  CHECK(listing.find("We either ban hairspray or the world will end.") != std::string::npos);
  CHECK(listing.find("[A]=ban hairspray") != std::string::npos);
  CHECK(listing.find("INSTANTIATED_GOLD5") != std::string::npos);

  const std::string table = FormatErrorTable(r);
  CHECK(table.find("PRED5_GOLD_INSTANTIABLE") != std::string::npos);
  CHECK(table.find("0.40") != std::string::npos);  // 2 of 5
}

}  // namespace
}  // namespace ftf
