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

#include "ftf/template_core.h"

#include <random>

#include "doctest.h"
#include "ftf/resources.h"
#include "ftf/text.h"
#include "json.hpp"

namespace ftf {
namespace {

const Inventory& inv() { return Inventory::Default(); }

TEST_CASE("inventory has five ordered templates per fallacy type") {
  REQUIRE(inv().specs().size() == 20);
  for (FallacyType type : kAllFallacyTypes) {
    auto block = inv().ForType(type);
    REQUIRE(block.size() == 5);
    for (int i = 0; i < 5; ++i) {
      CHECK(block[i].fallacy_type == type);
      CHECK(block[i].number == i + 1);
      CHECK(block[i].is_catch_all() == block[i].required_slots.empty());
    }
  }
  CHECK(inv().version() == "1.0.0");
}

TEST_CASE("False Dilemma #1 negates A in P'") {
  const TemplateSpec& spec = inv().Spec(FallacyType::FalseDilemma, 1);
  CHECK(spec.premise_p == PremiseSchema{PremiseSubject::SlotA, Relation::Promote,
                                        PremiseObject::SlotC, Sentiment::Good});
  CHECK(spec.premise_p_prime ==
        PremiseSchema{PremiseSubject::NegationOfA, Relation::Suppress,
                      PremiseObject::SlotC, Sentiment::Good});
  CHECK(spec.conclusion == ConclusionPolarity::ShouldBeBroughtAbout);
}

TEST_CASE("Faulty Generalization #2 is the garage template") {
  const TemplateSpec& spec = inv().Spec(FallacyType::FaultyGeneralization, 2);
  CHECK(spec.premise_p->relation == Relation::Promote);
  CHECK(spec.premise_p->object_sentiment == Sentiment::Bad);
  CHECK(spec.premise_p_prime->subject == PremiseSubject::SlotAPrime);
  CHECK(spec.premise_p_prime->relation == Relation::Promote);
  CHECK(spec.premise_p_prime->object == PremiseObject::SlotCPrime);
  CHECK(spec.conclusion == ConclusionPolarity::ShouldNotBeBroughtAbout);
  CHECK(spec.required_slots ==
        std::set<SlotRole>{SlotRole::A, SlotRole::C, SlotRole::APrime});
  CHECK(spec.optional_slots == std::set<SlotRole>{SlotRole::CPrime});
}

TEST_CASE("TemplateFor is the inverse lookup") {
  CHECK(inv().TemplateFor(FallacyType::FalseDilemma, Relation::Suppress,
                          Sentiment::Bad) == 2);
  CHECK(inv().TemplateFor(FallacyType::FalseCausality, Relation::Suppress,
                          Sentiment::Bad) == 4);
  CHECK(inv().TemplateFor(FallacyType::FaultyGeneralization, Relation::Promote,
                          Sentiment::Bad) == 2);
  CHECK(inv().TemplateFor(FallacyType::FalseCausality, Relation::Promote,
                          Sentiment::Good) == 3);
  for (FallacyType type : kAllFallacyTypes) {
    std::set<int> numbers;
    for (Relation r : {Relation::Promote, Relation::Suppress}) {
      for (Sentiment s : {Sentiment::Good, Sentiment::Bad}) {
        numbers.insert(inv().TemplateFor(type, r, s));
      }
    }
    CHECK(numbers == std::set<int>{1, 2, 3, 4});
  }
}

TEST_CASE("fallacy type and role names round-trip") {
  for (FallacyType type : kAllFallacyTypes) {
    CHECK(ParseFallacyType(ToString(type)) == type);
    CHECK(ParseFallacyType(DisplayName(type)) == type);
  }
  CHECK_THROWS_AS(ParseFallacyType("slippery_slope"), UnknownFallacyType);
  for (SlotRole role : kAllSlotRoles) CHECK(ParseRole(RoleName(role)) == role);
  CHECK(ParseRole("A’") == SlotRole::APrime);
  CHECK_FALSE(ParseRole("B").has_value());
}

TEST_CASE("render substitutes slot values verbatim") {
  const TemplateSpec& spec = inv().Spec(
      FallacyType::FaultyGeneralization,
      inv().TemplateFor(FallacyType::FaultyGeneralization, Relation::Suppress,
                        Sentiment::Good));
  Instantiation inst{FallacyType::FaultyGeneralization, spec.number,
                     {{SlotRole::A, "further advanced courses"},
                      {SlotRole::APrime, "NLP class"},
                      {SlotRole::C, "GPA"}}};
  RenderedTemplate out = Render(spec, &inst);
  CHECK(out.premise_p == "further advanced courses SUPPRESS a GOOD GPA");
  CHECK(out.premise_p_prime ==
        "NLP class, a subset of further advanced courses, SUPPRESS a GOOD GPA");
  CHECK(out.conclusion == "further advanced courses should not be brought about");

  inst.slots[SlotRole::CPrime] = "grades";
  CHECK(Render(spec, &inst).premise_p_prime ==
        "NLP class, a subset of further advanced courses, SUPPRESS a GOOD "
        "grades, a subset of GPA");
}

TEST_CASE("uninstantiated render uses bracketed role names") {
  const TemplateSpec& fd2 = inv().Spec(FallacyType::FalseDilemma, 2);
  CHECK(Render(fd2).premise_p == "[A] SUPPRESS a BAD [C]");
  CHECK(Render(fd2).premise_p_prime == "[¬A] PROMOTE a BAD [C]");
  CHECK(Render(fd2, nullptr, Phrasing::NL2).premise_p ==
        "An entity/event [A] suppresses a bad entity/event [C].");
  CHECK(Render(fd2, nullptr, Phrasing::PL).premise_p_prime ==
        "An entity/event [¬A] promotes a bad entity/event [C].");
  CHECK(Render(inv().Spec(FallacyType::FallacyOfCredibility, 1)).premise_p_prime ==
        "[X] asserts that [A] PROMOTE a GOOD [C]");
  CHECK(Render(inv().Spec(FallacyType::FalseCausality, 4)).premise_p_prime ==
        "co-occurrence of [A] and [C] is taken to establish [A] SUPPRESS a BAD [C]");
  for (FallacyType type : kAllFallacyTypes) {
    for (Phrasing ph : {Phrasing::Schema, Phrasing::NL1, Phrasing::NL2, Phrasing::PL}) {
      CHECK(Render(inv().Spec(type, 5), nullptr, ph) == RenderedTemplate{});
    }
  }
}

TEST_CASE("filling every slot with its role name is the identity") {
  for (const TemplateSpec& spec : inv().specs()) {
    Instantiation inst{spec.fallacy_type, spec.number, {}};
    for (SlotRole role : spec.required_slots) {
      inst.slots[role] = "[" + std::string(RoleName(role)) + "]";
    }
    for (Phrasing ph : {Phrasing::Schema, Phrasing::NL1, Phrasing::NL2, Phrasing::PL}) {
      CHECK(Render(spec, &inst, ph) == Render(spec, nullptr, ph));
    }
  }
}

TEST_CASE("render rejects an instantiation of another template") {
  Instantiation inst{FallacyType::FalseDilemma, 3, {}};
  CHECK_THROWS_AS(Render(inv().Spec(FallacyType::FalseDilemma, 2), &inst),
                  MismatchedInstantiation);
  inst.fallacy_type = FallacyType::FalseCausality;
  CHECK_THROWS_AS(Render(inv().Spec(FallacyType::FalseDilemma, 3), &inst),
                  MismatchedInstantiation);
}

constexpr const char* kTaxes =
    "We either have to cut taxes or leave a huge debt for our children.";
constexpr const char* kSchools =
    "To get better schools, we have to raise taxes. If we don't, we can't have "
    "better schools.";

TEST_CASE("validate accepts the cut-taxes annotation") {
  Instantiation inst{FallacyType::FalseDilemma, 2,
                     {{SlotRole::A, "cut taxes"},
                      {SlotRole::C, "leave a huge debt for our children"}}};
  CHECK(ValidateInstantiation(kTaxes, inst).ok());
  inst.slots[SlotRole::A] = "Cut Taxes";
  inst.slots[SlotRole::C] = "our children.";
  CHECK(ValidateInstantiation(kTaxes, inst).ok());
}

TEST_CASE("validate rejects raising taxes") {
  Instantiation inst{FallacyType::FalseDilemma, 1,
                     {{SlotRole::A, "raising taxes"}, {SlotRole::C, "schools"}}};
  ValidationReport report = ValidateInstantiation(kSchools, inst);
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0].rule == ViolationRule::NotASpan);
  CHECK(report.violations[0].role == SlotRole::A);
  CHECK(report.violations[0].message.find("\"raising\"") != std::string::npos);

  inst.slots[SlotRole::A] = "raise taxes";
  CHECK(ValidateInstantiation(kSchools, inst).ok());
  inst.slots[SlotRole::A] = "taxes raise";
  CHECK_FALSE(ValidateInstantiation(kSchools, inst).ok());
}

TEST_CASE("validate structural rules") {
  CHECK(ValidateInstantiation(kTaxes, {FallacyType::FalseDilemma, 5, {}}).ok());

  auto rules = [](const ValidationReport& r) {
    std::vector<ViolationRule> out;
    for (const auto& v : r.violations) out.push_back(v.rule);
    return out;
  };
  CHECK(rules(ValidateInstantiation(
            kTaxes, {FallacyType::FalseDilemma, 5, {{SlotRole::A, "taxes"}}})) ==
        std::vector{ViolationRule::CatchAllHasSlots});
  CHECK(rules(ValidateInstantiation(
            kTaxes, {FallacyType::FalseDilemma, 2,
                     {{SlotRole::A, "taxes"}, {SlotRole::C, "debt"},
                      {SlotRole::X, "children"}}})) ==
        std::vector{ViolationRule::IllegalRole});
  CHECK(rules(ValidateInstantiation(
            kTaxes, {FallacyType::FalseDilemma, 2, {{SlotRole::A, "taxes"}}})) ==
        std::vector{ViolationRule::MissingRequired});
  CHECK(rules(ValidateInstantiation(
            kTaxes, {FallacyType::FalseDilemma, 2,
                     {{SlotRole::A, "  "}, {SlotRole::C, "debt"}}})) ==
        std::vector{ViolationRule::EmptyValue});
  CHECK(rules(ValidateInstantiation(kTaxes, {FallacyType::FalseDilemma, 7, {}})) ==
        std::vector{ViolationRule::BadTemplateNumber});
  CHECK(rules(ValidateInstantiation(
            "I took an NLP class.",
            {FallacyType::FaultyGeneralization, 3,
             {{SlotRole::A, "NLP class"}, {SlotRole::C, "class"}}})) ==
        std::vector{ViolationRule::MissingRequired});
}

TEST_CASE("validate property: token-aligned spans pass, foreign tokens fail") {
  const std::vector<std::string> words = {
      "alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta"};
  std::mt19937_64 rng(20260101);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::string> text_words;
    const int len = 3 + static_cast<int>(rng() % 12);
    for (int i = 0; i < len; ++i) text_words.push_back(words[rng() % words.size()]);
    std::string text;
    for (const auto& w : text_words) text += (text.empty() ? "" : " ") + w;
    text += ".";

    const std::size_t a_begin = rng() % text_words.size();
    const std::size_t a_len = 1 + rng() % (text_words.size() - a_begin);
    std::string span;
    for (std::size_t i = a_begin; i < a_begin + a_len; ++i) {
      span += (i == a_begin ? "" : " ") + text_words[i];
    }
    if (rng() % 2) span = ToLower(span) + ",";
    Instantiation inst{FallacyType::FalseCausality, 1 + static_cast<int>(rng() % 4),
                       {{SlotRole::A, span}, {SlotRole::C, text_words[0]}}};
    CHECK(ValidateInstantiation(text, inst).ok());

    inst.slots[SlotRole::C] = text_words[0] + " omega";
    CHECK_FALSE(ValidateInstantiation(text, inst).ok());
  }
}

TEST_CASE("inventory loads from an override document") {
  std::string text(*FindResource("resources/inventory.json"));
  CHECK(Inventory::FromJson(text).specs().size() == 20);
  CHECK_THROWS_AS(Inventory::FromJson("{}"), InventoryError);
  CHECK_THROWS_AS(Inventory::FromJson("not json"), InventoryError);

  // Swap FD #1 and #2: still a valid inventory with a different numbering.
  nlohmann::json doc = nlohmann::json::parse(text);
  auto& fd = doc["fallacy_types"]["false_dilemma"]["templates"];
  fd[0]["number"] = 2;
  fd[1]["number"] = 1;
  Inventory other = Inventory::FromJson(doc.dump());
  CHECK(other.TemplateFor(FallacyType::FalseDilemma, Relation::Promote,
                          Sentiment::Good) == 2);

  // Breaking the False Dilemma relation inversion is rejected.
  std::string broken = text;
  auto pos = broken.find("\"NOT_A\",\n            \"relation\": \"SUPPRESS\"");
  REQUIRE(pos != std::string::npos);
  broken.replace(broken.find("SUPPRESS", pos), 8, "PROMOTE");
  CHECK_THROWS_AS(Inventory::FromJson(broken), InventoryError);
}

}  // namespace
}  // namespace ftf
