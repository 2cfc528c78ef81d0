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

#include <algorithm>
#include <fstream>
#include <sstream>

#include "ftf/resources.h"
#include "ftf/text.h"
#include "json.hpp"

namespace ftf {
namespace {

using nlohmann::json;

constexpr std::array<std::string_view, 4> kTypeKeys = {
    "false_dilemma", "faulty_generalization", "false_causality",
    "fallacy_of_credibility"};
constexpr std::array<std::string_view, 4> kTypeNames = {
    "False Dilemma", "Faulty Generalization", "False Causality",
    "Fallacy of Credibility"};

std::size_t Index(FallacyType type) { return static_cast<std::size_t>(type); }

Relation ParseRelation(const std::string& s) {
  if (s == "PROMOTE") return Relation::Promote;
  if (s == "SUPPRESS") return Relation::Suppress;
  throw UnknownValueError("unknown relation", s);
}

Sentiment ParseSentiment(const std::string& s) {
  if (s == "GOOD") return Sentiment::Good;
  if (s == "BAD") return Sentiment::Bad;
  throw UnknownValueError("unknown sentiment", s);
}

ConclusionPolarity ParsePolarity(const std::string& s) {
  if (s == "SHOULD") return ConclusionPolarity::ShouldBeBroughtAbout;
  if (s == "SHOULD_NOT") return ConclusionPolarity::ShouldNotBeBroughtAbout;
  throw UnknownValueError("unknown conclusion polarity", s);
}

PremiseSubject ParseSubject(const std::string& s) {
  if (s == "A") return PremiseSubject::SlotA;
  if (s == "NOT_A") return PremiseSubject::NegationOfA;
  if (s == "A_PRIME") return PremiseSubject::SlotAPrime;
  if (s == "X_ASSERTS") return PremiseSubject::SourceXAsserts;
  throw UnknownValueError("unknown premise subject", s);
}

PremiseObject ParseObject(const std::string& s) {
  if (s == "C") return PremiseObject::SlotC;
  if (s == "C_PRIME") return PremiseObject::SlotCPrime;
  throw UnknownValueError("unknown premise object", s);
}

PremiseSchema ParsePremise(const json& j) {
  PremiseSchema p;
  p.subject = ParseSubject(j.at("subject").get<std::string>());
  p.relation = ParseRelation(j.at("relation").get<std::string>());
  p.object = ParseObject(j.at("object").get<std::string>());
  p.object_sentiment = ParseSentiment(j.at("sentiment").get<std::string>());
  return p;
}

std::set<SlotRole> ParseRoleSet(const json& j) {
  std::set<SlotRole> roles;
  for (const auto& item : j) {
    auto role = ParseRole(item.get<std::string>());
    if (!role) throw UnknownValueError("unknown slot role", item.get<std::string>());
    roles.insert(*role);
  }
  return roles;
}

std::set<SlotRole> ExpectedRequired(FallacyType type) {
  switch (type) {
    case FallacyType::FaultyGeneralization:
      return {SlotRole::A, SlotRole::C, SlotRole::APrime};
    case FallacyType::FallacyOfCredibility:
      return {SlotRole::A, SlotRole::C, SlotRole::X};
    default:
      return {SlotRole::A, SlotRole::C};
  }
}

std::set<SlotRole> ExpectedOptional(FallacyType type) {
  if (type == FallacyType::FaultyGeneralization) return {SlotRole::CPrime};
  return {};
}

PremiseSubject ExpectedPrimeSubject(FallacyType type) {
  switch (type) {
    case FallacyType::FalseDilemma:
      return PremiseSubject::NegationOfA;
    case FallacyType::FaultyGeneralization:
      return PremiseSubject::SlotAPrime;
    case FallacyType::FallacyOfCredibility:
      return PremiseSubject::SourceXAsserts;
    case FallacyType::FalseCausality:
      break;
  }
  return PremiseSubject::SlotA;
}

// --- rendering -------------------------------------------------------------

class Renderer {
 public:
  Renderer(const TemplateSpec& spec, const Instantiation* inst,
           Phrasing phrasing)
      : spec_(spec), inst_(inst), phrasing_(phrasing) {}

  RenderedTemplate Run() const {
    RenderedTemplate out;
    if (spec_.is_catch_all()) return out;
    out.premise_p = Premise(*spec_.premise_p, /*prime=*/false);
    out.premise_p_prime = Premise(*spec_.premise_p_prime, /*prime=*/true);
    out.conclusion = Conclusion(*spec_.conclusion);
    return out;
  }

 private:
  bool Supplied(SlotRole role) const {
    return inst_ != nullptr && inst_->slots.contains(role);
  }

  std::string Slot(SlotRole role) const {
    if (Supplied(role)) return inst_->slots.at(role);
    return "[" + std::string(RoleName(role)) + "]";
  }

  // A bracketed term is negated inside the bracket ("[¬A]"), free text gets
  // a leading "¬".
  std::string NegatedA() const {
    std::string a = Slot(SlotRole::A);
    if (a.size() >= 2 && a.front() == '[' && a.back() == ']') {
      return "[¬" + a.substr(1);
    }
    return "¬" + a;
  }

  bool schema() const { return phrasing_ == Phrasing::Schema; }
  bool symbolic() const { return phrasing_ == Phrasing::PL; }

  std::string Noun() const {
    return phrasing_ == Phrasing::NL1 ? "entity/action" : "entity/event";
  }

  std::string Term(const std::string& slot) const {
    return schema() ? slot : "an " + Noun() + " " + slot;
  }

  std::string RelationWord(Relation r) const {
    if (schema()) return r == Relation::Promote ? "PROMOTE" : "SUPPRESS";
    return r == Relation::Promote ? "promotes" : "suppresses";
  }

  std::string Consequence(const PremiseSchema& p) const {
    std::string object = Slot(SlotRole::C);
    if (p.object == PremiseObject::SlotCPrime && Supplied(SlotRole::CPrime)) {
      object = Slot(SlotRole::CPrime) + (symbolic() ? " ⊆ " : ", a subset of ") +
               Slot(SlotRole::C);
    }
    std::string sentiment;
    if (schema()) {
      sentiment = p.object_sentiment == Sentiment::Good ? "GOOD" : "BAD";
      return "a " + sentiment + " " + object;
    }
    sentiment = p.object_sentiment == Sentiment::Good ? "good" : "bad";
    return "a " + sentiment + " " + Noun() + " " + object;
  }

  // "[A] PROMOTE a GOOD [C]" / "an entity/event [A] promotes a good ..."
  std::string Clause(const std::string& subject, const PremiseSchema& p) const {
    return Term(subject) + " " + RelationWord(p.relation) + " " + Consequence(p);
  }

  std::string Sentence(std::string text) const {
    if (schema()) return text;
    if (!text.empty() && text[0] == 'a') text[0] = 'A';
    return text + ".";
  }

  std::string Premise(const PremiseSchema& p, bool prime) const {
    const std::string a = Slot(SlotRole::A);
    if (!prime) return Sentence(Clause(a, p));
    switch (p.subject) {
      case PremiseSubject::SlotA:
        if (spec_.fallacy_type != FallacyType::FalseCausality) {
          return Sentence(Clause(a, p));
        }
        if (schema()) {
          return "co-occurrence of " + a + " and " + Slot(SlotRole::C) +
                 " is taken to establish " + Clause(a, p);
        }
        if (symbolic()) {
          return Sentence(a + " ∧ " + Slot(SlotRole::C) + " ⇒ " + Clause(a, p));
        }
        return Sentence("The co-occurrence of " + a + " and " +
                        Slot(SlotRole::C) + " is taken to establish that " +
                        Clause(a, p));
      case PremiseSubject::NegationOfA:
        if (schema() || symbolic()) return Sentence(Clause(NegatedA(), p));
        return Sentence("The absence of " + Clause(a, p));
      case PremiseSubject::SlotAPrime: {
        const std::string sub = Slot(SlotRole::APrime);
        if (symbolic()) return Sentence(Clause(sub + " ⊆ " + a, p));
        return Sentence(Clause(sub + ", a subset of " + a + ",", p));
      }
      case PremiseSubject::SourceXAsserts: {
        const std::string x = Slot(SlotRole::X);
        if (schema()) return x + " asserts that " + Clause(a, p);
        if (symbolic()) return Sentence(x + " ⊢ " + Clause(a, p));
        return Sentence("A source " + x + " asserts that " + Clause(a, p));
      }
    }
    return {};
  }

  std::string Conclusion(ConclusionPolarity polarity) const {
    const std::string verb =
        polarity == ConclusionPolarity::ShouldBeBroughtAbout
            ? " should be brought about"
            : " should not be brought about";
    const std::string a = Slot(SlotRole::A);
    switch (phrasing_) {
      case Phrasing::Schema:
        return a + verb;
      case Phrasing::NL2:
        return "Therefore, " + a + verb + ".";
      case Phrasing::NL1:
      case Phrasing::PL:
        break;
    }
    return "Therefore, both Premise 1 and Premise 2 support that " + a + verb +
           ".";
  }

  const TemplateSpec& spec_;
  const Instantiation* inst_;
  Phrasing phrasing_;
};

}  // namespace

std::string_view ToString(FallacyType type) { return kTypeKeys[Index(type)]; }
std::string_view DisplayName(FallacyType type) { return kTypeNames[Index(type)]; }

FallacyType ParseFallacyType(std::string_view text) {
  const std::string lowered = ToLower(Trim(text));
  for (FallacyType type : kAllFallacyTypes) {
    if (lowered == kTypeKeys[Index(type)] ||
        lowered == ToLower(kTypeNames[Index(type)])) {
      return type;
    }
  }
  throw UnknownFallacyType(std::string(text));
}

std::string_view ToString(Relation relation) {
  return relation == Relation::Promote ? "PROMOTE" : "SUPPRESS";
}

std::string_view ToString(Sentiment sentiment) {
  return sentiment == Sentiment::Good ? "GOOD" : "BAD";
}

std::string_view ToString(ConclusionPolarity polarity) {
  return polarity == ConclusionPolarity::ShouldBeBroughtAbout ? "SHOULD"
                                                              : "SHOULD_NOT";
}

std::string_view RoleName(SlotRole role) {
  switch (role) {
    case SlotRole::A: return "A";
    case SlotRole::C: return "C";
    case SlotRole::APrime: return "A'";
    case SlotRole::CPrime: return "C'";
    case SlotRole::X: return "X";
  }
  return "?";
}

std::optional<SlotRole> ParseRole(std::string_view text) {
  std::string s(Trim(text));
  for (std::string_view prime : {"’", "′"}) {
    if (s.ends_with(prime)) s = s.substr(0, s.size() - prime.size()) + "'";
  }
  if (s == "A" || s == "a") return SlotRole::A;
  if (s == "C" || s == "c") return SlotRole::C;
  if (s == "A'" || s == "a'") return SlotRole::APrime;
  if (s == "C'" || s == "c'") return SlotRole::CPrime;
  if (s == "X" || s == "x") return SlotRole::X;
  return std::nullopt;
}

std::vector<SlotRole> LegalRoles(FallacyType type) {
  switch (type) {
    case FallacyType::FaultyGeneralization:
      return {SlotRole::A, SlotRole::C, SlotRole::APrime, SlotRole::CPrime};
    case FallacyType::FallacyOfCredibility:
      return {SlotRole::A, SlotRole::C, SlotRole::X};
    default:
      return {SlotRole::A, SlotRole::C};
  }
}

// --- Inventory -------------------------------------------------------------

const Inventory& Inventory::Default() {
  static const Inventory kDefault = [] {
    auto text = FindResource("resources/inventory.json");
    if (!text) throw InventoryError("bundled inventory resource missing");
    return FromJson(*text);
  }();
  return kDefault;
}

Inventory Inventory::FromFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InventoryError("cannot read inventory file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return FromJson(buffer.str());
}

Inventory Inventory::FromJson(std::string_view json_text) {
  Inventory inv;
  try {
    const json doc = json::parse(json_text);
    inv.version_ = doc.at("version").get<std::string>();
    const json& types = doc.at("fallacy_types");
    for (FallacyType type : kAllFallacyTypes) {
      const json& entry = types.at(std::string(ToString(type)));
      const auto required = ParseRoleSet(entry.at("required_slots"));
      const auto optional = ParseRoleSet(entry.value("optional_slots", json::array()));
      std::vector<TemplateSpec> block;
      for (const json& t : entry.at("templates")) {
        TemplateSpec spec;
        spec.fallacy_type = type;
        spec.number = t.at("number").get<int>();
        if (t.contains("premise_p")) spec.premise_p = ParsePremise(t["premise_p"]);
        if (t.contains("premise_p_prime")) {
          spec.premise_p_prime = ParsePremise(t["premise_p_prime"]);
        }
        if (t.contains("conclusion")) {
          spec.conclusion = ParsePolarity(t["conclusion"].get<std::string>());
        }
        if (!spec.is_catch_all()) {
          spec.required_slots = required;
          spec.optional_slots = optional;
        }
        block.push_back(std::move(spec));
      }
      std::sort(block.begin(), block.end(),
                [](const auto& l, const auto& r) { return l.number < r.number; });
      for (auto& spec : block) inv.specs_.push_back(std::move(spec));
    }
  } catch (const json::exception& e) {
    throw InventoryError(std::string("malformed inventory: ") + e.what());
  } catch (const UnknownValueError& e) {
    throw InventoryError(std::string("malformed inventory: ") + e.what());
  }
  inv.Check();
  return inv;
}

void Inventory::Check() const {
  auto fail = [](FallacyType type, int number, const std::string& msg) {
    throw InventoryError(std::string(ToString(type)) + " template " +
                         std::to_string(number) + ": " + msg);
  };
  if (specs_.size() != 4 * 5) {
    throw InventoryError("inventory must define 5 templates per fallacy type");
  }
  for (FallacyType type : kAllFallacyTypes) {
    auto block = ForType(type);
    std::set<std::pair<Relation, Sentiment>> seen;
    for (int i = 0; i < 5; ++i) {
      const TemplateSpec& spec = block[static_cast<std::size_t>(i)];
      if (spec.fallacy_type != type || spec.number != i + 1) {
        fail(type, spec.number, "templates must be numbered 1..5");
      }
      if (spec.is_catch_all()) {
        if (spec.premise_p || spec.premise_p_prime || spec.conclusion) {
          fail(type, 5, "catch-all template must not carry schemas");
        }
        continue;
      }
      if (!spec.premise_p || !spec.premise_p_prime || !spec.conclusion) {
        fail(type, spec.number, "premise P, P' and conclusion are required");
      }
      const PremiseSchema& p = *spec.premise_p;
      const PremiseSchema& pp = *spec.premise_p_prime;
      if (p.subject != PremiseSubject::SlotA || p.object != PremiseObject::SlotC) {
        fail(type, spec.number, "premise P must relate [A] to [C]");
      }
      if (pp.subject != ExpectedPrimeSubject(type)) {
        fail(type, spec.number, "premise P' subject not legal for this type");
      }
      if (pp.object == PremiseObject::SlotCPrime &&
          type != FallacyType::FaultyGeneralization) {
        fail(type, spec.number, "C' is only legal for Faulty Generalization");
      }
      if (pp.object_sentiment != p.object_sentiment) {
        fail(type, spec.number, "P and P' must share the consequence sentiment");
      }
      const bool opposite = type == FallacyType::FalseDilemma;
      if ((pp.relation != p.relation) != opposite) {
        fail(type, spec.number,
             opposite ? "False Dilemma P' must invert the relation of P"
                      : "P' must carry the relation of P");
      }
      if (!seen.emplace(p.relation, p.object_sentiment).second) {
        fail(type, spec.number, "duplicate (relation, sentiment) pair");
      }
      if (spec.required_slots != ExpectedRequired(type) ||
          spec.optional_slots != ExpectedOptional(type)) {
        fail(type, spec.number, "slot sets do not match the fallacy type");
      }
    }
  }
}

std::span<const TemplateSpec> Inventory::ForType(FallacyType type) const {
  return std::span<const TemplateSpec>(specs_).subspan(Index(type) * 5, 5);
}

const TemplateSpec& Inventory::Spec(FallacyType type, int number) const {
  if (number < 1 || number > 5) {
    throw std::out_of_range("template number out of range: " +
                            std::to_string(number));
  }
  return ForType(type)[static_cast<std::size_t>(number - 1)];
}

int Inventory::TemplateFor(FallacyType type, Relation relation,
                           Sentiment sentiment) const {
  for (const TemplateSpec& spec : ForType(type)) {
    if (spec.premise_p && spec.premise_p->relation == relation &&
        spec.premise_p->object_sentiment == sentiment) {
      return spec.number;
    }
  }
  // Unreachable for a checked inventory.
  throw InventoryError("no template for relation/sentiment pair");
}

RenderedTemplate Render(const TemplateSpec& spec, const Instantiation* inst,
                        Phrasing phrasing) {
  if (inst != nullptr && (inst->fallacy_type != spec.fallacy_type ||
                          inst->template_number != spec.number)) {
    throw MismatchedInstantiation(
        "instantiation of " + std::string(ToString(inst->fallacy_type)) +
        " #" + std::to_string(inst->template_number) + " rendered with " +
        std::string(ToString(spec.fallacy_type)) + " #" +
        std::to_string(spec.number));
  }
  return Renderer(spec, inst, phrasing).Run();
}

// --- validation ------------------------------------------------------------

std::string_view ToString(ViolationRule rule) {
  switch (rule) {
    case ViolationRule::BadTemplateNumber: return "bad_template_number";
    case ViolationRule::IllegalRole: return "illegal_role";
    case ViolationRule::MissingRequired: return "missing_required";
    case ViolationRule::CatchAllHasSlots: return "catch_all_has_slots";
    case ViolationRule::EmptyValue: return "empty_value";
    case ViolationRule::NotASpan: return "not_a_span";
    case ViolationRule::FallacyTypeMismatch: return "fallacy_type_mismatch";
    case ViolationRule::DanglingReference: return "dangling_reference";
    case ViolationRule::DuplicateRecord: return "duplicate_record";
  }
  return "unknown";
}

ValidationReport ValidateInstantiation(std::string_view argument_text,
                                       const Instantiation& inst,
                                       const Inventory& inventory) {
  ValidationReport report;
  auto add = [&](ViolationRule rule, std::optional<SlotRole> role,
                 std::string message) {
    report.violations.push_back({rule, role, std::move(message), {}, {}});
  };

  if (inst.template_number < 1 || inst.template_number > 5) {
    add(ViolationRule::BadTemplateNumber, std::nullopt,
        "template number " + std::to_string(inst.template_number) +
            " is outside 1..5");
    return report;
  }
  const TemplateSpec& spec =
      inventory.Spec(inst.fallacy_type, inst.template_number);
  const auto legal = LegalRoles(inst.fallacy_type);
  const auto argument_tokens = Tokenize(argument_text);

  for (const auto& [role, value] : inst.slots) {
    const std::string name(RoleName(role));
    if (std::find(legal.begin(), legal.end(), role) == legal.end()) {
      add(ViolationRule::IllegalRole, role,
          "[" + name + "] is not a slot of " +
              std::string(DisplayName(inst.fallacy_type)));
      continue;
    }
    if (spec.is_catch_all()) {
      add(ViolationRule::CatchAllHasSlots, role,
          "template 5 takes no slot fillers but [" + name + "] is set");
      continue;
    }
    const auto tokens = Tokenize(value);
    if (tokens.empty()) {
      add(ViolationRule::EmptyValue, role, "[" + name + "] is empty");
      continue;
    }
    if (!ContainsTokenRun(argument_tokens, tokens)) {
      std::string message = "[" + name + "]=\"" + value +
                            "\" is not a contiguous span of the argument";
      for (const auto& token : tokens) {
        if (std::find(argument_tokens.begin(), argument_tokens.end(), token) ==
            argument_tokens.end()) {
          message += " (\"" + token + "\" does not occur)";
          break;
        }
      }
      add(ViolationRule::NotASpan, role, std::move(message));
    }
  }
  for (SlotRole role : spec.required_slots) {
    if (!inst.slots.contains(role)) {
      add(ViolationRule::MissingRequired, role,
          "required slot [" + std::string(RoleName(role)) + "] is missing");
    }
  }
  return report;
}

}  // namespace ftf
