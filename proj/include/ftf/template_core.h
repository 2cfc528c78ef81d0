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

// Fallacy template inventory: the four fallacy types, their premise schemas,
// slot roles, rendering and span validation of instantiations.

#ifndef FTF_TEMPLATE_CORE_H_
#define FTF_TEMPLATE_CORE_H_

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ftf {

enum class FallacyType {
  FalseDilemma,
  FaultyGeneralization,
  FalseCausality,
  FallacyOfCredibility,
};

inline constexpr std::array<FallacyType, 4> kAllFallacyTypes = {
    FallacyType::FalseDilemma, FallacyType::FaultyGeneralization,
    FallacyType::FalseCausality, FallacyType::FallacyOfCredibility};

enum class Relation { Promote, Suppress };
enum class Sentiment { Good, Bad };
enum class ConclusionPolarity { ShouldBeBroughtAbout, ShouldNotBeBroughtAbout };

// Declaration order is the canonical output order of slot lines.
enum class SlotRole { A, C, APrime, CPrime, X };

inline constexpr std::array<SlotRole, 5> kAllSlotRoles = {
    SlotRole::A, SlotRole::C, SlotRole::APrime, SlotRole::CPrime,
    SlotRole::X};

enum class PremiseSubject { SlotA, NegationOfA, SlotAPrime, SourceXAsserts };

// SlotCPrime renders as C' when the instantiation supplies it, otherwise C.
enum class PremiseObject { SlotC, SlotCPrime };

struct PremiseSchema {
  PremiseSubject subject = PremiseSubject::SlotA;
  Relation relation = Relation::Promote;
  PremiseObject object = PremiseObject::SlotC;
  Sentiment object_sentiment = Sentiment::Good;

  bool operator==(const PremiseSchema&) const = default;
};

inline constexpr int kCatchAllTemplate = 5;

struct TemplateSpec {
  FallacyType fallacy_type = FallacyType::FalseDilemma;
  int number = 1;
  std::optional<PremiseSchema> premise_p;
  std::optional<PremiseSchema> premise_p_prime;
  std::optional<ConclusionPolarity> conclusion;
  std::set<SlotRole> required_slots;
  std::set<SlotRole> optional_slots;

  bool is_catch_all() const { return number == kCatchAllTemplate; }
};

using SlotMap = std::map<SlotRole, std::string>;

struct Instantiation {
  FallacyType fallacy_type = FallacyType::FalseDilemma;
  int template_number = kCatchAllTemplate;
  SlotMap slots;

  bool operator==(const Instantiation&) const = default;
};

// Thrown for unparseable enum strings (fallacy types, roles, ...).
class UnknownValueError : public std::invalid_argument {
 public:
  UnknownValueError(std::string what, std::string value)
      : std::invalid_argument(what + ": '" + value + "'"),
        value_(std::move(value)) {}
  const std::string& value() const { return value_; }

 private:
  std::string value_;
};

class UnknownFallacyType : public UnknownValueError {
 public:
  explicit UnknownFallacyType(std::string value)
      : UnknownValueError("unknown fallacy type", std::move(value)) {}
};

class InventoryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MismatchedInstantiation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// "false_dilemma", "faulty_generalization", ...
std::string_view ToString(FallacyType type);
// "False Dilemma", ...
std::string_view DisplayName(FallacyType type);
// Accepts the snake_case key or the display name, case-insensitively.
FallacyType ParseFallacyType(std::string_view text);

std::string_view ToString(Relation relation);
std::string_view ToString(Sentiment sentiment);
std::string_view ToString(ConclusionPolarity polarity);

// "A", "C", "A'", "C'", "X".
std::string_view RoleName(SlotRole role);
// Also accepts the typographic primes (’ and ′) for A'/C'.
std::optional<SlotRole> ParseRole(std::string_view text);

// Roles that may appear in an instantiation of the given type, in output
// order: A, C, then A'/C' for Faulty Generalization or X for Credibility.
std::vector<SlotRole> LegalRoles(FallacyType type);

// The template inventory. Immutable once constructed.
class Inventory {
 public:
  // The bundled definition file.
  static const Inventory& Default();
  static Inventory FromJson(std::string_view json_text);
  static Inventory FromFile(const std::filesystem::path& path);

  const std::string& version() const { return version_; }
  std::span<const TemplateSpec> specs() const { return specs_; }
  std::span<const TemplateSpec> ForType(FallacyType type) const;
  const TemplateSpec& Spec(FallacyType type, int number) const;

  // The template (1..4) whose P premise is `relation` on a `sentiment`
  // consequence.
  int TemplateFor(FallacyType type, Relation relation,
                  Sentiment sentiment) const;

 private:
  Inventory() = default;
  void Check() const;

  std::string version_;
  std::vector<TemplateSpec> specs_;  // ordered by (type, number)
};

// Wording used when rendering a template. Schema is the compact notation
// ("[A] SUPPRESS a GOOD [C]"); the others are the prompt phrasings.
enum class Phrasing { Schema, NL1, NL2, PL };

struct RenderedTemplate {
  std::string premise_p;
  std::string premise_p_prime;
  std::string conclusion;

  bool operator==(const RenderedTemplate&) const = default;
};

// Renders `spec`; slot values from `inst` replace the bracketed role names
// verbatim. Throws MismatchedInstantiation if `inst` refers to another
// template. The catch-all template renders to three empty strings.
RenderedTemplate Render(const TemplateSpec& spec,
                        const Instantiation* inst = nullptr,
                        Phrasing phrasing = Phrasing::Schema);

enum class ViolationRule {
  BadTemplateNumber,
  IllegalRole,
  MissingRequired,
  CatchAllHasSlots,
  EmptyValue,
  NotASpan,
  FallacyTypeMismatch,
  DanglingReference,
  DuplicateRecord,
};

std::string_view ToString(ViolationRule rule);

struct Violation {
  ViolationRule rule;
  std::optional<SlotRole> role;
  std::string message;
  // Context filled in by dataset-level validation.
  std::string argument_id;
  std::string annotator_id;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
};

// Checks role legality, required/forbidden slots and that every slot value is
// a contiguous token run of `argument_text` (see Tokenize).
ValidationReport ValidateInstantiation(
    std::string_view argument_text, const Instantiation& inst,
    const Inventory& inventory = Inventory::Default());

}  // namespace ftf

#endif  // FTF_TEMPLATE_CORE_H_
