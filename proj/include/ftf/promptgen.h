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

// Prompt construction for the NL1 / NL2 / PL styles with 0-, 1- and 5-shot
// examples. Static prompt text lives in style documents under
// prompts/<style>/<fallacy_type>.txt; this module only fills placeholders.

#ifndef FTF_PROMPTGEN_H_
#define FTF_PROMPTGEN_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ftf/dataset_io.h"
#include "ftf/template_core.h"

namespace ftf {

class ShotMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
class CrossTypeExample : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
class InvalidExample : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
class InsufficientExamples : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PromptConfig {
  FallacyType fallacy_type = FallacyType::FalseDilemma;
  PromptStyle style = PromptStyle::NL2;
  int shots = 0;
  std::uint64_t seed = 0;
};

enum class PromptSection {
  Task,
  Definitions,
  ListOfTemplates,
  OutputFormat,
  ImportantCriteria,
  CorrectExample,
  WrongExample,
  Examples,
  Query,
};

std::string_view ToString(PromptSection section);

struct PromptDocument {
  std::vector<std::pair<PromptSection, std::string>> sections;
  std::string text;  // concatenation of the section texts

  const std::string* Section(PromptSection section) const;
};

struct Example {
  ArgumentRecord argument;
  AnnotationRecord annotation;
};

// Joins annotations to their arguments. Where an argument has several
// annotations the lexicographically first annotator wins.
std::vector<Example> MakeExamplePool(std::span<const ArgumentRecord> arguments,
                                     std::span<const AnnotationRecord> annotations);

// Style documents keyed by (style, fallacy type).
class StyleLibrary {
 public:
  static const StyleLibrary& Default();  // embedded copies
  static StyleLibrary FromDirectory(const std::filesystem::path& root);

  const std::string& Get(PromptStyle style, FallacyType type) const;

 private:
  std::map<std::pair<PromptStyle, FallacyType>, std::string> docs_;
};

// "Template No.=[No.]" followed by one "[ROLE]=" line per legal role.
std::string OutputFormatBlock(FallacyType type);

// Templates 1-4 in the style's phrasing, one blank line after each.
std::string TemplateListBlock(FallacyType type, PromptStyle style,
                              const Inventory& inventory = Inventory::Default());

// Argument text, "Template No.=k", then "[ROLE]=value" for every legal role
// of the type (empty value for roles the instantiation leaves unset).
std::string FormatExample(const AnnotationRecord& annotation,
                          const ArgumentRecord& argument);

PromptDocument BuildPrompt(const PromptConfig& config, std::span<const Example> examples,
                           const ArgumentRecord& query,
                           const StyleLibrary& styles = StyleLibrary::Default(),
                           const Inventory& inventory = Inventory::Default());

// Seeded draw of `n` train-split examples of `type` whose annotations pass
// span validation, round-robin over template numbers so no number repeats
// more than ceil(n/5) times while other numbers still have candidates.
std::vector<Example> SampleShots(std::span<const Example> pool, FallacyType type, int n,
                                 std::uint64_t seed,
                                 const Inventory& inventory = Inventory::Default());

}  // namespace ftf

#endif  // FTF_PROMPTGEN_H_
