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

#include "ftf/promptgen.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "ftf/internal/shuffle.h"
#include "ftf/resources.h"

namespace ftf {
namespace {

Phrasing ToPhrasing(PromptStyle style) {
  switch (style) {
    case PromptStyle::NL1: return Phrasing::NL1;
    case PromptStyle::NL2: return Phrasing::NL2;
    case PromptStyle::PL: return Phrasing::PL;
  }
  return Phrasing::NL2;
}

std::string DocPath(PromptStyle style, FallacyType type) {
  return "prompts/" + std::string(ToString(style)) + "/" + std::string(ToString(type)) + ".txt";
}

void ReplaceAll(std::string& text, std::string_view key, std::string_view value) {
  for (std::size_t pos = text.find(key); pos != std::string::npos;
       pos = text.find(key, pos + value.size())) {
    text.replace(pos, key.size(), value);
  }
}

// Section a header line opens, if any. "{examples}" on its own line opens
// the Examples section.
std::optional<PromptSection> HeaderSection(std::string_view line) {
  if (line == "{examples}") return PromptSection::Examples;
  if (!line.starts_with("# ")) return std::nullopt;
  line.remove_prefix(2);
  static constexpr std::pair<std::string_view, PromptSection> kHeaders[] = {
      {"Task", PromptSection::Task},
      {"Definitions", PromptSection::Definitions},
      {"List of Templates", PromptSection::ListOfTemplates},
      {"Output Format", PromptSection::OutputFormat},
      {"Important Criteria", PromptSection::ImportantCriteria},
      {"Correct Example", PromptSection::CorrectExample},
      {"Wrong Example", PromptSection::WrongExample},
      {"Query", PromptSection::Query},
  };
  for (const auto& [prefix, section] : kHeaders) {
    if (line.starts_with(prefix)) return section;
  }
  return std::nullopt;
}

std::vector<std::pair<PromptSection, std::string>> SplitSections(const std::string& doc) {
  std::vector<std::pair<PromptSection, std::string>> out;
  std::istringstream in(doc);
  std::string line;
  while (std::getline(in, line)) {
    if (auto section = HeaderSection(line)) {
      out.emplace_back(*section, std::string());
    } else if (out.empty()) {
      throw std::invalid_argument("style document must start with a section header");
    }
    out.back().second += line;
    out.back().second += '\n';
  }
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (out[i].first <= out[i - 1].first) {
      throw std::invalid_argument("style document sections are out of order at " +
                                  std::string(ToString(out[i].first)));
    }
  }
  if (out.empty() || out.back().first != PromptSection::Query) {
    throw std::invalid_argument("style document must end with the Query section");
  }
  return out;
}

void CheckExample(const Example& e, FallacyType type, const Inventory& inventory) {
  if (e.argument.fallacy_type != type || e.annotation.instantiation.fallacy_type != type) {
    throw CrossTypeExample("example " + e.argument.id + " is " +
                           std::string(ToString(e.argument.fallacy_type)) + ", prompt is " +
                           std::string(ToString(type)));
  }
  if (e.annotation.argument_id != e.argument.id) {
    throw InvalidExample("example annotation " + e.annotation.argument_id +
                         " does not belong to argument " + e.argument.id);
  }
  const auto report = ValidateInstantiation(e.argument.text, e.annotation.instantiation, inventory);
  if (!report.ok()) {
    throw InvalidExample("example " + e.argument.id + ": " + report.violations.front().message);
  }
}

}  // namespace

std::string_view ToString(PromptSection section) {
  switch (section) {
    case PromptSection::Task: return "Task";
    case PromptSection::Definitions: return "Definitions";
    case PromptSection::ListOfTemplates: return "ListOfTemplates";
    case PromptSection::OutputFormat: return "OutputFormat";
    case PromptSection::ImportantCriteria: return "ImportantCriteria";
    case PromptSection::CorrectExample: return "CorrectExample";
    case PromptSection::WrongExample: return "WrongExample";
    case PromptSection::Examples: return "Examples";
    case PromptSection::Query: return "Query";
  }
  return "";
}

const std::string* PromptDocument::Section(PromptSection section) const {
  for (const auto& [s, text] : sections) {
    if (s == section) return &text;
  }
  return nullptr;
}

std::vector<Example> MakeExamplePool(std::span<const ArgumentRecord> arguments,
                                     std::span<const AnnotationRecord> annotations) {
  std::map<std::string, const ArgumentRecord*> by_id;
  for (const auto& a : arguments) by_id[a.id] = &a;
  std::map<std::string, const AnnotationRecord*> chosen;
  for (const auto& ann : annotations) {
    if (!by_id.contains(ann.argument_id)) continue;
    auto [it, inserted] = chosen.emplace(ann.argument_id, &ann);
    if (!inserted && ann.annotator_id < it->second->annotator_id) it->second = &ann;
  }
  std::vector<Example> pool;
  for (const auto& [id, ann] : chosen) pool.push_back({*by_id.at(id), *ann});
  return pool;
}

const StyleLibrary& StyleLibrary::Default() {
  static const StyleLibrary lib = [] {
    StyleLibrary l;
    for (PromptStyle style : {PromptStyle::NL1, PromptStyle::NL2, PromptStyle::PL}) {
      for (FallacyType type : kAllFallacyTypes) {
        auto content = FindResource(DocPath(style, type));
        if (!content) throw std::runtime_error("missing embedded " + DocPath(style, type));
        l.docs_[{style, type}] = std::string(*content);
      }
    }
    return l;
  }();
  return lib;
}

StyleLibrary StyleLibrary::FromDirectory(const std::filesystem::path& root) {
  StyleLibrary l;
  for (PromptStyle style : {PromptStyle::NL1, PromptStyle::NL2, PromptStyle::PL}) {
    for (FallacyType type : kAllFallacyTypes) {
      const auto path = root / ToString(style) / (std::string(ToString(type)) + ".txt");
      std::ifstream in(path, std::ios::binary);
      if (!in) throw std::runtime_error("cannot read style document " + path.string());
      std::ostringstream ss;
      ss << in.rdbuf();
      l.docs_[{style, type}] = ss.str();
    }
  }
  return l;
}

const std::string& StyleLibrary::Get(PromptStyle style, FallacyType type) const {
  return docs_.at({style, type});
}

std::string OutputFormatBlock(FallacyType type) {
  std::string out = "Template No.=[No.]\n";
  for (SlotRole role : LegalRoles(type)) out += "[" + std::string(RoleName(role)) + "]=\n";
  out.pop_back();
  return out;
}

std::string TemplateListBlock(FallacyType type, PromptStyle style, const Inventory& inventory) {
  std::string out;
  for (const auto& spec : inventory.ForType(type)) {
    if (spec.is_catch_all()) continue;
    const auto r = Render(spec, nullptr, ToPhrasing(style));
    out += "Template No." + std::to_string(spec.number) + ":\n";
    out += "Premise 1: " + r.premise_p + "\n";
    out += "Premise 2: " + r.premise_p_prime + "\n";
    out += "Conclusion: " + r.conclusion + "\n\n";
  }
  return out;
}

std::string FormatExample(const AnnotationRecord& annotation, const ArgumentRecord& argument) {
  const auto& inst = annotation.instantiation;
  std::string out = argument.text + "\n";
  out += "Template No.=" + std::to_string(inst.template_number) + "\n";
  for (SlotRole role : LegalRoles(inst.fallacy_type)) {
    auto it = inst.slots.find(role);
    out += "[" + std::string(RoleName(role)) + "]=" + (it == inst.slots.end() ? "" : it->second) + "\n";
  }
  return out;
}

PromptDocument BuildPrompt(const PromptConfig& config, std::span<const Example> examples,
                           const ArgumentRecord& query, const StyleLibrary& styles,
                           const Inventory& inventory) {
  if (config.shots != 0 && config.shots != 1 && config.shots != 5) {
    throw ShotMismatch("shots must be 0, 1 or 5, got " + std::to_string(config.shots));
  }
  if (examples.size() != static_cast<std::size_t>(config.shots)) {
    throw ShotMismatch("config asks for " + std::to_string(config.shots) + " shots, got " +
                       std::to_string(examples.size()) + " examples");
  }
  if (query.fallacy_type != config.fallacy_type) {
    throw CrossTypeExample("query " + query.id + " is " +
                           std::string(ToString(query.fallacy_type)));
  }
  for (const auto& e : examples) CheckExample(e, config.fallacy_type, inventory);

  std::string blocks;
  for (std::size_t i = 0; i < examples.size(); ++i) {
    blocks += "# Example" + std::to_string(i + 1) + "\n";
    blocks += FormatExample(examples[i].annotation, examples[i].argument) + "\n";
  }
  blocks.pop_back();  // the "{examples}" line supplies the final newline

  PromptDocument doc;
  for (auto [section, text] : SplitSections(styles.Get(config.style, config.fallacy_type))) {
    if (section == PromptSection::Examples && examples.empty()) continue;
    // Placeholders are filled one section at a time so that argument text
    // containing braces is never re-expanded.
    ReplaceAll(text, "{fallacy_type}", DisplayName(config.fallacy_type));
    ReplaceAll(text, "{templates}\n", TemplateListBlock(config.fallacy_type, config.style, inventory));
    ReplaceAll(text, "{output_format}", OutputFormatBlock(config.fallacy_type));
    if (section == PromptSection::Examples) ReplaceAll(text, "{examples}", blocks);
    if (section == PromptSection::Query) ReplaceAll(text, "{query}", query.text);
    doc.text += text;
    doc.sections.emplace_back(section, std::move(text));
  }
  return doc;
}

std::vector<Example> SampleShots(std::span<const Example> pool, FallacyType type, int n,
                                 std::uint64_t seed, const Inventory& inventory) {
  if (n < 0) throw std::invalid_argument("shot count must be non-negative");
  if (n == 0) return {};
  std::map<int, std::vector<const Example*>> by_number;
  std::size_t available = 0;
  for (const auto& e : pool) {
    if (e.argument.fallacy_type != type || e.argument.split != Split::Train) continue;
    if (e.annotation.instantiation.fallacy_type != type) continue;
    if (!ValidateInstantiation(e.argument.text, e.annotation.instantiation, inventory).ok()) {
      continue;
    }
    by_number[e.annotation.instantiation.template_number].push_back(&e);
    ++available;
  }
  if (available < static_cast<std::size_t>(n)) {
    throw InsufficientExamples("need " + std::to_string(n) + " validated train examples of " +
                               std::string(ToString(type)) + ", found " +
                               std::to_string(available));
  }
  std::vector<std::vector<const Example*>> groups;
  std::uint64_t salt = 0;
  for (auto& [number, group] : by_number) {
    std::sort(group.begin(), group.end(),
              [](auto* a, auto* b) { return a->argument.id < b->argument.id; });
    SeededShuffle(group, seed ^ (0x9e3779b97f4a7c15ULL * ++salt));
    groups.push_back(std::move(group));
  }
  SeededShuffle(groups, seed);
  std::vector<Example> out;
  for (std::size_t round = 0; out.size() < static_cast<std::size_t>(n); ++round) {
    for (const auto& group : groups) {
      if (round < group.size() && out.size() < static_cast<std::size_t>(n)) {
        out.push_back(*group[round]);
      }
    }
  }
  return out;
}

}  // namespace ftf
