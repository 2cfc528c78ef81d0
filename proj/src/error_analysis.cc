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

#include <set>
#include <sstream>

namespace ftf {
namespace {

std::string AnswerBlock(const Instantiation& inst) {
  std::string out = "Template No.=" + std::to_string(inst.template_number) + "\n";
  for (SlotRole role : LegalRoles(inst.fallacy_type)) {
    auto it = inst.slots.find(role);
    out += "[" + std::string(RoleName(role)) + "]=" + (it == inst.slots.end() ? "" : it->second) + "\n";
  }
  return out;
}

std::string Indent(const std::string& block) {
  std::string out;
  std::istringstream in(block);
  std::string line;
  while (std::getline(in, line)) out += "  " + line + "\n";
  return out;
}

}  // namespace

std::string_view ToString(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::Pred5GoldInstantiable: return "PRED5_GOLD_INSTANTIABLE";
    case ErrorCategory::DiffTemplateDiffSlots: return "DIFF_TEMPLATE_DIFF_SLOTS";
    case ErrorCategory::DiffTemplateSimilarSlots: return "DIFF_TEMPLATE_SIMILAR_SLOTS";
    case ErrorCategory::InstantiatedGold5: return "INSTANTIATED_GOLD5";
    case ErrorCategory::Correct: return "CORRECT";
  }
  return "";
}

ErrorCategory Categorize(const PredictionRecord& pred, const AnnotationRecord& gold,
                         OverlapMode overlap) {
  if (pred.argument_id != gold.argument_id) {
    throw ArgumentMismatch("prediction for " + pred.argument_id + " paired with gold for " +
                           gold.argument_id);
  }
  const Instantiation& g = gold.instantiation;
  const bool gold5 = g.template_number == kCatchAllTemplate;
  if (!pred.parse_ok || !pred.parsed) {
    return gold5 ? ErrorCategory::DiffTemplateDiffSlots : ErrorCategory::Pred5GoldInstantiable;
  }
  const Instantiation& p = *pred.parsed;
  const bool pred5 = p.template_number == kCatchAllTemplate;
  if (p.template_number == g.template_number && p.fallacy_type == g.fallacy_type) {
    return ErrorCategory::Correct;
  }
  if (pred5 && !gold5) return ErrorCategory::Pred5GoldInstantiable;
  if (!pred5 && gold5) return ErrorCategory::InstantiatedGold5;
  bool shared = false;
  for (const auto& [role, value] : g.slots) {
    auto it = p.slots.find(role);
    if (it == p.slots.end()) continue;
    shared = true;
    if (!(WordOverlap(it->second, value, overlap) > 0.5)) return ErrorCategory::DiffTemplateDiffSlots;
  }
  return shared ? ErrorCategory::DiffTemplateSimilarSlots : ErrorCategory::DiffTemplateDiffSlots;
}

double CategoryCounts::Fraction(ErrorCategory category) const {
  if (errors == 0) return 0.0;
  auto it = counts.find(category);
  return it == counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(errors);
}

ErrorReport MakeErrorReport(std::span<const PredictionRecord> preds,
                            std::span<const AnnotationRecord> gold, OverlapMode overlap) {
  std::map<std::string, const PredictionRecord*> by_id;
  for (const auto& p : preds) {
    if (!by_id.emplace(p.argument_id, &p).second) {
      throw AmbiguousInput("more than one prediction for argument " + p.argument_id);
    }
  }
  std::map<std::string, const AnnotationRecord*> gold_by_id;
  for (const auto& g : gold) {
    if (!gold_by_id.emplace(g.argument_id, &g).second) {
      throw AmbiguousInput("gold holds more than one record for argument " + g.argument_id);
    }
  }
  ErrorReport report;
  for (const auto& [id, g] : gold_by_id) {
    auto it = by_id.find(id);
    const PredictionRecord* p = it == by_id.end() ? nullptr : it->second;
    PredictionRecord missing;
    missing.argument_id = id;
    const ErrorCategory c = Categorize(p ? *p : missing, *g, overlap);
    if (c == ErrorCategory::Correct) {
      ++report.correct;
      continue;
    }
    for (CategoryCounts* counts : {&report.overall, &report.per_type[g->instantiation.fallacy_type]}) {
      ++counts->counts[c];
      ++counts->errors;
    }
    report.pairs.push_back({g, p, c});
  }
  return report;
}

std::string AuditListing(const ErrorReport& report, std::span<const ArgumentRecord> arguments) {
  std::map<std::string, const ArgumentRecord*> text;
  for (const auto& a : arguments) text[a.id] = &a;
  std::string out;
  std::size_t index = 0;
  for (const auto& pair : report.pairs) {
    const auto& g = pair.gold->instantiation;
    out += "[" + std::to_string(++index) + "] " + std::string(DisplayName(g.fallacy_type)) + " | " +
           pair.gold->argument_id + " | " + std::string(ToString(pair.category)) + "\n";
    if (auto it = text.find(pair.gold->argument_id); it != text.end()) {
      out += "Example:\n" + Indent(it->second->text);
    }
    out += "Correct Answer:\n" + Indent(AnswerBlock(g));
    out += "Predicted Answer:\n";
    if (pair.pred == nullptr) {
      out += "  (no prediction)\n";
    } else if (!pair.pred->parse_ok || !pair.pred->parsed) {
      out += "  (unparsed)\n" + Indent(pair.pred->raw_output);
    } else {
      out += Indent(AnswerBlock(*pair.pred->parsed));
    }
    out += "\n";
  }
  return out;
}

}  // namespace ftf
