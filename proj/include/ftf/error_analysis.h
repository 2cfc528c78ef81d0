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

// Sorting wrong predictions into four error categories.

#ifndef FTF_ERROR_ANALYSIS_H_
#define FTF_ERROR_ANALYSIS_H_

#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ftf/dataset_io.h"
#include "ftf/metrics.h"

namespace ftf {

enum class ErrorCategory {
  Pred5GoldInstantiable,    // predicted #5, gold is instantiable
  DiffTemplateDiffSlots,    // other template, slot fillers differ
  DiffTemplateSimilarSlots, // other template, slot fillers agree
  InstantiatedGold5,        // instantiated although gold is #5
  Correct,
};

inline constexpr ErrorCategory kErrorCategories[] = {
    ErrorCategory::Pred5GoldInstantiable, ErrorCategory::DiffTemplateDiffSlots,
    ErrorCategory::DiffTemplateSimilarSlots, ErrorCategory::InstantiatedGold5};

std::string_view ToString(ErrorCategory category);

class ArgumentMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Slot fillers count as similar when every role filled on both sides has
// overlap > 0.5 under `overlap`; no shared role means different. A parse
// failure reads as "predicted #5" against instantiable gold and as
// different slots against gold #5.
ErrorCategory Categorize(const PredictionRecord& pred, const AnnotationRecord& gold,
                         OverlapMode overlap = OverlapMode::Jaccard);

struct CategoryCounts {
  std::map<ErrorCategory, std::size_t> counts;  // the four error categories
  std::size_t errors = 0;

  double Fraction(ErrorCategory category) const;
};

struct ErrorReport {
  std::map<FallacyType, CategoryCounts> per_type;
  CategoryCounts overall;
  std::size_t correct = 0;

  struct Pair {
    const AnnotationRecord* gold;
    const PredictionRecord* pred;  // null when the model produced nothing
    ErrorCategory category;
  };
  std::vector<Pair> pairs;  // by argument id, wrong pairs only
};

// Gold items without a prediction are categorised like parse failures.
// The report points into `preds` and `gold`; keep them alive.
ErrorReport MakeErrorReport(std::span<const PredictionRecord> preds,
                            std::span<const AnnotationRecord> gold,
                            OverlapMode overlap = OverlapMode::Jaccard);

// One block per wrong pair: fallacy type, argument text, gold answer,
// predicted answer, category. `arguments` supplies the text when known.
std::string AuditListing(const ErrorReport& report,
                         std::span<const ArgumentRecord> arguments = {});

}  // namespace ftf

#endif  // FTF_ERROR_ANALYSIS_H_
