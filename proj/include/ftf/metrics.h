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

// Scoring of predictions against gold annotations: template selection (TS),
// exact/partial slot filling (SF), joint accuracy and template coverage.

#ifndef FTF_METRICS_H_
#define FTF_METRICS_H_

#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ftf/dataset_io.h"
#include "ftf/template_core.h"

namespace ftf {

class EmptyInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class AmbiguousInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Recall: shared tokens / gold tokens. Jaccard: shared / union. Both count
// tokens as multisets. An empty gold matches only an empty prediction.
enum class OverlapMode { Recall, Jaccard };

std::string_view ToString(OverlapMode mode);
OverlapMode ParseOverlapMode(std::string_view text);

double WordOverlap(std::string_view pred, std::string_view gold,
                   OverlapMode mode = OverlapMode::Recall);

// Both compare the union of roles present in either map; a role missing on
// one side compares against the empty string. Two empty maps match.
bool SlotsExactMatch(const SlotMap& pred, const SlotMap& gold);
bool SlotsPartialMatch(const SlotMap& pred, const SlotMap& gold,
                       OverlapMode mode = OverlapMode::Recall);

double JointAccuracy(double ts_rate, double sf_rate);

// A rate broken down per fallacy type. `overall` is the macro average over
// the fallacy types present; `pooled` divides the summed counts.
struct Rates {
  std::map<FallacyType, double> per_type;
  double overall = 0.0;
  double pooled = 0.0;
};

Rates TemplateSelectionAccuracy(std::span<const PredictionRecord> preds,
                                std::span<const AnnotationRecord> gold);

enum class MatchMode { Exact, Partial };

struct SlotFillingResult {
  Rates rates;
  std::vector<std::string> x_ids;  // template correct
  std::vector<std::string> y_ids;  // slots match (any template)
  std::vector<std::string> x_and_y_ids;
  // Set when some fallacy type has an empty X; its rate is reported as 0.
  std::vector<std::string> warnings;
};

SlotFillingResult SlotFillingAccuracy(std::span<const PredictionRecord> preds,
                                      std::span<const AnnotationRecord> gold,
                                      MatchMode mode,
                                      OverlapMode overlap = OverlapMode::Recall);

struct MetricBundle {
  double ts_accuracy = 0.0;
  double sf_exact = 0.0;
  double sf_partial = 0.0;
  double joint_exact = 0.0;
  double joint_partial = 0.0;
  std::size_t n = 0;
};

struct EvalReport {
  std::map<FallacyType, MetricBundle> per_type;
  MetricBundle overall;  // macro over fallacy types
  MetricBundle pooled;   // micro over all items
  std::size_t correct_template_set_size = 0;  // |X|
  std::size_t exact_match_set_size = 0;       // |X ∩ Y_exact|
  std::size_t partial_match_set_size = 0;     // |X ∩ Y_partial|
  std::vector<std::string> warnings;
};

struct EvalOptions {
  OverlapMode overlap = OverlapMode::Recall;
};

// Gold must hold at most one record per argument and `preds` at most one
// prediction per argument. Gold items without a prediction count as wrong.
// Throws EmptyInput on empty gold and AmbiguousInput on duplicates.
EvalReport Evaluate(std::span<const PredictionRecord> preds,
                    std::span<const AnnotationRecord> gold,
                    const EvalOptions& options = {});

struct CoverageBreakdown {
  std::map<FallacyType, double> per_type;
  double overall = 0.0;  // macro over fallacy types
  double pooled = 0.0;
  std::size_t n = 0;
};

struct CoverageReport {
  CoverageBreakdown all;
  std::map<std::string, CoverageBreakdown> per_annotator;
};

// Fraction of annotations using a template other than #5. Throws EmptyInput.
CoverageReport Coverage(std::span<const AnnotationRecord> annotations);

}  // namespace ftf

#endif  // FTF_METRICS_H_
