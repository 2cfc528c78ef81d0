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

// Chance-corrected agreement on template numbers: nominal Krippendorff's
// alpha and Gwet's AC1, per fallacy type with macro and pooled rows.

#ifndef FTF_AGREEMENT_H_
#define FTF_AGREEMENT_H_

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ftf/dataset_io.h"

namespace ftf {

inline constexpr int kTemplateCategories = 5;

class InsufficientData : public std::invalid_argument {
 public:
  InsufficientData(const std::string& message, std::optional<FallacyType> type)
      : std::invalid_argument(message), type_(type) {}
  std::optional<FallacyType> fallacy_type() const { return type_; }

 private:
  std::optional<FallacyType> type_;
};

class LabelMatrix {
 public:
  LabelMatrix() = default;

  void Set(const std::string& item, const std::string& annotator, int label);

  // Throws InsufficientData unless there are at least 2 annotators, 2 items
  // and one item carrying two or more labels.
  void CheckUsable() const;

  const std::vector<std::string>& items() const { return items_; }
  const std::vector<std::string>& annotators() const { return annotators_; }
  std::optional<int> Label(const std::string& item, const std::string& annotator) const;
  // Labels of one item in annotator order, missing entries skipped.
  std::vector<int> ItemLabels(const std::string& item) const;
  bool has_missing() const;

 private:
  std::vector<std::string> items_;       // sorted
  std::vector<std::string> annotators_;  // sorted
  std::map<std::pair<std::string, std::string>, int> labels_;
};

LabelMatrix MatrixFromAnnotations(std::span<const AnnotationRecord> annotations);

struct AgreementValue {
  double value = 0.0;
  // Every pairable label is the same category; value is reported as 1.
  bool degenerate = false;
};

AgreementValue KrippendorffAlphaNominal(const LabelMatrix& matrix);
AgreementValue GwetAc1(const LabelMatrix& matrix, int categories = kTemplateCategories);

struct AgreementRow {
  AgreementValue alpha;
  AgreementValue ac1;
  std::size_t items = 0;        // items with two or more labels
  bool missing_labels = false;  // some annotator skipped some item
};

struct AgreementReport {
  std::map<FallacyType, AgreementRow> per_type;
  std::optional<AgreementRow> macro;   // mean of per-type values
  std::optional<AgreementRow> pooled;  // one matrix over all types
  bool empty() const { return per_type.empty(); }
};

// Strict: every fallacy type present must yield a usable matrix, otherwise
// InsufficientData names the type.
AgreementReport MakeAgreementReport(std::span<const AnnotationRecord> annotations);

// Lenient variant for partially annotated data: keeps only items labelled by
// two or more annotators and omits types that do not reach a usable matrix.
AgreementReport MakeOverlapAgreementReport(std::span<const AnnotationRecord> annotations);

}  // namespace ftf

#endif  // FTF_AGREEMENT_H_
