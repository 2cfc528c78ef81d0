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

#include "ftf/agreement.h"

#include <algorithm>
#include <array>
#include <set>

namespace ftf {
namespace {

void InsertSorted(std::vector<std::string>& v, const std::string& s) {
  auto it = std::lower_bound(v.begin(), v.end(), s);
  if (it == v.end() || *it != s) v.insert(it, s);
}

std::string TypeSuffix(std::optional<FallacyType> type) {
  return type ? " for " + std::string(ToString(*type)) : std::string();
}

AgreementRow Row(const LabelMatrix& m) {
  AgreementRow row;
  row.alpha = KrippendorffAlphaNominal(m);
  row.ac1 = GwetAc1(m);
  for (const auto& item : m.items()) {
    if (m.ItemLabels(item).size() >= 2) ++row.items;
  }
  row.missing_labels = m.has_missing();
  return row;
}

void CheckOrThrow(const LabelMatrix& m, std::optional<FallacyType> type) {
  try {
    m.CheckUsable();
  } catch (const InsufficientData& e) {
    throw InsufficientData(e.what() + TypeSuffix(type), type);
  }
}

AgreementRow Macro(const std::map<FallacyType, AgreementRow>& rows) {
  AgreementRow macro;
  for (const auto& [type, row] : rows) {
    macro.alpha.value += row.alpha.value;
    macro.ac1.value += row.ac1.value;
    macro.alpha.degenerate = macro.alpha.degenerate || row.alpha.degenerate;
    macro.ac1.degenerate = macro.ac1.degenerate || row.ac1.degenerate;
    macro.items += row.items;
    macro.missing_labels = macro.missing_labels || row.missing_labels;
  }
  const auto k = static_cast<double>(rows.size());
  macro.alpha.value /= k;
  macro.ac1.value /= k;
  return macro;
}

AgreementReport Build(std::span<const AnnotationRecord> annotations, bool strict) {
  std::map<FallacyType, std::vector<AnnotationRecord>> by_type;
  for (const auto& a : annotations) by_type[a.instantiation.fallacy_type].push_back(a);

  AgreementReport report;
  std::vector<AnnotationRecord> kept;
  for (auto& [type, group] : by_type) {
    LabelMatrix m = MatrixFromAnnotations(group);
    if (!strict) {
      std::erase_if(group, [&](const AnnotationRecord& a) {
        return m.ItemLabels(a.argument_id).size() < 2;
      });
      if (group.empty()) continue;
      m = MatrixFromAnnotations(group);
      try {
        m.CheckUsable();
      } catch (const InsufficientData&) {
        continue;
      }
    }
    CheckOrThrow(m, type);
    report.per_type[type] = Row(m);
    kept.insert(kept.end(), group.begin(), group.end());
  }
  if (report.per_type.empty()) {
    if (strict) throw InsufficientData("no annotations to compute agreement on", std::nullopt);
    return report;
  }
  report.macro = Macro(report.per_type);
  report.pooled = Row(MatrixFromAnnotations(kept));
  return report;
}

}  // namespace

void LabelMatrix::Set(const std::string& item, const std::string& annotator, int label) {
  if (label < 1 || label > kTemplateCategories) {
    throw std::invalid_argument("label out of range: " + std::to_string(label));
  }
  InsertSorted(items_, item);
  InsertSorted(annotators_, annotator);
  labels_[{item, annotator}] = label;
}

void LabelMatrix::CheckUsable() const {
  if (annotators_.size() < 2) throw InsufficientData("agreement needs at least 2 annotators", std::nullopt);
  if (items_.size() < 2) throw InsufficientData("agreement needs at least 2 items", std::nullopt);
  for (const auto& item : items_) {
    if (ItemLabels(item).size() >= 2) return;
  }
  throw InsufficientData("no item carries two or more labels", std::nullopt);
}

std::optional<int> LabelMatrix::Label(const std::string& item,
                                      const std::string& annotator) const {
  auto it = labels_.find({item, annotator});
  if (it == labels_.end()) return std::nullopt;
  return it->second;
}

std::vector<int> LabelMatrix::ItemLabels(const std::string& item) const {
  std::vector<int> out;
  for (auto it = labels_.lower_bound({item, std::string()});
       it != labels_.end() && it->first.first == item; ++it) {
    out.push_back(it->second);
  }
  return out;
}

bool LabelMatrix::has_missing() const {
  return labels_.size() != items_.size() * annotators_.size();
}

LabelMatrix MatrixFromAnnotations(std::span<const AnnotationRecord> annotations) {
  LabelMatrix m;
  for (const auto& a : annotations) {
    m.Set(a.argument_id, a.annotator_id, a.instantiation.template_number);
  }
  return m;
}

AgreementValue KrippendorffAlphaNominal(const LabelMatrix& matrix) {
  matrix.CheckUsable();
  // Coincidence matrix o[c][k] over pairable values.
  std::array<std::array<double, kTemplateCategories + 1>, kTemplateCategories + 1> o{};
  for (const auto& item : matrix.items()) {
    const auto labels = matrix.ItemLabels(item);
    const std::size_t m = labels.size();
    if (m < 2) continue;
    const double w = 1.0 / static_cast<double>(m - 1);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        if (i != j) o[labels[i]][labels[j]] += w;
      }
    }
  }
  std::array<double, kTemplateCategories + 1> marginal{};
  double n = 0.0, observed = 0.0;
  for (int c = 1; c <= kTemplateCategories; ++c) {
    for (int k = 1; k <= kTemplateCategories; ++k) {
      marginal[c] += o[c][k];
      if (c != k) observed += o[c][k];
    }
    n += marginal[c];
  }
  double expected = n * n;
  for (int c = 1; c <= kTemplateCategories; ++c) expected -= marginal[c] * marginal[c];
  if (expected <= 0.0) return {1.0, true};
  return {1.0 - (n - 1.0) * observed / expected, false};
}

AgreementValue GwetAc1(const LabelMatrix& matrix, int categories) {
  matrix.CheckUsable();
  if (categories < 2) throw std::invalid_argument("AC1 needs at least 2 categories");
  std::vector<double> prevalence(static_cast<std::size_t>(categories) + 1, 0.0);
  double pa = 0.0;
  std::size_t rated = 0, pairable = 0;
  std::set<int> seen;
  for (const auto& item : matrix.items()) {
    const auto labels = matrix.ItemLabels(item);
    if (labels.empty()) continue;
    ++rated;
    std::map<int, int> counts;
    for (int l : labels) ++counts[l];
    const double r = static_cast<double>(labels.size());
    for (const auto& [label, c] : counts) {
      if (label > categories) throw std::invalid_argument("label exceeds category count");
      prevalence[label] += c / r;
      seen.insert(label);
    }
    if (labels.size() < 2) continue;
    ++pairable;
    double agree = 0.0;
    for (const auto& [label, c] : counts) agree += static_cast<double>(c) * (c - 1);
    pa += agree / (r * (r - 1.0));
  }
  pa /= static_cast<double>(pairable);
  double pe = 0.0;
  for (int k = 1; k <= categories; ++k) {
    const double pi = prevalence[k] / static_cast<double>(rated);
    pe += pi * (1.0 - pi);
  }
  pe /= static_cast<double>(categories - 1);
  const bool degenerate = seen.size() == 1;
  if (degenerate) return {1.0, true};
  return {(pa - pe) / (1.0 - pe), false};
}

AgreementReport MakeAgreementReport(std::span<const AnnotationRecord> annotations) {
  return Build(annotations, true);
}

AgreementReport MakeOverlapAgreementReport(std::span<const AnnotationRecord> annotations) {
  return Build(annotations, false);
}

}  // namespace ftf
