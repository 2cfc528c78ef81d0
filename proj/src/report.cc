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

#include "ftf/report.h"

#include <cstdio>
#include <sstream>

namespace ftf {
namespace {

// Left-aligned first column, right-aligned numeric columns.
class Table {
 public:
  explicit Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
  void Add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
  void Rule() { rules_.push_back(rows_.size()); }

  std::string Render() const {
    std::vector<std::size_t> width;
    for (const auto& row : rows_) {
      width.resize(std::max(width.size(), row.size()), 0);
      for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], Width(row[i]));
    }
    std::size_t total = 0;
    for (auto w : width) total += w + 2;
    std::string out;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (std::find(rules_.begin(), rules_.end(), r) != rules_.end()) {
        out += std::string(total - 2, '-') + "\n";
      }
      std::string line;
      for (std::size_t i = 0; i < rows_[r].size(); ++i) {
        const std::string& cell = rows_[r][i];
        const std::string pad(width[i] - Width(cell), ' ');
        line += i == 0 ? cell + pad : pad + cell;
        if (i + 1 < rows_[r].size()) line += "  ";
      }
      while (!line.empty() && line.back() == ' ') line.pop_back();
      out += line + "\n";
      if (r == 0) out += std::string(total - 2, '-') + "\n";
    }
    return out;
  }

 private:
  // Display width: count UTF-8 lead bytes.
  static std::size_t Width(const std::string& s) {
    std::size_t n = 0;
    for (unsigned char c : s) n += (c & 0xC0) != 0x80;
    return n;
  }
  std::vector<std::vector<std::string>> rows_;
  std::vector<std::size_t> rules_;
};

OrderedJson ToJson(const AgreementValue& v) {
  return {{"value", v.value}, {"degenerate", v.degenerate}};
}

OrderedJson ToJson(const AgreementRow& row) {
  return {{"gwet_ac1", ToJson(row.ac1)},
          {"krippendorff_alpha", ToJson(row.alpha)},
          {"items", row.items},
          {"missing_labels", row.missing_labels}};
}

OrderedJson ToJson(const CategoryCounts& c) {
  OrderedJson counts = OrderedJson::object(), fractions = OrderedJson::object();
  for (ErrorCategory cat : kErrorCategories) {
    auto it = c.counts.find(cat);
    counts[std::string(ToString(cat))] = it == c.counts.end() ? 0 : it->second;
    fractions[std::string(ToString(cat))] = c.Fraction(cat);
  }
  return {{"errors", c.errors}, {"counts", counts}, {"fractions", fractions}};
}

std::string Flag(bool degenerate) { return degenerate ? "*" : ""; }

}  // namespace

std::string Fixed2(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", value);
  return buf;
}

OrderedJson ToJson(const Violation& v) {
  OrderedJson j{{"rule", ToString(v.rule)}};
  j["role"] = v.role ? OrderedJson(std::string(RoleName(*v.role))) : OrderedJson(nullptr);
  j["message"] = v.message;
  if (!v.argument_id.empty()) j["argument_id"] = v.argument_id;
  if (!v.annotator_id.empty()) j["annotator_id"] = v.annotator_id;
  return j;
}

OrderedJson ToJson(const ValidationReport& report) {
  OrderedJson list = OrderedJson::array();
  for (const auto& v : report.violations) list.push_back(ToJson(v));
  return {{"ok", report.ok()}, {"violations", list}};
}

OrderedJson ToJson(const DatasetReport& report) {
  OrderedJson list = OrderedJson::array();
  for (const auto& v : report.violations) list.push_back(ToJson(v));
  OrderedJson per_type = OrderedJson::object();
  for (FallacyType t : kAllFallacyTypes) {
    auto it = report.violations_per_type.find(t);
    per_type[std::string(ToString(t))] = it == report.violations_per_type.end() ? 0 : it->second;
  }
  return {{"ok", report.ok()},
          {"annotations_checked", report.annotations_checked},
          {"dangling_references", report.dangling_references},
          {"violations_per_type", per_type},
          {"violations", list}};
}

OrderedJson ToJson(const MetricBundle& b) {
  return {{"ts_accuracy", b.ts_accuracy}, {"sf_exact", b.sf_exact},
          {"sf_partial", b.sf_partial},   {"joint_exact", b.joint_exact},
          {"joint_partial", b.joint_partial}, {"n", b.n}};
}

OrderedJson ToJson(const EvalReport& r) {
  OrderedJson per_type = OrderedJson::object();
  for (const auto& [type, b] : r.per_type) per_type[std::string(ToString(type))] = ToJson(b);
  return {{"per_type", per_type},
          {"overall", ToJson(r.overall)},
          {"pooled", ToJson(r.pooled)},
          {"correct_template_set_size", r.correct_template_set_size},
          {"exact_match_set_size", r.exact_match_set_size},
          {"partial_match_set_size", r.partial_match_set_size},
          {"warnings", r.warnings}};
}

OrderedJson ToJson(const AgreementReport& r) {
  OrderedJson per_type = OrderedJson::object();
  for (const auto& [type, row] : r.per_type) per_type[std::string(ToString(type))] = ToJson(row);
  return {{"per_type", per_type},
          {"macro", r.macro ? ToJson(*r.macro) : OrderedJson(nullptr)},
          {"pooled", r.pooled ? ToJson(*r.pooled) : OrderedJson(nullptr)}};
}

OrderedJson ToJson(const CoverageBreakdown& c) {
  OrderedJson per_type = OrderedJson::object();
  for (const auto& [type, v] : c.per_type) per_type[std::string(ToString(type))] = v;
  return {{"per_type", per_type}, {"overall", c.overall}, {"pooled", c.pooled}, {"n", c.n}};
}

OrderedJson ToJson(const CoverageReport& r) {
  OrderedJson per_annotator = OrderedJson::object();
  for (const auto& [who, c] : r.per_annotator) per_annotator[who] = ToJson(c);
  return {{"all", ToJson(r.all)}, {"per_annotator", per_annotator}};
}

OrderedJson ToJson(const ErrorReport& r) {
  OrderedJson per_type = OrderedJson::object();
  for (const auto& [type, c] : r.per_type) per_type[std::string(ToString(type))] = ToJson(c);
  OrderedJson pairs = OrderedJson::array();
  for (const auto& p : r.pairs) {
    pairs.push_back({{"argument_id", p.gold->argument_id},
                     {"fallacy_type", ToString(p.gold->instantiation.fallacy_type)},
                     {"category", ToString(p.category)}});
  }
  return {{"overall", ToJson(r.overall)}, {"per_type", per_type}, {"correct", r.correct},
          {"pairs", pairs}};
}

std::string FormatEvalTable(const EvalReport& r, const std::string& model_label) {
  Table t({"Fallacy Type", "n", "Acc. (TS)", "Acc. (SF)", "Acc. (Joint)", "Acc. (SF partial)",
           "Acc. (Joint partial)"});
  auto row = [&](const std::string& name, const MetricBundle& b) {
    t.Add({name, std::to_string(b.n), Fixed2(b.ts_accuracy), Fixed2(b.sf_exact),
           Fixed2(b.joint_exact), Fixed2(b.sf_partial), Fixed2(b.joint_partial)});
  };
  for (const auto& [type, b] : r.per_type) row(std::string(DisplayName(type)), b);
  t.Rule();
  row("Average", r.overall);
  row("Pooled", r.pooled);
  std::string out;
  if (!model_label.empty()) out += "Model: " + model_label + "\n";
  out += t.Render();
  out += "|X| = " + std::to_string(r.correct_template_set_size) +
         ", |X ∩ Y_exact| = " + std::to_string(r.exact_match_set_size) +
         ", |X ∩ Y_partial| = " + std::to_string(r.partial_match_set_size) + "\n";
  for (const auto& w : r.warnings) out += "warning: " + w + "\n";
  return out;
}

std::string FormatAgreementTable(const AgreementReport& r) {
  Table t({"Fallacy Type", "GWET AC1", "Krippendorff's α", "Items"});
  bool degenerate = false, missing = false;
  auto row = [&](const std::string& name, const AgreementRow& a) {
    t.Add({name, Fixed2(a.ac1.value) + Flag(a.ac1.degenerate),
           Fixed2(a.alpha.value) + Flag(a.alpha.degenerate), std::to_string(a.items)});
    degenerate = degenerate || a.alpha.degenerate || a.ac1.degenerate;
    missing = missing || a.missing_labels;
  };
  for (const auto& [type, a] : r.per_type) row(std::string(DisplayName(type)), a);
  t.Rule();
  if (r.macro) row("Average", *r.macro);
  if (r.pooled) row("Pooled", *r.pooled);
  std::string out = t.Render();
  if (degenerate) out += "* all pairable labels identical; reported as 1\n";
  if (missing) out += "note: some annotators did not label every item\n";
  return out;
}

std::string FormatCoverageTable(const CoverageReport& r) {
  std::vector<std::string> header{"Fallacy Type"};
  for (const auto& [who, c] : r.per_annotator) header.push_back(who);
  header.push_back("All");
  Table t(header);
  for (FallacyType type : kAllFallacyTypes) {
    if (!r.all.per_type.contains(type)) continue;
    std::vector<std::string> row{std::string(DisplayName(type))};
    for (const auto& [who, c] : r.per_annotator) {
      auto it = c.per_type.find(type);
      row.push_back(it == c.per_type.end() ? "-" : Fixed2(it->second));
    }
    row.push_back(Fixed2(r.all.per_type.at(type)));
    t.Add(row);
  }
  t.Rule();
  std::vector<std::string> avg{"Average"}, pooled{"Pooled"};
  for (const auto& [who, c] : r.per_annotator) {
    avg.push_back(Fixed2(c.overall));
    pooled.push_back(Fixed2(c.pooled));
  }
  avg.push_back(Fixed2(r.all.overall));
  pooled.push_back(Fixed2(r.all.pooled));
  t.Add(avg);
  t.Add(pooled);
  return t.Render();
}

std::string FormatErrorTable(const ErrorReport& r) {
  std::vector<std::string> header{"Category"};
  for (const auto& [type, c] : r.per_type) header.push_back(std::string(DisplayName(type)));
  header.push_back("Overall");
  header.push_back("Fraction");
  Table t(header);
  for (ErrorCategory cat : kErrorCategories) {
    std::vector<std::string> row{std::string(ToString(cat))};
    for (const auto& [type, c] : r.per_type) {
      auto it = c.counts.find(cat);
      row.push_back(std::to_string(it == c.counts.end() ? 0 : it->second));
    }
    auto it = r.overall.counts.find(cat);
    row.push_back(std::to_string(it == r.overall.counts.end() ? 0 : it->second));
    row.push_back(Fixed2(r.overall.Fraction(cat)));
    t.Add(row);
  }
  t.Rule();
  std::vector<std::string> total{"Errors"};
  for (const auto& [type, c] : r.per_type) total.push_back(std::to_string(c.errors));
  total.push_back(std::to_string(r.overall.errors));
  total.push_back(r.overall.errors ? "1.00" : "-");
  t.Add(total);
  return t.Render() + "correct pairs (excluded): " + std::to_string(r.correct) + "\n";
}

std::string FormatDatasetReport(const DatasetReport& r) {
  std::ostringstream out;
  out << "annotations checked: " << r.annotations_checked << "\n";
  out << "dangling references: " << r.dangling_references << "\n";
  out << "violations: " << r.violations.size() << "\n";
  for (const auto& v : r.violations) {
    out << "  " << ToString(v.rule);
    if (!v.argument_id.empty()) out << " argument=" << v.argument_id;
    if (!v.annotator_id.empty()) out << " annotator=" << v.annotator_id;
    if (v.role) out << " role=" << RoleName(*v.role);
    out << ": " << v.message << "\n";
  }
  return out.str();
}

}  // namespace ftf
