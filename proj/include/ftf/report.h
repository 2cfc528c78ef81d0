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

// Structured (JSON) and plain-text table renderings of every report type.
// Tables round to two decimals; JSON keeps full precision.

#ifndef FTF_REPORT_H_
#define FTF_REPORT_H_

#include <string>

#include "ftf/agreement.h"
#include "ftf/dataset_io.h"
#include "ftf/error_analysis.h"
#include "ftf/metrics.h"

namespace ftf {

std::string Fixed2(double value);

OrderedJson ToJson(const Violation& violation);
OrderedJson ToJson(const ValidationReport& report);
OrderedJson ToJson(const DatasetReport& report);
OrderedJson ToJson(const MetricBundle& bundle);
OrderedJson ToJson(const EvalReport& report);
OrderedJson ToJson(const AgreementReport& report);
OrderedJson ToJson(const CoverageBreakdown& coverage);
OrderedJson ToJson(const CoverageReport& report);
OrderedJson ToJson(const ErrorReport& report);

// Columns TS / SF / Joint (exact), then the partial-match pair.
std::string FormatEvalTable(const EvalReport& report, const std::string& model_label);
// Columns Gwet AC1 / Krippendorff's alpha.
std::string FormatAgreementTable(const AgreementReport& report);
// One column per annotator.
std::string FormatCoverageTable(const CoverageReport& report);
std::string FormatErrorTable(const ErrorReport& report);
std::string FormatDatasetReport(const DatasetReport& report);

}  // namespace ftf

#endif  // FTF_REPORT_H_
