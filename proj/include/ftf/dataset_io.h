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

// On-disk records: arguments, annotations and model predictions, stored as
// one JSON object per line. Unknown fields survive a load/write round trip.

#ifndef FTF_DATASET_IO_H_
#define FTF_DATASET_IO_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ftf/template_core.h"
#include "json.hpp"

namespace ftf {

using OrderedJson = nlohmann::ordered_json;

enum class Split { Dev, Train };
enum class PromptStyle { NL1, NL2, PL };

std::string_view ToString(Split split);
Split ParseSplit(std::string_view text);
std::string_view ToString(PromptStyle style);
PromptStyle ParsePromptStyle(std::string_view text);

struct ArgumentRecord {
  std::string id;
  std::string text;
  FallacyType fallacy_type = FallacyType::FalseDilemma;
  Split split = Split::Dev;
  std::string source;
  OrderedJson extra = OrderedJson::object();
};

struct AnnotationRecord {
  std::string argument_id;
  std::string annotator_id;
  Instantiation instantiation;
  // Absent means the annotator was fully confident.
  std::optional<double> confidence;
  std::optional<std::string> comment;
  OrderedJson extra = OrderedJson::object();

  double effective_confidence() const { return confidence.value_or(1.0); }
};

struct PredictionRecord {
  std::string argument_id;
  std::string model_id;
  PromptStyle prompt_style = PromptStyle::NL2;
  int shots = 0;
  std::string raw_output;
  std::optional<Instantiation> parsed;
  bool parse_ok = false;
  OrderedJson extra = OrderedJson::object();
};

class RecordError : public std::runtime_error {
 public:
  enum class Kind { Format, DuplicateId, UnknownFallacyType };

  RecordError(Kind kind, std::size_t line, const std::string& message);

  Kind kind() const { return kind_; }
  // 1-based line number, 0 when not tied to a line.
  std::size_t line() const { return line_; }
  std::string_view kind_name() const;

 private:
  Kind kind_;
  std::size_t line_;
};

class InsufficientInstances : public std::runtime_error {
 public:
  InsufficientInstances(FallacyType type, std::size_t available,
                        std::size_t needed);
  FallacyType fallacy_type() const { return type_; }

 private:
  FallacyType type_;
};

// JSON conversion of single records.
OrderedJson ToJson(const Instantiation& inst);
Instantiation InstantiationFromJson(const OrderedJson& j);
OrderedJson ToJson(const ArgumentRecord& record);
OrderedJson ToJson(const AnnotationRecord& record);
OrderedJson ToJson(const PredictionRecord& record);
ArgumentRecord ArgumentFromJson(const OrderedJson& j);
AnnotationRecord AnnotationFromJson(const OrderedJson& j);
PredictionRecord PredictionFromJson(const OrderedJson& j);

std::vector<ArgumentRecord> ReadArguments(std::istream& in);
std::vector<AnnotationRecord> ReadAnnotations(std::istream& in);
std::vector<PredictionRecord> ReadPredictions(std::istream& in);

std::vector<ArgumentRecord> LoadArguments(const std::filesystem::path& path);
std::vector<AnnotationRecord> LoadAnnotations(const std::filesystem::path& path);
std::vector<PredictionRecord> LoadPredictions(const std::filesystem::path& path);

// Canonical writers: fixed field order, one record per line, "\n" endings.
void WriteArguments(std::ostream& out, std::span<const ArgumentRecord> records);
void WriteAnnotations(std::ostream& out,
                      std::span<const AnnotationRecord> records);
void WritePredictions(std::ostream& out,
                      std::span<const PredictionRecord> records);

// Spreadsheet review export (RFC 4180 quoting).
void WriteArgumentsCsv(std::ostream& out, std::span<const ArgumentRecord> records);
void WriteAnnotationsCsv(std::ostream& out,
                         std::span<const AnnotationRecord> records);

struct DatasetReport {
  std::vector<Violation> violations;
  std::map<FallacyType, std::size_t> violations_per_type;
  std::size_t dangling_references = 0;
  std::size_t annotations_checked = 0;

  bool ok() const { return violations.empty(); }
};

// Validates every annotation against its argument and reports dangling
// argument ids and duplicate records.
DatasetReport ValidateDataset(std::span<const ArgumentRecord> arguments,
                              std::span<const AnnotationRecord> annotations,
                              const Inventory& inventory = Inventory::Default());

// Reports predictions whose argument id does not resolve.
DatasetReport ValidatePredictions(std::span<const ArgumentRecord> arguments,
                                  std::span<const PredictionRecord> predictions);

struct Splits {
  std::vector<ArgumentRecord> dev;
  std::vector<ArgumentRecord> train;
};

// Stratified split: `per_type` arguments of every fallacy type go to dev and
// another `per_type` to train. Pure function of its inputs; input order does
// not matter. Throws InsufficientInstances.
Splits MakeSplits(std::span<const ArgumentRecord> arguments, std::size_t per_type,
                  std::uint64_t seed);

// Seeded helpers shared by the samplers. Both are portable across standard
// library implementations.
std::uint64_t UniformBelow(std::uint64_t bound, std::uint64_t& state);
template <typename T>
void SeededShuffle(std::vector<T>& items, std::uint64_t seed);

}  // namespace ftf

#include "ftf/internal/shuffle.h"

#endif  // FTF_DATASET_IO_H_
