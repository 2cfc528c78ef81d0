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

#include "ftf/dataset_io.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include "ftf/text.h"

namespace ftf {
namespace {

using Kind = RecordError::Kind;

[[noreturn]] void FormatFail(const std::string& message) {
  throw RecordError(Kind::Format, 0, message);
}

const OrderedJson& Field(const OrderedJson& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) FormatFail(std::string("missing field '") + name + "'");
  return *it;
}

std::string StringField(const OrderedJson& j, const char* name) {
  const OrderedJson& v = Field(j, name);
  if (!v.is_string()) FormatFail(std::string("field '") + name + "' must be a string");
  return v.get<std::string>();
}

std::optional<std::string> OptionalString(const OrderedJson& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) FormatFail(std::string("field '") + name + "' must be a string");
  return it->get<std::string>();
}

FallacyType FallacyField(const OrderedJson& j) {
  const std::string value = StringField(j, "fallacy_type");
  try {
    return ParseFallacyType(value);
  } catch (const UnknownFallacyType&) {
    throw RecordError(Kind::UnknownFallacyType, 0,
                      "unknown fallacy type '" + value + "'");
  }
}

OrderedJson Extras(const OrderedJson& j, std::initializer_list<const char*> known) {
  OrderedJson extra = OrderedJson::object();
  for (auto it = j.begin(); it != j.end(); ++it) {
    const bool is_known = std::any_of(known.begin(), known.end(),
                                      [&](const char* k) { return it.key() == k; });
    if (!is_known) extra[it.key()] = it.value();
  }
  return extra;
}

void AppendExtras(OrderedJson& j, const OrderedJson& extra) {
  if (!extra.is_object()) return;
  for (auto it = extra.begin(); it != extra.end(); ++it) {
    if (!j.contains(it.key())) j[it.key()] = it.value();
  }
}

template <typename Record, typename Parse, typename Key>
std::vector<Record> ReadLines(std::istream& in, Parse parse, Key key,
                              const char* what) {
  std::vector<Record> records;
  std::set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    try {
      const OrderedJson j = OrderedJson::parse(line);
      if (!j.is_object()) FormatFail("record is not an object");
      Record record = parse(j);
      if (!seen.insert(key(record)).second) {
        throw RecordError(Kind::DuplicateId, 0,
                          std::string("duplicate ") + what + " " + key(record));
      }
      records.push_back(std::move(record));
    } catch (const RecordError& e) {
      throw RecordError(e.kind(), line_no, e.what());
    } catch (const nlohmann::json::exception& e) {
      throw RecordError(Kind::Format, line_no, e.what());
    }
  }
  return records;
}

template <typename Record, typename Reader>
std::vector<Record> LoadFile(const std::filesystem::path& path, Reader reader) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return reader(in);
}

std::string CsvField(std::string_view value) {
  const bool quote = value.find_first_of(",\"\r\n") != std::string_view::npos ||
                     (!value.empty() && (value.front() == ' ' || value.back() == ' '));
  if (!quote) return std::string(value);
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void CsvRow(std::ostream& out, std::initializer_list<std::string> fields) {
  bool first = true;
  for (const auto& field : fields) {
    if (!first) out << ',';
    out << CsvField(field);
    first = false;
  }
  out << "\r\n";
}

std::string FormatConfidence(const std::optional<double>& c) {
  return c ? OrderedJson(*c).dump() : "";
}

}  // namespace

RecordError::RecordError(Kind kind, std::size_t line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                  : message),
      kind_(kind),
      line_(line) {}

std::string_view RecordError::kind_name() const {
  switch (kind_) {
    case Kind::Format: return "FormatError";
    case Kind::DuplicateId: return "DuplicateId";
    case Kind::UnknownFallacyType: return "UnknownFallacyType";
  }
  return "RecordError";
}

InsufficientInstances::InsufficientInstances(FallacyType type,
                                             std::size_t available,
                                             std::size_t needed)
    : std::runtime_error("insufficient instances of " +
                         std::string(ToString(type)) + ": " +
                         std::to_string(available) + " available, " +
                         std::to_string(needed) + " needed"),
      type_(type) {}

std::string_view ToString(Split split) {
  return split == Split::Dev ? "dev" : "train";
}

Split ParseSplit(std::string_view text) {
  if (text == "dev") return Split::Dev;
  if (text == "train") return Split::Train;
  throw UnknownValueError("unknown split", std::string(text));
}

std::string_view ToString(PromptStyle style) {
  switch (style) {
    case PromptStyle::NL1: return "NL1";
    case PromptStyle::NL2: return "NL2";
    case PromptStyle::PL: return "PL";
  }
  return "?";
}

PromptStyle ParsePromptStyle(std::string_view text) {
  const std::string upper = [&] {
    std::string s(Trim(text));
    for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
  }();
  if (upper == "NL1") return PromptStyle::NL1;
  if (upper == "NL2") return PromptStyle::NL2;
  if (upper == "PL") return PromptStyle::PL;
  throw UnknownValueError("unknown prompt style", std::string(text));
}

// --- JSON conversion -------------------------------------------------------

OrderedJson ToJson(const Instantiation& inst) {
  OrderedJson slots = OrderedJson::object();
  for (const auto& [role, value] : inst.slots) slots[std::string(RoleName(role))] = value;
  OrderedJson j;
  j["fallacy_type"] = ToString(inst.fallacy_type);
  j["template_number"] = inst.template_number;
  j["slots"] = std::move(slots);
  return j;
}

Instantiation InstantiationFromJson(const OrderedJson& j) {
  if (!j.is_object()) FormatFail("instantiation must be an object");
  Instantiation inst;
  inst.fallacy_type = FallacyField(j);
  const OrderedJson& number = Field(j, "template_number");
  if (!number.is_number_integer()) FormatFail("template_number must be an integer");
  inst.template_number = number.get<int>();
  if (inst.template_number < 1 || inst.template_number > 5) {
    FormatFail("template_number must be in 1..5");
  }
  auto slots = j.find("slots");
  if (slots != j.end() && !slots->is_null()) {
    if (!slots->is_object()) FormatFail("slots must be an object");
    for (auto it = slots->begin(); it != slots->end(); ++it) {
      auto role = ParseRole(it.key());
      if (!role) FormatFail("unknown slot role '" + it.key() + "'");
      if (!it->is_string()) FormatFail("slot values must be strings");
      inst.slots[*role] = it->get<std::string>();
    }
  }
  return inst;
}

OrderedJson ToJson(const ArgumentRecord& r) {
  OrderedJson j;
  j["id"] = r.id;
  j["text"] = r.text;
  j["fallacy_type"] = ToString(r.fallacy_type);
  j["split"] = ToString(r.split);
  j["source"] = r.source;
  AppendExtras(j, r.extra);
  return j;
}

ArgumentRecord ArgumentFromJson(const OrderedJson& j) {
  ArgumentRecord r;
  r.id = StringField(j, "id");
  r.text = StringField(j, "text");
  if (r.id.empty()) FormatFail("argument id is empty");
  if (Trim(r.text).empty()) FormatFail("argument text is empty");
  r.fallacy_type = FallacyField(j);
  try {
    r.split = ParseSplit(StringField(j, "split"));
  } catch (const UnknownValueError& e) {
    FormatFail(e.what());
  }
  r.source = OptionalString(j, "source").value_or("");
  r.extra = Extras(j, {"id", "text", "fallacy_type", "split", "source"});
  return r;
}

OrderedJson ToJson(const AnnotationRecord& r) {
  OrderedJson j;
  j["argument_id"] = r.argument_id;
  j["annotator_id"] = r.annotator_id;
  j["instantiation"] = ToJson(r.instantiation);
  j["confidence"] = r.confidence ? OrderedJson(*r.confidence) : OrderedJson();
  j["comment"] = r.comment ? OrderedJson(*r.comment) : OrderedJson();
  AppendExtras(j, r.extra);
  return j;
}

AnnotationRecord AnnotationFromJson(const OrderedJson& j) {
  AnnotationRecord r;
  r.argument_id = StringField(j, "argument_id");
  r.annotator_id = StringField(j, "annotator_id");
  r.instantiation = InstantiationFromJson(Field(j, "instantiation"));
  auto c = j.find("confidence");
  if (c != j.end() && !c->is_null()) {
    if (!c->is_number()) FormatFail("confidence must be a number");
    const double value = c->get<double>();
    if (!(value >= 0.0 && value <= 1.0)) FormatFail("confidence must be in [0,1]");
    r.confidence = value;
  }
  r.comment = OptionalString(j, "comment");
  r.extra = Extras(j, {"argument_id", "annotator_id", "instantiation",
                       "confidence", "comment"});
  return r;
}

OrderedJson ToJson(const PredictionRecord& r) {
  OrderedJson j;
  j["argument_id"] = r.argument_id;
  j["model_id"] = r.model_id;
  j["prompt_style"] = ToString(r.prompt_style);
  j["shots"] = r.shots;
  j["raw_output"] = r.raw_output;
  j["parsed"] = r.parsed ? ToJson(*r.parsed) : OrderedJson();
  j["parse_ok"] = r.parse_ok;
  AppendExtras(j, r.extra);
  return j;
}

PredictionRecord PredictionFromJson(const OrderedJson& j) {
  PredictionRecord r;
  r.argument_id = StringField(j, "argument_id");
  r.model_id = StringField(j, "model_id");
  try {
    r.prompt_style = ParsePromptStyle(StringField(j, "prompt_style"));
  } catch (const UnknownValueError& e) {
    FormatFail(e.what());
  }
  const OrderedJson& shots = Field(j, "shots");
  if (!shots.is_number_integer()) FormatFail("shots must be an integer");
  r.shots = shots.get<int>();
  if (r.shots != 0 && r.shots != 1 && r.shots != 5) FormatFail("shots must be 0, 1 or 5");
  r.raw_output = StringField(j, "raw_output");
  const OrderedJson& ok = Field(j, "parse_ok");
  if (!ok.is_boolean()) FormatFail("parse_ok must be a boolean");
  r.parse_ok = ok.get<bool>();
  auto parsed = j.find("parsed");
  if (parsed != j.end() && !parsed->is_null()) r.parsed = InstantiationFromJson(*parsed);
  if (r.parse_ok != r.parsed.has_value()) {
    FormatFail("parse_ok must be true exactly when parsed is present");
  }
  r.extra = Extras(j, {"argument_id", "model_id", "prompt_style", "shots",
                       "raw_output", "parsed", "parse_ok"});
  return r;
}

// --- readers / writers -----------------------------------------------------

std::vector<ArgumentRecord> ReadArguments(std::istream& in) {
  return ReadLines<ArgumentRecord>(
      in, ArgumentFromJson, [](const ArgumentRecord& r) { return r.id; },
      "argument id");
}

std::vector<AnnotationRecord> ReadAnnotations(std::istream& in) {
  return ReadLines<AnnotationRecord>(
      in, AnnotationFromJson,
      [](const AnnotationRecord& r) { return r.argument_id + "/" + r.annotator_id; },
      "annotation (argument/annotator)");
}

std::vector<PredictionRecord> ReadPredictions(std::istream& in) {
  return ReadLines<PredictionRecord>(
      in, PredictionFromJson,
      [](const PredictionRecord& r) {
        return r.argument_id + "/" + r.model_id + "/" +
               std::string(ToString(r.prompt_style)) + "/" + std::to_string(r.shots);
      },
      "prediction (argument/model/style/shots)");
}

std::vector<ArgumentRecord> LoadArguments(const std::filesystem::path& path) {
  return LoadFile<ArgumentRecord>(path, [](std::istream& in) { return ReadArguments(in); });
}

std::vector<AnnotationRecord> LoadAnnotations(const std::filesystem::path& path) {
  return LoadFile<AnnotationRecord>(path,
                                    [](std::istream& in) { return ReadAnnotations(in); });
}

std::vector<PredictionRecord> LoadPredictions(const std::filesystem::path& path) {
  return LoadFile<PredictionRecord>(path,
                                    [](std::istream& in) { return ReadPredictions(in); });
}

void WriteArguments(std::ostream& out, std::span<const ArgumentRecord> records) {
  for (const auto& r : records) out << ToJson(r).dump() << '\n';
}

void WriteAnnotations(std::ostream& out, std::span<const AnnotationRecord> records) {
  for (const auto& r : records) out << ToJson(r).dump() << '\n';
}

void WritePredictions(std::ostream& out, std::span<const PredictionRecord> records) {
  for (const auto& r : records) out << ToJson(r).dump() << '\n';
}

void WriteArgumentsCsv(std::ostream& out, std::span<const ArgumentRecord> records) {
  CsvRow(out, {"id", "fallacy_type", "split", "source", "text"});
  for (const auto& r : records) {
    CsvRow(out, {r.id, std::string(ToString(r.fallacy_type)),
                 std::string(ToString(r.split)), r.source, r.text});
  }
}

void WriteAnnotationsCsv(std::ostream& out,
                         std::span<const AnnotationRecord> records) {
  CsvRow(out, {"argument_id", "annotator_id", "fallacy_type", "template_number",
               "A", "C", "A'", "C'", "X", "confidence", "comment"});
  for (const auto& r : records) {
    auto slot = [&](SlotRole role) {
      auto it = r.instantiation.slots.find(role);
      return it == r.instantiation.slots.end() ? std::string() : it->second;
    };
    CsvRow(out, {r.argument_id, r.annotator_id,
                 std::string(ToString(r.instantiation.fallacy_type)),
                 std::to_string(r.instantiation.template_number),
                 slot(SlotRole::A), slot(SlotRole::C), slot(SlotRole::APrime),
                 slot(SlotRole::CPrime), slot(SlotRole::X),
                 FormatConfidence(r.confidence), r.comment.value_or("")});
  }
}

// --- validation ------------------------------------------------------------

DatasetReport ValidateDataset(std::span<const ArgumentRecord> arguments,
                              std::span<const AnnotationRecord> annotations,
                              const Inventory& inventory) {
  DatasetReport report;
  std::map<std::string, const ArgumentRecord*> by_id;
  for (const auto& arg : arguments) {
    if (!by_id.emplace(arg.id, &arg).second) {
      report.violations.push_back({ViolationRule::DuplicateRecord, std::nullopt,
                                   "duplicate argument id " + arg.id, arg.id, {}});
      ++report.violations_per_type[arg.fallacy_type];
    }
  }
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& ann : annotations) {
    ++report.annotations_checked;
    auto add = [&](Violation v, FallacyType type) {
      v.argument_id = ann.argument_id;
      v.annotator_id = ann.annotator_id;
      report.violations.push_back(std::move(v));
      ++report.violations_per_type[type];
    };
    if (!seen.emplace(ann.argument_id, ann.annotator_id).second) {
      add({ViolationRule::DuplicateRecord, std::nullopt,
           "duplicate annotation by " + ann.annotator_id, {}, {}},
          ann.instantiation.fallacy_type);
      continue;
    }
    auto it = by_id.find(ann.argument_id);
    if (it == by_id.end()) {
      ++report.dangling_references;
      add({ViolationRule::DanglingReference, std::nullopt,
           "argument " + ann.argument_id + " does not exist", {}, {}},
          ann.instantiation.fallacy_type);
      continue;
    }
    const ArgumentRecord& arg = *it->second;
    if (ann.instantiation.fallacy_type != arg.fallacy_type) {
      add({ViolationRule::FallacyTypeMismatch, std::nullopt,
           "annotation is " + std::string(ToString(ann.instantiation.fallacy_type)) +
               " but the argument is " + std::string(ToString(arg.fallacy_type)),
           {}, {}},
          arg.fallacy_type);
      continue;
    }
    for (auto& v : ValidateInstantiation(arg.text, ann.instantiation, inventory).violations) {
      add(std::move(v), arg.fallacy_type);
    }
  }
  return report;
}

DatasetReport ValidatePredictions(std::span<const ArgumentRecord> arguments,
                                  std::span<const PredictionRecord> predictions) {
  DatasetReport report;
  std::set<std::string> ids;
  for (const auto& arg : arguments) ids.insert(arg.id);
  for (const auto& pred : predictions) {
    if (ids.contains(pred.argument_id)) continue;
    ++report.dangling_references;
    report.violations.push_back({ViolationRule::DanglingReference, std::nullopt,
                                 "prediction for unknown argument " + pred.argument_id,
                                 pred.argument_id, {}});
  }
  return report;
}

// --- splits ----------------------------------------------------------------

std::uint64_t UniformBelow(std::uint64_t bound, std::uint64_t& state) {
  auto next = [&state] {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  };
  if (bound <= 1) return 0;
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = next();
    if (r >= threshold) return r % bound;
  }
}

Splits MakeSplits(std::span<const ArgumentRecord> arguments, std::size_t per_type,
                  std::uint64_t seed) {
  Splits splits;
  for (FallacyType type : kAllFallacyTypes) {
    std::vector<ArgumentRecord> pool;
    for (const auto& arg : arguments) {
      if (arg.fallacy_type == type) pool.push_back(arg);
    }
    if (pool.size() < 2 * per_type) {
      throw InsufficientInstances(type, pool.size(), 2 * per_type);
    }
    std::sort(pool.begin(), pool.end(),
              [](const auto& l, const auto& r) { return l.id < r.id; });
    SeededShuffle(pool, seed ^ (0xA24BAED4963EE407ULL *
                                (static_cast<std::uint64_t>(type) + 1)));
    auto take = [&](std::size_t offset, Split split, std::vector<ArgumentRecord>& out) {
      std::vector<ArgumentRecord> part(pool.begin() + static_cast<std::ptrdiff_t>(offset),
                                       pool.begin() + static_cast<std::ptrdiff_t>(offset + per_type));
      std::sort(part.begin(), part.end(),
                [](const auto& l, const auto& r) { return l.id < r.id; });
      for (auto& arg : part) {
        arg.split = split;
        out.push_back(std::move(arg));
      }
    };
    take(0, Split::Dev, splits.dev);
    take(per_type, Split::Train, splits.train);
  }
  return splits;
}

}  // namespace ftf
