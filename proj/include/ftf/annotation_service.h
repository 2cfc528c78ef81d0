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

// Event-sourced annotation backend.
//
// All state is a fold over an append-only journal (one JSON event per line).
// A snapshot file caches the fold at some journal prefix; it is only trusted
// when the SHA-256 of that prefix still matches.
//
// Visibility is blind: an annotator sees other annotators' labels for an
// argument only after submitting their own.

#ifndef FTF_ANNOTATION_SERVICE_H_
#define FTF_ANNOTATION_SERVICE_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ftf/agreement.h"
#include "ftf/dataset_io.h"
#include "ftf/metrics.h"
#include "ftf/template_core.h"

namespace ftf {

class UnknownAnnotator : public std::invalid_argument {
 public:
  explicit UnknownAnnotator(const std::string& id)
      : std::invalid_argument("unknown annotator '" + id + "'") {}
};

class UnknownArgument : public std::invalid_argument {
 public:
  explicit UnknownArgument(const std::string& id)
      : std::invalid_argument("unknown argument '" + id + "'") {}
};

class ValidationFailed : public std::invalid_argument {
 public:
  explicit ValidationFailed(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

// Submission to an adjudicated argument, or by an annotator the argument was
// not assigned to.
class TaskClosed : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class JournalCorrupt : public std::runtime_error {
 public:
  JournalCorrupt(std::size_t line, const std::string& message);
};

enum class TaskStatus { Open, Submitted, Adjudicated };
std::string_view ToString(TaskStatus status);
TaskStatus ParseTaskStatus(std::string_view text);

enum class EventKind {
  TaskAssigned,
  AnnotationSubmitted,
  AnnotationRevised,
  AdjudicationRecorded,
};
std::string_view ToString(EventKind kind);

struct JournalEvent {
  std::uint64_t seq = 0;  // 1-based, dense
  EventKind kind = EventKind::AnnotationSubmitted;
  std::string argument_id;
  std::string annotator_id;  // assignee / author; empty for adjudications
  std::optional<AnnotationRecord> annotation;  // absent for task_assigned
};

OrderedJson ToJson(const JournalEvent& event);
JournalEvent JournalEventFromJson(const OrderedJson& j);

struct AnnotationTask {
  ArgumentRecord argument;
  std::string assignee;
  TaskStatus status = TaskStatus::Open;
  std::optional<AnnotationRecord> own;
  // Other annotators' records and the adjudication; empty while blind.
  std::vector<AnnotationRecord> visible;
  std::size_t revisions = 0;
};

OrderedJson ToJson(const AnnotationTask& task);

struct TaskFilter {
  std::optional<FallacyType> fallacy_type;
  std::optional<TaskStatus> status;
};

// Which records an export contains: every annotator's current record, or
// one adjudicated record per adjudicated argument.
enum class ExportPolicy { Annotators, Consensus };
std::string_view ToString(ExportPolicy policy);
ExportPolicy ParseExportPolicy(std::string_view text);

inline constexpr std::string_view kConsensusAnnotator = "consensus";

struct DatasetExport {
  std::uint64_t at = 0;  // journal prefix length folded
  std::vector<ArgumentRecord> arguments;
  std::vector<AnnotationRecord> annotations;  // (type, argument id, annotator)
};

// The folded state at one journal prefix. Immutable once published.
struct ServiceState {
  std::uint64_t seq = 0;
  // Explicit assignments; an annotator without any is assigned everything.
  std::map<std::string, std::set<std::string>> assignments;
  // (argument id, annotator id) -> current record.
  std::map<std::pair<std::string, std::string>, AnnotationRecord> annotations;
  std::map<std::pair<std::string, std::string>, std::size_t> revisions;
  std::map<std::string, AnnotationRecord> adjudications;

  // Applies one event; throws JournalCorrupt on a sequence gap.
  void Apply(const JournalEvent& event);
  bool operator==(const ServiceState&) const;
};

struct ServiceOptions {
  std::filesystem::path data_dir;  // arguments.jsonl, journal.jsonl, snapshot.json
  std::vector<std::string> annotators;
  // Write a snapshot after this many appended events; 0 disables.
  std::size_t snapshot_every = 100;
  const Inventory* inventory = nullptr;  // default inventory when null
};

class AnnotationService {
 public:
  // Loads arguments, then the snapshot (if valid) and the journal suffix.
  explicit AnnotationService(ServiceOptions options);
  ~AnnotationService();

  AnnotationService(const AnnotationService&) = delete;
  AnnotationService& operator=(const AnnotationService&) = delete;

  const std::vector<ArgumentRecord>& arguments() const { return arguments_; }
  const std::vector<std::string>& annotators() const { return options_.annotators; }
  const Inventory& inventory() const { return *inventory_; }

  // Ordered by (fallacy type, argument id).
  std::vector<AnnotationTask> ListTasks(const std::string& annotator,
                                        const TaskFilter& filter = {}) const;

  // Returns the stored record and the event that recorded it.
  JournalEvent Assign(const std::string& annotator, const std::string& argument_id);
  JournalEvent Submit(const std::string& annotator, AnnotationRecord record);
  JournalEvent Adjudicate(AnnotationRecord record);

  AgreementReport LiveAgreement() const;
  std::optional<CoverageReport> LiveCoverage() const;  // nullopt before any label

  // `at` = journal prefix length; latest when absent or past the end.
  DatasetExport Export(std::optional<std::uint64_t> at = std::nullopt,
                       ExportPolicy policy = ExportPolicy::Annotators) const;

  std::uint64_t journal_length() const;
  std::shared_ptr<const ServiceState> state() const;
  std::vector<JournalEvent> journal() const;

  // Writes the snapshot for the current state now.
  void WriteSnapshot() const;

  // Folds `events` from empty; the reference for replay equivalence.
  static ServiceState Replay(std::span<const JournalEvent> events);
  static std::vector<JournalEvent> ReadJournal(const std::filesystem::path& path);

 private:
  const ArgumentRecord& RequireArgument(const std::string& id) const;
  void RequireAnnotator(const std::string& id) const;
  void ValidateRecord(const ArgumentRecord& argument, const AnnotationRecord& record) const;
  JournalEvent Append(JournalEvent event);  // caller holds write_mu_
  DatasetExport ExportFrom(const ServiceState& state, ExportPolicy policy) const;

  ServiceOptions options_;
  const Inventory* inventory_;
  std::vector<ArgumentRecord> arguments_;
  std::map<std::string, std::size_t> argument_index_;

  std::mutex write_mu_;  // single writer: journal append + publish
  mutable std::mutex publish_mu_;  // guards the pointer swap only
  std::shared_ptr<const ServiceState> state_;
  std::vector<JournalEvent> journal_;  // guarded by write_mu_ / publish_mu_
};

}  // namespace ftf

#endif  // FTF_ANNOTATION_SERVICE_H_
