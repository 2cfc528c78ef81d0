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

#include "ftf/annotation_service.h"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <tuple>

#include "ftf/hash.h"

namespace ftf {
namespace {

constexpr const char* kArgumentsFile = "arguments.jsonl";
constexpr const char* kJournalFile = "journal.jsonl";
constexpr const char* kSnapshotFile = "snapshot.json";

std::string RecordKey(const AnnotationRecord& r) { return ToJson(r).dump(); }

OrderedJson StateToJson(const ServiceState& s) {
  OrderedJson assignments = OrderedJson::object();
  for (const auto& [who, ids] : s.assignments) assignments[who] = ids;
  OrderedJson annotations = OrderedJson::array();
  for (const auto& [key, record] : s.annotations) {
    annotations.push_back({{"record", ToJson(record)}, {"revisions", s.revisions.at(key)}});
  }
  OrderedJson adjudications = OrderedJson::array();
  for (const auto& [id, record] : s.adjudications) adjudications.push_back(ToJson(record));
  return {{"seq", s.seq},
          {"assignments", assignments},
          {"annotations", annotations},
          {"adjudications", adjudications}};
}

ServiceState StateFromJson(const OrderedJson& j) {
  ServiceState s;
  s.seq = j.at("seq").get<std::uint64_t>();
  for (const auto& [who, ids] : j.at("assignments").items()) {
    s.assignments[who] = ids.get<std::set<std::string>>();
  }
  for (const auto& entry : j.at("annotations")) {
    AnnotationRecord r = AnnotationFromJson(entry.at("record"));
    std::pair key{r.argument_id, r.annotator_id};
    s.revisions[key] = entry.at("revisions").get<std::size_t>();
    s.annotations.emplace(std::move(key), std::move(r));
  }
  for (const auto& entry : j.at("adjudications")) {
    AnnotationRecord r = AnnotationFromJson(entry);
    s.adjudications.emplace(r.argument_id, std::move(r));
  }
  return s;
}

// Journal file split into lines, each kept byte-exact for prefix hashing.
std::vector<std::string> ReadLines(const std::filesystem::path& path) {
  std::vector<std::string> lines;
  std::ifstream in(path, std::ios::binary);
  if (!in) return lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

std::string PrefixHash(std::span<const std::string> lines) {
  std::string joined;
  for (const auto& line : lines) joined += line + "\n";
  return Sha256Hex(joined);
}

std::vector<JournalEvent> ParseJournal(std::span<const std::string> lines) {
  std::vector<JournalEvent> events;
  events.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    try {
      events.push_back(JournalEventFromJson(OrderedJson::parse(lines[i])));
    } catch (const std::exception& e) {
      throw JournalCorrupt(i + 1, e.what());
    }
    if (events.back().seq != i + 1) {
      throw JournalCorrupt(i + 1, "sequence number " + std::to_string(events.back().seq) +
                                      " out of order");
    }
  }
  return events;
}

}  // namespace

ValidationFailed::ValidationFailed(ValidationReport report)
    : std::invalid_argument("annotation failed validation (" +
                            std::to_string(report.violations.size()) + " violation(s))"),
      report_(std::move(report)) {}

JournalCorrupt::JournalCorrupt(std::size_t line, const std::string& message)
    : std::runtime_error("journal line " + std::to_string(line) + ": " + message) {}

std::string_view ToString(TaskStatus status) {
  switch (status) {
    case TaskStatus::Open: return "open";
    case TaskStatus::Submitted: return "submitted";
    case TaskStatus::Adjudicated: return "adjudicated";
  }
  return "?";
}

TaskStatus ParseTaskStatus(std::string_view text) {
  for (TaskStatus s : {TaskStatus::Open, TaskStatus::Submitted, TaskStatus::Adjudicated}) {
    if (ToString(s) == text) return s;
  }
  throw UnknownValueError("unknown task status", std::string(text));
}

std::string_view ToString(EventKind kind) {
  switch (kind) {
    case EventKind::TaskAssigned: return "task_assigned";
    case EventKind::AnnotationSubmitted: return "annotation_submitted";
    case EventKind::AnnotationRevised: return "annotation_revised";
    case EventKind::AdjudicationRecorded: return "adjudication_recorded";
  }
  return "?";
}

std::string_view ToString(ExportPolicy policy) {
  return policy == ExportPolicy::Annotators ? "annotators" : "consensus";
}

ExportPolicy ParseExportPolicy(std::string_view text) {
  if (text == "annotators") return ExportPolicy::Annotators;
  if (text == "consensus") return ExportPolicy::Consensus;
  throw UnknownValueError("unknown export policy", std::string(text));
}

OrderedJson ToJson(const JournalEvent& e) {
  OrderedJson j{{"seq", e.seq}, {"event", ToString(e.kind)}, {"argument_id", e.argument_id}};
  if (!e.annotator_id.empty()) j["annotator_id"] = e.annotator_id;
  if (e.annotation) j["annotation"] = ToJson(*e.annotation);
  return j;
}

JournalEvent JournalEventFromJson(const OrderedJson& j) {
  JournalEvent e;
  e.seq = j.at("seq").get<std::uint64_t>();
  const std::string kind = j.at("event").get<std::string>();
  bool known = false;
  for (EventKind k : {EventKind::TaskAssigned, EventKind::AnnotationSubmitted,
                      EventKind::AnnotationRevised, EventKind::AdjudicationRecorded}) {
    if (ToString(k) == kind) {
      e.kind = k;
      known = true;
    }
  }
  if (!known) throw std::invalid_argument("unknown event '" + kind + "'");
  e.argument_id = j.at("argument_id").get<std::string>();
  if (j.contains("annotator_id")) e.annotator_id = j.at("annotator_id").get<std::string>();
  if (j.contains("annotation")) e.annotation = AnnotationFromJson(j.at("annotation"));
  const bool needs_record = e.kind != EventKind::TaskAssigned;
  if (needs_record != e.annotation.has_value()) {
    throw std::invalid_argument("event '" + kind + "' has the wrong payload");
  }
  return e;
}

OrderedJson ToJson(const AnnotationTask& t) {
  OrderedJson visible = OrderedJson::array();
  for (const auto& r : t.visible) visible.push_back(ToJson(r));
  return {{"argument", ToJson(t.argument)},
          {"assignee", t.assignee},
          {"status", ToString(t.status)},
          {"own", t.own ? ToJson(*t.own) : OrderedJson(nullptr)},
          {"visible", visible},
          {"revisions", t.revisions}};
}

void ServiceState::Apply(const JournalEvent& e) {
  if (e.seq != seq + 1) {
    throw JournalCorrupt(e.seq, "expected sequence number " + std::to_string(seq + 1));
  }
  seq = e.seq;
  switch (e.kind) {
    case EventKind::TaskAssigned:
      assignments[e.annotator_id].insert(e.argument_id);
      break;
    case EventKind::AnnotationSubmitted:
    case EventKind::AnnotationRevised: {
      std::pair key{e.argument_id, e.annotator_id};
      auto [it, inserted] = annotations.insert_or_assign(key, *e.annotation);
      if (inserted) {
        revisions[key] = 0;
      } else {
        ++revisions[key];
      }
      break;
    }
    case EventKind::AdjudicationRecorded:
      adjudications.insert_or_assign(e.argument_id, *e.annotation);
      break;
  }
}

bool ServiceState::operator==(const ServiceState& other) const {
  return StateToJson(*this).dump() == StateToJson(other).dump();
}

AnnotationService::AnnotationService(ServiceOptions options)
    : options_(std::move(options)),
      inventory_(options_.inventory ? options_.inventory : &Inventory::Default()) {
  arguments_ = LoadArguments(options_.data_dir / kArgumentsFile);
  for (std::size_t i = 0; i < arguments_.size(); ++i) argument_index_[arguments_[i].id] = i;
  {
    std::set<std::string> seen;
    for (const auto& a : options_.annotators) {
      if (a.empty() || a == kConsensusAnnotator || !seen.insert(a).second) {
        throw std::invalid_argument("bad or duplicate annotator id '" + a + "'");
      }
    }
  }

  const std::vector<std::string> lines = ReadLines(options_.data_dir / kJournalFile);
  journal_ = ParseJournal(lines);

  ServiceState state;
  std::ifstream snap(options_.data_dir / kSnapshotFile);
  if (snap) {
    try {
      const OrderedJson j = OrderedJson::parse(snap);
      const auto n = j.at("seq").get<std::uint64_t>();
      if (n <= lines.size() &&
          j.at("journal_sha256").get<std::string>() ==
              PrefixHash(std::span(lines).first(n))) {
        state = StateFromJson(j.at("state"));
      }
    } catch (const std::exception&) {
      state = ServiceState{};  // stale or unreadable: full replay
    }
  }
  for (std::size_t i = state.seq; i < journal_.size(); ++i) state.Apply(journal_[i]);
  state_ = std::make_shared<const ServiceState>(std::move(state));
}

AnnotationService::~AnnotationService() = default;

const ArgumentRecord& AnnotationService::RequireArgument(const std::string& id) const {
  auto it = argument_index_.find(id);
  if (it == argument_index_.end()) throw UnknownArgument(id);
  return arguments_[it->second];
}

void AnnotationService::RequireAnnotator(const std::string& id) const {
  if (std::find(options_.annotators.begin(), options_.annotators.end(), id) ==
      options_.annotators.end()) {
    throw UnknownAnnotator(id);
  }
}

void AnnotationService::ValidateRecord(const ArgumentRecord& argument,
                                       const AnnotationRecord& record) const {
  ValidationReport report;
  if (record.instantiation.fallacy_type != argument.fallacy_type) {
    report.violations.push_back(
        {ViolationRule::FallacyTypeMismatch, std::nullopt,
         "argument is " + std::string(ToString(argument.fallacy_type)) + ", record says " +
             std::string(ToString(record.instantiation.fallacy_type)),
         argument.id, record.annotator_id});
  } else {
    report = ValidateInstantiation(argument.text, record.instantiation, *inventory_);
    for (auto& v : report.violations) {
      v.argument_id = argument.id;
      v.annotator_id = record.annotator_id;
    }
  }
  if (!report.ok()) throw ValidationFailed(std::move(report));
}

std::shared_ptr<const ServiceState> AnnotationService::state() const {
  std::lock_guard lock(publish_mu_);
  return state_;
}

std::uint64_t AnnotationService::journal_length() const { return state()->seq; }

std::vector<JournalEvent> AnnotationService::journal() const {
  std::lock_guard lock(publish_mu_);
  return journal_;
}

JournalEvent AnnotationService::Append(JournalEvent event) {
  auto current = state();
  event.seq = current->seq + 1;
  auto next = std::make_shared<ServiceState>(*current);
  next->Apply(event);

  {
    std::ofstream out(options_.data_dir / kJournalFile, std::ios::binary | std::ios::app);
    out << ToJson(event).dump() << '\n';
    out.flush();
    if (!out) throw std::runtime_error("cannot append to journal");
  }
  {
    std::lock_guard lock(publish_mu_);
    journal_.push_back(event);
    state_ = std::move(next);
  }
  if (options_.snapshot_every && event.seq % options_.snapshot_every == 0) WriteSnapshot();
  return event;
}

void AnnotationService::WriteSnapshot() const {
  auto s = state();
  const std::vector<std::string> lines = ReadLines(options_.data_dir / kJournalFile);
  if (lines.size() < s->seq) throw std::runtime_error("journal shorter than state");
  const OrderedJson j{{"seq", s->seq},
                      {"journal_sha256", PrefixHash(std::span(lines).first(s->seq))},
                      {"state", StateToJson(*s)}};
  const auto target = options_.data_dir / kSnapshotFile;
  auto tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << j.dump() << '\n';
    if (!out) throw std::runtime_error("cannot write snapshot");
  }
  std::filesystem::rename(tmp, target);
}

JournalEvent AnnotationService::Assign(const std::string& annotator,
                                       const std::string& argument_id) {
  RequireAnnotator(annotator);
  RequireArgument(argument_id);
  std::lock_guard lock(write_mu_);
  JournalEvent e;
  e.kind = EventKind::TaskAssigned;
  e.argument_id = argument_id;
  e.annotator_id = annotator;
  return Append(std::move(e));
}

JournalEvent AnnotationService::Submit(const std::string& annotator, AnnotationRecord record) {
  RequireAnnotator(annotator);
  if (record.annotator_id.empty()) record.annotator_id = annotator;
  if (record.annotator_id != annotator) {
    throw std::invalid_argument("record annotator '" + record.annotator_id +
                                "' does not match submitter '" + annotator + "'");
  }
  const ArgumentRecord& argument = RequireArgument(record.argument_id);
  ValidateRecord(argument, record);

  std::lock_guard lock(write_mu_);
  auto s = state();
  if (auto it = s->assignments.find(annotator);
      it != s->assignments.end() && !it->second.contains(argument.id)) {
    throw TaskClosed("argument '" + argument.id + "' is not assigned to '" + annotator + "'");
  }
  if (s->adjudications.contains(argument.id)) {
    throw TaskClosed("argument '" + argument.id + "' is already adjudicated");
  }
  JournalEvent e;
  e.kind = s->annotations.contains({argument.id, annotator}) ? EventKind::AnnotationRevised
                                                             : EventKind::AnnotationSubmitted;
  e.argument_id = argument.id;
  e.annotator_id = annotator;
  e.annotation = std::move(record);
  return Append(std::move(e));
}

JournalEvent AnnotationService::Adjudicate(AnnotationRecord record) {
  record.annotator_id = std::string(kConsensusAnnotator);
  const ArgumentRecord& argument = RequireArgument(record.argument_id);
  ValidateRecord(argument, record);

  std::lock_guard lock(write_mu_);
  auto s = state();
  auto first = s->annotations.lower_bound({argument.id, std::string()});
  if (first == s->annotations.end() || first->first.first != argument.id) {
    throw TaskClosed("argument '" + argument.id + "' has no annotations to adjudicate");
  }
  JournalEvent e;
  e.kind = EventKind::AdjudicationRecorded;
  e.argument_id = argument.id;
  e.annotation = std::move(record);
  return Append(std::move(e));
}

std::vector<AnnotationTask> AnnotationService::ListTasks(const std::string& annotator,
                                                         const TaskFilter& filter) const {
  RequireAnnotator(annotator);
  auto s = state();
  const auto assigned = s->assignments.find(annotator);

  std::vector<const ArgumentRecord*> order;
  for (const auto& a : arguments_) {
    if (assigned != s->assignments.end() && !assigned->second.contains(a.id)) continue;
    if (filter.fallacy_type && a.fallacy_type != *filter.fallacy_type) continue;
    order.push_back(&a);
  }
  std::sort(order.begin(), order.end(), [](const auto* x, const auto* y) {
    return std::tie(x->fallacy_type, x->id) < std::tie(y->fallacy_type, y->id);
  });

  std::vector<AnnotationTask> tasks;
  for (const ArgumentRecord* a : order) {
    AnnotationTask t;
    t.argument = *a;
    t.assignee = annotator;
    if (auto own = s->annotations.find({a->id, annotator}); own != s->annotations.end()) {
      t.own = own->second;
      t.revisions = s->revisions.at(own->first);
      t.status = TaskStatus::Submitted;
      // Revealed after submission: everyone else's labels, then the verdict.
      for (auto it = s->annotations.lower_bound({a->id, std::string()});
           it != s->annotations.end() && it->first.first == a->id; ++it) {
        if (it->first.second != annotator) t.visible.push_back(it->second);
      }
    }
    if (auto adj = s->adjudications.find(a->id); adj != s->adjudications.end()) {
      t.status = TaskStatus::Adjudicated;
      if (t.own) t.visible.push_back(adj->second);
    }
    if (filter.status && t.status != *filter.status) continue;
    tasks.push_back(std::move(t));
  }
  return tasks;
}

DatasetExport AnnotationService::ExportFrom(const ServiceState& s, ExportPolicy policy) const {
  DatasetExport out;
  out.at = s.seq;
  out.arguments = arguments_;
  if (policy == ExportPolicy::Annotators) {
    for (const auto& [key, record] : s.annotations) out.annotations.push_back(record);
  } else {
    for (const auto& [id, record] : s.adjudications) out.annotations.push_back(record);
  }
  auto type_of = [&](const AnnotationRecord& r) {
    return arguments_[argument_index_.at(r.argument_id)].fallacy_type;
  };
  std::stable_sort(out.annotations.begin(), out.annotations.end(),
                   [&](const AnnotationRecord& x, const AnnotationRecord& y) {
                     return std::make_tuple(type_of(x), std::cref(x.argument_id),
                                            std::cref(x.annotator_id)) <
                            std::make_tuple(type_of(y), std::cref(y.argument_id),
                                            std::cref(y.annotator_id));
                   });
  return out;
}

DatasetExport AnnotationService::Export(std::optional<std::uint64_t> at,
                                        ExportPolicy policy) const {
  std::vector<JournalEvent> events;
  std::shared_ptr<const ServiceState> latest;
  {
    std::lock_guard lock(publish_mu_);
    latest = state_;
    if (at && *at < journal_.size()) {
      events.assign(journal_.begin(), journal_.begin() + static_cast<std::ptrdiff_t>(*at));
    }
  }
  if (!at || *at >= latest->seq) return ExportFrom(*latest, policy);
  return ExportFrom(Replay(events), policy);
}

AgreementReport AnnotationService::LiveAgreement() const {
  const DatasetExport current = Export();
  return MakeOverlapAgreementReport(current.annotations);
}

std::optional<CoverageReport> AnnotationService::LiveCoverage() const {
  const DatasetExport current = Export();
  if (current.annotations.empty()) return std::nullopt;
  return Coverage(current.annotations);
}

ServiceState AnnotationService::Replay(std::span<const JournalEvent> events) {
  ServiceState s;
  for (const auto& e : events) s.Apply(e);
  return s;
}

std::vector<JournalEvent> AnnotationService::ReadJournal(const std::filesystem::path& path) {
  return ParseJournal(ReadLines(path));
}

}  // namespace ftf
