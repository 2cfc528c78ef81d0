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

#include "ftf/model_runner.h"

#include <atomic>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "ftf/hash.h"
#include "ftf/text.h"

namespace ftf {
namespace {

std::string Timestamp() {
  std::time_t t = 0;
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch != nullptr && *epoch != '\0') {
    t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  } else {
    t = std::time(nullptr);
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string PromptFingerprint(PromptStyle style, const StyleLibrary& styles,
                              const Inventory& inventory) {
  std::string blob = "inventory " + inventory.version() + "\n";
  for (FallacyType type : kAllFallacyTypes) {
    blob += styles.Get(style, type);
    blob += '\0';
    blob += TemplateListBlock(type, style, inventory);
    blob += '\0';
  }
  return Sha256Hex(blob);
}

Sleeper DefaultSleeper() {
  return [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
}

}  // namespace

OrderedJson ToJson(const GenerationParams& p) {
  return {{"temperature", p.temperature},
          {"top_p", p.top_p},
          {"max_output_tokens", p.max_output_tokens},
          {"frequency_penalty", p.frequency_penalty},
          {"presence_penalty", p.presence_penalty}};
}

GenerationParams GenerationParamsFromJson(const OrderedJson& j) {
  GenerationParams p;
  p.temperature = j.value("temperature", p.temperature);
  p.top_p = j.value("top_p", p.top_p);
  p.max_output_tokens = j.value("max_output_tokens", p.max_output_tokens);
  p.frequency_penalty = j.value("frequency_penalty", p.frequency_penalty);
  p.presence_penalty = j.value("presence_penalty", p.presence_penalty);
  return p;
}

MockEndpoint::MockEndpoint(std::map<std::string, std::string> table) : table_(std::move(table)) {}

MockEndpoint MockEndpoint::FromJsonl(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read mock table " + path.string());
  std::map<std::string, std::string> table;
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    if (Trim(line).empty()) continue;
    try {
      const auto j = OrderedJson::parse(line);
      const auto id = j.at("argument_id").get<std::string>();
      if (!table.emplace(id, j.at("raw_output").get<std::string>()).second) {
        throw RecordError(RecordError::Kind::DuplicateId, n, "duplicate argument_id " + id);
      }
    } catch (const OrderedJson::exception& e) {
      throw RecordError(RecordError::Kind::Format, n, e.what());
    }
  }
  return MockEndpoint(std::move(table));
}

std::string MockEndpoint::Complete(const ChatRequest& request) {
  auto it = table_.find(request.argument_id);
  if (it == table_.end()) throw GenerationError("mock table has no entry for " + request.argument_id);
  return it->second;
}

std::vector<std::string> MockEndpoint::Uncovered(std::span<const ArgumentRecord> args) const {
  std::vector<std::string> out;
  for (const auto& a : args) {
    if (!table_.contains(a.id)) out.push_back(a.id);
  }
  return out;
}

RateLimiter::RateLimiter(double rate, Sleeper sleeper)
    : rate_(rate),
      tokens_(std::max(1.0, rate)),
      last_(std::chrono::steady_clock::now()),
      sleeper_(sleeper ? std::move(sleeper) : DefaultSleeper()) {}

void RateLimiter::Acquire() {
  if (rate_ <= 0.0) return;
  std::chrono::milliseconds wait{0};
  {
    std::lock_guard lock(mu_);
    const auto now = std::chrono::steady_clock::now();
    const double elapsed = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    tokens_ = std::min(std::max(1.0, rate_), tokens_ + elapsed * rate_);
    tokens_ -= 1.0;
    // A negative balance is the debt this caller sleeps off; later callers
    // queue behind it.
    if (tokens_ < 0.0) {
      wait = std::chrono::milliseconds(static_cast<long long>(-tokens_ / rate_ * 1000.0 + 0.5));
    }
  }
  if (wait.count() > 0) sleeper_(wait);
}

std::string RunManifest::Fingerprint() const {
  OrderedJson j = ToJson(*this);
  j.erase("timestamp");
  return Sha256Hex(j.dump());
}

OrderedJson ToJson(const RunManifest& m) {
  OrderedJson shots = OrderedJson::object();
  for (const auto& [type, ids] : m.shot_ids) shots[std::string(ToString(type))] = ids;
  return {{"model_id", m.model_id},
          {"endpoint", m.endpoint},
          {"prompt_style", ToString(m.prompt_style)},
          {"shots", m.shots},
          {"seed", m.seed},
          {"dataset_fingerprint", m.dataset_fingerprint},
          {"prompt_fingerprint", m.prompt_fingerprint},
          {"generation_params", ToJson(m.params)},
          {"shot_ids", shots},
          {"timestamp", m.timestamp}};
}

ResponseCache::ResponseCache(std::filesystem::path root) : root_(std::move(root)) {}

std::filesystem::path ResponseCache::PathFor(const std::string& fingerprint,
                                             const std::string& argument_id) const {
  const std::string key = Sha256Hex(fingerprint + '\0' + argument_id);
  return root_ / key.substr(0, 2) / (key + ".json");
}

std::optional<std::string> ResponseCache::Get(const std::string& fingerprint,
                                              const std::string& argument_id) const {
  std::ifstream in(PathFor(fingerprint, argument_id), std::ios::binary);
  if (!in) return std::nullopt;
  try {
    const auto j = OrderedJson::parse(in);
    if (j.at("argument_id") != argument_id) return std::nullopt;
    return j.at("raw_output").get<std::string>();
  } catch (const OrderedJson::exception&) {
    return std::nullopt;  // a torn or foreign file is a miss
  }
}

void ResponseCache::Put(const std::string& fingerprint, const std::string& argument_id,
                        const std::string& raw) const {
  const auto path = PathFor(fingerprint, argument_id);
  std::filesystem::create_directories(path.parent_path());
  static std::atomic<unsigned long> counter{0};
  std::ostringstream tmp_name;
  tmp_name << path.filename().string() << ".tmp." << std::this_thread::get_id() << "." << counter++;
  const auto tmp = path.parent_path() / tmp_name.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << OrderedJson{{"argument_id", argument_id}, {"raw_output", raw}}.dump() << "\n";
    if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
  }
  // Same key, same content: whichever writer renames last wins harmlessly.
  std::filesystem::rename(tmp, path);
}

std::string DatasetFingerprint(std::span<const ArgumentRecord> queries,
                               std::span<const Example> train_pool) {
  std::ostringstream blob;
  WriteArguments(blob, queries);
  blob << "--\n";
  for (const auto& e : train_pool) {
    blob << ToJson(e.argument).dump() << "\n" << ToJson(e.annotation).dump() << "\n";
  }
  return Sha256Hex(blob.str());
}

RunResult RunEval(std::span<const ArgumentRecord> queries, std::span<const Example> train_pool,
                  ChatEndpoint& endpoint, const RunOptions& options) {
  const StyleLibrary& styles = options.styles ? *options.styles : StyleLibrary::Default();
  const Inventory& inventory = options.inventory ? *options.inventory : Inventory::Default();
  const Sleeper sleep = options.sleeper ? options.sleeper : DefaultSleeper();

  if (auto missing = endpoint.Uncovered(queries); !missing.empty()) {
    throw IncompleteMockTable(std::to_string(missing.size()) + " queries have no mock output, first " +
                              missing.front());
  }

  RunResult result;
  RunManifest& m = result.manifest;
  m.model_id = options.model_id;
  m.endpoint = endpoint.Describe();
  m.prompt_style = options.style;
  m.shots = options.shots;
  m.seed = options.seed;
  m.params = options.params;
  m.dataset_fingerprint = DatasetFingerprint(queries, train_pool);
  m.prompt_fingerprint = PromptFingerprint(options.style, styles, inventory);
  m.timestamp = Timestamp();

  std::map<FallacyType, std::vector<Example>> shots;
  for (const auto& q : queries) {
    if (shots.contains(q.fallacy_type)) continue;
    auto drawn = SampleShots(train_pool, q.fallacy_type, options.shots, options.seed, inventory);
    auto& ids = m.shot_ids[q.fallacy_type];
    for (const auto& e : drawn) ids.push_back(e.argument.id);
    shots.emplace(q.fallacy_type, std::move(drawn));
  }
  const std::string fingerprint = m.Fingerprint();

  std::optional<ResponseCache> cache;
  if (options.cache_dir) cache.emplace(*options.cache_dir);
  RateLimiter limiter(options.rate_limit, sleep);

  result.predictions.resize(queries.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> abort{false};
  std::atomic<std::size_t> requests{0}, hits{0}, retries{0}, failures{0};
  std::mutex error_mu;
  std::exception_ptr error;

  auto answer = [&](const ArgumentRecord& q) -> PredictionRecord {
    PredictionRecord rec;
    rec.argument_id = q.id;
    rec.model_id = options.model_id;
    rec.prompt_style = options.style;
    rec.shots = options.shots;

    std::optional<std::string> raw;
    if (cache) {
      raw = cache->Get(fingerprint, q.id);
      if (raw) ++hits;
    }
    if (!raw) {
      const auto& examples = shots.at(q.fallacy_type);
      const PromptDocument doc =
          BuildPrompt({q.fallacy_type, options.style, options.shots, options.seed}, examples, q,
                      styles, inventory);
      ChatRequest request{q.id, options.model_id, "", doc.text, options.params};
      auto backoff = options.retry.initial_backoff;
      for (int attempt = 1;; ++attempt) {
        limiter.Acquire();
        ++requests;
        try {
          raw = endpoint.Complete(request);
          break;
        } catch (const TransportError&) {
          if (attempt >= options.retry.max_attempts || abort) throw;
          ++retries;
          sleep(backoff);
          backoff = std::min(options.retry.max_backoff,
                             std::chrono::milliseconds(static_cast<long long>(
                                 static_cast<double>(backoff.count()) * options.retry.multiplier)));
        } catch (const GenerationError& e) {
          ++failures;
          rec.extra["generation_error"] = e.what();
          return rec;
        }
      }
      if (cache) cache->Put(fingerprint, q.id, *raw);
    }
    rec.raw_output = *raw;
    ParseResult parsed = ParseOutput(*raw, q.fallacy_type);
    if (parsed.ok()) {
      rec.parsed = std::move(parsed.instantiation);
      rec.parse_ok = true;
      if (parsed.catch_all_with_slots) rec.extra["flags"] = {"catch_all_with_slots"};
    } else {
      rec.extra["parse_error"] = parsed.failure;
    }
    return rec;
  };

  auto worker = [&] {
    for (std::size_t i = next++; i < queries.size() && !abort; i = next++) {
      try {
        result.predictions[i] = answer(queries[i]);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
        abort = true;
      }
    }
  };
  const int threads = std::max(1, std::min<int>(options.parallelism, static_cast<int>(queries.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);

  result.stats = {requests.load(), hits.load(), retries.load(), failures.load()};
  return result;
}

}  // namespace ftf
