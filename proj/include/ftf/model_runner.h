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

// Running prompt configurations against chat-completion endpoints (or a
// mock table), parsing raw outputs, caching responses and writing run
// manifests.

#ifndef FTF_MODEL_RUNNER_H_
#define FTF_MODEL_RUNNER_H_

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ftf/dataset_io.h"
#include "ftf/promptgen.h"
#include "ftf/template_core.h"

namespace ftf {

struct GenerationParams {
  double temperature = 0.0;
  double top_p = 1.0;
  int max_output_tokens = 256;
  double frequency_penalty = 0.0;
  double presence_penalty = 0.0;
};

OrderedJson ToJson(const GenerationParams& params);
GenerationParams GenerationParamsFromJson(const OrderedJson& json);

// ---- Output parsing -------------------------------------------------------

struct ParseResult {
  std::optional<Instantiation> instantiation;
  std::string failure;  // set iff instantiation is absent
  // Template 5 came with non-empty slots; they are kept as given.
  bool catch_all_with_slots = false;

  bool ok() const { return instantiation.has_value(); }
};

// Finds the first "Template No.=" line (case-insensitive, optional brackets
// and whitespace around the number) and reads the "[ROLE]=value" lines that
// follow it. Roles not legal for `type` are skipped, empty values dropped,
// values trimmed; anything after the block is ignored.
ParseResult ParseOutput(std::string_view raw, FallacyType type);

// ---- Endpoints --------------------------------------------------------------

struct ChatRequest {
  std::string argument_id;  // bookkeeping only, never sent to the provider
  std::string model;
  std::string system;  // omitted from the request when empty
  std::string user;
  GenerationParams params;
};

// Network or server trouble that may go away on retry (timeouts, 429, 5xx).
class TransportError : public std::runtime_error {
 public:
  TransportError(const std::string& message, int status = 0)
      : std::runtime_error(message), status_(status) {}
  int status() const { return status_; }

 private:
  int status_;
};

class AuthError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The endpoint answered but the answer is unusable for this item (4xx other
// than auth, malformed body, missing mock entry). Recorded, never retried.
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ChatEndpoint {
 public:
  virtual ~ChatEndpoint() = default;
  virtual std::string Complete(const ChatRequest& request) = 0;
  virtual std::string Describe() const = 0;
  // Items the endpoint is unable to answer, checked before a run starts.
  virtual std::vector<std::string> Uncovered(std::span<const ArgumentRecord>) const { return {}; }
};

// Replays a fixed argument_id -> raw output table.
class MockEndpoint : public ChatEndpoint {
 public:
  explicit MockEndpoint(std::map<std::string, std::string> table);
  static MockEndpoint FromJsonl(const std::filesystem::path& path);

  std::string Complete(const ChatRequest& request) override;
  std::string Describe() const override { return "mock"; }
  std::vector<std::string> Uncovered(std::span<const ArgumentRecord> args) const override;

 private:
  std::map<std::string, std::string> table_;
};

struct ProviderConfig {
  std::string name;
  std::string base_url;  // scheme://host[:port]
  std::string path = "/v1/chat/completions";
  std::string api_key_env;  // empty: no Authorization header
  std::chrono::seconds timeout{120};
};

// Providers declared in resources/providers.json, or in `override_path`.
std::map<std::string, ProviderConfig> LoadProviders(
    const std::optional<std::filesystem::path>& override_path = std::nullopt);

// OpenAI-style /chat/completions over HTTP(S).
class OpenAiCompatibleEndpoint : public ChatEndpoint {
 public:
  // Reads the API key from the environment now; throws AuthError if the
  // configured variable is unset.
  explicit OpenAiCompatibleEndpoint(ProviderConfig config);

  std::string Complete(const ChatRequest& request) override;
  std::string Describe() const override { return config_.name; }

 private:
  ProviderConfig config_;
  std::string api_key_;
};

// ---- Runs -----------------------------------------------------------------

struct RetryPolicy {
  int max_attempts = 5;
  std::chrono::milliseconds initial_backoff{500};
  double multiplier = 2.0;
  std::chrono::milliseconds max_backoff{8000};
};

using Sleeper = std::function<void(std::chrono::milliseconds)>;

// Token bucket; `rate` tokens per second, burst of max(1, rate).
class RateLimiter {
 public:
  explicit RateLimiter(double rate, Sleeper sleeper = {});
  void Acquire();

 private:
  double rate_;
  double tokens_;
  std::chrono::steady_clock::time_point last_;
  Sleeper sleeper_;
  std::mutex mu_;
};

struct RunManifest {
  std::string model_id;
  std::string endpoint;
  PromptStyle prompt_style = PromptStyle::NL2;
  int shots = 0;
  std::uint64_t seed = 0;
  std::string dataset_fingerprint;
  std::string prompt_fingerprint;  // style documents + inventory
  GenerationParams params;
  std::map<FallacyType, std::vector<std::string>> shot_ids;
  std::string timestamp;  // UTC, from SOURCE_DATE_EPOCH when set

  // Hash over everything but the timestamp; the cache key prefix.
  std::string Fingerprint() const;
};

OrderedJson ToJson(const RunManifest& manifest);

// Content-addressed response store: <root>/<k[0:2]>/<k>.json with
// k = SHA-256(manifest fingerprint, argument id).
class ResponseCache {
 public:
  explicit ResponseCache(std::filesystem::path root);
  std::optional<std::string> Get(const std::string& fingerprint, const std::string& argument_id) const;
  void Put(const std::string& fingerprint, const std::string& argument_id, const std::string& raw) const;

 private:
  std::filesystem::path PathFor(const std::string& fingerprint, const std::string& argument_id) const;
  std::filesystem::path root_;
};

struct RunOptions {
  std::string model_id;
  PromptStyle style = PromptStyle::NL2;
  int shots = 0;
  std::uint64_t seed = 0;
  GenerationParams params;
  int parallelism = 1;
  double rate_limit = 0.0;  // requests per second, 0 = unlimited
  std::optional<std::filesystem::path> cache_dir;
  RetryPolicy retry;
  Sleeper sleeper;  // defaults to std::this_thread::sleep_for
  const StyleLibrary* styles = nullptr;
  const Inventory* inventory = nullptr;
};

struct RunStats {
  std::size_t requests = 0;
  std::size_t cache_hits = 0;
  std::size_t retries = 0;
  std::size_t failures = 0;
};

struct RunResult {
  std::vector<PredictionRecord> predictions;  // same order as the queries
  RunManifest manifest;
  RunStats stats;
};

class IncompleteMockTable : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Builds one prompt per query (shots drawn once per fallacy type from
// `train_pool`), sends it, parses the answer. Throws TransportError once the
// retry budget is spent and AuthError immediately.
RunResult RunEval(std::span<const ArgumentRecord> queries, std::span<const Example> train_pool,
                  ChatEndpoint& endpoint, const RunOptions& options);

std::string DatasetFingerprint(std::span<const ArgumentRecord> queries,
                               std::span<const Example> train_pool);

}  // namespace ftf

#endif  // FTF_MODEL_RUNNER_H_
