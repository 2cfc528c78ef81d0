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

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ftf/model_runner.h"
#include "ftf/resources.h"
#include "httplib.h"

namespace ftf {

std::map<std::string, ProviderConfig> LoadProviders(
    const std::optional<std::filesystem::path>& override_path) {
  std::string text;
  if (override_path) {
    std::ifstream in(*override_path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read provider file " + override_path->string());
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  } else {
    auto content = FindResource("resources/providers.json");
    if (!content) throw std::runtime_error("missing embedded resources/providers.json");
    text = std::string(*content);
  }
  const auto json = OrderedJson::parse(text);
  std::map<std::string, ProviderConfig> out;
  for (const auto& [name, p] : json.at("providers").items()) {
    ProviderConfig c;
    c.name = name;
    c.base_url = p.at("base_url").get<std::string>();
    c.path = p.value("path", c.path);
    c.api_key_env = p.value("api_key_env", std::string());
    c.timeout = std::chrono::seconds(p.value("timeout_seconds", 120));
    out.emplace(name, std::move(c));
  }
  return out;
}

OpenAiCompatibleEndpoint::OpenAiCompatibleEndpoint(ProviderConfig config)
    : config_(std::move(config)) {
  if (!config_.api_key_env.empty()) {
    const char* key = std::getenv(config_.api_key_env.c_str());
    if (key == nullptr || *key == '\0') {
      throw AuthError("environment variable " + config_.api_key_env + " is not set for provider " +
                      config_.name);
    }
    api_key_ = key;
  }
}

std::string OpenAiCompatibleEndpoint::Complete(const ChatRequest& request) {
  OrderedJson messages = OrderedJson::array();
  if (!request.system.empty()) {
    messages.push_back({{"role", "system"}, {"content", request.system}});
  }
  messages.push_back({{"role", "user"}, {"content", request.user}});
  OrderedJson body{
      {"model", request.model},
      {"messages", messages},
      {"temperature", request.params.temperature},
      {"top_p", request.params.top_p},
      {"max_tokens", request.params.max_output_tokens},
      {"frequency_penalty", request.params.frequency_penalty},
      {"presence_penalty", request.params.presence_penalty},
  };

  httplib::Client client(config_.base_url);
  client.set_connection_timeout(std::chrono::seconds(10));
  client.set_read_timeout(config_.timeout);
  httplib::Headers headers;
  if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);
  auto res = client.Post(config_.path, headers, body.dump(), "application/json");
  if (!res) {
    throw TransportError(config_.name + ": " + httplib::to_string(res.error()));
  }
  const int status = res->status;
  if (status == 401 || status == 403) {
    throw AuthError(config_.name + ": HTTP " + std::to_string(status));
  }
  if (status == 408 || status == 429 || status >= 500) {
    throw TransportError(config_.name + ": HTTP " + std::to_string(status), status);
  }
  if (status < 200 || status >= 300) {
    throw GenerationError(config_.name + ": HTTP " + std::to_string(status) + ": " +
                          res->body.substr(0, 200));
  }
  try {
    const auto reply = OrderedJson::parse(res->body);
    const auto& content = reply.at("choices").at(0).at("message").at("content");
    return content.is_null() ? std::string() : content.get<std::string>();
  } catch (const OrderedJson::exception& e) {
    throw GenerationError(config_.name + ": malformed completion body: " + e.what());
  }
}

}  // namespace ftf
