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

#include <algorithm>
#include <cctype>
#include <sstream>

#include "ftf/model_runner.h"
#include "ftf/text.h"

namespace ftf {
namespace {

struct TemplateLine {
  bool found = false;
  long number = 0;
};

// "Template No.=3", "template no. = [3]", "Template No.=[ 3 ] because ..."
TemplateLine MatchTemplateLine(std::string_view line) {
  const std::string lower = ToLower(line);
  std::size_t pos = lower.find("template no");
  if (pos == std::string::npos) return {};
  pos += 11;
  auto skip_spaces = [&] {
    while (pos < lower.size() && std::isspace(static_cast<unsigned char>(lower[pos]))) ++pos;
  };
  if (pos < lower.size() && lower[pos] == '.') ++pos;
  skip_spaces();
  if (pos >= lower.size() || lower[pos] != '=') return {};
  ++pos;
  skip_spaces();
  if (pos < lower.size() && lower[pos] == '[') ++pos;
  skip_spaces();
  const std::size_t digits = pos;
  while (pos < lower.size() && std::isdigit(static_cast<unsigned char>(lower[pos]))) ++pos;
  if (pos == digits) return {};
  const std::string_view num(lower.data() + digits, std::min<std::size_t>(pos - digits, 9));
  return {true, std::stol(std::string(num))};
}

struct RoleLine {
  std::optional<SlotRole> role;
  std::string value;
};

// "[A]=cut taxes", "$[A']$ = x"
std::optional<RoleLine> MatchRoleLine(std::string_view line) {
  line = Trim(line);
  if (line.starts_with('$')) line.remove_prefix(1);
  if (!line.starts_with('[')) return std::nullopt;
  const std::size_t close = line.find(']');
  if (close == std::string_view::npos) return std::nullopt;
  std::string_view rest = line.substr(close + 1);
  if (rest.starts_with('$')) rest.remove_prefix(1);
  rest = Trim(rest);
  if (!rest.starts_with('=')) return std::nullopt;
  RoleLine out;
  out.role = ParseRole(line.substr(1, close - 1));
  out.value = std::string(Trim(rest.substr(1)));
  return out;
}

}  // namespace

ParseResult ParseOutput(std::string_view raw, FallacyType type) {
  ParseResult result;
  std::istringstream in{std::string(raw)};
  std::string line;
  TemplateLine header;
  while (std::getline(in, line)) {
    header = MatchTemplateLine(line);
    if (header.found) break;
  }
  if (!header.found) {
    result.failure = "no template line";
    return result;
  }
  if (header.number < 1 || header.number > 5) {
    result.failure = "template number " + std::to_string(header.number) + " outside 1..5";
    return result;
  }
  const auto legal = LegalRoles(type);
  Instantiation inst{type, static_cast<int>(header.number), {}};
  while (std::getline(in, line)) {
    if (Trim(line).empty()) continue;
    auto role_line = MatchRoleLine(line);
    if (!role_line) break;
    if (!role_line->role || role_line->value.empty()) continue;
    if (std::find(legal.begin(), legal.end(), *role_line->role) == legal.end()) continue;
    inst.slots.emplace(*role_line->role, role_line->value);
  }
  result.catch_all_with_slots = inst.template_number == kCatchAllTemplate && !inst.slots.empty();
  result.instantiation = std::move(inst);
  return result;
}

}  // namespace ftf
