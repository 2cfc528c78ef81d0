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

#include "ftf/text.h"

#include <algorithm>
#include <array>

namespace ftf {
namespace {

bool IsSpace(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool IsAsciiPunct(unsigned char c) {
  return (c >= 33 && c <= 47) || (c >= 58 && c <= 64) ||
         (c >= 91 && c <= 96) || (c >= 123 && c <= 126);
}

// Multi-byte punctuation that shows up in scraped argument text.
constexpr std::array<std::string_view, 10> kUnicodePunct = {
    "‘", "’", "“", "”", "…",
    "–", "—", "«", "»", "¿",
};

std::string_view StripPunct(std::string_view token) {
  bool changed = true;
  while (changed && !token.empty()) {
    changed = false;
    if (IsAsciiPunct(static_cast<unsigned char>(token.front()))) {
      token.remove_prefix(1);
      changed = true;
      continue;
    }
    if (IsAsciiPunct(static_cast<unsigned char>(token.back()))) {
      token.remove_suffix(1);
      changed = true;
      continue;
    }
    for (std::string_view p : kUnicodePunct) {
      if (token.starts_with(p)) {
        token.remove_prefix(p.size());
        changed = true;
        break;
      }
      if (token.ends_with(p)) {
        token.remove_suffix(p.size());
        changed = true;
        break;
      }
    }
  }
  return token;
}

}  // namespace

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && IsSpace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t start = i;
    while (i < text.size() && !IsSpace(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i) break;
    std::string_view token = StripPunct(text.substr(start, i - start));
    if (!token.empty()) tokens.push_back(ToLower(token));
  }
  return tokens;
}

bool ContainsTokenRun(std::span<const std::string> haystack,
                      std::span<const std::string> needle) {
  if (needle.empty()) return false;
  return std::search(haystack.begin(), haystack.end(), needle.begin(),
                     needle.end()) != haystack.end();
}

std::string_view Trim(std::string_view text) {
  while (!text.empty() && IsSpace(static_cast<unsigned char>(text.front()))) {
    text.remove_prefix(1);
  }
  while (!text.empty() && IsSpace(static_cast<unsigned char>(text.back()))) {
    text.remove_suffix(1);
  }
  return text;
}

std::string ToLower(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string NormalizeForMatch(std::string_view text) {
  std::string out;
  bool pending_space = false;
  for (char c : Trim(text)) {
    if (IsSpace(static_cast<unsigned char>(c))) {
      pending_space = true;
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return ToLower(out);
}

}  // namespace ftf
