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

#ifndef FTF_TEXT_H_
#define FTF_TEXT_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ftf {

// Word tokenization shared by span validation and the overlap metrics:
// lowercase, split on whitespace, strip leading/trailing punctuation from
// each token, drop tokens that end up empty.
std::vector<std::string> Tokenize(std::string_view text);

// True if `needle` occurs as a contiguous run inside `haystack`. An empty
// needle never matches.
bool ContainsTokenRun(std::span<const std::string> haystack,
                      std::span<const std::string> needle);

std::string_view Trim(std::string_view text);
std::string ToLower(std::string_view text);

// Lowercases, trims and collapses internal whitespace runs to one space.
std::string NormalizeForMatch(std::string_view text);

}  // namespace ftf

#endif  // FTF_TEXT_H_
