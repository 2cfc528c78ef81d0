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

#ifndef FTF_RESOURCES_H_
#define FTF_RESOURCES_H_

#include <optional>
#include <string_view>
#include <vector>

namespace ftf {

struct EmbeddedResource {
  std::string_view path;  // relative to the repository root
  std::string_view content;
};

const std::vector<EmbeddedResource>& EmbeddedResources();

std::optional<std::string_view> FindResource(std::string_view path);

}  // namespace ftf

#endif  // FTF_RESOURCES_H_
