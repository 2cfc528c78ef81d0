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

#ifndef FTF_INTERNAL_SHUFFLE_H_
#define FTF_INTERNAL_SHUFFLE_H_

#include <utility>

namespace ftf {

// Fisher-Yates driven by splitmix64.
template <typename T>
void SeededShuffle(std::vector<T>& items, std::uint64_t seed) {
  std::uint64_t state = seed;
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(UniformBelow(i, state));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace ftf

#endif  // FTF_INTERNAL_SHUFFLE_H_
