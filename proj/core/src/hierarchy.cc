// Copyright 2026 The cyclip Authors. All Rights Reserved.
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

#include "cyclip/hierarchy.h"

#include <string>

#include "cyclip/error.h"

namespace cyclip {

ClassHierarchy::ClassHierarchy(std::size_t num_superclasses,
                               std::vector<std::size_t> parent_of)
    : parent_of_(std::move(parent_of)), children_(num_superclasses) {
  for (std::size_t c = 0; c < parent_of_.size(); ++c) {
    if (parent_of_[c] >= num_superclasses) {
      throw Error(ErrorCode::kHierarchyViolation,
                  "subclass " + std::to_string(c) + " maps to missing superclass");
    }
    children_[parent_of_[c]].push_back(c);
  }
  for (std::size_t p = 0; p < num_superclasses; ++p) {
    if (children_[p].empty()) {
      throw Error(ErrorCode::kHierarchyViolation,
                  "superclass " + std::to_string(p) + " has no children");
    }
  }
}

}  // namespace cyclip
