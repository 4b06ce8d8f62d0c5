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

#ifndef CYCLIP_HIERARCHY_H_
#define CYCLIP_HIERARCHY_H_

#include <cstddef>
#include <vector>

namespace cyclip {

// Two-level class structure. Class ids are 0-based: subclasses live in
// [0, num_subclasses()), superclasses in [0, num_superclasses()).
class ClassHierarchy {
 public:
  ClassHierarchy() = default;
  // parent_of[c] is the superclass of subclass c. Throws kHierarchyViolation
  // unless every superclass in [0, num_superclasses) has at least one child.
  ClassHierarchy(std::size_t num_superclasses, std::vector<std::size_t> parent_of);

  std::size_t num_superclasses() const { return children_.size(); }
  std::size_t num_subclasses() const { return parent_of_.size(); }

  std::size_t parent(std::size_t subclass) const { return parent_of_.at(subclass); }
  const std::vector<std::size_t>& children(std::size_t superclass) const {
    return children_.at(superclass);
  }
  const std::vector<std::size_t>& parent_map() const { return parent_of_; }

  bool operator==(const ClassHierarchy& other) const = default;

 private:
  std::vector<std::size_t> parent_of_;
  std::vector<std::vector<std::size_t>> children_;
};

}  // namespace cyclip

#endif  // CYCLIP_HIERARCHY_H_
