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

// CSV output: header row, ',' separator, '.' decimal point, LF endings.

#ifndef CYCLIP_CSV_H_
#define CYCLIP_CSV_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace cyclip {

// Shortest decimal string that parses back to exactly `x`.
std::string FormatDouble(double x);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  // Throws kShapeMismatch when the cell count differs from the header.
  void AddRow(std::vector<std::string> cells);

  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }

  std::string ToString() const;
  void Write(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace cyclip

#endif  // CYCLIP_CSV_H_
