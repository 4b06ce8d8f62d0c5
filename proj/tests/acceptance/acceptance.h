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

// Acceptance checks: each criterion returns a pass/fail outcome with a
// one-line detail string.

#ifndef CYCLIP_TESTS_ACCEPTANCE_ACCEPTANCE_H_
#define CYCLIP_TESTS_ACCEPTANCE_ACCEPTANCE_H_

#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

namespace cyclip::acceptance {

struct Outcome {
  bool pass = false;
  std::string detail;
};

// Counts checks and keeps the first few failure messages.
class Tally {
 public:
  void Check(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (messages_.size() < 3) messages_.push_back(what);
  }

  void Near(double got, double want, double tol, const std::string& what) {
    std::ostringstream msg;
    msg.precision(17);
    msg << what << ": got " << got << " want " << want << " tol " << tol;
    Check(std::abs(got - want) <= tol, msg.str());
  }

  bool ok() const { return failures_ == 0; }

  Outcome Finish(const std::string& summary) const {
    std::ostringstream out;
    out << summary << "; " << checks_ << " checks";
    if (failures_ > 0) {
      out << ", " << failures_ << " failed:";
      for (const auto& m : messages_) out << " [" << m << "]";
    }
    return {ok(), out.str()};
  }

 private:
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
  std::vector<std::string> messages_;
};

Outcome GradientSuite();
Outcome OracleEquivalence();
Outcome HandValues();
Outcome DirectionalConsistency();
Outcome AblationGeometry();
Outcome InvariantSuite();
Outcome IoRoundTrips();
Outcome Determinism();

}  // namespace cyclip::acceptance

#endif  // CYCLIP_TESTS_ACCEPTANCE_ACCEPTANCE_H_
