// Copyright 2026 The ion-gate-sim Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace iongate {

// Malformed or out-of-range configuration. The CLI maps this to exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A physics invariant (norm, trace, positivity, unitarity) was broken beyond
// tolerance. The CLI maps this to exit code 3.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Population leaked into the top of the truncated Fock space.
class TruncationError : public InvariantViolation {
 public:
  TruncationError(const std::string& what, double tail, int suggested_n_max)
      : InvariantViolation(what), tail_(tail), suggested_n_max_(suggested_n_max) {}

  double tail() const { return tail_; }
  int suggested_n_max() const { return suggested_n_max_; }

 private:
  double tail_;
  int suggested_n_max_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace iongate
