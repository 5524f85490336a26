// Copyright 2026 The gamegrad Authors.
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

#ifndef GAMEGRAD_ERRORS_HPP_
#define GAMEGRAD_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace gamegrad {

// A loss could not be evaluated: a primitive was applied outside its domain,
// or the result was not finite.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An iteration produced something it cannot continue from (singular
// preconditioner, eigensolver failure, broken invariant).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid user-supplied configuration or input file.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gamegrad

#endif  // GAMEGRAD_ERRORS_HPP_
