// Copyright 2026 The evcat Authors
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

#ifndef EVCAT_ERRORS_HPP_
#define EVCAT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace evcat {

/// Bad configuration or command-line usage (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input data (CLI exit code 3).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A violated internal invariant (CLI exit code 4).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void internal_check(bool condition, const std::string& message) {
  if (!condition) throw InternalError(message);
}

}  // namespace evcat

#endif  // EVCAT_ERRORS_HPP_
