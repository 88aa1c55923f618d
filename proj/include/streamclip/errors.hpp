// Copyright 2026 The Authors.
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

#ifndef STREAMCLIP_ERRORS_HPP
#define STREAMCLIP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace streamclip {

// Bad algorithm parameters or inconsistent CLI flags. Maps to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or invalid input data (element files, element construction).
// Maps to exit code 2.
class IngestError : public std::runtime_error {
 public:
  explicit IngestError(const std::string& what) : std::runtime_error(what) {}
};

// The brute-force oracle declines instances above its enumeration guard.
// Maps to exit code 4.
class OracleRefusal : public std::runtime_error {
 public:
  explicit OracleRefusal(const std::string& what) : std::runtime_error(what) {}
};

// Committing or re-adding an element id already present in a solution set.
class DuplicateElementError : public std::logic_error {
 public:
  explicit DuplicateElementError(const std::string& what)
      : std::logic_error(what) {}
};

}  // namespace streamclip

#endif  // STREAMCLIP_ERRORS_HPP
