// Copyright 2026 The cnotsynth Authors
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

namespace cnotsynth {

/// Thrown when an operation needs an invertible matrix and gets a singular one.
class SingularMatrixError : public std::domain_error {
 public:
  explicit SingularMatrixError(const std::string& what)
      : std::domain_error("singular matrix: " + what) {}
};

/// Thrown when a graph (or its active part) is not connected where it must be.
class DisconnectedError : public std::runtime_error {
 public:
  explicit DisconnectedError(const std::string& what)
      : std::runtime_error("disconnected: " + what) {}
};

/// Malformed text input (matrix, circuit or edge-list files).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what)
      : std::runtime_error("parse error: " + what) {}
};

}  // namespace cnotsynth
