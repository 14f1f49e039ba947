// Copyright 2026 The jm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace jm {

/// Malformed input: dimension mismatch, empty outcome list, unknown label.
class StructureError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input text that does not describe a valid object.
class ParseError : public StructureError {
 public:
  using StructureError::StructureError;
};

/// Well-formed input outside an operation's hypothesis or tolerance.
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The eigensolver or another numerical routine failed to converge.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace jm
