// Copyright 2026 The ContrastiveCrop Sim Authors.
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

namespace ccrop {

/// Base class for rejected inputs (bad configs, malformed files, violated
/// preconditions). The CLI maps these to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidAlpha : public InputError {
 public:
  using InputError::InputError;
};

class InvalidConfig : public InputError {
 public:
  using InputError::InputError;
};

class InvalidRect : public InputError {
 public:
  using InputError::InputError;
};

class EmptyActivation : public InputError {
 public:
  EmptyActivation() : InputError("rectangular closure of an empty activation set") {}
};

class ShapeMismatch : public InputError {
 public:
  using InputError::InputError;
};

class EmptyStack : public InputError {
 public:
  EmptyStack() : InputError("feature stack is empty") {}
};

class EmptyStream : public InputError {
 public:
  EmptyStream() : InputError("cannot aggregate an empty pair stream") {}
};

/// Malformed text input. Carries the 1-based line number when known.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, int line = 0)
      : InputError(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// A postcondition failed at runtime. The CLI maps this to exit code 3.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace ccrop
