// Copyright 2026 The ensrlab Authors
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

#ifndef ENSRLAB_ERROR_HPP_
#define ENSRLAB_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace ensrlab {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Incompatible alphabets or matrix shapes.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A pmf, channel row, or distribution violates a construction invariant.
class InvariantError : public Error {
 public:
  using Error::Error;
};

// A quantity is undefined because a variable or function is constant.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

// Transition matrix fails the binary-input symmetric-output condition.
class NotBisoError : public Error {
 public:
  using Error::Error;
};

// The operation is defined only for a narrower class of inputs.
class ScopeError : public Error {
 public:
  using Error::Error;
};

// A size cap would be exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// Caller-supplied argument outside the admissible range.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Malformed input file or grid expression.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace ensrlab

#endif  // ENSRLAB_ERROR_HPP_
