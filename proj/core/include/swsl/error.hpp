// Copyright 2026 The swsl authors. All rights reserved.
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

#ifndef SWSL_ERROR_HPP_
#define SWSL_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace swsl {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid data, configuration or file content. The CLI maps this to exit
/// code 2 (usage/input error).
class InvalidInput : public Error {
 public:
  explicit InvalidInput(const std::string& what) : Error(what) {}
};

/// A numerical computation failed (non-finite values, solver did not
/// converge within its budget). The CLI maps this to exit code 1.
class ComputeError : public Error {
 public:
  explicit ComputeError(const std::string& what) : Error(what) {}
};

}  // namespace swsl

#endif  // SWSL_ERROR_HPP_
