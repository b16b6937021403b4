// Copyright 2026 The meqlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MEQ_ERRORS_H_
#define MEQ_ERRORS_H_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace meq {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A parameter is outside the documented domain (n < 2, M < 1, bad node id...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A protocol's tables are inconsistent with its schedule: missing entries for
// reachable (input, history) pairs, non-tight ranges, out-of-range symbols.
class MalformedProtocol : public Error {
 public:
  using Error::Error;
};

// An exhaustive enumeration would exceed the configured cap.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t required,
                 std::uint64_t budget)
      : Error(what), required_(required), budget_(budget) {}

  std::uint64_t required() const { return required_; }
  std::uint64_t budget() const { return budget_; }

 private:
  std::uint64_t required_;
  std::uint64_t budget_;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace meq

#endif  // MEQ_ERRORS_H_
