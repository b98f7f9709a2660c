// Copyright 2026 The idc-release Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef IDC_ERRORS_HPP_
#define IDC_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace idc {

// The CLI maps kinds onto process exit codes; see tools/idc_release.cpp.
enum class ErrorKind {
  kConfig,           // invalid parameters or flag combinations
  kValidation,       // out-of-range values, malformed inputs
  kDomainMismatch,   // operation requires a graph-structured universe
  kDimension,        // vector length disagreement
  kBudgetExhausted,  // online mechanism out of update budget
  kToyScaleCap,      // median-mechanism candidate enumeration over cap
  kContract,         // a component violated an interface contract
  kIo,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace idc

#endif  // IDC_ERRORS_HPP_
