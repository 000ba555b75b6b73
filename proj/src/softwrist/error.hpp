// Copyright 2026 The softwrist Authors
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

#ifndef SOFTWRIST_ERROR_HPP_
#define SOFTWRIST_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace softwrist {

enum class ErrorCode {
  kInvalidArgument,
  kDomain,
  kUnphysical,  // parameter set gives a non-positive inertia
  kNonFinite,   // integration produced NaN/Inf
  kConfig,
  kIo,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace softwrist

#endif  // SOFTWRIST_ERROR_HPP_
