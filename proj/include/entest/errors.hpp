// Copyright 2026 The entest Authors
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
#include <utility>

namespace entest {

/// Malformed numerical input: wrong shape, non-Hermitian, not a density
/// matrix, invalid POVM.
class LinalgError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A named parameter lies outside the domain of a family or measure.
class DomainError : public std::invalid_argument {
 public:
  DomainError(std::string parameter, const std::string& what)
      : std::invalid_argument(what), parameter_(std::move(parameter)) {}

  const std::string& parameter() const noexcept { return parameter_; }

 private:
  std::string parameter_;
};

}  // namespace entest
