// Copyright 2026 The quditsim Authors
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

#ifndef QUDITSIM_ERROR_HPP
#define QUDITSIM_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace quditsim {

/// Malformed circuit text. `line` is 1-based.
class ParseError : public std::runtime_error {
  public:
    ParseError(std::size_t line, const std::string &reason)
        : std::runtime_error("line " + std::to_string(line) + ": " + reason), line_(line) {
    }
    std::size_t line() const {
        return line_;
    }

  private:
    std::size_t line_;
};

/// A requested computation exceeds a desk-scale resource guard.
class ResourceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A numerical integrity check failed (e.g. norm drifted too far).
class IntegrityError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace quditsim

#endif
