// Copyright 2026 The catmap Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Exception types shared by every module.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace catmap {

/// Input violates a documented precondition (maps to exit status 2).
class PreconditionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Input is well-formed but outside what this implementation handles.
class UnsupportedInput : public PreconditionError {
  public:
    using PreconditionError::PreconditionError;
};

/// An internal consistency check failed (maps to exit status 3).
class InvariantError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string &what) {
    if (!cond) {
        throw PreconditionError(what);
    }
}

inline void ensure(bool cond, const std::string &what) {
    if (!cond) {
        throw InvariantError(what);
    }
}

} // namespace catmap
