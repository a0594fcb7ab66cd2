// Copyright 2026 The qeclab Authors
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

#ifndef QECLAB_ERRORS_H
#define QECLAB_ERRORS_H

#include <stdexcept>
#include <string>

namespace qeclab {

/// Raised when a request would exceed a hard size guard (dense matrices, 4^N loops).
struct ResourceLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A linear system over GF(2) had no solution.
struct NoSolutionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A (depth, value) series never reached the requested target.
struct NoCrossingError : std::runtime_error {
    double first_depth;
    double last_depth;
    NoCrossingError(const std::string &msg, double first, double last)
        : std::runtime_error(msg), first_depth(first), last_depth(last) {
    }
};

struct SingularFitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bad experiment configuration. `key` names the offending entry.
struct ConfigError : std::runtime_error {
    std::string key;
    ConfigError(const std::string &k, const std::string &msg) : std::runtime_error(k + ": " + msg), key(k) {
    }
};

}  // namespace qeclab

#endif
