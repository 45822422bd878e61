// Copyright 2026 The cohop Authors
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

#ifndef COHOP_ERROR_HPP
#define COHOP_ERROR_HPP

#include <stdexcept>
#include <string>

namespace cohop {

enum class ErrorKind {
    invalid_argument,
    invalid_cutoff,
    missing_spin,
    invalid_spin,
    wrong_space_kind,
    not_antihermitian,
    overflow,
    rank_too_large,
    out_of_range,
    amplitude_too_large,
    grid_mismatch,
    not_converged,
    divergent,
};

inline const char *to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::invalid_argument:
            return "invalid-argument";
        case ErrorKind::invalid_cutoff:
            return "invalid-cutoff";
        case ErrorKind::missing_spin:
            return "missing-spin";
        case ErrorKind::invalid_spin:
            return "invalid-spin";
        case ErrorKind::wrong_space_kind:
            return "wrong-space-kind";
        case ErrorKind::not_antihermitian:
            return "not-antihermitian";
        case ErrorKind::overflow:
            return "overflow";
        case ErrorKind::rank_too_large:
            return "rank-too-large";
        case ErrorKind::out_of_range:
            return "out-of-range";
        case ErrorKind::amplitude_too_large:
            return "amplitude-too-large";
        case ErrorKind::grid_mismatch:
            return "grid-mismatch";
        case ErrorKind::not_converged:
            return "not-converged";
        case ErrorKind::divergent:
            return "divergent";
    }
    return "unknown";
}

/// Every failure raised by the library carries a machine-readable kind so the
/// CLI can turn it into a structured report instead of an unhandled crash.
class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string &message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept {
        return kind_;
    }

   private:
    ErrorKind kind_;
};

}  // namespace cohop

#endif
