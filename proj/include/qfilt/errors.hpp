// Copyright 2026 The qfilt Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace qfilt {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A precondition on an argument (dimension, index, range) was violated.
class InvalidArgument : public Error {
   public:
    using Error::Error;
};

/// Input expected to be Hermitian was not, beyond tolerance.
class NonHermitian : public Error {
   public:
    using Error::Error;
};

/// A closed-form expression was requested for a case that has none.
class Unsupported : public Error {
   public:
    using Error::Error;
};

/// Post-selection on the all-zero ancilla outcome has (numerically) zero probability.
class PostSelectionImpossible : public Error {
   public:
    explicit PostSelectionImpossible(double raw_trace)
        : Error("post-selection probability " + std::to_string(raw_trace) + " is below 1e-15"),
          raw_trace_(raw_trace) {}

    double raw_trace() const noexcept { return raw_trace_; }

   private:
    double raw_trace_;
};

/// Every restart of an optimization produced only non-finite objective values.
class OptimizationFailed : public Error {
   public:
    using Error::Error;
};

}  // namespace qfilt
