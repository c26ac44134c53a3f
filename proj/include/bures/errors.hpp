// Copyright 2026 The bureslab developers
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

#ifndef BURES_ERRORS_HPP_
#define BURES_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace bures {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Structural misuse: shape mismatch, elements from different algebras,
// invalid construction parameters.
class StructureError : public Error {
public:
  explicit StructureError(const std::string& msg) : Error(msg) {}
};

// An input failed a Hermiticity or positivity requirement beyond tolerance.
class PositivityError : public Error {
public:
  explicit PositivityError(const std::string& msg) : Error(msg) {}
};

// A numerical routine failed (solver breakdown, cross-route disagreement,
// degenerate sampling after bounded retries).
class NumericalError : public Error {
public:
  explicit NumericalError(const std::string& msg) : Error(msg) {}
};

// Malformed or invalid run configuration.
class ConfigError : public Error {
public:
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// A mathematically guaranteed property was observed to fail. This is loud by
// design: it maps to a dedicated process exit code so that violations are
// never buried in a report.
class TheoremViolation : public Error {
public:
  explicit TheoremViolation(const std::string& msg) : Error(msg) {}
};

}  // namespace bures

#endif  // BURES_ERRORS_HPP_
