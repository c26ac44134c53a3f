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

#ifndef BURES_ANALYSIS_HPP_
#define BURES_ANALYSIS_HPP_

#include <string>

#include "bures/config.hpp"
#include "bures/contraction.hpp"

namespace bures {

// Structured analysis results: a self-describing versioned document with the
// normalized config echoed in. Deterministic for a fixed (config, seed).
struct AnalysisReport {
  nlohmann::json doc;
};

// Runs the selected analyses. Raises TheoremViolation when a mathematically
// guaranteed property fails (e.g. a channel expanding the Bures distance).
AnalysisReport analyze(const RunConfig& cfg);

// Serializes the report: "structured-report" renders the JSON document,
// "eigenvalue-table" a flat CSV (re, im, modulus, is_peripheral).
std::string emit(const AnalysisReport& report, const std::string& format);

}  // namespace bures

#endif  // BURES_ANALYSIS_HPP_
