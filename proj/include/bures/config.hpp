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

#ifndef BURES_CONFIG_HPP_
#define BURES_CONFIG_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bures/algebra.hpp"

namespace bures {

// How the channel is to be constructed. Exactly one of the payloads is used
// depending on `kind`; "kraus" and "superoperator" carry raw matrices.
struct ChannelSpecConfig {
  std::string kind;  // identity | completely_depolarising | depolarising | unitary |
                     // unitary_mixture | transpose | choi_schwarz_m2 | kraus | superoperator
  double lambda = 0.0;
  std::optional<AlgElement> u;
  std::optional<AlgElement> v;
  std::vector<AlgElement> kraus_ops;
  std::optional<Matrix> superoperator;
};

struct StateConfig {
  std::string name;
  std::string kind;  // matrix | basis_state | centre | random
  std::optional<AlgElement> matrix;  // for kind == matrix
  std::size_t block = 0;             // for kind == basis_state
  Index index = 0;
  std::optional<Index> rank;         // for kind == random
};

struct SampleBudgets {
  int pairs = 200;       // density pairs for contraction probes
  int schwarz = 200;     // Schwarz-inequality samples
  int k_positive = 200;  // Schmidt-rank vectors per Choi block
  int irreducibility = 200;
};

// Parsed and validated run configuration.
struct RunConfig {
  AlgebraSpec algebra{{1}, {1.0}};
  ChannelSpecConfig channel;
  std::vector<StateConfig> states;
  std::vector<std::string> analyses;  // subset of: metrics properties domains
                                      // irreducibility spectrum contraction correctability
  bool analyses_given = false;        // empty selection list is meaningful
  std::uint64_t seed = 0;
  SampleBudgets samples;
  Tolerances tol;
  std::string output = "structured-report";  // or eigenvalue-table
  nlohmann::json echo;  // normalized config document, echoed into reports
};

// Parses and validates a JSON configuration document. Raises ConfigError
// with a path-qualified message on the first problem found.
RunConfig parse_config(const std::string& text);

// All analysis names, in report order.
const std::vector<std::string>& all_analyses();

// Serialization of an algebra element: one row-major matrix per block,
// entries as [re, im] pairs.
nlohmann::json element_to_json(const AlgElement& x);

}  // namespace bures

#endif  // BURES_CONFIG_HPP_
