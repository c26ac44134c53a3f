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

#ifndef BURES_TOLERANCES_HPP_
#define BURES_TOLERANCES_HPP_

namespace bures {

// Numerical tolerances used across the library. All are overridable through
// the run configuration; the defaults are suitable for desk-scale problems
// (block dims <= 4, superoperator dims <= 64) in double precision.
struct Tolerances {
  double herm = 1e-10;   // Hermiticity checks
  double psd = 1e-8;     // eigenvalue clip threshold for positivity
  double zero = 1e-9;    // zero tests (orthogonality, trace preservation)
  double recon = 1e-9;   // reconstruction checks (sqrt(a)^2 == a)
  double fid = 1e-8;     // agreement of the two fidelity routes
  double fix = 1e-8;     // singular-value threshold for kernels/eigenspaces
  double spectral = 1e-8;// peripheral-spectrum membership
};

}  // namespace bures

#endif  // BURES_TOLERANCES_HPP_
