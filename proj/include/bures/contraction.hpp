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

#ifndef BURES_CONTRACTION_HPP_
#define BURES_CONTRACTION_HPP_

#include <optional>
#include <utility>
#include <vector>

#include "bures/structure.hpp"

namespace bures {

// Sampling summary for the contraction behaviour of a channel on the density
// space: per-pair ratios d_B(E sigma, E rho) / d_B(sigma, rho).
struct ContractionReport {
  int pairs_tested = 0;
  // Ratio extremes over pairs separated enough (d_B >= 1e-4) for the ratio
  // to be numerically resolvable; near-coincident pairs are checked for
  // nonexpansiveness at an absolute tolerance instead.
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  // A pair preserved at distance (ratio within 1e-10 of 1) rules out strict
  // contractivity.
  std::optional<std::pair<DensityElement, DensityElement>> isometric_witness;
  // A pair with ratio beyond 1 + 1e-8: impossible for a channel, so its
  // presence flags the input as not a channel (diagnostic, not exception).
  std::optional<std::pair<DensityElement, DensityElement>> expansion_witness;
  std::optional<std::string> certificate;  // provenance-based, when available
};

// Samples random and structured density pairs (orthogonal-support,
// rank-deficient, near-identical) and records distance ratio extremes.
ContractionReport nonexpansive_probe(const Channel& channel, int samples,
                                     std::uint64_t seed, const Tolerances& tol = {});

// Bures contractivity is a universally quantified strict inequality, so the
// verdict is certified only through provenance (certified_true) or a
// verified isometric pair / nontrivial multiplicative domain
// (certified_false); sampling alone yields probe_passed.
PropertyVerdict bures_contraction_probe(const Channel& channel, int samples,
                                        std::uint64_t seed, const Tolerances& tol = {});

struct EquidistanceResult {
  double lhs = 0.0;              // d_B(a / tau(a), centre)
  double rhs = 0.0;              // d_B(E(a) / tau(a), centre)
  bool in_domain = false;        // |lhs - rhs| <= 1e-8
  bool domain_crosscheck = false;// membership of a in the computed M_E agrees
};

// Equidistance-from-centre criterion for multiplicative-domain membership of
// a nonzero PSD element under a Schwarz channel.
EquidistanceResult equidistance_criterion(const Channel& channel, const AlgElement& a,
                                          const Tolerances& tol = {});

// First code pair whose Bures distance strictly shrinks under the channel;
// such a pair certifies that no recovery channel exists for the code set.
std::optional<std::pair<DensityElement, DensityElement>> correctability_obstruction(
    const Channel& channel, const std::vector<DensityElement>& codes,
    const Tolerances& tol = {});

// Positivity of the linear inverse E^{-1}. A PSD input mapped to an element
// with a negative eigenvalue certifies the inverse not positive; invertible
// unitary conjugations are certified positive through provenance.
PropertyVerdict inverse_positivity_check(const Channel& channel, const Tolerances& tol = {});

struct ExtremePointReport {
  int samples = 0;
  double min_defect = 0.0;  // min over sampled nonscalar unitaries u of
                            // ||E(u)* E(u) - 1|| (operator norm)
  std::optional<AlgElement> argmin_unitary;
};

// Probes whether the channel image touches nonscalar extreme points of the
// unit ball (unitaries, for a finite prime algebra). Reports the observed
// minimum unitarity defect; no threshold is asserted.
ExtremePointReport extreme_point_probe(const Channel& channel, int samples,
                                       std::uint64_t seed);

}  // namespace bures

#endif  // BURES_CONTRACTION_HPP_
