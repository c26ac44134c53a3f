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

#ifndef BURES_METRICS_HPP_
#define BURES_METRICS_HPP_

#include <cstdint>
#include <utility>

#include "bures/algebra.hpp"

namespace bures {

// Per-pair summary of all metric quantities.
struct MetricReport {
  double fidelity = 0.0;    // F in [0,1]
  double bures = 0.0;       // sqrt(1 - F)
  double trace_dist = 0.0;  // ||sigma - rho||_{1,tau}
  double fvdg_lower = 0.0;  // 2 - 2F
  double fvdg_upper = 0.0;  // 2 sqrt(1 - F^2)
  bool orthogonal = false;
};

// Fidelity of two PSD elements: tau(|a^{1/2} b^{1/2}|). Computed through the
// eigenvalues of a^{1/2} b a^{1/2} and cross-checked against the
// absolute-value route; the two must agree within tol.fid.
double fidelity_psd(const AlgElement& a, const AlgElement& b, const Tolerances& tol = {});

// Fidelity of two densities, clamped to [0,1].
double fidelity(const DensityElement& sigma, const DensityElement& rho,
                const Tolerances& tol = {});

// sqrt(1 - F); a metric on the density space with values in [0,1].
double bures_distance(const DensityElement& sigma, const DensityElement& rho,
                      const Tolerances& tol = {});

double trace_distance(const DensityElement& sigma, const DensityElement& rho);

// Fuchs-van de Graaf bounds (lower, upper) with
// lower <= trace_distance <= upper.
std::pair<double, double> fvdg_bounds(const DensityElement& sigma, const DensityElement& rho,
                                      const Tolerances& tol = {});

MetricReport metric_report(const DensityElement& sigma, const DensityElement& rho,
                           const Tolerances& tol = {});

struct AlignmentResult {
  AlgElement unitary;   // u with F = Re tau(rho^{1/2} sigma^{1/2} u)
  double attained;      // the attained value Re tau(rho^{1/2} sigma^{1/2} u)
};

// Unitary from the (completed) polar decomposition of sigma^{1/2} rho^{1/2};
// attains the fidelity in the unitary-optimization characterization. Its
// adjoint attains equality tau(|sigma^{1/2} - rho^{1/2} u*|^2) = 2 - 2F.
AlignmentResult optimal_alignment_unitary(const DensityElement& sigma,
                                          const DensityElement& rho,
                                          const Tolerances& tol = {});

struct VariationalCheck {
  double fidelity = 0.0;    // tau(|a^{1/2} b^{1/2}|)
  double min_value = 0.0;   // best sampled/candidate value of the functional
  double gap = 0.0;         // min_value - fidelity (>= 0 up to tolerance)
  int samples = 0;
};

// Verifies the variational principle
//   tau(|a^{1/2} b^{1/2}|) = (1/2) inf_y (tau(a y) + tau(b y^{-1}))
// over sampled positive invertible y plus the analytic candidate minimizer
// y* = a^{-1/2} (a^{1/2} b a^{1/2})^{1/2} a^{-1/2} (regularized). A sampled
// value below fidelity - 1e-8 raises TheoremViolation.
VariationalCheck variational_fidelity_check(const AlgElement& a, const AlgElement& b,
                                            int samples, std::uint64_t seed,
                                            const Tolerances& tol = {});

// F(l s1 + (1-l) s2, l r1 + (1-l) r2) >= l F(s1,r1) + (1-l) F(s2,r2),
// within the given slack.
bool joint_concavity_check(const DensityElement& sigma1, const DensityElement& sigma2,
                           const DensityElement& rho1, const DensityElement& rho2,
                           double lambda, double slack = 1e-9,
                           const Tolerances& tol = {});

}  // namespace bures

#endif  // BURES_METRICS_HPP_
