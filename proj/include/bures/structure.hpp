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

#ifndef BURES_STRUCTURE_HPP_
#define BURES_STRUCTURE_HPP_

#include <complex>
#include <optional>
#include <vector>

#include "bures/channel.hpp"

namespace bures {

// A tau-orthonormal basis of a subspace of the algebra, with explicitly
// verified (never assumed) algebraic closure flags.
struct SubspaceBasis {
  std::vector<AlgElement> basis;
  int dimension = 0;
  bool adjoint_closed = false;
  bool product_closed = false;
  bool contains_identity = false;
  // False when the defining condition failed post-verification; the basis
  // then holds only the verified subset.
  bool verified = true;
  std::string note;

  bool is_algebra() const { return adjoint_closed && product_closed && contains_identity; }
  // Residual of the tau-orthogonal projection of x onto the span.
  double projection_residual(const AlgElement& x) const;
  bool contains(const AlgElement& x, double tol = 1e-8) const;
};

// Fixed-point space Fix E = ker(S - I), computed from the SVD of S - I with
// relative singular-value threshold tol.fix.
SubspaceBasis fixed_point_space(const Channel& channel, const Tolerances& tol = {});

// Multiplicative domain of a trace-preserving channel with at least
// probe-passed Schwarz status: the eigenspace of S'S at eigenvalue 1,
// post-verified bilinearly against random elements.
SubspaceBasis multiplicative_domain(const Channel& channel, const Tolerances& tol = {},
                                    std::uint64_t seed = 2026);

// The tau-orthogonal projection onto Fix E, packaged as a channel and
// verified idempotent, trace-preserving, CP and unital. Refuses (with a
// diagnostic) when Fix E fails its algebra flags.
Channel conditional_expectation_onto_fix(const Channel& channel, const Tolerances& tol = {});

// Irreducibility of a trace-preserving positive channel. Strategies:
//  (a) Fix E is a verified algebra: dimension 1 certifies irreducible (for
//      sup-norm contractive channels); otherwise a spectral projection of a
//      nonscalar fixed Hermitian element gives a verified reducibility
//      witness p with E(p) = p.
//  (b) abelian algebras: strong connectivity of the superoperator's
//      adjacency digraph.
//  (c) fallback: randomized search for a projection with E(p) <= p; no
//      witness leaves the verdict undetermined.
PropertyVerdict irreducibility_verdict(const Channel& channel, const Tolerances& tol = {},
                                       std::uint64_t seed = 2026, int samples = 200);

struct SpectrumReport {
  std::vector<Complex> eigenvalues;          // sorted by modulus (desc), then arg
  double perron_value = 0.0;                 // max |lambda|
  std::vector<Complex> peripheral;           // within tol.spectral of the circle
  bool perron_in_spectrum = false;           // the radius itself is an eigenvalue
  bool peripheral_trivial = false;           // peripheral set == {perron} up to mult.
};

SpectrumReport superoperator_spectrum(const Channel& channel, const Tolerances& tol = {});

// Least-squares decomposition E = alpha * Id + beta * Omega on a single
// factor block. Succeeds when the residual is <= 1e-8; otherwise reports the
// sampled commutation defect max ||E(Ad_u x) - Ad_u E(x)||.
struct CovarianceFit {
  double alpha = 0.0;
  double beta = 0.0;
  double residual = 0.0;
  bool coefficient_anomaly = false;  // fit succeeded but alpha/beta leave [0,1]
};

struct CovarianceReport {
  std::optional<CovarianceFit> fit;
  double commutation_defect = 0.0;
  int samples = 0;
};

CovarianceReport fit_unitarily_covariant(const Channel& channel, int samples = 20,
                                         std::uint64_t seed = 2026,
                                         const Tolerances& tol = {});

}  // namespace bures

#endif  // BURES_STRUCTURE_HPP_
