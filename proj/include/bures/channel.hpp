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

#ifndef BURES_CHANNEL_HPP_
#define BURES_CHANNEL_HPP_

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "bures/algebra.hpp"
#include "bures/metrics.hpp"

namespace bures {

// Honest verdict taxonomy. Certified statuses carry an exact certificate
// (e.g. Choi eigenvalues, a verified witness); probe statuses only report
// what sampling saw and are never upgraded to certainty.
enum class VerdictStatus {
  certified_true,
  certified_false,
  probe_passed,
  probe_failed_with_witness,
  undetermined,
};

std::string to_string(VerdictStatus status);

struct PropertyVerdict {
  VerdictStatus status = VerdictStatus::undetermined;
  std::optional<AlgElement> witness;
  std::vector<double> certificate_eigenvalues;
  int samples_used = 0;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  std::string detail;

  bool holds() const {
    return status == VerdictStatus::certified_true || status == VerdictStatus::probe_passed;
  }
  bool fails() const {
    return status == VerdictStatus::certified_false ||
           status == VerdictStatus::probe_failed_with_witness;
  }
  bool certified() const {
    return status == VerdictStatus::certified_true || status == VerdictStatus::certified_false;
  }
};

// Construction history of a channel. Used for provenance-based certificates:
// some contraction properties are universally quantified and cannot be
// certified by sampling, but follow from how the channel was built.
struct Provenance {
  enum class Kind {
    raw,
    kraus,
    identity,
    unitary,
    completely_depolarising,
    depolarising,
    unitary_mixture,
    choi_schwarz,
    transpose,
    convex_combination,
    composition,
    tau_adjoint,
    conditional_expectation,
  };

  Kind kind = Kind::raw;
  double lambda = 0.0;
  std::vector<std::shared_ptr<const Provenance>> parents;

  std::string describe() const;

  // Certificate for Bures contractivity derived from construction:
  // true/false when provable, nullopt when unknown.
  std::optional<bool> certified_bures_contractive() const;
};

// One Choi matrix per (source block, target block) pair. The map is
// completely positive iff every Choi block is PSD.
struct ChoiBlock {
  std::size_t source_block = 0;
  std::size_t target_block = 0;
  Matrix matrix;
};

// A linear map on the algebra, stored as a superoperator matrix in the
// tau-orthonormal basis of scaled matrix units (so the tau-adjoint is the
// conjugate transpose). Immutable after construction except for the verdict
// cache, which is insert-once and shared between copies.
class Channel {
public:
  static Channel from_superoperator(const AlgebraSpec& spec, Matrix superop,
                                    Provenance prov = {});
  // E(x) = sum_k w_k x w_k*. CP by construction; trace preservation is NOT
  // assumed and must be checked separately.
  static Channel from_kraus(const AlgebraSpec& spec, std::vector<AlgElement> ws);
  static Channel from_action(const AlgebraSpec& spec,
                             const std::function<AlgElement(const AlgElement&)>& action,
                             Provenance prov);

  const AlgebraSpec& spec() const { return spec_; }
  const Matrix& superoperator() const { return superop_; }
  const std::optional<std::vector<AlgElement>>& kraus() const { return kraus_; }
  const Provenance& provenance() const { return *prov_; }
  std::shared_ptr<const Provenance> provenance_ptr() const { return prov_; }

  AlgElement apply(const AlgElement& x) const;
  DensityElement apply(const DensityElement& rho, const Tolerances& tol = {}) const;

  // tau-adjoint map: <E(x), y> = <x, E'(y)>. Not necessarily a channel.
  Channel tau_adjoint() const;

  std::vector<ChoiBlock> choi_blocks() const;

  // Exact checks (certified either way).
  PropertyVerdict is_trace_preserving(const Tolerances& tol = {}) const;
  PropertyVerdict is_unital(const Tolerances& tol = {}) const;
  PropertyVerdict is_cp(const Tolerances& tol = {}) const;

  // Randomized Schwarz-inequality probe with structured + Gaussian samples.
  // Certified shortcut: CP and unital implies Schwarz.
  PropertyVerdict schwarz_probe(int samples, std::uint64_t seed,
                                const Tolerances& tol = {}) const;

  // Falsification probe for k-positivity on Schmidt-rank <= k vectors.
  // Exact (CP-equivalent) when k reaches the largest useful rank.
  PropertyVerdict k_positive_probe(int k, int samples, std::uint64_t seed,
                                   const Tolerances& tol = {}) const;

private:
  Channel(AlgebraSpec spec, Matrix superop, std::optional<std::vector<AlgElement>> kraus,
          std::shared_ptr<const Provenance> prov);

  PropertyVerdict cached(const std::string& key,
                         const std::function<PropertyVerdict()>& compute) const;

  AlgebraSpec spec_;
  Matrix superop_;
  std::optional<std::vector<AlgElement>> kraus_;
  std::shared_ptr<const Provenance> prov_;

  struct VerdictCache {
    std::mutex mutex;
    std::map<std::string, PropertyVerdict> entries;
  };
  std::shared_ptr<VerdictCache> cache_;
};

// ---- standard channels ----

Channel identity_channel(const AlgebraSpec& spec);
// Omega(x) = tau(x)/tau(1) * 1; collapses the density space to its centre.
Channel completely_depolarising(const AlgebraSpec& spec);
// E_l(x) = l x + (1-l) Omega(x), l in [0,1]; Bures contractive for l < 1.
Channel depolarising(const AlgebraSpec& spec, double lambda);
// Ad_u: x -> u x u*.
Channel unitary_channel(const AlgElement& u, const Tolerances& tol = {});
// l Ad_u + (1-l) Ad_v.
Channel unitary_mixture(double lambda, const AlgElement& u, const AlgElement& v,
                        const Tolerances& tol = {});
// Blockwise transpose; positive and trace-preserving, not CP for dims >= 2.
Channel transpose_channel(const AlgebraSpec& spec);
// Choi's non-2-positive Schwarz channel on (M_2, w=1), with m = (x11+x22)/2:
//   [[x11, x12], [x21, x22]] -> (1/2) [[x11 + m, x21], [x12, x22 + m]].
Channel choi_schwarz_m2(const AlgebraSpec& spec);

// Named construction used by the CLI; kind is one of
// identity | completely_depolarising | depolarising | unitary |
// unitary_mixture | transpose | choi_schwarz_m2.
Channel standard_channel(const AlgebraSpec& spec, const std::string& kind, double lambda,
                         const std::optional<AlgElement>& u, const std::optional<AlgElement>& v,
                         const Tolerances& tol = {});

// l E1 + (1-l) E2. With l in (0,1) and a certified Bures contractive
// constituent, the result is certified Bures contractive.
Channel convex_combine(double lambda, const Channel& e1, const Channel& e2);

// E1 after E2.
Channel compose(const Channel& e1, const Channel& e2);

// Random completely positive trace-preserving channel (Kraus operators of a
// Gaussian family, normalized so sum w* w = 1).
Channel random_tp_channel(const AlgebraSpec& spec, int n_kraus, Rng& rng);

}  // namespace bures

#endif  // BURES_CHANNEL_HPP_
