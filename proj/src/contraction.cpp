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

#include "bures/contraction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace bures {

namespace {

// Structured density pairs that hit the known extremal behaviours, followed
// by seeded random pairs up to the sample budget.
std::vector<std::pair<DensityElement, DensityElement>> density_pairs(
    const AlgebraSpec& spec, int samples, std::uint64_t seed, const Tolerances& tol) {
  std::vector<std::pair<DensityElement, DensityElement>> pairs;

  // Diagonal matrix-unit pairs (orthogonal supports) where they are valid
  // densities, i.e. whenever a block weight is 1.
  std::vector<DensityElement> diag_units;
  for (std::size_t j = 0; j < spec.block_count(); ++j) {
    for (Index i = 0; i < spec.block_dim(j); ++i) {
      AlgElement e = AlgElement::matrix_unit(spec, j, i, i);
      diag_units.push_back(DensityElement::normalized(e, tol));
    }
  }
  for (std::size_t i = 0; i < diag_units.size(); ++i) {
    for (std::size_t k = i + 1; k < diag_units.size(); ++k) {
      pairs.emplace_back(diag_units[i], diag_units[k]);
    }
  }

  Rng rng(seed);
  const DensityElement zeta = DensityElement::centre(spec);
  // Rank-deficient pairs and near-identical pairs.
  const std::vector<Index> ones(spec.block_count(), Index{1});
  for (int i = 0; i < 4 && static_cast<int>(pairs.size()) < samples; ++i) {
    Rng rr = rng.fork((1ULL << 40) + i);
    pairs.emplace_back(random_density(spec, rr, RankProfile{ones}, tol),
                       random_density(spec, rr, RankProfile{ones}, tol));
    const DensityElement base = random_density(spec, rr, std::nullopt, tol);
    const AlgElement nudged =
        base.element() * Complex(1.0 - 1e-5, 0.0) + zeta.element() * Complex(1e-5, 0.0);
    pairs.emplace_back(base, DensityElement(nudged, tol));
    pairs.emplace_back(base, zeta);
  }
  for (std::uint64_t i = 0; static_cast<int>(pairs.size()) < samples; ++i) {
    Rng rr = rng.fork(i);
    pairs.emplace_back(random_density(spec, rr, std::nullopt, tol),
                       random_density(spec, rr, std::nullopt, tol));
  }
  if (static_cast<int>(pairs.size()) > samples) {
    pairs.erase(pairs.begin() + samples, pairs.end());
  }
  return pairs;
}

}  // namespace

ContractionReport nonexpansive_probe(const Channel& channel, int samples,
                                     std::uint64_t seed, const Tolerances& tol) {
  if (samples < 1) {
    throw StructureError("nonexpansive_probe: samples must be >= 1");
  }
  ContractionReport rep;
  rep.min_ratio = std::numeric_limits<double>::infinity();
  rep.max_ratio = 0.0;

  if (auto cert = channel.provenance().certified_bures_contractive();
      cert.has_value() && *cert) {
    rep.certificate = channel.provenance().describe();
  }

  // Ratios are resolvable only above kRatioFloor: the sqrt in d_B turns the
  // O(eps) fidelity rounding into an O(eps/d^2) relative ratio error. Pairs
  // below the floor are still held to nonexpansiveness at an absolute
  // tolerance but stay out of the ratio extremes and witness detection.
  constexpr double kRatioFloor = 1e-4;
  for (const auto& [sigma, rho] : density_pairs(channel.spec(), samples, seed, tol)) {
    const double before = bures_distance(sigma, rho, tol);
    if (before <= 1e-9) continue;  // coincident
    const DensityElement img_sigma = channel.apply(sigma, tol);
    const DensityElement img_rho = channel.apply(rho, tol);
    const double after = bures_distance(img_sigma, img_rho, tol);
    ++rep.pairs_tested;
    if (before < kRatioFloor) {
      if (after > before + 1e-9 && !rep.expansion_witness) {
        rep.expansion_witness = std::make_pair(sigma, rho);
      }
      continue;
    }
    const double ratio = after / before;
    rep.min_ratio = std::min(rep.min_ratio, ratio);
    rep.max_ratio = std::max(rep.max_ratio, ratio);
    if (ratio > 1.0 + 1e-8 && !rep.expansion_witness) {
      rep.expansion_witness = std::make_pair(sigma, rho);
    }
    if (ratio >= 1.0 - 1e-10 && !rep.isometric_witness) {
      rep.isometric_witness = std::make_pair(sigma, rho);
    }
  }
  if (!std::isfinite(rep.min_ratio)) {
    rep.min_ratio = 0.0;
  }
  return rep;
}

PropertyVerdict bures_contraction_probe(const Channel& channel, int samples,
                                        std::uint64_t seed, const Tolerances& tol) {
  PropertyVerdict v;
  v.seed = seed;
  v.tolerance = 1e-10;

  if (auto cert = channel.provenance().certified_bures_contractive()) {
    v.status = *cert ? VerdictStatus::certified_true : VerdictStatus::certified_false;
    v.detail = "provenance: " + channel.provenance().describe();
    if (!*cert) v.detail += " (isometry on the density space)";
    return v;
  }

  // A multiplicative domain with two distinct densities carries an isometric
  // pair, which rules out contractivity exactly.
  if (channel.schwarz_probe(samples, seed, tol).holds()) {
    const SubspaceBasis domain = multiplicative_domain(channel, tol, seed);
    if (domain.verified && domain.dimension > 1) {
      // Build two distinct densities inside M_E: the centre and a small
      // traceless Hermitian perturbation from the domain basis.
      const AlgebraSpec& spec = channel.spec();
      const AlgElement zeta = DensityElement::centre(spec).element();
      for (const auto& b : domain.basis) {
        AlgElement h = hermitian_part(b);
        h = h - AlgElement::scalar(spec, trace(h) / spec.tau_of_identity());
        const double scale = sup_norm(h);
        if (scale <= 1e-8) {
          AlgElement k = hermitian_part(b * Complex(0.0, 1.0));
          k = k - AlgElement::scalar(spec, trace(k) / spec.tau_of_identity());
          if (sup_norm(k) <= 1e-8) continue;
          h = k;
        }
        const double eps = 0.5 / (spec.tau_of_identity() * sup_norm(h));
        const DensityElement sigma(zeta + h * Complex(eps, 0.0), tol);
        const DensityElement rho = DensityElement::centre(spec);
        const double before = bures_distance(sigma, rho, tol);
        const double after =
            bures_distance(channel.apply(sigma, tol), channel.apply(rho, tol), tol);
        if (before > 1e-6 && after >= before - 1e-10) {
          v.status = VerdictStatus::certified_false;
          v.witness = sigma.element();
          std::ostringstream msg;
          msg << "multiplicative domain has dimension " << domain.dimension
              << "; isometric pair at distance " << before;
          v.detail = msg.str();
          return v;
        }
      }
    }
  }

  const ContractionReport rep = nonexpansive_probe(channel, samples, seed, tol);
  v.samples_used = rep.pairs_tested;
  if (rep.isometric_witness) {
    v.status = VerdictStatus::certified_false;
    v.witness = rep.isometric_witness->first.element();
    std::ostringstream msg;
    msg << "isometric pair found (ratio >= 1 - 1e-10 at distance > 1e-6)";
    v.detail = msg.str();
    return v;
  }
  v.status = VerdictStatus::probe_passed;
  std::ostringstream msg;
  msg << "max observed ratio " << rep.max_ratio << " over " << rep.pairs_tested << " pairs";
  v.detail = msg.str();
  return v;
}

EquidistanceResult equidistance_criterion(const Channel& channel, const AlgElement& a,
                                          const Tolerances& tol) {
  if (!is_hermitian(a, tol.herm) || min_eigenvalue(hermitian_part(a)) < -tol.psd) {
    throw PositivityError("equidistance_criterion: element must be PSD");
  }
  const double t = trace(a).real();
  if (t <= tol.zero) {
    throw PositivityError("equidistance_criterion: element has (near-)zero trace");
  }
  const AlgebraSpec& spec = channel.spec();
  const DensityElement zeta = DensityElement::centre(spec);
  const DensityElement normalized(hermitian_part(a) * Complex(1.0 / t, 0.0), tol);
  // Trace preservation keeps tau(E(a)) = tau(a).
  const DensityElement image(hermitian_part(channel.apply(a)) * Complex(1.0 / t, 0.0), tol);

  EquidistanceResult res;
  res.lhs = bures_distance(normalized, zeta, tol);
  res.rhs = bures_distance(image, zeta, tol);
  // Distances below the sqrt(eps) noise floor of d_B = sqrt(1 - F) cannot be
  // resolved in double precision; two unresolvably small distances count as
  // equal.
  constexpr double kNoiseFloor = 5e-8;
  res.in_domain = std::abs(res.lhs - res.rhs) <= 1e-8 ||
                  std::max(res.lhs, res.rhs) <= kNoiseFloor;

  const SubspaceBasis domain = multiplicative_domain(channel, tol);
  res.domain_crosscheck = (domain.contains(a, 1e-7) == res.in_domain);
  return res;
}

std::optional<std::pair<DensityElement, DensityElement>> correctability_obstruction(
    const Channel& channel, const std::vector<DensityElement>& codes, const Tolerances& tol) {
  if (codes.size() < 2) {
    throw StructureError("correctability_obstruction: need at least two codes");
  }
  for (std::size_t i = 0; i < codes.size(); ++i) {
    for (std::size_t j = i + 1; j < codes.size(); ++j) {
      const double before = bures_distance(codes[i], codes[j], tol);
      const double after =
          bures_distance(channel.apply(codes[i], tol), channel.apply(codes[j], tol), tol);
      if (after < before - 1e-8) {
        return std::make_pair(codes[i], codes[j]);
      }
    }
  }
  return std::nullopt;
}

PropertyVerdict inverse_positivity_check(const Channel& channel, const Tolerances& tol) {
  PropertyVerdict v;
  v.tolerance = tol.psd;

  // Provenance: the inverse of a unitary conjugation is Ad_{u*}, positive.
  if (channel.provenance().kind == Provenance::Kind::identity ||
      channel.provenance().kind == Provenance::Kind::unitary) {
    v.status = VerdictStatus::certified_true;
    v.detail = "inverse is again a unitary conjugation (provenance)";
    return v;
  }

  const Matrix& s = channel.superoperator();
  Eigen::JacobiSVD<Matrix> svd(s);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(svd.singularValues().size() - 1);
  if (!(smin > 0.0) || smax / smin >= 1e10) {
    v.status = VerdictStatus::undetermined;
    std::ostringstream msg;
    msg << "superoperator not invertible (condition number "
        << (smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity()) << ")";
    v.detail = msg.str();
    return v;
  }

  const Matrix inv = s.fullPivLu().inverse();
  const AlgebraSpec& spec = channel.spec();
  const auto test = [&](const AlgElement& psd) -> std::optional<double> {
    const AlgElement image = unvectorize(spec, inv * vectorize(psd));
    if (!is_hermitian(image, 1e-8)) return 0.0;  // adjoint not preserved; treat as witness
    const double mineig = min_eigenvalue(hermitian_part(image));
    if (mineig < -tol.psd) return mineig;
    return std::nullopt;
  };

  std::vector<AlgElement> candidates;
  for (std::size_t j = 0; j < spec.block_count(); ++j) {
    for (Index i = 0; i < spec.block_dim(j); ++i) {
      candidates.push_back(AlgElement::matrix_unit(spec, j, i, i));
    }
  }
  Rng rng(20260111);
  const std::vector<Index> ones(spec.block_count(), Index{1});
  for (int i = 0; i < 32; ++i) {
    Rng rr = rng.fork(i);
    candidates.push_back(random_psd(spec, rr, RankProfile{ones}));
    candidates.push_back(random_psd(spec, rr));
  }
  int used = 0;
  for (const auto& c : candidates) {
    ++used;
    if (const auto bad = test(c)) {
      v.status = VerdictStatus::certified_false;
      v.witness = c;
      v.certificate_eigenvalues = {*bad};
      v.samples_used = used;
      std::ostringstream msg;
      msg << "E^{-1} maps a PSD element to minimum eigenvalue " << *bad;
      v.detail = msg.str();
      return v;
    }
  }
  v.status = VerdictStatus::undetermined;
  v.samples_used = used;
  v.detail = "no positivity violation found by search; inverse positivity not certified";
  return v;
}

ExtremePointReport extreme_point_probe(const Channel& channel, int samples,
                                       std::uint64_t seed) {
  const AlgebraSpec& spec = channel.spec();
  if (spec.block_count() != 1) {
    throw StructureError("extreme_point_probe: requires a single-block (prime) algebra");
  }
  if (samples < 1) {
    throw StructureError("extreme_point_probe: samples must be >= 1");
  }
  const Index d = spec.block_dim(0);
  const AlgElement one = AlgElement::identity(spec);

  ExtremePointReport rep;
  rep.min_defect = std::numeric_limits<double>::infinity();

  std::vector<AlgElement> pool;
  if (d > 1) {
    // Structured nonscalar unitaries: a traceless signature unitary and a
    // cyclic permutation.
    AlgElement sig = AlgElement::identity(spec);
    for (Index i = 0; i < d; ++i) {
      sig.block(0)(i, i) = (i % 2 == 0) ? 1.0 : -1.0;
    }
    if (d % 2 == 0) pool.push_back(sig);  // traceless only for even d
    AlgElement cyc = AlgElement::zero(spec);
    for (Index i = 0; i < d; ++i) cyc.block(0)((i + 1) % d, i) = 1.0;
    pool.push_back(cyc);
  }
  Rng rng(seed);
  for (std::uint64_t i = 0; static_cast<int>(pool.size()) < samples; ++i) {
    Rng rr = rng.fork(i);
    AlgElement u = random_unitary(spec, rr);
    // Reject nearly scalar samples.
    const Complex mean = u.block(0).trace() / static_cast<double>(d);
    if (norm2(u - AlgElement::scalar(spec, mean)) < 0.1) continue;
    pool.push_back(std::move(u));
  }
  if (static_cast<int>(pool.size()) > samples) {
    pool.erase(pool.begin() + samples, pool.end());
  }

  for (const auto& u : pool) {
    const AlgElement img = channel.apply(u);
    const double defect = sup_norm(img.adjoint() * img - one);
    ++rep.samples;
    if (defect < rep.min_defect) {
      rep.min_defect = defect;
      rep.argmin_unitary = u;
    }
  }
  return rep;
}

}  // namespace bures
