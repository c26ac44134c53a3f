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

#include "bures/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace bures {

namespace {

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

// tau(|x|) through the nuclear norms of the blocks.
double nuclear_route(const AlgElement& x) { return trace_norm(x); }

// tau((s b s)^{1/2}) with s = a^{1/2}: sum of sqrt of clipped eigenvalues.
double spectral_route(const AlgElement& sqrt_a, const AlgElement& b) {
  const AlgElement m = hermitian_part(sqrt_a * b * sqrt_a);
  double f = 0.0;
  for (std::size_t j = 0; j < m.block_count(); ++j) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m.block(j));
    if (solver.info() != Eigen::Success) {
      throw NumericalError("fidelity: eigensolver failed");
    }
    double s = 0.0;
    for (Index i = 0; i < solver.eigenvalues().size(); ++i) {
      s += std::sqrt(std::max(solver.eigenvalues()(i), 0.0));
    }
    f += m.spec().weight(j) * s;
  }
  return f;
}

}  // namespace

double fidelity_psd(const AlgElement& a, const AlgElement& b, const Tolerances& tol) {
  if (!a.same_algebra(b)) {
    throw StructureError("fidelity: elements belong to different algebras");
  }
  const AlgElement sa = psd_sqrt(a, tol);
  const AlgElement sb = psd_sqrt(b, tol);
  const double primary = spectral_route(sa, b);
  const double cross = nuclear_route(sa * sb);
  if (std::abs(primary - cross) > tol.fid * std::max(1.0, primary)) {
    std::ostringstream msg;
    msg << "fidelity route disagreement: spectral " << primary << " vs absolute-value "
        << cross;
    throw NumericalError(msg.str());
  }
  return primary;
}

double fidelity(const DensityElement& sigma, const DensityElement& rho, const Tolerances& tol) {
  // Identical data has fidelity exactly 1; skipping the eigensolve avoids a
  // spurious sqrt(eps)-sized distance between a state and itself.
  if (norm2(sigma.element() - rho.element()) == 0.0) return 1.0;
  return clamp01(fidelity_psd(sigma.element(), rho.element(), tol));
}

double bures_distance(const DensityElement& sigma, const DensityElement& rho,
                      const Tolerances& tol) {
  return std::sqrt(1.0 - fidelity(sigma, rho, tol));
}

double trace_distance(const DensityElement& sigma, const DensityElement& rho) {
  return trace_norm(sigma.element() - rho.element());
}

std::pair<double, double> fvdg_bounds(const DensityElement& sigma, const DensityElement& rho,
                                      const Tolerances& tol) {
  const double f = fidelity(sigma, rho, tol);
  return {2.0 - 2.0 * f, 2.0 * std::sqrt(std::max(0.0, 1.0 - f * f))};
}

MetricReport metric_report(const DensityElement& sigma, const DensityElement& rho,
                           const Tolerances& tol) {
  MetricReport rep;
  rep.fidelity = fidelity(sigma, rho, tol);
  rep.bures = std::sqrt(1.0 - rep.fidelity);
  rep.trace_dist = trace_distance(sigma, rho);
  rep.fvdg_lower = 2.0 - 2.0 * rep.fidelity;
  rep.fvdg_upper = 2.0 * std::sqrt(std::max(0.0, 1.0 - rep.fidelity * rep.fidelity));
  rep.orthogonal = is_orthogonal_pair(sigma.element(), rho.element(), tol);
  return rep;
}

AlignmentResult optimal_alignment_unitary(const DensityElement& sigma,
                                          const DensityElement& rho,
                                          const Tolerances& tol) {
  const AlgElement ss = psd_sqrt(sigma.element(), tol);
  const AlgElement sr = psd_sqrt(rho.element(), tol);
  const AlgElement p = ss * sr;  // sigma^{1/2} rho^{1/2}

  // Full SVD per block; U V^H is unitary even when the product is
  // rank-deficient (null-space bases are paired in index order).
  std::vector<Matrix> blocks;
  blocks.reserve(p.block_count());
  for (std::size_t j = 0; j < p.block_count(); ++j) {
    Eigen::JacobiSVD<Matrix> svd(p.block(j), Eigen::ComputeFullU | Eigen::ComputeFullV);
    blocks.push_back(svd.matrixU() * svd.matrixV().adjoint());
  }
  AlgElement u(p.spec(), std::move(blocks));
  const double attained = trace((sr * ss) * u).real();
  return {std::move(u), attained};
}

VariationalCheck variational_fidelity_check(const AlgElement& a, const AlgElement& b,
                                            int samples, std::uint64_t seed,
                                            const Tolerances& tol) {
  if (samples < 1) {
    throw StructureError("variational_fidelity_check: samples must be >= 1");
  }
  const double f = fidelity_psd(a, b, tol);
  const auto functional = [&](const AlgElement& y) {
    return 0.5 * (trace(a * y).real() + trace(b * inverse(y)).real());
  };

  constexpr double kEps = 1e-10;
  const AlgElement one = AlgElement::identity(a.spec());

  // Analytic candidate, regularized so singular inputs stay invertible:
  // y* = a^{-1/2} (a^{1/2} b a^{1/2})^{1/2} a^{-1/2}.
  const AlgElement a_reg = hermitian_part(a) + one * Complex(kEps, 0.0);
  const AlgElement sa = psd_sqrt(a_reg, tol);
  const AlgElement isa = inverse(sa);
  const AlgElement inner = psd_sqrt(hermitian_part(sa * b * sa) + one * Complex(kEps, 0.0), tol);
  const AlgElement y_star = hermitian_part(isa * inner * isa) + one * Complex(kEps, 0.0);

  VariationalCheck out;
  out.fidelity = f;
  out.min_value = functional(y_star);
  out.samples = samples;

  Rng rng(seed);
  for (int i = 0; i < samples; ++i) {
    Rng rr = rng.fork(i);
    AlgElement y = random_psd(a.spec(), rr) + one * Complex(0.05, 0.0);
    y = y * Complex(std::exp(rr.uniform(-2.0, 2.0)), 0.0);
    out.min_value = std::min(out.min_value, functional(y));
  }

  out.gap = out.min_value - f;
  if (out.gap < -1e-8 * std::max(1.0, f)) {
    std::ostringstream msg;
    msg << "variational principle violated: observed value " << out.min_value
        << " below fidelity " << f;
    throw TheoremViolation(msg.str());
  }
  return out;
}

bool joint_concavity_check(const DensityElement& sigma1, const DensityElement& sigma2,
                           const DensityElement& rho1, const DensityElement& rho2,
                           double lambda, double slack, const Tolerances& tol) {
  if (lambda < 0.0 || lambda > 1.0) {
    throw StructureError("joint_concavity_check: lambda must lie in [0,1]");
  }
  const Complex l(lambda, 0.0), m(1.0 - lambda, 0.0);
  const DensityElement mixed_sigma(sigma1.element() * l + sigma2.element() * m, tol);
  const DensityElement mixed_rho(rho1.element() * l + rho2.element() * m, tol);
  const double lhs = fidelity(mixed_sigma, mixed_rho, tol);
  const double rhs = lambda * fidelity(sigma1, rho1, tol) +
                     (1.0 - lambda) * fidelity(sigma2, rho2, tol);
  return lhs >= rhs - slack;
}

}  // namespace bures
