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

#include <doctest.h>

#include <cmath>

#include "bures/metrics.hpp"

using namespace bures;

namespace {

AlgebraSpec m2() { return AlgebraSpec::matrix_algebra(2); }
AlgebraSpec mixed() { return AlgebraSpec({1, 2, 3}, {1.0, 1.0, 1.0}); }

DensityElement e_unit(const AlgebraSpec& spec, Index i) {
  return DensityElement(AlgElement::matrix_unit(spec, 0, i, i));
}

// Independent oracle for commuting (diagonal) densities: F = sum sqrt(p_i q_i).
double commuting_fidelity(const std::vector<double>& p, const std::vector<double>& q) {
  double f = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) f += std::sqrt(p[i] * q[i]);
  return f;
}

}  // namespace

TEST_CASE("fidelity basics") {
  const auto spec = m2();
  Rng rng(31);
  Rng rr = rng.fork(0);
  const DensityElement rho = random_density(spec, rr);
  CHECK(fidelity(rho, rho) == doctest::Approx(1.0).epsilon(1e-10));

  // orthogonal supports: fidelity 0, maximal distance
  CHECK(fidelity(e_unit(spec, 0), e_unit(spec, 1)) == doctest::Approx(0.0));

  // commuting closed form
  AlgElement sblk = AlgElement::zero(spec);
  sblk.block(0) << 1.0, 0.0, 0.0, 0.0;
  AlgElement rblk = AlgElement::zero(spec);
  rblk.block(0) << 0.5, 0.0, 0.0, 0.5;
  const double f = fidelity(DensityElement(sblk), DensityElement(rblk));
  CHECK(f == doctest::Approx(commuting_fidelity({1.0, 0.0}, {0.5, 0.5})).epsilon(1e-12));
  CHECK(f == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
}

TEST_CASE("fidelity symmetry, range and route agreement on random pairs") {
  Rng rng(32);
  for (int i = 0; i < 100; ++i) {
    Rng rr = rng.fork(i);
    const DensityElement a = random_density(mixed(), rr);
    const DensityElement b = random_density(mixed(), rr);
    const double fab = fidelity(a, b);
    const double fba = fidelity(b, a);
    CHECK(std::abs(fab - fba) <= 1e-9);
    CHECK(fab >= 0.0);
    CHECK(fab <= 1.0);  // tracial AM-GM bound
    // route agreement is asserted inside fidelity(); exercise it explicitly
    const AlgElement sa = psd_sqrt(a.element());
    const AlgElement sb = psd_sqrt(b.element());
    CHECK(std::abs(trace_norm(sa * sb) - fab) <= 1e-8);
  }
}

TEST_CASE("bures distance is a metric on samples") {
  const auto spec = m2();
  CHECK(bures_distance(e_unit(spec, 0), e_unit(spec, 1)) == doctest::Approx(1.0));
  Rng rng(33);
  Rng r0 = rng.fork(0);
  const DensityElement rho = random_density(spec, r0);
  CHECK(bures_distance(rho, rho) == doctest::Approx(0.0).epsilon(1e-7));

  for (int i = 0; i < 200; ++i) {
    Rng rr = rng.fork(i + 1);
    const DensityElement a = random_density(mixed(), rr);
    const DensityElement b = random_density(mixed(), rr);
    const DensityElement c = random_density(mixed(), rr);
    CHECK(bures_distance(a, b) <= bures_distance(a, c) + bures_distance(c, b) + 1e-9);
    // identity of indiscernibles at numerical scale
    if (bures_distance(a, b) <= 1e-8) {
      CHECK(norm2(a.element() - b.element()) <= 1e-6);
    }
  }
}

TEST_CASE("trace distance and the two-sided Bures bound") {
  const auto spec = m2();
  CHECK(trace_distance(e_unit(spec, 0), e_unit(spec, 1)) == doctest::Approx(2.0));
  Rng rng(34);
  Rng r0 = rng.fork(0);
  const DensityElement rho = random_density(spec, r0);
  CHECK(trace_distance(rho, rho) == doctest::Approx(0.0));

  for (int i = 0; i < 200; ++i) {
    Rng rr = rng.fork(i + 1);
    const DensityElement a = random_density(mixed(), rr);
    const DensityElement b = random_density(mixed(), rr);
    CHECK(std::sqrt(2.0) * bures_distance(a, b) <= trace_distance(a, b) + 1e-9);
  }
}

TEST_CASE("Fuchs-van de Graaf bounds") {
  const auto spec = m2();
  // orthogonal pair: F = 0, both bounds tight at 2
  const auto [lo, hi] = fvdg_bounds(e_unit(spec, 0), e_unit(spec, 1));
  CHECK(lo == doctest::Approx(2.0));
  CHECK(hi == doctest::Approx(2.0));
  CHECK(trace_distance(e_unit(spec, 0), e_unit(spec, 1)) == doctest::Approx(2.0));

  Rng rng(35);
  Rng r0 = rng.fork(0);
  const DensityElement rho = random_density(spec, r0);
  const auto [lo2, hi2] = fvdg_bounds(rho, rho);
  CHECK(lo2 == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(hi2 == doctest::Approx(0.0).epsilon(1e-4));

  for (int i = 0; i < 1000; ++i) {
    Rng rr = rng.fork(i + 1);
    const DensityElement a = random_density(mixed(), rr);
    const DensityElement b = random_density(mixed(), rr);
    const auto [lower, upper] = fvdg_bounds(a, b);
    const double d1 = trace_distance(a, b);
    CHECK(lower <= d1 + 1e-9);
    CHECK(d1 <= upper + 1e-9);
  }
}

TEST_CASE("metric report internal consistency") {
  Rng rng(36);
  for (int i = 0; i < 20; ++i) {
    Rng rr = rng.fork(i);
    const DensityElement a = random_density(mixed(), rr);
    const DensityElement b = random_density(mixed(), rr);
    const MetricReport rep = metric_report(a, b);
    CHECK(std::abs(rep.bures - std::sqrt(1.0 - rep.fidelity)) <= 1e-12);
    CHECK(rep.fvdg_lower <= rep.trace_dist + 1e-9);
    CHECK(rep.trace_dist <= rep.fvdg_upper + 1e-9);
    CHECK_FALSE(rep.orthogonal);  // random full-rank densities never orthogonal
  }
}

TEST_CASE("optimal alignment unitary") {
  const auto spec = m2();

  SUBCASE("equal invertible densities attain F = 1 with the identity") {
    Rng rng(37);
    Rng rr = rng.fork(0);
    const DensityElement rho = random_density(spec, rr);
    const auto res = optimal_alignment_unitary(rho, rho);
    CHECK(norm2(res.unitary - AlgElement::identity(spec)) <= 1e-9);
    CHECK(res.attained == doctest::Approx(1.0).epsilon(1e-10));
  }

  SUBCASE("degenerate product still yields a unitary") {
    const auto res = optimal_alignment_unitary(e_unit(spec, 0), e_unit(spec, 1));
    const AlgElement u = res.unitary;
    CHECK(norm2(u.adjoint() * u - AlgElement::identity(spec)) <= 1e-10);
    CHECK(res.attained == doctest::Approx(0.0).epsilon(1e-12));
  }

  SUBCASE("random pairs: attained value matches fidelity; adjoint attains 2-2F") {
    Rng rng(38);
    for (int i = 0; i < 50; ++i) {
      Rng rr = rng.fork(i);
      const DensityElement sigma = random_density(mixed(), rr);
      const DensityElement rho = random_density(mixed(), rr);
      const double f = fidelity(sigma, rho);
      const auto res = optimal_alignment_unitary(sigma, rho);
      CHECK(norm2(res.unitary.adjoint() * res.unitary - AlgElement::identity(mixed())) <= 1e-10);
      CHECK(std::abs(res.attained - f) <= 1e-8);

      // the adjoint unitary realizes tau(|sigma^{1/2} - rho^{1/2} u*|^2) = 2 - 2F
      const AlgElement diff =
          psd_sqrt(sigma.element()) - psd_sqrt(rho.element()) * res.unitary.adjoint();
      const double lhs = trace(diff.adjoint() * diff).real();
      CHECK(std::abs(lhs - (2.0 - 2.0 * f)) <= 1e-8);
      // and no unitary goes below it
      const AlgElement w = random_unitary(mixed(), rr);
      const AlgElement diff2 = psd_sqrt(sigma.element()) - psd_sqrt(rho.element()) * w;
      CHECK(trace(diff2.adjoint() * diff2).real() >= lhs - 1e-8);
    }
  }
}

TEST_CASE("variational principle") {
  const auto spec = m2();

  SUBCASE("centre against itself") {
    const AlgElement zeta = DensityElement::centre(spec).element();
    const auto check = variational_fidelity_check(zeta, zeta, 50, 99);
    CHECK(check.fidelity == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(check.gap >= -1e-10);
    CHECK(check.gap <= 1e-8);
  }

  SUBCASE("analytic candidate closes the gap for invertible inputs") {
    Rng rng(39);
    for (int i = 0; i < 20; ++i) {
      Rng rr = rng.fork(i);
      const AlgElement a = random_psd(mixed(), rr);
      const AlgElement b = random_psd(mixed(), rr);
      const auto check = variational_fidelity_check(a, b, 50, 1234 + i);
      CHECK(check.gap >= -1e-8 * std::max(1.0, check.fidelity));
      CHECK(check.gap <= 1e-6 * std::max(1.0, check.fidelity));
    }
  }

  SUBCASE("500 sampled values never undercut the fidelity") {
    Rng rng(40);
    Rng rr = rng.fork(0);
    const AlgElement a = random_psd(mixed(), rr);
    const AlgElement b = random_psd(mixed(), rr);
    const auto check = variational_fidelity_check(a, b, 500, 4321);
    CHECK(check.samples == 500);
    CHECK(check.min_value >= check.fidelity - 1e-8 * std::max(1.0, check.fidelity));
  }
}

TEST_CASE("joint concavity of fidelity") {
  Rng rng(41);
  Rng r0 = rng.fork(0);
  const DensityElement s1 = random_density(mixed(), r0);
  const DensityElement s2 = random_density(mixed(), r0);
  const DensityElement r1 = random_density(mixed(), r0);
  const DensityElement r2 = random_density(mixed(), r0);

  // endpoints are equalities
  CHECK(joint_concavity_check(s1, s2, r1, r2, 0.0));
  CHECK(joint_concavity_check(s1, s2, r1, r2, 1.0));

  for (int i = 0; i < 1000; ++i) {
    Rng rr = rng.fork(i + 1);
    const DensityElement a1 = random_density(mixed(), rr);
    const DensityElement a2 = random_density(mixed(), rr);
    const DensityElement b1 = random_density(mixed(), rr);
    const DensityElement b2 = random_density(mixed(), rr);
    CHECK(joint_concavity_check(a1, a2, b1, b2, rr.uniform()));
  }
}
