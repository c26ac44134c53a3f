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
#include <complex>

#include "bures/algebra.hpp"

using namespace bures;

namespace {

AlgebraSpec m2() { return AlgebraSpec::matrix_algebra(2); }
AlgebraSpec m3() { return AlgebraSpec::matrix_algebra(3); }
AlgebraSpec c_plus_m2() { return AlgebraSpec({1, 2}, {2.0, 1.0}); }

}  // namespace

TEST_CASE("algebra spec validation") {
  CHECK_THROWS_AS(AlgebraSpec({}, {}), StructureError);
  CHECK_THROWS_AS(AlgebraSpec({2}, {0.0}), StructureError);
  CHECK_THROWS_AS(AlgebraSpec({2}, {-1.0}), StructureError);
  CHECK_THROWS_AS(AlgebraSpec({0}, {1.0}), StructureError);
  CHECK_THROWS_AS(AlgebraSpec({2, 2}, {1.0}), StructureError);
  CHECK(c_plus_m2().tau_of_identity() == doctest::Approx(4.0));
  CHECK(c_plus_m2().vector_dim() == 5);
  CHECK(AlgebraSpec({1, 1}, {1.0, 1.0}).abelian());
  CHECK_FALSE(c_plus_m2().abelian());
}

TEST_CASE("weighted trace") {
  const auto spec = m2();
  CHECK(trace(AlgElement::identity(spec)).real() == doctest::Approx(2.0));
  CHECK(trace(AlgElement::matrix_unit(spec, 0, 0, 0)).real() == doctest::Approx(1.0));

  // direct sum arithmetic: (C (+) M_2, w = (2,1)), tau(1) = 2*1 + 1*2 = 4
  CHECK(trace(AlgElement::identity(c_plus_m2())).real() == doctest::Approx(4.0));

  // trace property tau(xy) = tau(yx) on random pairs
  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    Rng r = rng.fork(i);
    const AlgElement x = random_element(c_plus_m2(), r);
    const AlgElement y = random_element(c_plus_m2(), r);
    CHECK(std::abs(trace(x * y) - trace(y * x)) <= 1e-10 * std::max(1.0, std::abs(trace(x * y))));
  }

  // faithfulness: tau(a) > 0 for nonzero PSD a
  for (int i = 0; i < 50; ++i) {
    Rng r = rng.fork(1000 + i);
    const AlgElement a = random_psd(c_plus_m2(), r);
    CHECK(trace(a).real() > 0.0);
  }
}

TEST_CASE("tau inner product") {
  const auto spec = m2();
  const auto e11 = AlgElement::matrix_unit(spec, 0, 0, 0);
  const auto e22 = AlgElement::matrix_unit(spec, 0, 1, 1);
  CHECK(tau_inner_product(e11, e11).real() == doctest::Approx(1.0));
  CHECK(std::abs(tau_inner_product(e11, e22)) == doctest::Approx(0.0));

  // Cauchy-Schwarz |tau(x y*)| <= ||x||_2 ||y||_2 on 100 random pairs
  Rng rng(12);
  for (int i = 0; i < 100; ++i) {
    Rng r = rng.fork(i);
    const AlgElement x = random_element(c_plus_m2(), r);
    const AlgElement y = random_element(c_plus_m2(), r);
    CHECK(std::abs(tau_inner_product(x, y)) <= norm2(x) * norm2(y) + 1e-10);
  }
}

TEST_CASE("psd_sqrt") {
  const auto spec = m2();
  AlgElement d49 = AlgElement::zero(spec);
  d49.block(0) << 4.0, 0.0, 0.0, 9.0;
  const AlgElement s = psd_sqrt(d49);
  CHECK(s.block(0)(0, 0).real() == doctest::Approx(2.0));
  CHECK(s.block(0)(1, 1).real() == doctest::Approx(3.0));

  const AlgElement one = AlgElement::identity(spec);
  CHECK(norm2(psd_sqrt(one) - one) <= 1e-12);

  AlgElement a = AlgElement::zero(spec);
  a.block(0) << 2.0, 1.0, 1.0, 2.0;
  const AlgElement r = psd_sqrt(a);
  CHECK(norm2(r * r - a) <= 1e-10);

  // non-Hermitian input
  AlgElement nh = AlgElement::zero(spec);
  nh.block(0) << 0.0, 1.0, 0.0, 0.0;
  CHECK_THROWS_AS(psd_sqrt(nh), PositivityError);

  // eigenvalue below -tol_psd
  AlgElement neg = AlgElement::zero(spec);
  neg.block(0) << 1.0, 0.0, 0.0, -1.0;
  CHECK_THROWS_AS(psd_sqrt(neg), PositivityError);

  // reconstruction property on random PSD samples
  Rng rng(13);
  for (int i = 0; i < 30; ++i) {
    Rng rr = rng.fork(i);
    const AlgElement p = random_psd(c_plus_m2(), rr);
    const AlgElement q = psd_sqrt(p);
    CHECK(norm2(q * q - p) <= 1e-9 * std::max(1.0, norm2(p)));
  }

  // monotone on commuting pairs: a <= b with [a,b] = 0 implies sqrt(a) <= sqrt(b)
  for (int i = 0; i < 20; ++i) {
    Rng rr = rng.fork(500 + i);
    const AlgElement a = random_psd(m3(), rr);
    const AlgElement b = hermitian_function(a, [](double t) { return t + 0.5; });
    CHECK(min_eigenvalue(psd_sqrt(b) - psd_sqrt(a)) >= -1e-9);
  }
}

TEST_CASE("abs_element") {
  const auto spec = m2();
  AlgElement d = AlgElement::zero(spec);
  d.block(0) << 1.0, 0.0, 0.0, -1.0;
  CHECK(norm2(abs_element(d) - AlgElement::identity(spec)) <= 1e-12);

  const auto e12 = AlgElement::matrix_unit(spec, 0, 0, 1);
  const auto e22 = AlgElement::matrix_unit(spec, 0, 1, 1);
  CHECK(norm2(abs_element(e12) - e22) <= 1e-12);

  Rng rng(14);
  for (int i = 0; i < 30; ++i) {
    Rng rr = rng.fork(i);
    const AlgElement a = random_psd(c_plus_m2(), rr);
    CHECK(norm2(abs_element(a) - a) <= 1e-9 * std::max(1.0, norm2(a)));

    // |x| agrees with psd_sqrt(x* x) (two routes)
    const AlgElement x = random_element(c_plus_m2(), rr);
    CHECK(norm2(abs_element(x) - psd_sqrt(x.adjoint() * x)) <= 1e-8 * std::max(1.0, norm2(x)));
    // norm preservation ||  |x| ||_2 = ||x||_2
    CHECK(norm2(abs_element(x)) == doctest::Approx(norm2(x)).epsilon(1e-10));
  }
}

TEST_CASE("trace norm") {
  const auto spec = m2();
  AlgElement d = AlgElement::zero(spec);
  d.block(0) << 1.0, 0.0, 0.0, -1.0;
  CHECK(trace_norm(d) == doctest::Approx(2.0));

  const auto e11 = AlgElement::matrix_unit(spec, 0, 0, 0);
  const auto e22 = AlgElement::matrix_unit(spec, 0, 1, 1);
  CHECK(trace_norm(e11 - e22) == doctest::Approx(2.0));

  // norm axioms on random samples
  Rng rng(15);
  for (int i = 0; i < 1000; ++i) {
    Rng rr = rng.fork(i);
    const AlgElement x = random_element(c_plus_m2(), rr);
    const AlgElement y = random_element(c_plus_m2(), rr);
    CHECK(trace_norm(x + y) <= trace_norm(x) + trace_norm(y) + 1e-9);
    if (i < 100) {
      const Complex alpha = rr.complex_gaussian();
      CHECK(trace_norm(x * alpha) == doctest::Approx(std::abs(alpha) * trace_norm(x)).epsilon(1e-9));
      CHECK(trace_norm(x) >= 0.0);
      // |tau(x)| <= tau(|x|)
      CHECK(std::abs(trace(x)) <= trace_norm(x) + 1e-9);
      // Hoelder: ||xy||_1 <= ||x||_2 ||y||_2
      CHECK(trace_norm(x * y) <= norm2(x) * norm2(y) + 1e-9);
    }
  }
  // definiteness
  CHECK(trace_norm(AlgElement::zero(spec)) == doctest::Approx(0.0));
}

TEST_CASE("Powers-Stormer inequality on random PSD pairs") {
  Rng rng(16);
  for (int i = 0; i < 100; ++i) {
    Rng rr = rng.fork(i);
    const AlgElement a = random_psd(c_plus_m2(), rr);
    const AlgElement b = random_psd(c_plus_m2(), rr);
    const double lhs = 2.0 * trace(psd_sqrt(a) * psd_sqrt(b)).real();
    const double rhs = trace(a + b).real() - trace_norm(a - b);
    CHECK(lhs >= rhs - 1e-9);
  }
}

TEST_CASE("orthogonal pairs") {
  const auto spec = m2();
  const auto e11 = AlgElement::matrix_unit(spec, 0, 0, 0);
  const auto e22 = AlgElement::matrix_unit(spec, 0, 1, 1);
  CHECK(is_orthogonal_pair(e11, e22));
  CHECK_FALSE(is_orthogonal_pair(e11, e11));

  // disjoint diagonal supports
  const auto spec3 = m3();
  AlgElement rho = AlgElement::zero(spec3);
  rho.block(0)(0, 0) = 1.0;
  AlgElement sigma = AlgElement::zero(spec3);
  sigma.block(0)(1, 1) = 0.5;
  sigma.block(0)(2, 2) = 0.5;
  CHECK(is_orthogonal_pair(rho, sigma));
}

TEST_CASE("vectorize round trip and isometry") {
  Rng rng(17);
  const auto spec = c_plus_m2();
  for (int i = 0; i < 20; ++i) {
    Rng rr = rng.fork(i);
    const AlgElement x = random_element(spec, rr);
    const AlgElement y = random_element(spec, rr);
    const Vector vx = vectorize(x);
    CHECK(norm2(unvectorize(spec, vx) - x) <= 1e-12);
    // coordinates implement the tau inner product
    const Complex ip = vectorize(y).adjoint() * vx;
    CHECK(std::abs(ip - tau_inner_product(x, y)) <= 1e-10);
  }
}

TEST_CASE("density elements") {
  const auto spec = m2();
  CHECK(DensityElement::defect(AlgElement::matrix_unit(spec, 0, 0, 0)) == std::nullopt);
  CHECK(DensityElement::defect(AlgElement::identity(spec)).has_value());  // trace 2

  const DensityElement zeta = DensityElement::centre(c_plus_m2());
  CHECK(trace(zeta.element()).real() == doctest::Approx(1.0));
  CHECK(zeta.element().block(0)(0, 0).real() == doctest::Approx(0.25));

  AlgElement neg = AlgElement::zero(spec);
  neg.block(0) << 2.0, 0.0, 0.0, -1.0;
  CHECK_THROWS_AS(DensityElement{neg}, PositivityError);
}

TEST_CASE("random density determinism and validity") {
  const auto spec = m3();
  const DensityElement a = random_density(spec, std::uint64_t{42});
  const DensityElement b = random_density(spec, std::uint64_t{42});
  CHECK(norm2(a.element() - b.element()) == 0.0);

  const DensityElement c = random_density(spec, std::uint64_t{43});
  CHECK(norm2(a.element() - c.element()) > 1e-6);

  Rng rng(44);
  for (int i = 0; i < 25; ++i) {
    Rng rr = rng.fork(i);
    const DensityElement d = random_density(spec, rr);
    CHECK(DensityElement::defect(d.element()) == std::nullopt);
  }

  // rank profile produces rank-deficient blocks
  Rng rr = rng.fork(99);
  const DensityElement low = random_density(spec, rr, RankProfile{{1}});
  const auto vals = hermitian_eigenvalues(low.element());
  CHECK(vals[0] <= 1e-12);
  CHECK(vals[1] <= 1e-12);
  CHECK(vals[2] > 0.1);
}

TEST_CASE("empirical mean of random densities approaches the centre") {
  const auto spec = m3();
  AlgElement sum = AlgElement::zero(spec);
  Rng rng(7);
  const int n = 1000;
  for (int i = 0; i < n; ++i) {
    Rng rr = rng.fork(i);
    sum = sum + random_density(spec, rr).element();
  }
  const AlgElement mean = sum * Complex(1.0 / n, 0.0);
  const AlgElement zeta = DensityElement::centre(spec).element();
  CHECK(norm2(mean - zeta) <= 0.05 * norm2(zeta));
}

TEST_CASE("random unitary is unitary") {
  Rng rng(21);
  for (int i = 0; i < 10; ++i) {
    Rng rr = rng.fork(i);
    const AlgElement u = random_unitary(c_plus_m2(), rr);
    CHECK(norm2(u.adjoint() * u - AlgElement::identity(c_plus_m2())) <= 1e-12);
  }
}
