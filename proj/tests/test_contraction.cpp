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

#include "bures/contraction.hpp"
#include "bures/metrics.hpp"

using namespace bures;

namespace {

AlgebraSpec m2() { return AlgebraSpec::matrix_algebra(2); }

AlgElement pauli_x(const AlgebraSpec& spec) {
  AlgElement u = AlgElement::zero(spec);
  u.block(0) << 0.0, 1.0, 1.0, 0.0;
  return u;
}

AlgElement pauli_y(const AlgebraSpec& spec) {
  AlgElement u = AlgElement::zero(spec);
  u.block(0) << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return u;
}

DensityElement e_unit(const AlgebraSpec& spec, Index i) {
  return DensityElement(AlgElement::matrix_unit(spec, 0, i, i));
}

}  // namespace

TEST_CASE("nonexpansive probe") {
  const auto spec = m2();

  SUBCASE("identity channel: every ratio is 1") {
    const ContractionReport rep = nonexpansive_probe(identity_channel(spec), 100, 81);
    CHECK(rep.min_ratio == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(rep.max_ratio == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(rep.isometric_witness.has_value());
    CHECK_FALSE(rep.expansion_witness.has_value());
  }

  SUBCASE("completely depolarising: every ratio is 0") {
    const ContractionReport rep = nonexpansive_probe(completely_depolarising(spec), 100, 82);
    CHECK(rep.min_ratio == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(rep.max_ratio <= 1e-4);
    CHECK(rep.certificate.has_value());
  }

  SUBCASE("the Pauli mixture preserves the distance of the diagonal unit pair") {
    const Channel mix = unitary_mixture(0.5, pauli_x(spec), pauli_y(spec));
    const ContractionReport rep = nonexpansive_probe(mix, 100, 83);
    REQUIRE(rep.isometric_witness.has_value());
    CHECK(rep.max_ratio >= 1.0 - 1e-10);
    CHECK(rep.max_ratio <= 1.0 + 1e-8);
    const double before =
        bures_distance(rep.isometric_witness->first, rep.isometric_witness->second);
    CHECK(before > 1e-6);
  }

  SUBCASE("no constructed channel expands") {
    Rng rng(84);
    Rng r0 = rng.fork(0);
    const std::vector<Channel> suite = {
        completely_depolarising(spec), depolarising(spec, 0.3), choi_schwarz_m2(spec),
        unitary_channel(random_unitary(spec, r0)), random_tp_channel(spec, 3, r0)};
    for (const auto& c : suite) {
      const ContractionReport rep = nonexpansive_probe(c, 120, 85);
      CHECK_FALSE(rep.expansion_witness.has_value());
      CHECK(rep.max_ratio <= 1.0 + 1e-8);
    }
  }
}

TEST_CASE("fidelity monotonicity under channels") {
  const auto spec = AlgebraSpec({1, 2}, {1.0, 1.0});
  Rng rng(86);
  Rng r0 = rng.fork(0);
  const std::vector<Channel> suite = {
      completely_depolarising(spec), depolarising(spec, 0.7),
      unitary_channel(random_unitary(spec, r0)), random_tp_channel(spec, 2, r0)};
  for (const auto& c : suite) {
    for (int i = 0; i < 50; ++i) {
      Rng rr = rng.fork(100 + i);
      const DensityElement a = random_density(spec, rr);
      const DensityElement b = random_density(spec, rr);
      CHECK(fidelity(a, b) <= fidelity(c.apply(a), c.apply(b)) + 1e-8);
    }
  }
}

TEST_CASE("bures contraction verdicts") {
  const auto spec = m2();

  SUBCASE("depolarising interior: certified through provenance") {
    const PropertyVerdict v = bures_contraction_probe(depolarising(spec, 0.3), 100, 87);
    CHECK(v.status == VerdictStatus::certified_true);
  }

  SUBCASE("choi_schwarz_m2: certified through provenance") {
    const PropertyVerdict v = bures_contraction_probe(choi_schwarz_m2(spec), 100, 88);
    CHECK(v.status == VerdictStatus::certified_true);
  }

  SUBCASE("unitary conjugation: certified false") {
    Rng rng(89);
    Rng rr = rng.fork(0);
    const PropertyVerdict v =
        bures_contraction_probe(unitary_channel(random_unitary(spec, rr)), 100, 90);
    CHECK(v.status == VerdictStatus::certified_false);
  }

  SUBCASE("Pauli mixture: certified false with an isometric witness") {
    const Channel mix = unitary_mixture(0.5, pauli_x(spec), pauli_y(spec));
    const PropertyVerdict v = bures_contraction_probe(mix, 100, 91);
    CHECK(v.status == VerdictStatus::certified_false);
    CHECK(v.witness.has_value());
  }

  SUBCASE("random CPTP channel: probe result only, never a certificate") {
    Rng rng(92);
    Rng rr = rng.fork(0);
    const Channel c = random_tp_channel(spec, 3, rr);
    const PropertyVerdict v = bures_contraction_probe(c, 100, 93);
    CHECK((v.status == VerdictStatus::probe_passed ||
           v.status == VerdictStatus::certified_false));
  }

  SUBCASE("strictness: certified contractive channels shrink separated pairs") {
    Rng rng(94);
    const std::vector<Channel> contractive = {completely_depolarising(spec),
                                              depolarising(spec, 0.45), choi_schwarz_m2(spec)};
    for (const auto& c : contractive) {
      REQUIRE(c.provenance().certified_bures_contractive() == std::optional<bool>(true));
      for (int i = 0; i < 60; ++i) {
        Rng rr = rng.fork(i);
        const DensityElement a = random_density(spec, rr);
        const DensityElement b = random_density(spec, rr);
        const double before = bures_distance(a, b);
        if (before <= 1e-4) continue;
        const double after = bures_distance(c.apply(a), c.apply(b));
        CHECK(after / before < 1.0 - 1e-10);
      }
      // orthogonal extreme pair as well
      const double after = bures_distance(c.apply(e_unit(spec, 0)), c.apply(e_unit(spec, 1)));
      CHECK(after < 1.0 - 1e-10);
    }
  }
}

TEST_CASE("equidistance criterion") {
  const auto spec = m2();

  SUBCASE("the identity element is always in the domain") {
    Rng rng(95);
    Rng r0 = rng.fork(0);
    const std::vector<Channel> suite = {completely_depolarising(spec), depolarising(spec, 0.5),
                                        choi_schwarz_m2(spec),
                                        unitary_channel(random_unitary(spec, r0))};
    for (const auto& c : suite) {
      const EquidistanceResult res = equidistance_criterion(c, AlgElement::identity(spec));
      CHECK(res.lhs <= 5e-8);
      CHECK(res.rhs <= 5e-8);
      CHECK(res.in_domain);
      CHECK(res.domain_crosscheck);
    }
  }

  SUBCASE("e11 under the completely depolarising channel") {
    const EquidistanceResult res =
        equidistance_criterion(completely_depolarising(spec),
                               AlgElement::matrix_unit(spec, 0, 0, 0));
    CHECK(res.lhs == doctest::Approx(std::sqrt(1.0 - std::pow(2.0, -0.5))).epsilon(1e-9));
    CHECK(res.rhs == doctest::Approx(0.0).epsilon(1e-9));
    CHECK_FALSE(res.in_domain);
    CHECK(res.domain_crosscheck);
  }

  SUBCASE("automorphisms keep every PSD element in the domain") {
    Rng rng(96);
    Rng r0 = rng.fork(0);
    const Channel ad = unitary_channel(random_unitary(spec, r0));
    for (int i = 0; i < 10; ++i) {
      Rng rr = rng.fork(10 + i);
      const EquidistanceResult res = equidistance_criterion(ad, random_psd(spec, rr));
      CHECK(res.in_domain);
      CHECK(res.domain_crosscheck);
    }
  }

  SUBCASE("input validation") {
    const Channel omega = completely_depolarising(spec);
    AlgElement neg = AlgElement::zero(spec);
    neg.block(0) << 1.0, 0.0, 0.0, -1.0;
    CHECK_THROWS_AS(equidistance_criterion(omega, neg), PositivityError);
    CHECK_THROWS_AS(equidistance_criterion(omega, AlgElement::zero(spec)), PositivityError);
  }
}

TEST_CASE("correctability obstruction") {
  const auto spec = m2();
  const std::vector<DensityElement> codes = {e_unit(spec, 0), e_unit(spec, 1)};

  SUBCASE("completely depolarising collapses the code pair") {
    const auto witness = correctability_obstruction(completely_depolarising(spec), codes);
    REQUIRE(witness.has_value());
    CHECK(bures_distance(witness->first, witness->second) == doctest::Approx(1.0));
  }

  SUBCASE("interior depolarising strictly contracts the code pair") {
    CHECK(correctability_obstruction(depolarising(spec, 0.5), codes).has_value());
  }

  SUBCASE("unitary conjugation preserves all distances") {
    Rng rng(97);
    Rng rr = rng.fork(0);
    CHECK_FALSE(
        correctability_obstruction(unitary_channel(random_unitary(spec, rr)), codes).has_value());
  }

  SUBCASE("fewer than two codes is an error") {
    CHECK_THROWS_AS(correctability_obstruction(completely_depolarising(spec), {e_unit(spec, 0)}),
                    StructureError);
  }
}

TEST_CASE("inverse positivity") {
  const auto spec = m2();

  SUBCASE("depolarising(1/2): inverse maps e11 to min eigenvalue -1/2") {
    const PropertyVerdict v = inverse_positivity_check(depolarising(spec, 0.5));
    CHECK(v.status == VerdictStatus::certified_false);
    REQUIRE(v.witness.has_value());
    REQUIRE(!v.certificate_eigenvalues.empty());
    // the diagonal matrix-unit candidates come first, so the witness is e11
    CHECK(norm2(*v.witness - AlgElement::matrix_unit(spec, 0, 0, 0)) <= 1e-12);
    CHECK(v.certificate_eigenvalues.front() == doctest::Approx(-0.5).epsilon(1e-10));
  }

  SUBCASE("unitary conjugation: inverse certified positive via provenance") {
    Rng rng(98);
    Rng rr = rng.fork(0);
    const PropertyVerdict v = inverse_positivity_check(unitary_channel(random_unitary(spec, rr)));
    CHECK(v.status == VerdictStatus::certified_true);
  }

  SUBCASE("completely depolarising: singular superoperator diagnostic") {
    const PropertyVerdict v = inverse_positivity_check(completely_depolarising(spec));
    CHECK(v.status == VerdictStatus::undetermined);
    CHECK(v.detail.find("not invertible") != std::string::npos);
  }
}

TEST_CASE("extreme point probe") {
  const auto spec = m2();

  SUBCASE("completely depolarising sends traceless unitaries to zero: defect 1") {
    // restricted to the two structured traceless unitaries the defect is
    // exactly 1 (their image is 0)
    const Channel omega = completely_depolarising(spec);
    const ExtremePointReport structured = extreme_point_probe(omega, 2, 101);
    CHECK(structured.min_defect == doctest::Approx(1.0).epsilon(1e-12));
    REQUIRE(structured.argmin_unitary.has_value());
    CHECK(norm2(omega.apply(*structured.argmin_unitary)) <= 1e-12);
    // over Haar samples the observed minimum stays strictly positive but can
    // be small (images of near-scalar unitaries approach scalar unitaries)
    const ExtremePointReport rep = extreme_point_probe(omega, 50, 101);
    CHECK(rep.min_defect > 0.0);
    CHECK(rep.min_defect <= 1.0 + 1e-12);
  }

  SUBCASE("identity channel achieves defect 0") {
    const ExtremePointReport rep = extreme_point_probe(identity_channel(spec), 50, 102);
    CHECK(rep.min_defect == doctest::Approx(0.0).epsilon(1e-12));
  }

  SUBCASE("choi_schwarz_m2 stays away from the unitaries") {
    const ExtremePointReport rep = extreme_point_probe(choi_schwarz_m2(spec), 500, 103);
    CHECK(rep.samples == 500);
    CHECK(rep.min_defect > 0.0);
  }

  SUBCASE("multi-block algebras are unsupported") {
    const AlgebraSpec two({1, 2}, {1.0, 1.0});
    CHECK_THROWS_AS(extreme_point_probe(completely_depolarising(two), 10, 104), StructureError);
  }
}

TEST_CASE("segments through a contraction have trivial multiplicative domain") {
  const auto spec = m2();
  Rng rng(105);
  Rng rr = rng.fork(0);
  // a unital 2-positive channel (random-unitary mixture) as the other endpoint
  const Channel phi =
      unitary_mixture(0.37, random_unitary(spec, rr), random_unitary(spec, rr));
  const Channel psi = depolarising(spec, 0.5);  // certified contraction
  const Channel mid = convex_combine(0.5, phi, psi);
  CHECK(mid.provenance().certified_bures_contractive() == std::optional<bool>(true));
  CHECK(mid.is_unital().holds());
  const SubspaceBasis dom = multiplicative_domain(mid);
  CHECK(dom.dimension == 1);
}

TEST_CASE("cross-module consistency for certified contractive Schwarz channels") {
  const auto spec = m2();
  const std::vector<Channel> suite = {completely_depolarising(spec), depolarising(spec, 0.25),
                                      choi_schwarz_m2(spec)};
  for (const auto& c : suite) {
    REQUIRE(c.provenance().certified_bures_contractive() == std::optional<bool>(true));
    REQUIRE(c.schwarz_probe(300, 106).holds());

    // trivial fixed points and multiplicative domain
    CHECK(fixed_point_space(c).dimension == 1);
    CHECK(multiplicative_domain(c).dimension == 1);

    // irreducible
    CHECK(irreducibility_verdict(c).status == VerdictStatus::certified_true);

    // peripheral point spectrum {1}
    const SpectrumReport rep = superoperator_spectrum(c);
    CHECK(std::abs(rep.perron_value - 1.0) <= 1e-8);
    CHECK(rep.peripheral_trivial);
  }
}
