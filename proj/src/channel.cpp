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

#include "bures/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace bures {

std::string to_string(VerdictStatus status) {
  switch (status) {
    case VerdictStatus::certified_true: return "certified_true";
    case VerdictStatus::certified_false: return "certified_false";
    case VerdictStatus::probe_passed: return "probe_passed";
    case VerdictStatus::probe_failed_with_witness: return "probe_failed_with_witness";
    case VerdictStatus::undetermined: return "undetermined";
  }
  return "undetermined";
}

// ---------------------------------------------------------------------------
// Provenance

std::string Provenance::describe() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::raw: out << "raw"; break;
    case Kind::kraus: out << "kraus"; break;
    case Kind::identity: out << "identity"; break;
    case Kind::unitary: out << "unitary"; break;
    case Kind::completely_depolarising: out << "completely_depolarising"; break;
    case Kind::depolarising: out << "depolarising(" << lambda << ")"; break;
    case Kind::unitary_mixture: out << "unitary_mixture(" << lambda << ")"; break;
    case Kind::choi_schwarz: out << "choi_schwarz_m2"; break;
    case Kind::transpose: out << "transpose"; break;
    case Kind::convex_combination: out << "convex_combination(" << lambda << ")"; break;
    case Kind::composition: out << "composition"; break;
    case Kind::tau_adjoint: out << "tau_adjoint"; break;
    case Kind::conditional_expectation: out << "conditional_expectation"; break;
  }
  if (!parents.empty() && kind != Kind::depolarising) {
    out << "[";
    for (std::size_t i = 0; i < parents.size(); ++i) {
      if (i > 0) out << ", ";
      out << parents[i]->describe();
    }
    out << "]";
  }
  return out.str();
}

std::optional<bool> Provenance::certified_bures_contractive() const {
  switch (kind) {
    case Kind::completely_depolarising:
    case Kind::choi_schwarz:
      return true;
    case Kind::depolarising:
      // Convex combination of the identity with the completely depolarising
      // channel; contractive exactly when the depolarising part is present.
      return lambda < 1.0;
    case Kind::identity:
    case Kind::unitary:
      return false;  // isometries of the density space
    case Kind::convex_combination: {
      if (lambda <= 0.0 || lambda >= 1.0) {
        const auto& p = (lambda >= 1.0) ? parents[0] : parents[1];
        return p ? p->certified_bures_contractive() : std::nullopt;
      }
      for (const auto& p : parents) {
        if (p && p->certified_bures_contractive() == std::optional<bool>(true)) return true;
      }
      return std::nullopt;
    }
    default:
      return std::nullopt;
  }
}

// ---------------------------------------------------------------------------
// Channel

Channel::Channel(AlgebraSpec spec, Matrix superop, std::optional<std::vector<AlgElement>> kraus,
                 std::shared_ptr<const Provenance> prov)
    : spec_(std::move(spec)),
      superop_(std::move(superop)),
      kraus_(std::move(kraus)),
      prov_(std::move(prov)),
      cache_(std::make_shared<VerdictCache>()) {}

Channel Channel::from_superoperator(const AlgebraSpec& spec, Matrix superop, Provenance prov) {
  if (superop.rows() != spec.vector_dim() || superop.cols() != spec.vector_dim()) {
    throw StructureError("superoperator shape does not match algebra dimension");
  }
  return Channel(spec, std::move(superop), std::nullopt,
                 std::make_shared<const Provenance>(std::move(prov)));
}

Channel Channel::from_action(const AlgebraSpec& spec,
                             const std::function<AlgElement(const AlgElement&)>& action,
                             Provenance prov) {
  const Index dim = spec.vector_dim();
  Matrix superop(dim, dim);
  for (Index i = 0; i < dim; ++i) {
    Vector basis = Vector::Zero(dim);
    basis(i) = Complex(1.0, 0.0);
    superop.col(i) = vectorize(action(unvectorize(spec, basis)));
  }
  return Channel(spec, std::move(superop), std::nullopt,
                 std::make_shared<const Provenance>(std::move(prov)));
}

Channel Channel::from_kraus(const AlgebraSpec& spec, std::vector<AlgElement> ws) {
  if (ws.empty()) {
    throw StructureError("from_kraus: operator list must be nonempty");
  }
  for (const auto& w : ws) {
    if (w.spec() != spec) {
      throw StructureError("from_kraus: operator belongs to a different algebra");
    }
  }
  auto action = [&ws](const AlgElement& x) {
    AlgElement out = AlgElement::zero(x.spec());
    for (const auto& w : ws) out = out + w * x * w.adjoint();
    return out;
  };
  Channel c = from_action(spec, action, Provenance{Provenance::Kind::kraus, 0.0, {}});
  c.kraus_ = std::move(ws);
  return c;
}

AlgElement Channel::apply(const AlgElement& x) const {
  if (x.spec() != spec_) {
    throw StructureError("apply: element belongs to a different algebra");
  }
  return unvectorize(spec_, superop_ * vectorize(x));
}

DensityElement Channel::apply(const DensityElement& rho, const Tolerances& tol) const {
  return DensityElement(hermitian_part(apply(rho.element())), tol);
}

Channel Channel::tau_adjoint() const {
  return Channel(spec_, superop_.adjoint(), std::nullopt,
                 std::make_shared<const Provenance>(
                     Provenance{Provenance::Kind::tau_adjoint, 0.0, {prov_}}));
}

std::vector<ChoiBlock> Channel::choi_blocks() const {
  // Precompute the image of every (unscaled) matrix unit.
  const std::size_t m = spec_.block_count();
  std::vector<ChoiBlock> out;
  for (std::size_t j = 0; j < m; ++j) {
    const Index dj = spec_.block_dim(j);
    std::vector<AlgElement> images;
    images.reserve(static_cast<std::size_t>(dj * dj));
    for (Index i = 0; i < dj; ++i) {
      for (Index l = 0; l < dj; ++l) {
        images.push_back(apply(AlgElement::matrix_unit(spec_, j, i, l)));
      }
    }
    for (std::size_t jp = 0; jp < m; ++jp) {
      const Index djp = spec_.block_dim(jp);
      Matrix c = Matrix::Zero(dj * djp, dj * djp);
      for (Index i = 0; i < dj; ++i) {
        for (Index l = 0; l < dj; ++l) {
          const Matrix& img = images[static_cast<std::size_t>(i * dj + l)].block(jp);
          for (Index k = 0; k < djp; ++k) {
            for (Index mm = 0; mm < djp; ++mm) {
              c(i * djp + k, l * djp + mm) = img(k, mm);
            }
          }
        }
      }
      out.push_back(ChoiBlock{j, jp, std::move(c)});
    }
  }
  return out;
}

PropertyVerdict Channel::cached(const std::string& key,
                                const std::function<PropertyVerdict()>& compute) const {
  {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    const auto it = cache_->entries.find(key);
    if (it != cache_->entries.end()) return it->second;
  }
  PropertyVerdict verdict = compute();
  std::lock_guard<std::mutex> lock(cache_->mutex);
  const auto [it, inserted] = cache_->entries.emplace(key, std::move(verdict));
  return it->second;  // first writer wins
}

PropertyVerdict Channel::is_trace_preserving(const Tolerances& tol) const {
  return cached("trace_preserving", [&]() {
    // tau o E = tau  <=>  E'(1) = 1 in the tau inner product.
    const AlgElement one = AlgElement::identity(spec_);
    const AlgElement adj1 = unvectorize(spec_, superop_.adjoint() * vectorize(one));
    const double defect = norm2(adj1 - one);
    PropertyVerdict v;
    v.tolerance = tol.zero;
    v.certificate_eigenvalues = {defect};
    if (defect <= tol.zero) {
      v.status = VerdictStatus::certified_true;
      v.detail = "adjoint fixes the identity";
    } else {
      v.status = VerdictStatus::certified_false;
      v.witness = adj1;
      std::ostringstream msg;
      msg << "||E'(1) - 1||_2 = " << defect;
      v.detail = msg.str();
    }
    return v;
  });
}

PropertyVerdict Channel::is_unital(const Tolerances& tol) const {
  return cached("unital", [&]() {
    const AlgElement one = AlgElement::identity(spec_);
    const AlgElement img = apply(one);
    const double defect = norm2(img - one);
    PropertyVerdict v;
    v.tolerance = tol.zero;
    v.certificate_eigenvalues = {defect};
    if (defect <= tol.zero) {
      v.status = VerdictStatus::certified_true;
      v.detail = "E(1) = 1";
    } else {
      v.status = VerdictStatus::certified_false;
      v.witness = img;
      std::ostringstream msg;
      msg << "||E(1) - 1||_2 = " << defect;
      v.detail = msg.str();
    }
    return v;
  });
}

PropertyVerdict Channel::is_cp(const Tolerances& tol) const {
  return cached("cp", [&]() {
    PropertyVerdict v;
    v.tolerance = tol.psd;
    double min_eig = std::numeric_limits<double>::infinity();
    for (const auto& blk : choi_blocks()) {
      const double herm_defect = (blk.matrix - blk.matrix.adjoint()).cwiseAbs().maxCoeff();
      if (herm_defect > tol.herm * std::max(1.0, blk.matrix.cwiseAbs().maxCoeff())) {
        v.status = VerdictStatus::certified_false;
        std::ostringstream msg;
        msg << "Choi block (" << blk.source_block << "," << blk.target_block
            << ") is not Hermitian (map does not preserve adjoints)";
        v.detail = msg.str();
        return v;
      }
      Eigen::SelfAdjointEigenSolver<Matrix> solver(
          Matrix(0.5 * (blk.matrix + blk.matrix.adjoint())));
      if (solver.info() != Eigen::Success) {
        throw NumericalError("is_cp: Choi eigensolver failed");
      }
      for (Index i = 0; i < solver.eigenvalues().size(); ++i) {
        v.certificate_eigenvalues.push_back(solver.eigenvalues()(i));
      }
      min_eig = std::min(min_eig, solver.eigenvalues().minCoeff());
    }
    std::sort(v.certificate_eigenvalues.begin(), v.certificate_eigenvalues.end());
    std::ostringstream msg;
    msg << "min Choi eigenvalue " << min_eig;
    v.detail = msg.str();
    v.status = (min_eig >= -tol.psd) ? VerdictStatus::certified_true
                                     : VerdictStatus::certified_false;
    return v;
  });
}

PropertyVerdict Channel::schwarz_probe(int samples, std::uint64_t seed,
                                       const Tolerances& tol) const {
  if (samples < 1) {
    throw StructureError("schwarz_probe: samples must be >= 1");
  }
  std::ostringstream key;
  key << "schwarz:" << samples << ":" << seed;
  return cached(key.str(), [&]() {
    PropertyVerdict v;
    v.tolerance = tol.psd;
    v.seed = seed;

    // 2-positive maps are Schwarz maps; CP + unital gives an exact certificate.
    if (is_cp(tol).status == VerdictStatus::certified_true &&
        is_unital(tol).status == VerdictStatus::certified_true) {
      v.status = VerdictStatus::certified_true;
      v.detail = "completely positive and unital";
      return v;
    }

    // Structured samples first: matrix units and unitaries catch the known
    // extremal violations; Gaussian elements fill the budget.
    std::vector<AlgElement> pool;
    for (std::size_t j = 0; j < spec_.block_count(); ++j) {
      for (Index k = 0; k < spec_.block_dim(j); ++k) {
        for (Index l = 0; l < spec_.block_dim(j); ++l) {
          pool.push_back(AlgElement::matrix_unit(spec_, j, k, l));
        }
      }
    }
    pool.push_back(AlgElement::identity(spec_));
    Rng rng(seed);
    for (int i = 0; i < 4; ++i) {
      Rng rr = rng.fork((1ULL << 32) + i);
      pool.push_back(random_unitary(spec_, rr));
      pool.push_back(random_hermitian(spec_, rr));
      pool.push_back(random_psd(spec_, rr, RankProfile{std::vector<Index>(
                                               spec_.block_count(), Index{1})}));
    }
    while (static_cast<int>(pool.size()) < samples) {
      Rng rr = rng.fork(pool.size());
      pool.push_back(random_element(spec_, rr));
    }
    if (static_cast<int>(pool.size()) > samples) {
      pool.erase(pool.begin() + samples, pool.end());
    }

    double worst = std::numeric_limits<double>::infinity();
    for (const auto& raw : pool) {
      const double scale = norm2(raw);
      if (scale <= tol.zero) continue;
      const AlgElement x = raw * Complex(1.0 / scale, 0.0);
      const AlgElement gap = apply(x.adjoint() * x) - apply(x).adjoint() * apply(x);
      if (!is_hermitian(gap, 1e-8)) {
        v.status = VerdictStatus::probe_failed_with_witness;
        v.witness = x;
        v.detail = "E(x*x) - E(x)*E(x) is not Hermitian";
        v.samples_used = static_cast<int>(pool.size());
        return v;
      }
      const double mineig = min_eigenvalue(hermitian_part(gap));
      worst = std::min(worst, mineig);
      if (mineig < -tol.psd) {
        v.status = VerdictStatus::probe_failed_with_witness;
        v.witness = x;
        std::ostringstream msg;
        msg << "min eig of E(x*x) - E(x)*E(x) = " << mineig;
        v.detail = msg.str();
        v.samples_used = static_cast<int>(pool.size());
        return v;
      }
    }
    v.status = VerdictStatus::probe_passed;
    v.samples_used = static_cast<int>(pool.size());
    v.certificate_eigenvalues = {worst};
    std::ostringstream msg;
    msg << "worst observed Schwarz defect " << worst;
    v.detail = msg.str();
    return v;
  });
}

PropertyVerdict Channel::k_positive_probe(int k, int samples, std::uint64_t seed,
                                          const Tolerances& tol) const {
  if (k < 1) {
    throw StructureError("k_positive_probe: k must be >= 1");
  }
  if (samples < 1) {
    throw StructureError("k_positive_probe: samples must be >= 1");
  }
  std::ostringstream keybuf;
  keybuf << "kpos:" << k << ":" << samples << ":" << seed;
  return cached(keybuf.str(), [&]() {
    PropertyVerdict v;
    v.tolerance = tol.psd;
    v.seed = seed;

    const PropertyVerdict cp = is_cp(tol);
    if (cp.status == VerdictStatus::certified_true) {
      v.status = VerdictStatus::certified_true;
      v.detail = "completely positive";
      return v;
    }

    // Schmidt rank beyond min(d_j, d_j') never constrains further, so k at or
    // above the largest useful rank makes k-positivity equivalent to CP.
    Index kmax = 1;
    for (std::size_t j = 0; j < spec_.block_count(); ++j) {
      for (std::size_t jp = 0; jp < spec_.block_count(); ++jp) {
        kmax = std::max(kmax, std::min(spec_.block_dim(j), spec_.block_dim(jp)));
      }
    }
    if (k >= kmax) {
      v.status = cp.status;
      v.certificate_eigenvalues = cp.certificate_eigenvalues;
      v.detail = "equivalent to complete positivity at this k; " + cp.detail;
      return v;
    }

    Rng rng(seed);
    int used = 0;
    for (const auto& blk : choi_blocks()) {
      const Index dj = spec_.block_dim(blk.source_block);
      const Index djp = spec_.block_dim(blk.target_block);
      const Index rank = std::min(static_cast<Index>(k), std::min(dj, djp));
      for (int s = 0; s < samples; ++s) {
        Rng rr = rng.fork(static_cast<std::uint64_t>(used));
        ++used;
        Vector xi = Vector::Zero(dj * djp);
        for (Index r = 0; r < rank; ++r) {
          Vector a(dj), b(djp);
          for (Index i = 0; i < dj; ++i) a(i) = rr.complex_gaussian();
          for (Index i = 0; i < djp; ++i) b(i) = rr.complex_gaussian();
          for (Index i = 0; i < dj; ++i) {
            for (Index m2 = 0; m2 < djp; ++m2) xi(i * djp + m2) += a(i) * b(m2);
          }
        }
        const double nrm = xi.norm();
        if (nrm <= tol.zero) continue;
        xi /= nrm;
        const double value = (xi.adjoint() * blk.matrix * xi).value().real();
        if (value < -tol.psd) {
          v.status = VerdictStatus::certified_false;
          v.certificate_eigenvalues = {value};
          std::ostringstream msg;
          msg << "Schmidt-rank-" << rank << " vector on Choi block (" << blk.source_block
              << "," << blk.target_block << ") gives " << value;
          v.detail = msg.str();
          v.samples_used = used;
          return v;
        }
      }
    }
    v.status = VerdictStatus::probe_passed;
    v.samples_used = used;
    return v;
  });
}

// ---------------------------------------------------------------------------
// standard channels

Channel identity_channel(const AlgebraSpec& spec) {
  return Channel::from_superoperator(spec, Matrix::Identity(spec.vector_dim(), spec.vector_dim()),
                                     Provenance{Provenance::Kind::identity, 0.0, {}});
}

Channel completely_depolarising(const AlgebraSpec& spec) {
  const double tau1 = spec.tau_of_identity();
  auto action = [tau1](const AlgElement& x) {
    return AlgElement::scalar(x.spec(), trace(x) / tau1);
  };
  return Channel::from_action(spec, action,
                              Provenance{Provenance::Kind::completely_depolarising, 0.0, {}});
}

Channel depolarising(const AlgebraSpec& spec, double lambda) {
  if (lambda < 0.0 || lambda > 1.0) {
    throw StructureError("depolarising: lambda must lie in [0,1]");
  }
  const double tau1 = spec.tau_of_identity();
  auto action = [lambda, tau1](const AlgElement& x) {
    return x * Complex(lambda, 0.0) +
           AlgElement::scalar(x.spec(), trace(x) * Complex((1.0 - lambda) / tau1, 0.0));
  };
  return Channel::from_action(spec, action, Provenance{Provenance::Kind::depolarising, lambda, {}});
}

namespace {

void check_unitary(const AlgElement& u, const Tolerances& tol, const char* what) {
  const AlgElement one = AlgElement::identity(u.spec());
  if (norm2(u.adjoint() * u - one) > tol.psd || norm2(u * u.adjoint() - one) > tol.psd) {
    std::ostringstream msg;
    msg << what << ": operator is not unitary within tolerance";
    throw StructureError(msg.str());
  }
}

}  // namespace

Channel unitary_channel(const AlgElement& u, const Tolerances& tol) {
  check_unitary(u, tol, "unitary_channel");
  auto action = [&u](const AlgElement& x) { return u * x * u.adjoint(); };
  Channel c = Channel::from_action(u.spec(), action, Provenance{Provenance::Kind::unitary, 0.0, {}});
  return c;
}

Channel unitary_mixture(double lambda, const AlgElement& u, const AlgElement& v,
                        const Tolerances& tol) {
  if (lambda < 0.0 || lambda > 1.0) {
    throw StructureError("unitary_mixture: lambda must lie in [0,1]");
  }
  if (u.spec() != v.spec()) {
    throw StructureError("unitary_mixture: operators belong to different algebras");
  }
  check_unitary(u, tol, "unitary_mixture");
  check_unitary(v, tol, "unitary_mixture");
  auto action = [lambda, &u, &v](const AlgElement& x) {
    return (u * x * u.adjoint()) * Complex(lambda, 0.0) +
           (v * x * v.adjoint()) * Complex(1.0 - lambda, 0.0);
  };
  return Channel::from_action(u.spec(), action,
                              Provenance{Provenance::Kind::unitary_mixture, lambda, {}});
}

Channel transpose_channel(const AlgebraSpec& spec) {
  auto action = [](const AlgElement& x) {
    std::vector<Matrix> blocks;
    blocks.reserve(x.block_count());
    for (std::size_t j = 0; j < x.block_count(); ++j) {
      blocks.push_back(x.block(j).transpose());
    }
    return AlgElement(x.spec(), std::move(blocks));
  };
  return Channel::from_action(spec, action, Provenance{Provenance::Kind::transpose, 0.0, {}});
}

Channel choi_schwarz_m2(const AlgebraSpec& spec) {
  if (spec.block_count() != 1 || spec.block_dim(0) != 2 || spec.weight(0) != 1.0) {
    throw StructureError("choi_schwarz_m2: requires the algebra (M_2, w=1)");
  }
  auto action = [](const AlgElement& x) {
    const Matrix& b = x.block(0);
    const Complex m = 0.5 * (b(0, 0) + b(1, 1));
    Matrix out(2, 2);
    out << 0.5 * (b(0, 0) + m), 0.5 * b(1, 0), 0.5 * b(0, 1), 0.5 * (b(1, 1) + m);
    return AlgElement(x.spec(), {out});
  };
  return Channel::from_action(spec, action, Provenance{Provenance::Kind::choi_schwarz, 0.0, {}});
}

Channel standard_channel(const AlgebraSpec& spec, const std::string& kind, double lambda,
                         const std::optional<AlgElement>& u, const std::optional<AlgElement>& v,
                         const Tolerances& tol) {
  if (kind == "identity") return identity_channel(spec);
  if (kind == "completely_depolarising") return completely_depolarising(spec);
  if (kind == "depolarising") return depolarising(spec, lambda);
  if (kind == "transpose") return transpose_channel(spec);
  if (kind == "choi_schwarz_m2") return choi_schwarz_m2(spec);
  if (kind == "unitary") {
    if (!u) throw StructureError("standard_channel: unitary requires u");
    return unitary_channel(*u, tol);
  }
  if (kind == "unitary_mixture") {
    if (!u || !v) throw StructureError("standard_channel: unitary_mixture requires u and v");
    return unitary_mixture(lambda, *u, *v, tol);
  }
  throw StructureError("standard_channel: unknown kind '" + kind + "'");
}

Channel convex_combine(double lambda, const Channel& e1, const Channel& e2) {
  if (lambda < 0.0 || lambda > 1.0) {
    throw StructureError("convex_combine: lambda must lie in [0,1]");
  }
  if (e1.spec() != e2.spec()) {
    throw StructureError("convex_combine: channels act on different algebras");
  }
  if (lambda == 1.0) return e1;
  if (lambda == 0.0) return e2;
  Matrix s = lambda * e1.superoperator() + (1.0 - lambda) * e2.superoperator();
  return Channel::from_superoperator(
      e1.spec(), std::move(s),
      Provenance{Provenance::Kind::convex_combination, lambda,
                 {e1.provenance_ptr(), e2.provenance_ptr()}});
}

Channel compose(const Channel& e1, const Channel& e2) {
  if (e1.spec() != e2.spec()) {
    throw StructureError("compose: channels act on different algebras");
  }
  Matrix s = e1.superoperator() * e2.superoperator();
  return Channel::from_superoperator(
      e1.spec(), std::move(s),
      Provenance{Provenance::Kind::composition, 0.0, {e1.provenance_ptr(), e2.provenance_ptr()}});
}

Channel random_tp_channel(const AlgebraSpec& spec, int n_kraus, Rng& rng) {
  if (n_kraus < 1) {
    throw StructureError("random_tp_channel: need at least one Kraus operator");
  }
  std::vector<AlgElement> ws;
  ws.reserve(static_cast<std::size_t>(n_kraus));
  for (int k = 0; k < n_kraus; ++k) ws.push_back(random_element(spec, rng));
  AlgElement gram = AlgElement::zero(spec);
  for (const auto& w : ws) gram = gram + w.adjoint() * w;
  const AlgElement correction = inverse(psd_sqrt(gram));
  for (auto& w : ws) w = w * correction;
  return Channel::from_kraus(spec, std::move(ws));
}

}  // namespace bures
