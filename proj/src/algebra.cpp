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

#include "bures/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace bures {

namespace {

void check_same_algebra(const AlgElement& x, const AlgElement& y, const char* op) {
  if (!x.same_algebra(y)) {
    std::ostringstream msg;
    msg << op << ": elements belong to different algebras";
    throw StructureError(msg.str());
  }
}

Eigen::SelfAdjointEigenSolver<Matrix> eigh(const Matrix& block) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(block);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("Hermitian eigensolver failed to converge");
  }
  return solver;
}

}  // namespace

// ---------------------------------------------------------------------------
// AlgebraSpec

AlgebraSpec::AlgebraSpec(std::vector<Index> block_dims, std::vector<double> trace_weights)
    : dims_(std::move(block_dims)), weights_(std::move(trace_weights)) {
  if (dims_.empty()) {
    throw StructureError("algebra must have at least one block");
  }
  if (dims_.size() != weights_.size()) {
    throw StructureError("block dimension list and trace weight list differ in length");
  }
  offsets_.reserve(dims_.size());
  for (std::size_t j = 0; j < dims_.size(); ++j) {
    if (dims_[j] < 1) {
      throw StructureError("block dimensions must be >= 1");
    }
    if (!(weights_[j] > 0.0) || !std::isfinite(weights_[j])) {
      throw StructureError("trace weight must be positive (faithfulness)");
    }
    offsets_.push_back(vector_dim_);
    vector_dim_ += dims_[j] * dims_[j];
    tau_identity_ += weights_[j] * static_cast<double>(dims_[j]);
  }
}

AlgebraSpec AlgebraSpec::matrix_algebra(Index d, double weight) {
  return AlgebraSpec({d}, {weight});
}

bool AlgebraSpec::abelian() const {
  return std::all_of(dims_.begin(), dims_.end(), [](Index d) { return d == 1; });
}

// ---------------------------------------------------------------------------
// AlgElement

AlgElement::AlgElement(AlgebraSpec spec, std::vector<Matrix> blocks)
    : spec_(std::move(spec)), blocks_(std::move(blocks)) {
  if (blocks_.size() != spec_.block_count()) {
    throw StructureError("block count does not match algebra");
  }
  for (std::size_t j = 0; j < blocks_.size(); ++j) {
    const Index d = spec_.block_dim(j);
    if (blocks_[j].rows() != d || blocks_[j].cols() != d) {
      std::ostringstream msg;
      msg << "block " << j << " has shape " << blocks_[j].rows() << "x" << blocks_[j].cols()
          << ", expected " << d << "x" << d;
      throw StructureError(msg.str());
    }
  }
}

AlgElement AlgElement::zero(const AlgebraSpec& spec) {
  std::vector<Matrix> blocks;
  blocks.reserve(spec.block_count());
  for (std::size_t j = 0; j < spec.block_count(); ++j) {
    blocks.push_back(Matrix::Zero(spec.block_dim(j), spec.block_dim(j)));
  }
  return AlgElement(spec, std::move(blocks));
}

AlgElement AlgElement::identity(const AlgebraSpec& spec) {
  std::vector<Matrix> blocks;
  blocks.reserve(spec.block_count());
  for (std::size_t j = 0; j < spec.block_count(); ++j) {
    blocks.push_back(Matrix::Identity(spec.block_dim(j), spec.block_dim(j)));
  }
  return AlgElement(spec, std::move(blocks));
}

AlgElement AlgElement::matrix_unit(const AlgebraSpec& spec, std::size_t j, Index k, Index l) {
  if (j >= spec.block_count()) {
    throw StructureError("matrix_unit: block index out of range");
  }
  if (k < 0 || l < 0 || k >= spec.block_dim(j) || l >= spec.block_dim(j)) {
    throw StructureError("matrix_unit: entry index out of range");
  }
  AlgElement e = zero(spec);
  e.block(j)(k, l) = Complex(1.0, 0.0);
  return e;
}

AlgElement AlgElement::scalar(const AlgebraSpec& spec, Complex value) {
  AlgElement e = identity(spec);
  for (std::size_t j = 0; j < e.block_count(); ++j) e.block(j) *= value;
  return e;
}

AlgElement AlgElement::operator+(const AlgElement& rhs) const {
  check_same_algebra(*this, rhs, "add");
  std::vector<Matrix> blocks;
  blocks.reserve(blocks_.size());
  for (std::size_t j = 0; j < blocks_.size(); ++j) blocks.push_back(blocks_[j] + rhs.blocks_[j]);
  return AlgElement(spec_, std::move(blocks));
}

AlgElement AlgElement::operator-(const AlgElement& rhs) const {
  check_same_algebra(*this, rhs, "subtract");
  std::vector<Matrix> blocks;
  blocks.reserve(blocks_.size());
  for (std::size_t j = 0; j < blocks_.size(); ++j) blocks.push_back(blocks_[j] - rhs.blocks_[j]);
  return AlgElement(spec_, std::move(blocks));
}

AlgElement AlgElement::operator-() const {
  std::vector<Matrix> blocks;
  blocks.reserve(blocks_.size());
  for (const auto& b : blocks_) blocks.push_back(-b);
  return AlgElement(spec_, std::move(blocks));
}

AlgElement AlgElement::operator*(const AlgElement& rhs) const {
  check_same_algebra(*this, rhs, "multiply");
  std::vector<Matrix> blocks;
  blocks.reserve(blocks_.size());
  for (std::size_t j = 0; j < blocks_.size(); ++j) blocks.push_back(blocks_[j] * rhs.blocks_[j]);
  return AlgElement(spec_, std::move(blocks));
}

AlgElement AlgElement::operator*(Complex scalar) const {
  std::vector<Matrix> blocks;
  blocks.reserve(blocks_.size());
  for (const auto& b : blocks_) blocks.push_back(scalar * b);
  return AlgElement(spec_, std::move(blocks));
}

AlgElement AlgElement::adjoint() const {
  std::vector<Matrix> blocks;
  blocks.reserve(blocks_.size());
  for (const auto& b : blocks_) blocks.push_back(b.adjoint());
  return AlgElement(spec_, std::move(blocks));
}

// ---------------------------------------------------------------------------
// trace and norms

Complex trace(const AlgElement& x) {
  Complex t(0.0, 0.0);
  for (std::size_t j = 0; j < x.block_count(); ++j) {
    t += x.spec().weight(j) * x.block(j).trace();
  }
  return t;
}

Complex tau_inner_product(const AlgElement& x, const AlgElement& y) {
  check_same_algebra(x, y, "tau_inner_product");
  Complex t(0.0, 0.0);
  for (std::size_t j = 0; j < x.block_count(); ++j) {
    t += x.spec().weight(j) * (y.block(j).adjoint() * x.block(j)).trace();
  }
  return t;
}

double norm2(const AlgElement& x) {
  double s = 0.0;
  for (std::size_t j = 0; j < x.block_count(); ++j) {
    s += x.spec().weight(j) * x.block(j).squaredNorm();
  }
  return std::sqrt(s);
}

double trace_norm(const AlgElement& x) {
  double s = 0.0;
  for (std::size_t j = 0; j < x.block_count(); ++j) {
    Eigen::JacobiSVD<Matrix> svd(x.block(j));
    s += x.spec().weight(j) * svd.singularValues().sum();
  }
  return s;
}

double sup_norm(const AlgElement& x) {
  double s = 0.0;
  for (std::size_t j = 0; j < x.block_count(); ++j) {
    Eigen::JacobiSVD<Matrix> svd(x.block(j));
    if (svd.singularValues().size() > 0) {
      s = std::max(s, svd.singularValues()(0));
    }
  }
  return s;
}

double max_abs(const AlgElement& x) {
  double s = 0.0;
  for (std::size_t j = 0; j < x.block_count(); ++j) {
    s = std::max(s, x.block(j).cwiseAbs().maxCoeff());
  }
  return s;
}

// ---------------------------------------------------------------------------
// functional calculus

bool is_hermitian(const AlgElement& x, double tol) {
  for (std::size_t j = 0; j < x.block_count(); ++j) {
    if ((x.block(j) - x.block(j).adjoint()).cwiseAbs().maxCoeff() > tol) return false;
  }
  return true;
}

AlgElement hermitian_part(const AlgElement& x) {
  std::vector<Matrix> blocks;
  blocks.reserve(x.block_count());
  for (std::size_t j = 0; j < x.block_count(); ++j) {
    blocks.push_back(0.5 * (x.block(j) + x.block(j).adjoint()));
  }
  return AlgElement(x.spec(), std::move(blocks));
}

std::vector<double> hermitian_eigenvalues(const AlgElement& x) {
  std::vector<double> vals;
  vals.reserve(static_cast<std::size_t>(x.spec().vector_dim()));
  for (std::size_t j = 0; j < x.block_count(); ++j) {
    const auto solver = eigh(x.block(j));
    for (Index i = 0; i < solver.eigenvalues().size(); ++i) {
      vals.push_back(solver.eigenvalues()(i));
    }
  }
  std::sort(vals.begin(), vals.end());
  return vals;
}

double min_eigenvalue(const AlgElement& hermitian) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < hermitian.block_count(); ++j) {
    const auto solver = eigh(hermitian.block(j));
    m = std::min(m, solver.eigenvalues().minCoeff());
  }
  return m;
}

AlgElement hermitian_function(const AlgElement& x, const std::function<double(double)>& f) {
  std::vector<Matrix> blocks;
  blocks.reserve(x.block_count());
  for (std::size_t j = 0; j < x.block_count(); ++j) {
    const auto solver = eigh(x.block(j));
    Eigen::VectorXd vals = solver.eigenvalues();
    for (Index i = 0; i < vals.size(); ++i) vals(i) = f(vals(i));
    blocks.push_back(solver.eigenvectors() * vals.asDiagonal() *
                     solver.eigenvectors().adjoint());
  }
  return AlgElement(x.spec(), std::move(blocks));
}

AlgElement psd_sqrt(const AlgElement& a, const Tolerances& tol) {
  if (!is_hermitian(a, tol.herm)) {
    throw PositivityError("psd_sqrt: input is not Hermitian within tolerance");
  }
  const AlgElement h = hermitian_part(a);
  std::vector<Matrix> blocks;
  blocks.reserve(h.block_count());
  for (std::size_t j = 0; j < h.block_count(); ++j) {
    const auto solver = eigh(h.block(j));
    Eigen::VectorXd vals = solver.eigenvalues();
    for (Index i = 0; i < vals.size(); ++i) {
      if (vals(i) < -tol.psd) {
        std::ostringstream msg;
        msg << "psd_sqrt: eigenvalue " << vals(i) << " below -" << tol.psd
            << " (input not positive)";
        throw PositivityError(msg.str());
      }
      vals(i) = std::sqrt(std::max(vals(i), 0.0));
    }
    blocks.push_back(solver.eigenvectors() * vals.asDiagonal() *
                     solver.eigenvectors().adjoint());
  }
  return AlgElement(h.spec(), std::move(blocks));
}

AlgElement abs_element(const AlgElement& x) {
  // |x| = (x* x)^{1/2} = V S V^H from the SVD x = U S V^H; the SVD route
  // keeps small singular values accurate.
  std::vector<Matrix> blocks;
  blocks.reserve(x.block_count());
  for (std::size_t j = 0; j < x.block_count(); ++j) {
    Eigen::JacobiSVD<Matrix> svd(x.block(j), Eigen::ComputeFullV);
    blocks.push_back(svd.matrixV() * svd.singularValues().asDiagonal() *
                     svd.matrixV().adjoint());
  }
  return AlgElement(x.spec(), std::move(blocks));
}

AlgElement inverse(const AlgElement& x) {
  std::vector<Matrix> blocks;
  blocks.reserve(x.block_count());
  for (std::size_t j = 0; j < x.block_count(); ++j) {
    Eigen::FullPivLU<Matrix> lu(x.block(j));
    if (!lu.isInvertible()) {
      throw NumericalError("inverse: block is singular to working precision");
    }
    blocks.push_back(lu.inverse());
  }
  return AlgElement(x.spec(), std::move(blocks));
}

bool is_orthogonal_pair(const AlgElement& x, const AlgElement& y, const Tolerances& tol) {
  check_same_algebra(x, y, "is_orthogonal_pair");
  const AlgElement xs = x.adjoint();
  const AlgElement ys = y.adjoint();
  return norm2(x * y) <= tol.zero && norm2(y * x) <= tol.zero &&
         norm2(xs * y) <= tol.zero && norm2(x * ys) <= tol.zero;
}

// ---------------------------------------------------------------------------
// coordinates

Vector vectorize(const AlgElement& x) {
  const AlgebraSpec& spec = x.spec();
  Vector v(spec.vector_dim());
  for (std::size_t j = 0; j < spec.block_count(); ++j) {
    const double scale = std::sqrt(spec.weight(j));
    const Index d = spec.block_dim(j);
    const Index off = spec.block_offset(j);
    for (Index k = 0; k < d; ++k) {
      for (Index l = 0; l < d; ++l) {
        v(off + k * d + l) = scale * x.block(j)(k, l);
      }
    }
  }
  return v;
}

AlgElement unvectorize(const AlgebraSpec& spec, const Vector& v) {
  if (v.size() != spec.vector_dim()) {
    throw StructureError("unvectorize: coordinate vector has wrong length");
  }
  std::vector<Matrix> blocks;
  blocks.reserve(spec.block_count());
  for (std::size_t j = 0; j < spec.block_count(); ++j) {
    const double scale = 1.0 / std::sqrt(spec.weight(j));
    const Index d = spec.block_dim(j);
    const Index off = spec.block_offset(j);
    Matrix b(d, d);
    for (Index k = 0; k < d; ++k) {
      for (Index l = 0; l < d; ++l) {
        b(k, l) = scale * v(off + k * d + l);
      }
    }
    blocks.push_back(std::move(b));
  }
  return AlgElement(spec, std::move(blocks));
}

// ---------------------------------------------------------------------------
// DensityElement

std::optional<std::string> DensityElement::defect(const AlgElement& x, const Tolerances& tol) {
  if (!is_hermitian(x, tol.herm)) return "not Hermitian within tolerance";
  const double mineig = min_eigenvalue(hermitian_part(x));
  if (mineig < -tol.psd) {
    std::ostringstream msg;
    msg << "not positive: minimum eigenvalue " << mineig;
    return msg.str();
  }
  const Complex t = trace(x);
  if (std::abs(t - Complex(1.0, 0.0)) > 10.0 * tol.zero) {
    std::ostringstream msg;
    msg << "trace is " << t.real() << (t.imag() != 0.0 ? " (+imag)" : "") << ", expected 1";
    return msg.str();
  }
  return std::nullopt;
}

DensityElement::DensityElement(AlgElement element, const Tolerances& tol)
    : elem_(std::move(element)) {
  if (auto reason = defect(elem_, tol)) {
    throw PositivityError("invalid density element: " + *reason);
  }
}

DensityElement DensityElement::centre(const AlgebraSpec& spec) {
  return DensityElement(AlgElement::scalar(spec, Complex(1.0 / spec.tau_of_identity(), 0.0)));
}

DensityElement DensityElement::normalized(const AlgElement& psd, const Tolerances& tol) {
  const double t = trace(psd).real();
  if (!(t > tol.zero)) {
    throw PositivityError("normalized: element has (near-)zero trace");
  }
  return DensityElement(psd * Complex(1.0 / t, 0.0), tol);
}

// ---------------------------------------------------------------------------
// sampling

AlgElement random_element(const AlgebraSpec& spec, Rng& rng) {
  std::vector<Matrix> blocks;
  blocks.reserve(spec.block_count());
  for (std::size_t j = 0; j < spec.block_count(); ++j) {
    const Index d = spec.block_dim(j);
    Matrix b(d, d);
    for (Index r = 0; r < d; ++r) {
      for (Index c = 0; c < d; ++c) b(r, c) = rng.complex_gaussian();
    }
    blocks.push_back(std::move(b));
  }
  return AlgElement(spec, std::move(blocks));
}

AlgElement random_hermitian(const AlgebraSpec& spec, Rng& rng) {
  return hermitian_part(random_element(spec, rng));
}

AlgElement random_psd(const AlgebraSpec& spec, Rng& rng,
                      const std::optional<RankProfile>& profile) {
  if (profile && profile->ranks.size() != spec.block_count()) {
    throw StructureError("rank profile length does not match block count");
  }
  std::vector<Matrix> blocks;
  blocks.reserve(spec.block_count());
  for (std::size_t j = 0; j < spec.block_count(); ++j) {
    const Index d = spec.block_dim(j);
    Index r = d;
    if (profile) {
      r = profile->ranks[j];
      if (r < 0 || r > d) throw StructureError("rank profile entry out of range");
    }
    Matrix g(d, r);
    for (Index a = 0; a < d; ++a) {
      for (Index b = 0; b < r; ++b) g(a, b) = rng.complex_gaussian();
    }
    blocks.push_back(g * g.adjoint());
  }
  return AlgElement(spec, std::move(blocks));
}

AlgElement random_unitary(const AlgebraSpec& spec, Rng& rng) {
  std::vector<Matrix> blocks;
  blocks.reserve(spec.block_count());
  for (std::size_t j = 0; j < spec.block_count(); ++j) {
    const Index d = spec.block_dim(j);
    Matrix g(d, d);
    for (Index r = 0; r < d; ++r) {
      for (Index c = 0; c < d; ++c) g(r, c) = rng.complex_gaussian();
    }
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    // Fix phases so the distribution does not depend on the QR convention.
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index c = 0; c < d; ++c) {
      const Complex rc = r(c, c);
      if (std::abs(rc) > 0.0) q.col(c) *= rc / std::abs(rc);
    }
    blocks.push_back(std::move(q));
  }
  return AlgElement(spec, std::move(blocks));
}

AlgElement random_projection(const AlgebraSpec& spec, Rng& rng) {
  const AlgElement h = random_hermitian(spec, rng);
  std::vector<Matrix> blocks;
  blocks.reserve(spec.block_count());
  for (std::size_t j = 0; j < spec.block_count(); ++j) {
    const auto solver = eigh(h.block(j));
    const Index d = spec.block_dim(j);
    // Keep a random number of top eigenvectors (possibly none or all).
    const Index keep = static_cast<Index>(rng.below(static_cast<std::uint64_t>(d) + 1));
    Matrix p = Matrix::Zero(d, d);
    for (Index i = 0; i < keep; ++i) {
      const auto v = solver.eigenvectors().col(d - 1 - i);
      p += v * v.adjoint();
    }
    blocks.push_back(std::move(p));
  }
  return AlgElement(spec, std::move(blocks));
}

DensityElement random_density(const AlgebraSpec& spec, Rng& rng,
                              const std::optional<RankProfile>& profile,
                              const Tolerances& tol) {
  constexpr int kMaxRetries = 16;
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    AlgElement a = random_psd(spec, rng, profile);
    const double t = trace(a).real();
    if (t > tol.zero) {
      return DensityElement(a * Complex(1.0 / t, 0.0), tol);
    }
  }
  throw NumericalError("random_density: degenerate samples after bounded retries");
}

DensityElement random_density(const AlgebraSpec& spec, std::uint64_t seed,
                              const std::optional<RankProfile>& profile,
                              const Tolerances& tol) {
  Rng rng(seed);
  return random_density(spec, rng, profile, tol);
}

}  // namespace bures
