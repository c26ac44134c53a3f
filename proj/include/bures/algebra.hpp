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

#ifndef BURES_ALGEBRA_HPP_
#define BURES_ALGEBRA_HPP_

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "bures/errors.hpp"
#include "bures/rng.hpp"
#include "bures/tolerances.hpp"

namespace bures {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

// A finite-dimensional tracial C*-algebra: a direct sum of full matrix
// blocks M_{d_1} (+) ... (+) M_{d_m} together with strictly positive weights
// w_j defining the faithful trace  tau(x) = sum_j w_j * Tr(x_j).
//
// Every finite-dimensional C*-algebra with a faithful trace is of this form,
// so this is a complete concrete model at desk scale.
class AlgebraSpec {
public:
  AlgebraSpec(std::vector<Index> block_dims, std::vector<double> trace_weights);

  // Single full matrix block M_d with weight w.
  static AlgebraSpec matrix_algebra(Index d, double weight = 1.0);

  std::size_t block_count() const { return dims_.size(); }
  Index block_dim(std::size_t j) const { return dims_[j]; }
  double weight(std::size_t j) const { return weights_[j]; }
  const std::vector<Index>& block_dims() const { return dims_; }
  const std::vector<double>& trace_weights() const { return weights_; }

  // Dimension of the algebra as a vector space: sum_j d_j^2.
  Index vector_dim() const { return vector_dim_; }
  // Offset of block j inside the coordinate vector.
  Index block_offset(std::size_t j) const { return offsets_[j]; }

  // tau(1) = sum_j w_j * d_j.
  double tau_of_identity() const { return tau_identity_; }

  bool abelian() const;

  bool operator==(const AlgebraSpec& other) const {
    return dims_ == other.dims_ && weights_ == other.weights_;
  }
  bool operator!=(const AlgebraSpec& other) const { return !(*this == other); }

private:
  std::vector<Index> dims_;
  std::vector<double> weights_;
  std::vector<Index> offsets_;
  Index vector_dim_ = 0;
  double tau_identity_ = 0.0;
};

// A block-diagonal element of the algebra. Arithmetic is blockwise and stays
// in the algebra; values are immutable in practice (operations return new
// elements).
class AlgElement {
public:
  AlgElement(AlgebraSpec spec, std::vector<Matrix> blocks);

  static AlgElement zero(const AlgebraSpec& spec);
  static AlgElement identity(const AlgebraSpec& spec);
  // Matrix unit e^{(j)}_{kl}: zero everywhere except entry (k,l) of block j.
  static AlgElement matrix_unit(const AlgebraSpec& spec, std::size_t j, Index k, Index l);
  // Scalar multiple of the identity.
  static AlgElement scalar(const AlgebraSpec& spec, Complex value);

  const AlgebraSpec& spec() const { return spec_; }
  std::size_t block_count() const { return blocks_.size(); }
  const Matrix& block(std::size_t j) const { return blocks_[j]; }
  Matrix& block(std::size_t j) { return blocks_[j]; }

  bool same_algebra(const AlgElement& other) const { return spec_ == other.spec_; }

  AlgElement operator+(const AlgElement& rhs) const;
  AlgElement operator-(const AlgElement& rhs) const;
  AlgElement operator-() const;
  AlgElement operator*(const AlgElement& rhs) const;  // ring product
  AlgElement operator*(Complex scalar) const;
  friend AlgElement operator*(Complex scalar, const AlgElement& x) { return x * scalar; }

  AlgElement adjoint() const;

private:
  AlgebraSpec spec_;
  std::vector<Matrix> blocks_;
};

// ---- trace functional and norms ----

// tau(x) = sum_j w_j Tr(x_j).
Complex trace(const AlgElement& x);

// <x,y> = tau(y* x): positive-definite sesquilinear form.
Complex tau_inner_product(const AlgElement& x, const AlgElement& y);

// ||x||_{2,tau} = sqrt(tau(x* x)).
double norm2(const AlgElement& x);

// ||x||_{1,tau} = tau(|x|)  (trace norm).
double trace_norm(const AlgElement& x);

// Operator norm (largest singular value over blocks).
double sup_norm(const AlgElement& x);

// Largest entry magnitude; cheap scale estimate for tolerance checks.
double max_abs(const AlgElement& x);

// ---- functional calculus ----

bool is_hermitian(const AlgElement& x, double tol = Tolerances{}.herm);
AlgElement hermitian_part(const AlgElement& x);

// Eigenvalues of a Hermitian element, all blocks pooled, ascending.
std::vector<double> hermitian_eigenvalues(const AlgElement& x);
double min_eigenvalue(const AlgElement& hermitian);

// Apply a real function to the eigenvalues of a Hermitian element.
AlgElement hermitian_function(const AlgElement& x, const std::function<double(double)>& f);

// Positive square root. Requires Hermitian input (within tol.herm) with
// eigenvalues >= -tol.psd; eigenvalues in [-tol.psd, 0) are clipped to 0,
// anything lower raises PositivityError.
AlgElement psd_sqrt(const AlgElement& a, const Tolerances& tol = {});

// |x| = (x* x)^{1/2}, computed blockwise from the SVD.
AlgElement abs_element(const AlgElement& x);

// Blockwise inverse; raises NumericalError when a block is singular to
// working precision.
AlgElement inverse(const AlgElement& x);

// x and y are orthogonal when xy = yx = x*y = xy* = 0 (all within tol.zero
// in the 2-norm).
bool is_orthogonal_pair(const AlgElement& x, const AlgElement& y,
                        const Tolerances& tol = {});

// ---- coordinates in the tau-orthonormal basis ----
//
// The basis is the family of scaled matrix units e^{(j)}_{kl} / sqrt(w_j),
// ordered by block, then row-major within the block. In these coordinates
// the tau-adjoint of a linear map is the conjugate transpose of its matrix.

Vector vectorize(const AlgElement& x);
AlgElement unvectorize(const AlgebraSpec& spec, const Vector& v);

// ---- validated density elements ----

// A positive element of unit trace. Construction validates Hermiticity,
// positivity (within tolerances) and tau(x) = 1.
class DensityElement {
public:
  explicit DensityElement(AlgElement element, const Tolerances& tol = {});

  // The centre zeta = tau(1)^{-1} 1 of the density space.
  static DensityElement centre(const AlgebraSpec& spec);
  // Scale a nonzero PSD element to unit trace.
  static DensityElement normalized(const AlgElement& psd, const Tolerances& tol = {});

  // Empty when `x` is a valid density; otherwise a reason.
  static std::optional<std::string> defect(const AlgElement& x, const Tolerances& tol = {});

  const AlgElement& element() const { return elem_; }
  const AlgebraSpec& spec() const { return elem_.spec(); }

private:
  AlgElement elem_;
};

// ---- sampling ----

struct RankProfile {
  std::vector<Index> ranks;  // one entry per block; 0 forces a zero block
};

AlgElement random_element(const AlgebraSpec& spec, Rng& rng);
AlgElement random_hermitian(const AlgebraSpec& spec, Rng& rng);
// g g* with g blockwise complex Gaussian; optional rank profile truncates g.
AlgElement random_psd(const AlgebraSpec& spec, Rng& rng,
                      const std::optional<RankProfile>& profile = {});
// Haar-like unitary from the QR factorization of a Gaussian matrix.
AlgElement random_unitary(const AlgebraSpec& spec, Rng& rng);
// Random orthogonal projection (spectral projection of a random Hermitian).
AlgElement random_projection(const AlgebraSpec& spec, Rng& rng);

// Normalized g g*; resamples (bounded) when the trace degenerates.
DensityElement random_density(const AlgebraSpec& spec, Rng& rng,
                              const std::optional<RankProfile>& profile = {},
                              const Tolerances& tol = {});
// Spec-level convenience: fixed seed -> identical element across runs.
DensityElement random_density(const AlgebraSpec& spec, std::uint64_t seed,
                              const std::optional<RankProfile>& profile = {},
                              const Tolerances& tol = {});

}  // namespace bures

#endif  // BURES_ALGEBRA_HPP_
