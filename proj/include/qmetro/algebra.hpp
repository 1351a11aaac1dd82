#ifndef QMETRO_ALGEBRA_HPP
#define QMETRO_ALGEBRA_HPP

#include "qmetro/types.hpp"

namespace qmetro {

/// Orthonormal basis of su(n) in the fundamental representation.
///
/// Inner product is <X, Y> = 2 Tr(X^dagger Y), so the su(2) generators are
/// exactly the spin-1/2 operators sigma/2. Generators are the generalized
/// Gell-Mann matrices divided by two, ordered as
///   1. symmetric    (E_jk + E_kj)/2        for j < k, row-major,
///   2. antisymmetric (-i E_jk + i E_kj)/2  for j < k, row-major,
///   3. diagonal     diag(1,..,1,-l,0,..)/sqrt(2l(l+1)), l = 1..n-1.
/// This ordering is frozen: coefficient vectors are order-dependent.
class GeneratorBasis {
 public:
  static constexpr Real kInnerProductScale = 2.0;

  explicit GeneratorBasis(int n);

  int n() const noexcept { return n_; }
  /// Number of generators, n^2 - 1.
  Index dim() const noexcept { return static_cast<Index>(generators_.size()); }

  const ComplexMatrix& operator[](Index a) const { return generators_[static_cast<std::size_t>(a)]; }
  const std::vector<ComplexMatrix>& generators() const noexcept { return generators_; }

  /// sum_a h_a X_a
  template <typename Derived>
  ComplexMatrix combine(const Eigen::MatrixBase<Derived>& h) const {
    ComplexMatrix out = ComplexMatrix::Zero(n_, n_);
    for (Index a = 0; a < dim(); ++a) out += h(a) * generators_[static_cast<std::size_t>(a)];
    return out;
  }

 private:
  int n_;
  std::vector<ComplexMatrix> generators_;
};

/// Builds the generalized Gell-Mann basis; throws invalid_dimension for n < 2.
GeneratorBasis gellmann_basis(int n);

/// Real structure constants of [X_j, X_k] = i sum_l f_jkl X_l.
class StructureConstants {
 public:
  StructureConstants() = default;
  explicit StructureConstants(Index d) : d_(d), f_(static_cast<std::size_t>(d * d * d), 0.0) {}

  Index dim() const noexcept { return d_; }
  Real operator()(Index j, Index k, Index l) const { return f_[offset(j, k, l)]; }
  Real& operator()(Index j, Index k, Index l) { return f_[offset(j, k, l)]; }

  /// Largest imaginary part dropped while extracting the constants.
  Real max_imaginary_residual = 0.0;

 private:
  std::size_t offset(Index j, Index k, Index l) const {
    return static_cast<std::size_t>((j * d_ + k) * d_ + l);
  }
  Index d_ = 0;
  std::vector<Real> f_;
};

/// f_jkl = -2i Tr([X_j, X_k] X_l).
StructureConstants structure_constants(const GeneratorBasis& basis);

/// Coefficients h_a = 2 Tr(X_a H) of a Hermitian traceless matrix.
/// Throws invalid_element if H is not n x n, Hermitian and traceless to 1e-10.
RealVector expand(const ComplexMatrix& h, const GeneratorBasis& basis, Real tol = 1e-10);

/// Gram matrix of the Killing-style product 2 Re Tr(X_a^dagger X_b).
RealMatrix killing_gram(const GeneratorBasis& basis);

}  // namespace qmetro

#endif  // QMETRO_ALGEBRA_HPP
