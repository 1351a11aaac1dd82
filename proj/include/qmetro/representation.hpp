#ifndef QMETRO_REPRESENTATION_HPP
#define QMETRO_REPRESENTATION_HPP

#include "qmetro/algebra.hpp"

#include <map>
#include <optional>

namespace qmetro {

/// Occupation-number basis of the N-particle sector of n bosonic modes.
///
/// States are listed in reverse-lexicographic order: (N,0,..,0) first,
/// (0,..,0,N) last. The order is frozen so that state vectors are portable.
class FockBasis {
 public:
  using Occupation = std::vector<int>;

  FockBasis(int modes, int particles);

  int modes() const noexcept { return modes_; }
  int particles() const noexcept { return particles_; }
  Index size() const noexcept { return static_cast<Index>(states_.size()); }
  const std::vector<Occupation>& states() const noexcept { return states_; }
  const Occupation& operator[](Index i) const { return states_[static_cast<std::size_t>(i)]; }

  /// Position of an occupation tuple, or nullopt when it is not in the sector.
  std::optional<Index> index_of(const Occupation& occ) const;

 private:
  int modes_;
  int particles_;
  std::vector<Occupation> states_;
  std::map<Occupation, Index> lookup_;
};

/// binomial(N + n - 1, n - 1); saturates at the Index maximum on overflow.
Index fock_dimension(int modes, int particles);

/// Matrix of a_i^dagger a_j on the sector.
ComplexMatrix ladder_bilinear(const FockBasis& fock, int i, int j);

enum class RepresentationKind { fundamental, symmetric };

/// The basis {X_a} realized as Hermitian operators on a concrete space.
class Representation {
 public:
  Representation(GeneratorBasis basis, RepresentationKind kind, int particles,
                 std::vector<ComplexMatrix> generators, std::optional<FockBasis> fock);

  const GeneratorBasis& basis() const noexcept { return basis_; }
  RepresentationKind kind() const noexcept { return kind_; }
  int n() const noexcept { return basis_.n(); }
  /// Particle number for symmetric representations; 1 for the fundamental.
  int particles() const noexcept { return particles_; }
  Index algebra_dim() const noexcept { return basis_.dim(); }
  Index space_dim() const noexcept { return space_dim_; }
  const ComplexMatrix& operator[](Index a) const { return generators_[static_cast<std::size_t>(a)]; }
  const std::vector<ComplexMatrix>& generators() const noexcept { return generators_; }
  const std::optional<FockBasis>& fock() const noexcept { return fock_; }
  std::string label() const;

  /// sum_a h_a X_a^(R)
  template <typename Derived>
  ComplexMatrix element(const Eigen::MatrixBase<Derived>& h) const {
    ComplexMatrix out = ComplexMatrix::Zero(space_dim_, space_dim_);
    for (Index a = 0; a < algebra_dim(); ++a) out += h(a) * generators_[static_cast<std::size_t>(a)];
    return out;
  }

  /// Real coefficients c minimizing ||M - sum_a c_a X_a^(R)||_F.
  RealVector coefficients(const ComplexMatrix& m) const;

 private:
  GeneratorBasis basis_;
  RepresentationKind kind_;
  int particles_;
  Index space_dim_;
  std::vector<ComplexMatrix> generators_;
  std::optional<FockBasis> fock_;
};

Representation fundamental_representation(const GeneratorBasis& basis);

/// X_a^(R) = sum_ij (X_a)_ij a_i^dagger a_j on the N-particle symmetric sector.
/// Throws dimension_too_large when the sector exceeds `cap`.
Representation symmetric_representation(const GeneratorBasis& basis, int particles,
                                         Index cap = kDefaultDimensionCap);

/// Quadratic Casimir eigenvalue; throws not_irreducible if sum_a X_a^2 is not
/// proportional to the identity within 1e-8 relative deviation.
Real casimir(const Representation& rep);

/// N (N + n) (n - 1) / (2n), the Casimir of the symmetric representation.
Real symmetric_casimir_formula(int n, int particles);

/// exp(i A) for Hermitian A via eigendecomposition A = V diag(lambda) V^dagger.
template <typename Derived>
ComplexMatrix exp_i_hermitian(const Eigen::MatrixBase<Derived>& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a.derived());
  const ComplexVector phases = es.eigenvalues().unaryExpr([](Real l) { return std::polar(1.0, l); }).template cast<Complex>();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

/// exp(i sum_a h_a X_a^(R)).
ComplexMatrix lift_unitary(const Representation& rep, const RealVector& h);

}  // namespace qmetro

#endif  // QMETRO_REPRESENTATION_HPP
