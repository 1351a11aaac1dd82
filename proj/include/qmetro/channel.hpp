#ifndef QMETRO_CHANNEL_HPP
#define QMETRO_CHANNEL_HPP

#include "qmetro/representation.hpp"

namespace qmetro {

enum class ParametrizationKind { exponential, euler_su2, product_of_exponentials };

const char* to_string(ParametrizationKind kind);

/// A chart theta -> U(theta) on SU(n).
///
///   exponential              U = exp(i theta . X), n^2 - 1 parameters
///   euler_su2                U = exp(-i Phi J_z) exp(-i Theta J_y) exp(-i Psi J_z)
///   product_of_exponentials  U = prod_k exp(-i theta_k A_k . X), one parameter per axis
///
/// euler_su2 is the product form with axes (z, y, z) on su(2).
class Parametrization {
 public:
  static Parametrization exponential(int n);
  static Parametrization euler_su2();
  static Parametrization product_of_exponentials(int n, std::vector<RealVector> axes);

  ParametrizationKind kind() const noexcept { return kind_; }
  int n() const noexcept { return basis_.n(); }
  const GeneratorBasis& basis() const noexcept { return basis_; }
  /// Factor axes; empty for the exponential kind.
  const std::vector<RealVector>& axes() const noexcept { return axes_; }
  Index parameter_count() const noexcept;

  /// Throws arity if theta has the wrong length.
  void check_arity(const RealVector& theta) const;

 private:
  Parametrization(ParametrizationKind kind, GeneratorBasis basis, std::vector<RealVector> axes)
      : kind_(kind), basis_(std::move(basis)), axes_(std::move(axes)) {}

  ParametrizationKind kind_;
  GeneratorBasis basis_;
  std::vector<RealVector> axes_;
};

/// Row j holds the coefficients h_j of H_j = i U^dagger dU/dtheta_j = sum_a h_ja X_a.
struct GeneratorMatrix {
  RealMatrix hmat;
  RealVector theta;
  /// sigma_max / sigma_min of hmat; +inf when sigma_min is exactly zero.
  Real condition_number = 0.0;
};

/// U(theta) in the fundamental representation.
ComplexMatrix unitary_at(const Parametrization& p, const RealVector& theta);

/// U(theta) lifted into `rep` (same group element, rep's generators).
ComplexMatrix unitary_at(const Representation& rep, const Parametrization& p, const RealVector& theta);

/// Generator coefficients from the eigendecomposition of the exponent: with
/// U = V e^{i Lambda} V^dagger, the Wilcox integral has entries
/// X_ab phi(i (lambda_b - lambda_a)) in the eigenbasis.
GeneratorMatrix generators_closed_form(const Parametrization& p, const RealVector& theta);

/// Same contract as generators_closed_form, evaluated by Gauss-Legendre
/// quadrature of the Wilcox integral with Pade matrix exponentials.
GeneratorMatrix generators_quadrature(const Parametrization& p, const RealVector& theta, int order);

/// g = hmat hmat^T.
RealMatrix metric_from(const GeneratorMatrix& gm);
RealMatrix metric_at(const Parametrization& p, const RealVector& theta);

struct SingularityReport {
  bool singular = false;
  Real condition_number = 0.0;
};

SingularityReport singularity_report(const Parametrization& p, const RealVector& theta,
                                     Real cond_threshold = kDefaultConditionThreshold);

/// Ratio of extreme singular values; +inf for a rank-deficient matrix.
Real condition_number(const RealMatrix& m);

/// (e^z - 1)/z, with a 6-term Taylor series for |z| < 1e-4.
Complex phi(Complex z);

/// Nodes and weights of the `order`-point Gauss-Legendre rule on [0, 1].
std::pair<RealVector, RealVector> gauss_legendre(int order);

/// Principal-branch exponential coordinates: theta with exp(i theta . X) = U.
/// Throws invalid_element when the principal logarithm is not traceless
/// (U has an eigenvalue at the branch cut).
RealVector exponential_coordinates(const ComplexMatrix& u, const GeneratorBasis& basis);

}  // namespace qmetro

#endif  // QMETRO_CHANNEL_HPP
