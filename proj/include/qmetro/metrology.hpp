#ifndef QMETRO_METROLOGY_HPP
#define QMETRO_METROLOGY_HPP

#include "qmetro/channel.hpp"

#include <memory>
#include <optional>
#include <variant>

namespace qmetro {

/// Pure or mixed probe on a shared, immutable representation.
class ProbeState {
 public:
  using RepPtr = std::shared_ptr<const Representation>;

  /// Throws invalid_state unless ||psi|| = 1 within 1e-12 and sizes agree.
  static ProbeState pure(RepPtr rep, ComplexVector psi);
  /// Rescales psi to unit norm; throws invalid_state for a zero vector.
  static ProbeState normalized(RepPtr rep, ComplexVector psi);
  /// Throws invalid_state unless rho is Hermitian, has unit trace and
  /// eigenvalues >= -1e-10.
  static ProbeState mixed(RepPtr rep, ComplexMatrix rho);

  bool is_pure() const noexcept { return std::holds_alternative<ComplexVector>(form_); }
  const ComplexVector& vector() const { return std::get<ComplexVector>(form_); }
  const ComplexMatrix& density() const { return std::get<ComplexMatrix>(form_); }
  /// |psi><psi| for pure states, rho otherwise.
  ComplexMatrix density_matrix() const;

  const Representation& rep() const noexcept { return *rep_; }
  const RepPtr& rep_ptr() const noexcept { return rep_; }

  /// V psi or V rho V^dagger for a unitary V on the same space.
  ProbeState transformed(const ComplexMatrix& v) const;

 private:
  ProbeState(RepPtr rep, std::variant<ComplexVector, ComplexMatrix> form)
      : rep_(std::move(rep)), form_(std::move(form)) {}

  RepPtr rep_;
  std::variant<ComplexVector, ComplexMatrix> form_;
};

/// Generator means <X_a> and the symmetric covariance matrix C(X).
struct Moments {
  RealVector mean;
  RealMatrix covariance;
};

/// [C]_jk = 1/2 <X_j X_k + X_k X_j> - <X_j><X_k>.
Moments covariance_pure(const ProbeState& state);

/// Mixed-state kernel: with rho = sum_a lambda_a |a><a|,
///   [C]_jk = 1/2 sum_{a,b} (lambda_a - lambda_b)^2 / (lambda_a + lambda_b) Re(<a|X_j|b><b|X_k|a>),
/// dropping pairs with lambda_a + lambda_b <= eps. Reduces to covariance_pure
/// on rank-one states.
Moments covariance_mixed(const ProbeState& state, Real eps = 1e-12);

/// Dispatches on the state's form.
Moments covariance(const ProbeState& state);

/// Q = 4 hmat C hmat^T.
RealMatrix qfim(const GeneratorMatrix& gm, const RealMatrix& cov);

/// Eigenvalue diagnostics of a symmetric PSD matrix.
struct SpectrumInfo {
  Real condition_number = 0.0;
  Index rank = 0;
  Real min_eigenvalue = 0.0;
  bool singular(Real threshold) const { return !(condition_number <= threshold); }
};

SpectrumInfo spectrum_info(const RealMatrix& m, Real threshold = kDefaultConditionThreshold);

/// Tr[W Q^{-1}] by a symmetric solve. Throws invalid_element if W is not
/// symmetric positive definite and singular_information (with the numerical
/// rank of Q) if cond(Q) exceeds the threshold.
Real weighted_bound(const RealMatrix& weight, const RealMatrix& q,
                    Real threshold = kDefaultConditionThreshold);

/// 1/4 Tr[C^{-1}]; throws not_estimable (with rank) for a singular covariance.
Real intrinsic_bound(const RealMatrix& cov, Real threshold = kDefaultConditionThreshold);

/// Tr[Sigma X_a^2] / D: the Casimir value without the irreducibility check.
Real casimir_trace(const Representation& rep);

/// d^2 / (4 C2), the smallest intrinsic bound any state can reach.
Real intrinsic_floor(const Representation& rep);

/// True iff max_{j,k} |<[H_j, H_k]>| < tol with H_j = sum_a hmat(j,a) X_a^(R).
bool saturation_check(const ProbeState& state, const GeneratorMatrix& gm, Real tol = 1e-10);

struct UnpolarizedReport {
  bool first_order = false;
  bool second_order = false;
  /// max |C - (C2/d) I|
  Real deviation = 0.0;
};

UnpolarizedReport unpolarized_report(const ProbeState& state);

struct BoundFlags {
  bool covariance_singular = false;
  bool qfim_singular = false;
  bool saturable = false;
  /// 0, 1 or 2: highest order of unpolarization reached.
  int unpolarized_order = 0;
  /// Set when bounds were computed with pseudo-inverses.
  bool pseudo_inverse = false;
};

struct BoundReport {
  RealVector mean;
  RealMatrix covariance;
  std::optional<RealMatrix> qfim;
  std::optional<RealMatrix> metric;
  std::optional<Real> intrinsic_bound;
  std::optional<Real> weighted_bound;
  BoundFlags flags;
  Index covariance_rank = 0;
  std::optional<Index> qfim_rank;
};

enum class WeightKind { intrinsic, identity, custom };

struct BoundRequest {
  /// Without a chart only the intrinsic quantities are reported.
  std::optional<Parametrization> chart;
  RealVector theta;
  WeightKind weight = WeightKind::intrinsic;
  RealMatrix custom_weight;
  /// Replace inverses by pseudo-inverses for singular matrices.
  bool pseudo_inverse = false;
  Real threshold = kDefaultConditionThreshold;
};

/// Assembles a full report. Singular information is recorded in the flags
/// rather than thrown; arity and weight-shape errors still throw.
BoundReport bound_report(const ProbeState& state, const BoundRequest& request);

}  // namespace qmetro

#endif  // QMETRO_METROLOGY_HPP
