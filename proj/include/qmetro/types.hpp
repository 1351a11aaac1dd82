#ifndef QMETRO_TYPES_HPP
#define QMETRO_TYPES_HPP

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qmetro {

using Real = double;
using Complex = std::complex<Real>;
using Index = Eigen::Index;

using RealMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
using ComplexMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
using ComplexVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

/// Condition number above which a matrix is treated as singular (shared by
/// the channel and metrology layers).
inline constexpr Real kDefaultConditionThreshold = 1e8;

/// Upper bound on the Hilbert-space dimension of a constructed representation.
inline constexpr Index kDefaultDimensionCap = 20000;

enum class ErrorCode {
  invalid_dimension,
  invalid_element,
  dimension_too_large,
  not_irreducible,
  arity,
  invalid_state,
  singular_information,
  not_estimable,
  diophantine_constraint,
  occupation,
  optimization_failed,
  parse,
  invalid_argument,
};

const char* to_string(ErrorCode code);

/// Single exception type for the library. `rank()` is meaningful for the
/// singular_information / not_estimable codes and -1 otherwise.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, Index rank = -1)
      : std::runtime_error(what), code_(code), rank_(rank) {}

  ErrorCode code() const noexcept { return code_; }
  Index rank() const noexcept { return rank_; }

 private:
  ErrorCode code_;
  Index rank_;
};

template <typename Derived>
Real hermiticity_defect(const Eigen::MatrixBase<Derived>& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, Real tol) {
  return m.rows() == m.cols() && hermiticity_defect(m) <= tol;
}

/// Largest |entry| of U^dagger U - I.
template <typename Derived>
Real unitarity_defect(const Eigen::MatrixBase<Derived>& u) {
  const Index n = u.rows();
  return (u.adjoint() * u - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
}

}  // namespace qmetro

#endif  // QMETRO_TYPES_HPP
