#include "qmetro/algebra.hpp"

#include <cmath>
#include <sstream>

namespace qmetro {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_dimension: return "invalid-dimension";
    case ErrorCode::invalid_element: return "invalid-element";
    case ErrorCode::dimension_too_large: return "dimension-too-large";
    case ErrorCode::not_irreducible: return "not-irreducible";
    case ErrorCode::arity: return "arity";
    case ErrorCode::invalid_state: return "invalid-state";
    case ErrorCode::singular_information: return "singular-information";
    case ErrorCode::not_estimable: return "not-all-parameters-estimable";
    case ErrorCode::diophantine_constraint: return "diophantine-constraint";
    case ErrorCode::occupation: return "occupation";
    case ErrorCode::optimization_failed: return "optimization-failed";
    case ErrorCode::parse: return "parse";
    case ErrorCode::invalid_argument: return "invalid-argument";
  }
  return "unknown";
}

GeneratorBasis::GeneratorBasis(int n) : n_(n) {
  if (n < 2) {
    throw Error(ErrorCode::invalid_dimension,
                "su(n) basis needs n >= 2, got " + std::to_string(n));
  }
  const Complex i(0.0, 1.0);
  generators_.reserve(static_cast<std::size_t>(n * n - 1));

  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      ComplexMatrix x = ComplexMatrix::Zero(n, n);
      x(j, k) = 0.5;
      x(k, j) = 0.5;
      generators_.push_back(std::move(x));
    }
  }
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      ComplexMatrix x = ComplexMatrix::Zero(n, n);
      x(j, k) = -0.5 * i;
      x(k, j) = 0.5 * i;
      generators_.push_back(std::move(x));
    }
  }
  for (int l = 1; l < n; ++l) {
    const Real scale = 1.0 / std::sqrt(2.0 * l * (l + 1));
    ComplexMatrix x = ComplexMatrix::Zero(n, n);
    for (int m = 0; m < l; ++m) x(m, m) = scale;
    x(l, l) = -static_cast<Real>(l) * scale;
    generators_.push_back(std::move(x));
  }
}

GeneratorBasis gellmann_basis(int n) { return GeneratorBasis(n); }

StructureConstants structure_constants(const GeneratorBasis& basis) {
  const Index d = basis.dim();
  StructureConstants f(d);
  const Complex minus_two_i(0.0, -2.0);
  for (Index j = 0; j < d; ++j) {
    for (Index k = 0; k < d; ++k) {
      const ComplexMatrix comm = basis[j] * basis[k] - basis[k] * basis[j];
      for (Index l = 0; l < d; ++l) {
        const Complex v = minus_two_i * (comm * basis[l]).trace();
        f(j, k, l) = v.real();
        f.max_imaginary_residual = std::max(f.max_imaginary_residual, std::abs(v.imag()));
      }
    }
  }
  return f;
}

RealVector expand(const ComplexMatrix& h, const GeneratorBasis& basis, Real tol) {
  const int n = basis.n();
  if (h.rows() != n || h.cols() != n) {
    std::ostringstream msg;
    msg << "expected a " << n << "x" << n << " matrix, got " << h.rows() << "x" << h.cols();
    throw Error(ErrorCode::invalid_element, msg.str());
  }
  if (hermiticity_defect(h) > tol) {
    throw Error(ErrorCode::invalid_element, "matrix is not Hermitian");
  }
  if (std::abs(h.trace()) > tol) {
    throw Error(ErrorCode::invalid_element, "matrix is not traceless");
  }
  RealVector out(basis.dim());
  for (Index a = 0; a < basis.dim(); ++a) {
    // Tr(X_a H) = sum_ij (X_a)_ij H_ji
    out(a) = GeneratorBasis::kInnerProductScale * (basis[a].transpose().cwiseProduct(h)).sum().real();
  }
  return out;
}

RealMatrix killing_gram(const GeneratorBasis& basis) {
  const Index d = basis.dim();
  RealMatrix g(d, d);
  for (Index a = 0; a < d; ++a) {
    for (Index b = 0; b < d; ++b) {
      g(a, b) = GeneratorBasis::kInnerProductScale * (basis[a].adjoint() * basis[b]).trace().real();
    }
  }
  return g;
}

}  // namespace qmetro
