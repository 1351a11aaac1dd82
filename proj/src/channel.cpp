#include "qmetro/channel.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <limits>
#include <sstream>

namespace qmetro {

namespace {

RealVector unit_axis(Index d, Index a) {
  RealVector e = RealVector::Zero(d);
  e(a) = 1.0;
  return e;
}

// 2 Re Tr(X_a M) for every generator, without Hermiticity checks.
RealVector raw_coefficients(const ComplexMatrix& m, const GeneratorBasis& basis) {
  RealVector out(basis.dim());
  for (Index a = 0; a < basis.dim(); ++a) {
    out(a) = GeneratorBasis::kInnerProductScale * (basis[a].transpose().cwiseProduct(m)).sum().real();
  }
  return out;
}

// Factors F_k = exp(-i theta_k A_k . X) of a product-form chart, in order.
std::vector<ComplexMatrix> product_factors(const Parametrization& p, const RealVector& theta,
                                           const Representation* rep) {
  std::vector<ComplexMatrix> factors;
  factors.reserve(p.axes().size());
  for (std::size_t k = 0; k < p.axes().size(); ++k) {
    const RealVector h = -theta(static_cast<Index>(k)) * p.axes()[k];
    factors.push_back(rep ? lift_unitary(*rep, h) : exp_i_hermitian(p.basis().combine(h)));
  }
  return factors;
}

GeneratorMatrix finish(RealMatrix hmat, const RealVector& theta) {
  GeneratorMatrix gm;
  gm.condition_number = condition_number(hmat);
  gm.hmat = std::move(hmat);
  gm.theta = theta;
  return gm;
}

}  // namespace

const char* to_string(ParametrizationKind kind) {
  switch (kind) {
    case ParametrizationKind::exponential: return "exponential";
    case ParametrizationKind::euler_su2: return "euler_su2";
    case ParametrizationKind::product_of_exponentials: return "product_of_exponentials";
  }
  return "unknown";
}

Parametrization Parametrization::exponential(int n) {
  return Parametrization(ParametrizationKind::exponential, GeneratorBasis(n), {});
}

Parametrization Parametrization::euler_su2() {
  // su(2) basis order is (J_x, J_y, J_z).
  return Parametrization(ParametrizationKind::euler_su2, GeneratorBasis(2),
                         {unit_axis(3, 2), unit_axis(3, 1), unit_axis(3, 2)});
}

Parametrization Parametrization::product_of_exponentials(int n, std::vector<RealVector> axes) {
  GeneratorBasis basis(n);
  if (axes.empty()) throw Error(ErrorCode::arity, "product_of_exponentials needs at least one factor");
  for (const auto& axis : axes) {
    if (axis.size() != basis.dim()) {
      std::ostringstream msg;
      msg << "factor axis has length " << axis.size() << ", su(" << n << ") needs " << basis.dim();
      throw Error(ErrorCode::arity, msg.str());
    }
  }
  return Parametrization(ParametrizationKind::product_of_exponentials, std::move(basis), std::move(axes));
}

Index Parametrization::parameter_count() const noexcept {
  return kind_ == ParametrizationKind::exponential ? basis_.dim() : static_cast<Index>(axes_.size());
}

void Parametrization::check_arity(const RealVector& theta) const {
  if (theta.size() != parameter_count()) {
    std::ostringstream msg;
    msg << to_string(kind_) << " chart takes " << parameter_count() << " parameters, got "
        << theta.size();
    throw Error(ErrorCode::arity, msg.str());
  }
}

ComplexMatrix unitary_at(const Parametrization& p, const RealVector& theta) {
  p.check_arity(theta);
  if (p.kind() == ParametrizationKind::exponential) return exp_i_hermitian(p.basis().combine(theta));
  ComplexMatrix u = ComplexMatrix::Identity(p.n(), p.n());
  for (const auto& f : product_factors(p, theta, nullptr)) u = u * f;
  return u;
}

ComplexMatrix unitary_at(const Representation& rep, const Parametrization& p, const RealVector& theta) {
  p.check_arity(theta);
  if (rep.n() != p.n()) throw Error(ErrorCode::arity, "representation and chart act on different su(n)");
  if (p.kind() == ParametrizationKind::exponential) return lift_unitary(rep, theta);
  ComplexMatrix u = ComplexMatrix::Identity(rep.space_dim(), rep.space_dim());
  for (const auto& f : product_factors(p, theta, &rep)) u = u * f;
  return u;
}

Complex phi(Complex z) {
  if (std::abs(z) < 1e-4) {
    return 1.0 + z * (1.0 / 2.0 + z * (1.0 / 6.0 + z * (1.0 / 24.0 + z * (1.0 / 120.0 + z / 720.0))));
  }
  if (z.real() == 0.0) {
    // (e^{iy} - 1)/(iy) = e^{iy/2} sin(y/2)/(y/2)
    const Real half = 0.5 * z.imag();
    return std::polar(std::sin(half) / half, half);
  }
  return (std::exp(z) - 1.0) / z;
}

GeneratorMatrix generators_closed_form(const Parametrization& p, const RealVector& theta) {
  p.check_arity(theta);
  const GeneratorBasis& basis = p.basis();
  const Index d = basis.dim();

  if (p.kind() == ParametrizationKind::exponential) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(basis.combine(theta));
    const ComplexMatrix& v = es.eigenvectors();
    const RealVector& lambda = es.eigenvalues();
    const Index n = basis.n();
    ComplexMatrix weights(n, n);
    for (Index a = 0; a < n; ++a) {
      for (Index b = 0; b < n; ++b) weights(a, b) = phi(Complex(0.0, lambda(b) - lambda(a)));
    }
    // H_j = -int_0^1 U^{-beta} X_j U^{beta} d beta, since dOmega/dtheta = I.
    RealMatrix hmat(d, d);
    for (Index j = 0; j < d; ++j) {
      const ComplexMatrix rotated = v.adjoint() * basis[j] * v;
      const ComplexMatrix integral = v * rotated.cwiseProduct(weights) * v.adjoint();
      hmat.row(j) = -raw_coefficients(integral, basis).transpose();
    }
    return finish(std::move(hmat), theta);
  }

  // Product form: H_k = P^dagger (A_k . X) P with P the factors after k.
  const auto factors = product_factors(p, theta, nullptr);
  const auto m = static_cast<Index>(factors.size());
  RealMatrix hmat(m, d);
  ComplexMatrix downstream = ComplexMatrix::Identity(basis.n(), basis.n());
  for (Index k = m - 1; k >= 0; --k) {
    const ComplexMatrix hk = downstream.adjoint() * basis.combine(p.axes()[static_cast<std::size_t>(k)]) * downstream;
    hmat.row(k) = raw_coefficients(hk, basis).transpose();
    downstream = factors[static_cast<std::size_t>(k)] * downstream;
  }
  return finish(std::move(hmat), theta);
}

std::pair<RealVector, RealVector> gauss_legendre(int order) {
  if (order < 1) throw Error(ErrorCode::invalid_dimension, "quadrature order must be positive");
  // Golub-Welsch: nodes are eigenvalues of the Jacobi matrix of Legendre polynomials.
  RealMatrix jacobi = RealMatrix::Zero(order, order);
  for (int k = 1; k < order; ++k) {
    const Real b = k / std::sqrt(4.0 * k * k - 1.0);
    jacobi(k, k - 1) = b;
    jacobi(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(jacobi);
  RealVector nodes = (es.eigenvalues().array() + 1.0) * 0.5;
  RealVector weights = es.eigenvectors().row(0).transpose().array().square();
  return {std::move(nodes), std::move(weights)};
}

GeneratorMatrix generators_quadrature(const Parametrization& p, const RealVector& theta, int order) {
  p.check_arity(theta);
  if (order < 2) throw Error(ErrorCode::invalid_dimension, "quadrature order must be at least 2");
  const GeneratorBasis& basis = p.basis();
  const Index d = basis.dim();
  const Index n = basis.n();
  const auto [nodes, weights] = gauss_legendre(order);
  const Complex i(0.0, 1.0);

  if (p.kind() == ParametrizationKind::exponential) {
    const ComplexMatrix a = i * basis.combine(theta);
    std::vector<ComplexMatrix> forward, backward;
    for (Index q = 0; q < nodes.size(); ++q) {
      const ComplexMatrix scaled = nodes(q) * a;
      forward.push_back(scaled.exp());
      backward.push_back((-scaled).exp());
    }
    RealMatrix hmat(d, d);
    for (Index j = 0; j < d; ++j) {
      ComplexMatrix integral = ComplexMatrix::Zero(n, n);
      for (Index q = 0; q < nodes.size(); ++q) {
        integral += weights(q) * backward[static_cast<std::size_t>(q)] * basis[j] * forward[static_cast<std::size_t>(q)];
      }
      hmat.row(j) = -raw_coefficients(integral, basis).transpose();
    }
    return finish(std::move(hmat), theta);
  }

  // Product form: Wilcox on each factor, then H_k = i U^dagger dU/dtheta_k.
  const auto m = static_cast<Index>(p.axes().size());
  std::vector<ComplexMatrix> factors;
  for (Index k = 0; k < m; ++k) {
    const ComplexMatrix b = -i * theta(k) * basis.combine(p.axes()[static_cast<std::size_t>(k)]);
    factors.push_back(b.exp());
  }
  ComplexMatrix u = ComplexMatrix::Identity(n, n);
  for (const auto& f : factors) u = u * f;

  RealMatrix hmat(m, d);
  for (Index k = 0; k < m; ++k) {
    const ComplexMatrix gen = basis.combine(p.axes()[static_cast<std::size_t>(k)]);
    const ComplexMatrix b = -i * theta(k) * gen;
    const ComplexMatrix db = -i * gen;
    ComplexMatrix dfactor = ComplexMatrix::Zero(n, n);
    for (Index q = 0; q < nodes.size(); ++q) {
      const ComplexMatrix left = ((1.0 - nodes(q)) * b).exp();
      const ComplexMatrix right = (nodes(q) * b).exp();
      dfactor += weights(q) * left * db * right;
    }
    ComplexMatrix du = ComplexMatrix::Identity(n, n);
    for (Index l = 0; l < m; ++l) du = du * (l == k ? dfactor : factors[static_cast<std::size_t>(l)]);
    hmat.row(k) = raw_coefficients(i * u.adjoint() * du, basis).transpose();
  }
  return finish(std::move(hmat), theta);
}

RealMatrix metric_from(const GeneratorMatrix& gm) { return gm.hmat * gm.hmat.transpose(); }

RealMatrix metric_at(const Parametrization& p, const RealVector& theta) {
  return metric_from(generators_closed_form(p, theta));
}

Real condition_number(const RealMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<RealMatrix> svd(m);
  const RealVector& s = svd.singularValues();
  const Real smin = s(s.size() - 1);
  if (smin == 0.0) return std::numeric_limits<Real>::infinity();
  return s(0) / smin;
}

SingularityReport singularity_report(const Parametrization& p, const RealVector& theta,
                                     Real cond_threshold) {
  if (!(cond_threshold > 1.0)) throw Error(ErrorCode::invalid_element, "condition threshold must exceed 1");
  const GeneratorMatrix gm = generators_closed_form(p, theta);
  return {gm.condition_number > cond_threshold, gm.condition_number};
}

RealVector exponential_coordinates(const ComplexMatrix& u, const GeneratorBasis& basis) {
  Eigen::ComplexSchur<ComplexMatrix> schur(u);
  const ComplexMatrix& t = schur.matrixT();
  const ComplexMatrix& q = schur.matrixU();
  RealVector angles(t.rows());
  for (Index k = 0; k < t.rows(); ++k) angles(k) = std::arg(t(k, k));
  if (std::abs(angles.sum()) > 1e-8) {
    throw Error(ErrorCode::invalid_element, "principal logarithm is not traceless");
  }
  ComplexMatrix log_u = q * angles.cast<Complex>().asDiagonal() * q.adjoint();
  log_u = 0.5 * (log_u + log_u.adjoint()).eval();
  return expand(log_u, basis, 1e-8);
}

}  // namespace qmetro
