#include "qmetro/metrology.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace qmetro {

namespace {

void check_space(const Representation& rep, Index size) {
  if (size != rep.space_dim()) {
    std::ostringstream msg;
    msg << "state has dimension " << size << " but " << rep.label() << " acts on " << rep.space_dim();
    throw Error(ErrorCode::invalid_state, msg.str());
  }
}

// Columns X_a psi.
ComplexMatrix applied_generators(const ProbeState& state) {
  const Representation& rep = state.rep();
  ComplexMatrix out(rep.space_dim(), rep.algebra_dim());
  for (Index a = 0; a < rep.algebra_dim(); ++a) out.col(a).noalias() = rep[a] * state.vector();
  return out;
}

// <X_a X_b> for pure or mixed states.
ComplexMatrix second_moments(const ProbeState& state) {
  const Representation& rep = state.rep();
  if (state.is_pure()) {
    const ComplexMatrix v = applied_generators(state);
    return v.adjoint() * v;
  }
  const Index d = rep.algebra_dim();
  ComplexMatrix out(d, d);
  std::vector<ComplexMatrix> rho_x;
  for (Index a = 0; a < d; ++a) rho_x.push_back(state.density() * rep[a]);
  for (Index a = 0; a < d; ++a) {
    for (Index b = 0; b < d; ++b) {
      // Tr(rho X_a X_b) = sum_ij (rho X_a)_ij (X_b)_ji
      out(a, b) = rho_x[static_cast<std::size_t>(a)].transpose().cwiseProduct(rep[b]).sum();
    }
  }
  return out;
}

RealMatrix pseudo_inverse(const RealMatrix& m, Real threshold) {
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(m);
  const RealVector& ev = es.eigenvalues();
  const Real cutoff = ev.cwiseAbs().maxCoeff() / threshold;
  RealVector inv = ev.unaryExpr([cutoff](Real l) { return std::abs(l) > cutoff ? 1.0 / l : 0.0; });
  return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace

ProbeState ProbeState::pure(RepPtr rep, ComplexVector psi) {
  check_space(*rep, psi.size());
  const Real norm = psi.norm();
  if (std::abs(norm - 1.0) > 1e-12) {
    throw Error(ErrorCode::invalid_state, "pure state is not normalized (norm " + std::to_string(norm) + ")");
  }
  return ProbeState(std::move(rep), std::move(psi));
}

ProbeState ProbeState::normalized(RepPtr rep, ComplexVector psi) {
  const Real norm = psi.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw Error(ErrorCode::invalid_state, "cannot normalize a zero or non-finite vector");
  }
  psi /= norm;
  return pure(std::move(rep), std::move(psi));
}

ProbeState ProbeState::mixed(RepPtr rep, ComplexMatrix rho) {
  check_space(*rep, rho.rows());
  if (rho.rows() != rho.cols()) throw Error(ErrorCode::invalid_state, "density matrix is not square");
  if (hermiticity_defect(rho) > 1e-12) throw Error(ErrorCode::invalid_state, "density matrix is not Hermitian");
  if (std::abs(rho.trace() - Complex(1.0)) > 1e-12) {
    throw Error(ErrorCode::invalid_state, "density matrix does not have unit trace");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10) {
    throw Error(ErrorCode::invalid_state, "density matrix has a negative eigenvalue");
  }
  return ProbeState(std::move(rep), std::move(rho));
}

ComplexMatrix ProbeState::density_matrix() const {
  if (is_pure()) return vector() * vector().adjoint();
  return density();
}

ProbeState ProbeState::transformed(const ComplexMatrix& v) const {
  if (is_pure()) return ProbeState(rep_, ComplexVector(v * vector()));
  return ProbeState(rep_, ComplexMatrix(v * density() * v.adjoint()));
}

Moments covariance_pure(const ProbeState& state) {
  if (!state.is_pure()) throw Error(ErrorCode::invalid_state, "covariance_pure needs a pure state");
  const ComplexMatrix v = applied_generators(state);
  Moments m;
  m.mean = (state.vector().adjoint() * v).transpose().real();
  const RealMatrix second = (v.adjoint() * v).real();
  m.covariance = second - m.mean * m.mean.transpose();
  m.covariance = 0.5 * (m.covariance + m.covariance.transpose()).eval();
  return m;
}

Moments covariance_mixed(const ProbeState& state, Real eps) {
  const Representation& rep = state.rep();
  const ComplexMatrix rho = state.density_matrix();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho);
  if (es.eigenvalues().minCoeff() < -1e-10) {
    throw Error(ErrorCode::invalid_state, "density matrix has a negative eigenvalue");
  }
  const RealVector& lambda = es.eigenvalues();
  const ComplexMatrix& u = es.eigenvectors();
  const Index dim = rep.space_dim();
  const Index d = rep.algebra_dim();

  RealMatrix weight(dim, dim);
  for (Index a = 0; a < dim; ++a) {
    for (Index b = 0; b < dim; ++b) {
      const Real sum = lambda(a) + lambda(b);
      const Real diff = lambda(a) - lambda(b);
      weight(a, b) = sum > eps ? std::sqrt(diff * diff / sum) : 0.0;
    }
  }
  // Column a holds vec(sqrt(w) o U^dagger X_a U); C = 1/2 Re(Z^dagger Z).
  ComplexMatrix z(dim * dim, d);
  Moments m;
  m.mean.resize(d);
  for (Index a = 0; a < d; ++a) {
    const ComplexMatrix rotated = u.adjoint() * rep[a] * u;
    const ComplexMatrix weighted = rotated.cwiseProduct(weight.cast<Complex>());
    z.col(a) = Eigen::Map<const ComplexVector>(weighted.data(), dim * dim);
    m.mean(a) = (rho.transpose().cwiseProduct(rep[a])).sum().real();
  }
  m.covariance = 0.5 * (z.adjoint() * z).real();
  m.covariance = 0.5 * (m.covariance + m.covariance.transpose()).eval();
  return m;
}

Moments covariance(const ProbeState& state) {
  return state.is_pure() ? covariance_pure(state) : covariance_mixed(state);
}

RealMatrix qfim(const GeneratorMatrix& gm, const RealMatrix& cov) {
  if (gm.hmat.cols() != cov.rows() || cov.rows() != cov.cols()) {
    throw Error(ErrorCode::arity, "generator matrix and covariance dimensions disagree");
  }
  RealMatrix q = 4.0 * gm.hmat * cov * gm.hmat.transpose();
  return 0.5 * (q + q.transpose());
}

SpectrumInfo spectrum_info(const RealMatrix& m, Real threshold) {
  SpectrumInfo info;
  if (m.size() == 0) return info;
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(m, Eigen::EigenvaluesOnly);
  const RealVector& ev = es.eigenvalues();
  const Real top = ev.cwiseAbs().maxCoeff();
  info.min_eigenvalue = ev(0);
  info.condition_number = ev(0) > 0.0 ? ev(ev.size() - 1) / ev(0) : std::numeric_limits<Real>::infinity();
  info.rank = (ev.array() > top / threshold).count();
  return info;
}

Real weighted_bound(const RealMatrix& weight, const RealMatrix& q, Real threshold) {
  if (weight.rows() != q.rows() || weight.cols() != q.cols() || q.rows() != q.cols()) {
    throw Error(ErrorCode::arity, "weight matrix and QFIM dimensions disagree");
  }
  const Real scale = std::max(weight.cwiseAbs().maxCoeff(), 1.0);
  if ((weight - weight.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw Error(ErrorCode::invalid_element, "weight matrix is not symmetric");
  }
  if (weight.llt().info() != Eigen::Success) {
    throw Error(ErrorCode::invalid_element, "weight matrix is not positive definite");
  }
  const SpectrumInfo info = spectrum_info(q, threshold);
  if (info.singular(threshold)) {
    std::ostringstream msg;
    msg << "QFIM is singular (rank " << info.rank << " of " << q.rows() << ")";
    throw Error(ErrorCode::singular_information, msg.str(), info.rank);
  }
  return q.ldlt().solve(weight).trace();
}

Real intrinsic_bound(const RealMatrix& cov, Real threshold) {
  const SpectrumInfo info = spectrum_info(cov, threshold);
  if (info.singular(threshold)) {
    std::ostringstream msg;
    msg << "generator covariance is singular (rank " << info.rank << " of " << cov.rows()
        << "): not all parameters are estimable";
    throw Error(ErrorCode::not_estimable, msg.str(), info.rank);
  }
  const Index d = cov.rows();
  return 0.25 * cov.ldlt().solve(RealMatrix::Identity(d, d)).trace();
}

Real casimir_trace(const Representation& rep) {
  Real total = 0.0;
  for (const auto& x : rep.generators()) total += x.squaredNorm();
  return total / static_cast<Real>(rep.space_dim());
}

Real intrinsic_floor(const Representation& rep) {
  const auto d = static_cast<Real>(rep.algebra_dim());
  return d * d / (4.0 * casimir_trace(rep));
}

bool saturation_check(const ProbeState& state, const GeneratorMatrix& gm, Real tol) {
  if (gm.hmat.cols() != state.rep().algebra_dim()) {
    throw Error(ErrorCode::arity, "generator matrix does not match the state's algebra");
  }
  // <[X_a, X_b]> = 2i Im <X_a X_b>; then <[H_j, H_k]> = h_j^T <[X, X]> h_k.
  const RealMatrix comm = 2.0 * second_moments(state).imag();
  const RealMatrix hk = gm.hmat * comm * gm.hmat.transpose();
  return hk.cwiseAbs().maxCoeff() < tol;
}

UnpolarizedReport unpolarized_report(const ProbeState& state) {
  const Moments m = covariance(state);
  const Index d = state.rep().algebra_dim();
  const Real target = casimir_trace(state.rep()) / static_cast<Real>(d);
  UnpolarizedReport r;
  r.first_order = m.mean.norm() < 1e-10;
  r.deviation = (m.covariance - target * RealMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
  r.second_order = r.first_order && r.deviation < 1e-8;
  return r;
}

BoundReport bound_report(const ProbeState& state, const BoundRequest& request) {
  const Representation& rep = state.rep();
  const Real threshold = request.threshold;
  const Moments m = covariance(state);

  BoundReport report;
  report.mean = m.mean;
  report.covariance = m.covariance;
  report.flags.pseudo_inverse = request.pseudo_inverse;

  const SpectrumInfo cov_info = spectrum_info(m.covariance, threshold);
  report.covariance_rank = cov_info.rank;
  report.flags.covariance_singular = cov_info.singular(threshold);
  if (!report.flags.covariance_singular) {
    report.intrinsic_bound = intrinsic_bound(m.covariance, threshold);
  } else if (request.pseudo_inverse) {
    report.intrinsic_bound = 0.25 * pseudo_inverse(m.covariance, threshold).trace();
  }

  const UnpolarizedReport unpol = unpolarized_report(state);
  report.flags.unpolarized_order = unpol.second_order ? 2 : (unpol.first_order ? 1 : 0);

  GeneratorMatrix gm;
  if (request.chart) {
    if (request.chart->n() != rep.n()) {
      throw Error(ErrorCode::arity, "chart and probe act on different su(n)");
    }
    gm = generators_closed_form(*request.chart, request.theta);
    const RealMatrix q = qfim(gm, m.covariance);
    const RealMatrix g = metric_from(gm);
    report.qfim = q;
    report.metric = g;

    const SpectrumInfo q_info = spectrum_info(q, threshold);
    report.qfim_rank = q_info.rank;
    report.flags.qfim_singular = q_info.singular(threshold);

    const Index dp = q.rows();
    RealMatrix weight;
    switch (request.weight) {
      case WeightKind::intrinsic: weight = g; break;
      case WeightKind::identity: weight = RealMatrix::Identity(dp, dp); break;
      case WeightKind::custom: weight = request.custom_weight; break;
    }
    if (weight.rows() != dp || weight.cols() != dp) {
      throw Error(ErrorCode::arity, "weight matrix must be " + std::to_string(dp) + "x" + std::to_string(dp));
    }
    if (!report.flags.qfim_singular) {
      report.weighted_bound = weighted_bound(weight, q, threshold);
    } else if (request.pseudo_inverse) {
      report.weighted_bound = (weight * pseudo_inverse(q, threshold)).trace();
    }
  } else {
    const Index d = rep.algebra_dim();
    gm.hmat = -RealMatrix::Identity(d, d);
    gm.theta = RealVector::Zero(d);
    gm.condition_number = 1.0;
  }
  report.flags.saturable = saturation_check(state, gm);
  return report;
}

}  // namespace qmetro
