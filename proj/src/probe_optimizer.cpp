#include "qmetro/probe_optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

namespace qmetro {

const char* to_string(OptimizerMethod method) {
  switch (method) {
    case OptimizerMethod::gradient_descent_on_sphere: return "gradient_descent_on_sphere";
    case OptimizerMethod::simplex: return "simplex";
  }
  return "unknown";
}

const char* to_string(GradientMode mode) {
  switch (mode) {
    case GradientMode::finite_difference: return "finite_difference";
    case GradientMode::analytic: return "analytic";
  }
  return "unknown";
}

void OptimizerConfig::validate() const {
  if (restarts < 1) throw Error(ErrorCode::invalid_argument, "optimizer needs restarts >= 1");
  if (max_iters < 1) throw Error(ErrorCode::invalid_argument, "optimizer needs max_iters >= 1");
  if (!(tolerance > 0.0)) throw Error(ErrorCode::invalid_argument, "optimizer needs tolerance > 0");
  if (!(fd_step > 0.0)) throw Error(ErrorCode::invalid_argument, "optimizer needs fd_step > 0");
}

namespace {

struct Evaluation {
  ComplexMatrix applied;  // columns X_a psi
  RealVector mean;
  RealVector eigenvalues;
  RealMatrix eigenvectors;
  Real floor_eps;
  Real value;
};

Evaluation evaluate(const Representation& rep, const ComplexVector& psi, bool want_vectors) {
  Evaluation e;
  e.applied.resize(rep.space_dim(), rep.algebra_dim());
  for (Index a = 0; a < rep.algebra_dim(); ++a) e.applied.col(a).noalias() = rep[a] * psi;
  e.mean = (psi.adjoint() * e.applied).transpose().real();
  RealMatrix cov = (e.applied.adjoint() * e.applied).real() - e.mean * e.mean.transpose();
  cov = 0.5 * (cov + cov.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(cov, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  e.eigenvalues = es.eigenvalues();
  if (want_vectors) e.eigenvectors = es.eigenvectors();
  e.floor_eps = 1e-10 * std::max(1.0, cov.trace());
  const Real eps = e.floor_eps;
  e.value = e.eigenvalues.unaryExpr([eps](Real l) { return 1.0 / std::max(l, eps); }).sum();
  return e;
}

Real objective_of(const Representation& rep, const ComplexVector& x) {
  return evaluate(rep, x / x.norm(), false).value;
}

ComplexVector project_tangent(const ComplexVector& g, const ComplexVector& x) {
  return g - x.dot(g).real() * x;
}

struct RestartOutcome {
  ComplexVector psi;
  Real objective = 0.0;
  bool converged = false;
  int iterations = 0;
};

ComplexVector random_start(Index dim, std::uint64_t seed, int restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<Real> normal(0.0, 1.0);
  ComplexVector x(dim);
  for (Index i = 0; i < dim; ++i) {
    const Real re = normal(rng);
    const Real im = normal(rng);
    x(i) = Complex(re, im);
  }
  return x / x.norm();
}

ComplexVector gradient(const Representation& rep, const ComplexVector& x, const OptimizerConfig& cfg) {
  return cfg.gradient == GradientMode::analytic ? probe_objective_gradient(rep, x)
                                                : probe_objective_gradient_fd(rep, x, cfg.fd_step);
}

RestartOutcome descend_on_sphere(const Representation& rep, ComplexVector x, const OptimizerConfig& cfg) {
  RestartOutcome out;
  Real f = probe_objective(rep, x);
  ComplexVector g = gradient(rep, x, cfg);
  Real gnorm = g.norm();
  Real step = 0.1 / std::max(gnorm, 1e-12);

  int it = 0;
  for (; it < cfg.max_iters; ++it) {
    if (gnorm < cfg.tolerance * std::max(1.0, f)) {
      out.converged = true;
      break;
    }
    // Armijo backtracking along the retraction x -> normalize(x - t g).
    Real trial = step;
    ComplexVector x_new;
    Real f_new = f;
    bool accepted = false;
    while (trial > 1e-20) {
      x_new = x - trial * g;
      x_new.normalize();
      f_new = probe_objective(rep, x_new);
      if (f_new <= f - 1e-4 * trial * gnorm * gnorm) {
        accepted = true;
        break;
      }
      trial *= 0.5;
    }
    if (!accepted) break;

    const ComplexVector g_new = gradient(rep, x_new, cfg);
    const ComplexVector s = x_new - x;
    const ComplexVector y = g_new - g;
    const Real sy = s.dot(y).real();
    const Real gnorm_new = g_new.norm();
    // Barzilai-Borwein step, capped at roughly one radian of motion.
    step = sy > 0.0 ? s.squaredNorm() / sy : 2.0 * trial;
    step = std::min(step, 1.0 / std::max(gnorm_new, 1e-12));

    x = x_new;
    f = f_new;
    g = g_new;
    gnorm = gnorm_new;
  }
  out.psi = std::move(x);
  out.objective = f;
  out.iterations = it;
  return out;
}

// Nelder-Mead on the stacked (Re, Im) vector with the adaptive coefficients
// of Gao and Han for high dimensions.
RestartOutcome nelder_mead(const Representation& rep, const ComplexVector& start, const OptimizerConfig& cfg) {
  const Index dim = start.size();
  const Index m = 2 * dim;
  auto unpack = [dim](const RealVector& v) {
    ComplexVector x(dim);
    for (Index i = 0; i < dim; ++i) x(i) = Complex(v(i), v(dim + i));
    return x;
  };
  auto f = [&](const RealVector& v) { return objective_of(rep, unpack(v)); };

  const Real md = static_cast<Real>(m);
  const Real alpha = 1.0, beta = 1.0 + 2.0 / md, gamma = 0.75 - 1.0 / (2.0 * md), delta = 1.0 - 1.0 / md;

  std::vector<RealVector> pts;
  std::vector<Real> vals;
  RealVector x0(m);
  x0 << start.real(), start.imag();
  pts.push_back(x0);
  for (Index i = 0; i < m; ++i) {
    RealVector p = x0;
    p(i) += 0.1;
    pts.push_back(std::move(p));
  }
  for (const auto& p : pts) vals.push_back(f(p));

  RestartOutcome out;
  std::vector<std::size_t> order(pts.size());
  int it = 0;
  for (; it < cfg.max_iters; ++it) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[order.size() - 2];
    if (vals[worst] - vals[best] < cfg.tolerance * std::max(1.0, vals[best])) {
      out.converged = true;
      break;
    }
    RealVector centroid = RealVector::Zero(m);
    for (std::size_t k = 0; k + 1 < order.size(); ++k) centroid += pts[order[k]];
    centroid /= md;

    const RealVector xr = centroid + alpha * (centroid - pts[worst]);
    const Real fr = f(xr);
    if (fr < vals[best]) {
      const RealVector xe = centroid + beta * (xr - centroid);
      const Real fe = f(xe);
      if (fe < fr) {
        pts[worst] = xe;
        vals[worst] = fe;
      } else {
        pts[worst] = xr;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = xr;
      vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    const RealVector xc = outside ? RealVector(centroid + gamma * (xr - centroid))
                                  : RealVector(centroid - gamma * (centroid - pts[worst]));
    const Real fc = f(xc);
    if (fc < (outside ? fr : vals[worst])) {
      pts[worst] = xc;
      vals[worst] = fc;
      continue;
    }
    for (std::size_t k = 1; k < order.size(); ++k) {
      const std::size_t idx = order[k];
      pts[idx] = pts[best] + delta * (pts[idx] - pts[best]);
      vals[idx] = f(pts[idx]);
    }
  }
  const auto best = static_cast<std::size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
  ComplexVector psi = unpack(pts[best]);
  out.psi = psi / psi.norm();
  out.objective = vals[best];
  out.iterations = it;
  return out;
}

}  // namespace

Real probe_objective(const Representation& rep, const ComplexVector& psi) {
  return objective_of(rep, psi);
}

ComplexVector probe_objective_gradient(const Representation& rep, const ComplexVector& psi) {
  const ComplexVector x = psi / psi.norm();
  const Evaluation e = evaluate(rep, x, true);
  // G = C^{-2} on the unclamped spectrum; clamped directions are flat.
  const RealVector inv_sq = e.eigenvalues.unaryExpr([&e](Real l) { return l > e.floor_eps ? 1.0 / (l * l) : 0.0; });
  const RealMatrix g = e.eigenvectors * inv_sq.asDiagonal() * e.eigenvectors.transpose();
  const ComplexMatrix w = e.applied * g.cast<Complex>();
  const RealVector gm = g * e.mean;

  ComplexVector grad = ComplexVector::Zero(x.size());
  for (Index j = 0; j < rep.algebra_dim(); ++j) {
    grad.noalias() -= 2.0 * (rep[j] * w.col(j));
    grad += 4.0 * gm(j) * e.applied.col(j);
  }
  return project_tangent(grad, x);
}

ComplexVector probe_objective_gradient_fd(const Representation& rep, const ComplexVector& psi, Real step) {
  const ComplexVector x = psi / psi.norm();
  ComplexVector grad(x.size());
  for (Index i = 0; i < x.size(); ++i) {
    Real parts[2];
    for (int part = 0; part < 2; ++part) {
      const Complex dir = part == 0 ? Complex(step, 0.0) : Complex(0.0, step);
      ComplexVector plus = x, minus = x;
      plus(i) += dir;
      minus(i) -= dir;
      parts[part] = (objective_of(rep, plus) - objective_of(rep, minus)) / (2.0 * step);
    }
    grad(i) = Complex(parts[0], parts[1]);
  }
  return grad;
}

OptimizationResult optimize_probe(const ProbeState::RepPtr& rep, const OptimizerConfig& config) {
  config.validate();
  const Index dim = rep->space_dim();
  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(config.restarts));

  auto run = [&](int r) {
    const ComplexVector start = random_start(dim, config.seed, r);
    outcomes[static_cast<std::size_t>(r)] = config.method == OptimizerMethod::simplex
                                                ? nelder_mead(*rep, start, config)
                                                : descend_on_sphere(*rep, start, config);
  };

  const int jobs = std::clamp(config.jobs, 1, config.restarts);
  if (jobs == 1) {
    for (int r = 0; r < config.restarts; ++r) run(r);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) {
      pool.emplace_back([&] {
        for (int r = next++; r < config.restarts; r = next++) run(r);
      });
    }
    for (auto& th : pool) th.join();
  }

  int best = 0;
  for (int r = 1; r < config.restarts; ++r) {
    if (outcomes[static_cast<std::size_t>(r)].objective < outcomes[static_cast<std::size_t>(best)].objective) best = r;
  }
  RestartOutcome& winner = outcomes[static_cast<std::size_t>(best)];
  canonicalize_phase(winner.psi);
  ProbeState state = ProbeState::normalized(rep, winner.psi);

  const Moments m = covariance_pure(state);
  const SpectrumInfo info = spectrum_info(m.covariance);
  if (info.singular(kDefaultConditionThreshold)) {
    std::ostringstream msg;
    msg << "all " << config.restarts << " restarts on " << rep->label()
        << " ended on a singular covariance (best rank " << info.rank << " of " << rep->algebra_dim()
        << ", space dimension " << dim << ")";
    throw Error(ErrorCode::optimization_failed, msg.str(), info.rank);
  }
  return OptimizationResult{std::move(state), intrinsic_bound(m.covariance), intrinsic_floor(*rep),
                            winner.converged, best, winner.iterations};
}

}  // namespace qmetro
