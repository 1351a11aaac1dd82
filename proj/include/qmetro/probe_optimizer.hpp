#ifndef QMETRO_PROBE_OPTIMIZER_HPP
#define QMETRO_PROBE_OPTIMIZER_HPP

#include "qmetro/probes.hpp"

namespace qmetro {

enum class OptimizerMethod { gradient_descent_on_sphere, simplex };
enum class GradientMode { finite_difference, analytic };

const char* to_string(OptimizerMethod method);
const char* to_string(GradientMode mode);

struct OptimizerConfig {
  int restarts = 20;
  int max_iters = 2000;
  /// Stop when the tangent gradient norm (gradient method) or the simplex
  /// objective spread (simplex method) drops below this times max(1, objective).
  Real tolerance = 1e-7;
  std::uint64_t seed = 0;
  OptimizerMethod method = OptimizerMethod::gradient_descent_on_sphere;
  GradientMode gradient = GradientMode::finite_difference;
  Real fd_step = 1e-6;
  /// Restarts evaluated concurrently; results do not depend on it.
  int jobs = 1;

  /// Throws invalid_argument on restarts < 1, max_iters < 1, tolerance <= 0.
  void validate() const;
};

struct OptimizationResult {
  ProbeState state;
  /// 1/4 Tr[C^{-1}] of the returned state.
  Real bound_achieved;
  /// d^2 / (4 C2)
  Real floor;
  bool converged;
  int best_restart;
  int iterations;
};

/// Tr[C^{-1}] of the normalized vector psi. Eigenvalues of C below
/// 1e-10 max(1, Tr C) are clamped there, so near-singular covariances give a
/// penalty that grows like 1/sigma_min instead of diverging.
Real probe_objective(const Representation& rep, const ComplexVector& psi);

/// Euclidean gradient of probe_objective at a unit vector, packed as
/// d/dRe + i d/dIm.
ComplexVector probe_objective_gradient(const Representation& rep, const ComplexVector& psi);

/// Central finite-difference version of probe_objective_gradient.
ComplexVector probe_objective_gradient_fd(const Representation& rep, const ComplexVector& psi, Real step);

/// Minimizes the intrinsic bound over pure states of `rep` from `restarts`
/// Haar-random starting points. Restart r draws from a generator seeded with
/// (seed, r), so the result is a deterministic function of the config.
/// Throws optimization_failed if every restart ends on a singular covariance.
OptimizationResult optimize_probe(const ProbeState::RepPtr& rep, const OptimizerConfig& config);

}  // namespace qmetro

#endif  // QMETRO_PROBE_OPTIMIZER_HPP
