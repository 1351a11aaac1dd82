// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include "test_support.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

using namespace qmetro;
using namespace qmetro::test;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

Real trace_inverse(const RealMatrix& c) {
  const RealVector ev = Eigen::SelfAdjointEigenSolver<RealMatrix>(c).eigenvalues();
  if (ev.minCoeff() <= 0.0) return std::numeric_limits<Real>::infinity();
  return ev.cwiseInverse().sum();
}

ProbeState random_pure(std::mt19937_64& rng, const ProbeState::RepPtr& rep) {
  return ProbeState::pure(rep, random_unit(rng, rep->space_dim()));
}

// 1
Outcome euler_rows() {
  std::mt19937_64 rng(101);
  const auto euler = Parametrization::euler_su2();
  Real rows = 0.0, metric = 0.0;
  for (int i = 0; i < 100; ++i) {
    const RealVector t = random_euler(rng);
    rows = std::max(rows, max_abs(generators_closed_form(euler, t).hmat - euler_rows_reference(t(0), t(1), t(2))));
    metric = std::max(metric, max_abs(metric_at(euler, t) - euler_metric_reference(t(1))));
  }
  return {rows < 1e-10 && metric < 1e-10, fmt("max row error %.2e, max metric error %.2e", rows, metric)};
}

// 2
Outcome chart_invariance() {
  std::mt19937_64 rng(102);
  const auto euler = Parametrization::euler_su2();
  const auto expo = Parametrization::exponential(2);
  const RealMatrix c = covariance(make_tetrahedron_j2()).covariance;
  const Real intrinsic = intrinsic_bound(c);
  Real worst = 0.0, identity_gap = 0.0;
  for (int i = 0; i < 50; ++i) {
    const RealVector te = random_euler(rng);
    const RealVector tx = exponential_coordinates(unitary_at(euler, te), expo.basis());
    const GeneratorMatrix ge = generators_closed_form(euler, te);
    const GeneratorMatrix gx = generators_closed_form(expo, tx);
    const RealMatrix qe = qfim(ge, c), qx = qfim(gx, c);
    const Real be = weighted_bound(metric_from(ge), qe);
    const Real bx = weighted_bound(metric_from(gx), qx);
    worst = std::max({worst, std::abs(be - bx), std::abs(be - intrinsic), std::abs(bx - intrinsic)});
    const Index d = 3;
    identity_gap = std::max(identity_gap, std::abs(weighted_bound(RealMatrix::Identity(d, d), qe) -
                                                   weighted_bound(RealMatrix::Identity(d, d), qx)));
  }
  return {worst < 1e-8 && identity_gap > 1e-6,
          fmt("metric-weighted spread %.2e, identity-weight max gap %.3g", worst, identity_gap)};
}

// 3
Outcome orbit_invariance() {
  std::mt19937_64 rng(103);
  Real worst = 0.0;
  for (const auto& [n, particles] : std::vector<std::pair<int, int>>{{2, 4}, {3, 9}}) {
    const auto rep = make_symmetric_rep(n, particles);
    std::vector<ProbeState> probes{random_pure(rng, rep)};
    probes.push_back(n == 2 ? make_tetrahedron_j2() : make_su3_cyclic(3, 3));
    for (const ProbeState& base : probes) {
      const ProbeState s = ProbeState::pure(rep, base.vector());
      const Real ref = trace_inverse(covariance(s).covariance);
      for (int i = 0; i < 50; ++i) {
        const ProbeState moved = s.transformed(lift_unitary(*rep, random_real(rng, rep->algebra_dim(), 1.5)));
        worst = std::max(worst, std::abs(trace_inverse(covariance(moved).covariance) - ref));
      }
    }
  }
  return {worst < 1e-8, fmt("max change in Tr C^-1 over 200 lifted unitaries %.2e", worst)};
}

// 4
Outcome su2_floor() {
  const Real tetra = trace_inverse(covariance(make_tetrahedron_j2()).covariance);
  std::mt19937_64 rng(104);
  const auto rep = make_symmetric_rep(2, 4);
  Real lowest = std::numeric_limits<Real>::infinity();
  for (int i = 0; i < 500; ++i) lowest = std::min(lowest, trace_inverse(covariance(random_pure(rng, rep)).covariance));
  return {std::abs(tetra - 1.5) < 1e-10 && lowest >= 1.5 - 1e-9,
          fmt("tetrahedron Tr C^-1 = %.15g, minimum over 500 random states %.6g", tetra, lowest)};
}

// 5
Outcome casimir_values() {
  Real worst = 0.0, spin = 0.0;
  for (int n = 2; n <= 4; ++n) {
    const GeneratorBasis basis = gellmann_basis(n);
    for (int particles = 1; particles <= 12; ++particles) {
      const Real value = casimir(symmetric_representation(basis, particles));
      const Real expected = static_cast<Real>(particles) * (particles + n) * (n - 1) / (2.0 * n);
      worst = std::max(worst, std::abs(value - expected));
      if (n == 2) {
        const Real j = particles / 2.0;
        spin = std::max(spin, std::abs(value - j * (j + 1)));
      }
    }
  }
  return {worst < 1e-8 && spin < 1e-8, fmt("max deviation from N(N+n)(n-1)/(2n) %.2e, from J(J+1) %.2e", worst, spin)};
}

// 6
Outcome su3_ideal() {
  const ProbeState s = make_su3_cyclic(3, 3);
  const UnpolarizedReport u = unpolarized_report(s);
  const Real b = intrinsic_bound(covariance(s).covariance);
  return {u.first_order && u.second_order && u.deviation < 1e-10 && std::abs(b - 4.0 / 9.0) < 1e-10,
          fmt("second order %s, deviation %.2e, intrinsic bound %.15g", u.second_order ? "yes" : "no", u.deviation, b)};
}

// 7
Outcome scaling() {
  ScanOptions o;
  o.n = 2;
  o.nmin = 8;
  o.nmax = 64;
  std::vector<Real> x, ghz, floor;
  bool above = true;
  for (const ScanRow& r : run_scan(o)) {
    if (!r.cs_ghz || !r.cs_floor) return {false, "missing GHZ or floor value"};
    above = above && *r.cs_ghz > *r.cs_floor;
    x.push_back(r.particles);
    ghz.push_back(*r.cs_ghz);
    floor.push_back(*r.cs_floor);
  }
  const Real sg = loglog_slope(x, ghz), sf = loglog_slope(x, floor);
  const bool pass = sg >= -1.15 && sg <= -0.85 && sf >= -2.10 && sf <= -1.90 && above;
  return {pass, fmt("GHZ slope %.4f, floor slope %.4f, GHZ above floor at every N: %s", sg, sf, above ? "yes" : "no")};
}

// 8
Outcome mixed_kernel() {
  std::mt19937_64 rng(108);
  Real rank1 = 0.0, flat = 0.0, asym = 0.0, min_eig = 0.0;
  const std::vector<std::pair<int, int>> reps{{2, 1}, {2, 4}, {3, 2}, {3, 3}, {4, 2}};
  int count = 0;
  for (const auto& [n, particles] : reps) {
    const auto rep = make_symmetric_rep(n, particles);
    const Index dim = rep->space_dim();
    for (int i = 0; i < 10; ++i) {
      const ProbeState pure = random_pure(rng, rep);
      rank1 = std::max(rank1, max_abs(covariance_mixed(ProbeState::mixed(rep, pure.density_matrix())).covariance -
                                      covariance_pure(pure).covariance));
    }
    flat = std::max(flat, max_abs(covariance_mixed(ProbeState::mixed(
                                                      rep, ComplexMatrix::Identity(dim, dim) / static_cast<Real>(dim)))
                                      .covariance));
    for (int i = 0; i < 20; ++i, ++count) {
      const RealMatrix c = covariance_mixed(ProbeState::mixed(rep, random_density(rng, dim))).covariance;
      asym = std::max(asym, max_abs(c - c.transpose()));
      min_eig = std::min(min_eig, Eigen::SelfAdjointEigenSolver<RealMatrix>(c).eigenvalues().minCoeff());
    }
  }
  return {rank1 < 1e-10 && flat < 1e-12 && asym < 1e-12 && min_eig > -1e-10,
          fmt("rank-one error %.2e, maximally mixed %.2e, %d random: asymmetry %.2e, min eigenvalue %.2e", rank1, flat,
              count, asym, min_eig)};
}

// 9
Outcome oracle_equivalence() {
  std::mt19937_64 rng(109);
  Real quad = 0.0, fd = 0.0;
  const Real eps = 1e-5;
  for (int n = 2; n <= 4; ++n) {
    const auto p = Parametrization::exponential(n);
    const Index d = p.parameter_count();
    for (int i = 0; i < 100; ++i) {
      const RealVector t = random_real(rng, d, 1.0);
      const GeneratorMatrix gm = generators_closed_form(p, t);
      quad = std::max(quad, max_abs(gm.hmat - generators_quadrature(p, t, 32).hmat));
      if (i % 10 != 0) continue;
      const ComplexMatrix u = unitary_at(p, t);
      for (Index j = 0; j < d; ++j) {
        RealVector tp = t, tm = t;
        tp(j) += eps;
        tm(j) -= eps;
        const ComplexMatrix der = Complex(0.0, 1.0) * u.adjoint() * (unitary_at(p, tp) - unitary_at(p, tm)) / (2 * eps);
        fd = std::max(fd, max_abs(project_coefficients(der, p.basis()) - RealVector(gm.hmat.row(j).transpose())));
      }
    }
  }
  return {quad < 1e-8 && fd < 5e-6, fmt("quadrature vs closed form %.2e, finite differences %.2e", quad, fd)};
}

// 10
Outcome saturation() {
  std::mt19937_64 rng(110);
  int tested = 0, saturable = 0;
  auto chart_for = [&](int n) {
    if (n == 2 && rng() % 2 == 0) return generators_closed_form(Parametrization::euler_su2(), random_euler(rng));
    return generators_closed_form(Parametrization::exponential(n), random_real(rng, n * n - 1, 1.0));
  };
  std::uniform_real_distribution<Real> phase(-pi, pi);
  for (int i = 0; i < 200; ++i) {
    ProbeState base = make_tetrahedron_j2();
    switch (i % 4) {
      case 0: break;
      case 1: base = make_su3_cyclic(3, 3); break;
      default: {
        const int n = 2 + static_cast<int>(rng() % 3);
        const int particles = 2 + static_cast<int>(rng() % 4);
        const auto rep = make_symmetric_rep(n, particles);
        ComplexVector psi = make_ghz(n, particles).vector();
        for (Index k = 0; k < psi.size(); ++k) psi(k) *= std::polar(1.0, phase(rng));
        base = ProbeState::pure(rep, psi);
      }
    }
    const auto& rep = base.rep();
    const ProbeState s = base.transformed(lift_unitary(rep, random_real(rng, rep.algebra_dim(), 1.5)));
    if (covariance(s).mean.norm() >= 1e-10) continue;
    ++tested;
    if (saturation_check(s, chart_for(rep.n()))) ++saturable;
  }
  const ProbeState stretched = make_fock({4, 0});
  bool stretched_rejected = !saturation_check(stretched, chart_for(2));
  for (int i = 0; i < 20; ++i) {
    stretched_rejected = stretched_rejected &&
                         !saturation_check(stretched, generators_closed_form(Parametrization::euler_su2(), random_euler(rng)));
  }
  return {tested == 200 && saturable == tested && stretched_rejected,
          fmt("%d/%d unpolarized constructions saturable, stretched state rejected: %s", saturable, tested,
              stretched_rejected ? "yes" : "no")};
}

// 11
Outcome optimizer() {
  const auto start = std::chrono::steady_clock::now();
  OptimizerConfig c2;
  c2.seed = 7;
  const OptimizationResult r2 = optimize_probe(make_symmetric_rep(2, 4), c2);
  OptimizerConfig c3;
  c3.seed = 7;
  c3.restarts = 50;
  const OptimizationResult r3 = optimize_probe(make_symmetric_rep(3, 9), c3);
  const Real seconds = std::chrono::duration<Real>(std::chrono::steady_clock::now() - start).count();
  const Real e2 = std::abs(r2.bound_achieved - 0.375) / 0.375;
  const Real e3 = std::abs(r3.bound_achieved - 4.0 / 9.0) / (4.0 / 9.0);
  return {e2 < 0.01 && e3 < 0.01 && seconds <= 300.0,
          fmt("symmetric(2,4) %.12g (rel. %.1e), symmetric(3,9) %.12g (rel. %.1e), %.1f s", r2.bound_achieved, e2,
              r3.bound_achieved, e3, seconds)};
}

// 12
Outcome am_gm() {
  std::mt19937_64 rng(112);
  const std::vector<std::pair<int, int>> reps{{2, 2}, {2, 4}, {2, 7}, {3, 3}, {3, 9}, {4, 2}};
  std::vector<ProbeState> states;
  for (int i = 0; i < 500; ++i) {
    const auto& [n, particles] = reps[static_cast<std::size_t>(i) % reps.size()];
    states.push_back(random_pure(rng, make_symmetric_rep(n, particles)));
  }
  // Structured states on both sides of the equality case.
  for (int i = 0; i < 20; ++i) {
    for (const ProbeState& base : {make_tetrahedron_j2(), make_su3_cyclic(3, 3), make_ghz(3, 9), make_noon(5)}) {
      states.push_back(base.transformed(lift_unitary(base.rep(), random_real(rng, base.rep().algebra_dim(), 1.5))));
    }
  }
  Real min_gap = std::numeric_limits<Real>::infinity();
  int skipped = 0, equal = 0, mismatches = 0;
  for (const ProbeState& s : states) {
    const RealMatrix c = covariance(s).covariance;
    if (spectrum_info(c).singular(kDefaultConditionThreshold)) {
      ++skipped;
      continue;
    }
    const Real d = static_cast<Real>(c.rows());
    const Real gap = c.trace() * trace_inverse(c) - d * d;
    min_gap = std::min(min_gap, gap);
    const bool eq = std::abs(gap) < 1e-6;
    equal += eq ? 1 : 0;
    if (eq != unpolarized_report(s).second_order) ++mismatches;
  }
  return {min_gap >= -1e-9 && mismatches == 0 && equal > 0,
          fmt("%zu states, %d singular skipped, min Tr C Tr C^-1 - d^2 = %.2e, %d equalities, %d mismatches",
              states.size(), skipped, min_gap, equal, mismatches)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"Euler generator rows and metric", euler_rows},
      {"Metric-weighted bound is chart independent", chart_invariance},
      {"Tr C^-1 is invariant along unitary orbits", orbit_invariance},
      {"SU(2) floor 9/(J(J+1)) at J=2", su2_floor},
      {"Casimir of symmetric representations", casimir_values},
      {"SU(3) cyclic state k=3, l=3", su3_ideal},
      {"Two-mode scaling of GHZ and floor", scaling},
      {"Mixed-state covariance kernel", mixed_kernel},
      {"Quadrature and finite-difference oracles", oracle_equivalence},
      {"Saturation condition", saturation},
      {"Probe optimizer", optimizer},
      {"Tr C Tr C^-1 >= d^2 and its equality case", am_gm},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const Real seconds = std::chrono::duration<Real>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::printf("%s %2zu  %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str(),
                seconds);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
