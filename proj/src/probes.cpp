#include "qmetro/probes.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace qmetro {

const char* to_string(ProbeKind kind) {
  switch (kind) {
    case ProbeKind::ghz: return "ghz";
    case ProbeKind::noon: return "noon";
    case ProbeKind::tetrahedron_j2: return "tetrahedron_j2";
    case ProbeKind::su3_cyclic: return "su3_cyclic";
    case ProbeKind::fock: return "fock";
    case ProbeKind::custom: return "custom";
  }
  return "unknown";
}

ProbeState::RepPtr make_symmetric_rep(int n, int particles, Index cap) {
  return std::make_shared<const Representation>(symmetric_representation(gellmann_basis(n), particles, cap));
}

namespace {

ComplexVector superpose(const Representation& rep, const std::vector<std::pair<FockBasis::Occupation, Complex>>& terms) {
  const FockBasis& fock = *rep.fock();
  ComplexVector psi = ComplexVector::Zero(rep.space_dim());
  for (const auto& [occ, amp] : terms) {
    const auto idx = fock.index_of(occ);
    if (!idx) throw Error(ErrorCode::occupation, "occupation tuple is not in the particle-number sector");
    psi(*idx) += amp;
  }
  return psi;
}

}  // namespace

ProbeState make_ghz(int n, int particles, Index cap) {
  if (n < 2) throw Error(ErrorCode::invalid_dimension, "GHZ state needs n >= 2");
  if (particles < 1) throw Error(ErrorCode::invalid_dimension, "GHZ state needs N >= 1");
  auto rep = make_symmetric_rep(n, particles, cap);
  std::vector<std::pair<FockBasis::Occupation, Complex>> terms;
  const Real amp = 1.0 / std::sqrt(static_cast<Real>(n));
  for (int mode = 0; mode < n; ++mode) {
    FockBasis::Occupation occ(static_cast<std::size_t>(n), 0);
    occ[static_cast<std::size_t>(mode)] = particles;
    terms.emplace_back(std::move(occ), amp);
  }
  ComplexVector psi = superpose(*rep, terms);
  return ProbeState::normalized(std::move(rep), std::move(psi));
}

ProbeState make_noon(int particles, Index cap) { return make_ghz(2, particles, cap); }

ProbeState make_su3_cyclic(int k, int l) {
  const long long lhs = 4LL * l * l;
  const long long rhs = 3LL * k * (k + 1LL);
  if (k == 0 || l == 0 || lhs != rhs) {
    std::ostringstream msg;
    msg << "su3_cyclic needs nonzero k, l with 4 l^2 = 3 k (k+1); got k=" << k << ", l=" << l
        << " (" << lhs << " != " << rhs << ")";
    throw Error(ErrorCode::diophantine_constraint, msg.str());
  }
  if (k - l < 0 || k + l < 0 || k < 0) {
    std::ostringstream msg;
    msg << "su3_cyclic with k=" << k << ", l=" << l << " has a negative occupation";
    throw Error(ErrorCode::occupation, msg.str());
  }
  auto rep = make_symmetric_rep(3, 3 * k);
  const Real amp = 1.0 / std::sqrt(3.0);
  ComplexVector psi = superpose(*rep, {{{k - l, k, k + l}, amp}, {{k, k + l, k - l}, amp}, {{k + l, k - l, k}, amp}});
  return ProbeState::normalized(std::move(rep), std::move(psi));
}

ProbeState make_tetrahedron_j2() {
  auto rep = make_symmetric_rep(2, 4);
  // |J, m> = |J + m, J - m> in the two-mode picture.
  ComplexVector psi = superpose(*rep, {{{4, 0}, 1.0 / std::sqrt(3.0)}, {{1, 3}, std::sqrt(2.0 / 3.0)}});
  return ProbeState::normalized(std::move(rep), std::move(psi));
}

ProbeState make_fock(const std::vector<int>& occupations, Index cap) {
  if (occupations.size() < 2) throw Error(ErrorCode::invalid_dimension, "Fock state needs at least two modes");
  for (int o : occupations) {
    if (o < 0) throw Error(ErrorCode::occupation, "negative occupation in Fock state");
  }
  const int particles = std::accumulate(occupations.begin(), occupations.end(), 0);
  auto rep = make_symmetric_rep(static_cast<int>(occupations.size()), particles, cap);
  ComplexVector psi = superpose(*rep, {{occupations, 1.0}});
  return ProbeState::pure(std::move(rep), std::move(psi));
}

ProbeState make_probe(const ProbeSpec& spec, Index cap) {
  switch (spec.kind) {
    case ProbeKind::ghz: return make_ghz(spec.n, spec.particles, cap);
    case ProbeKind::noon: return make_noon(spec.particles, cap);
    case ProbeKind::tetrahedron_j2: return make_tetrahedron_j2();
    case ProbeKind::su3_cyclic: return make_su3_cyclic(spec.k, spec.l);
    case ProbeKind::fock: return make_fock(spec.occupations, cap);
    case ProbeKind::custom: {
      auto rep = make_symmetric_rep(spec.n, spec.particles, cap);
      if (static_cast<Index>(spec.amplitudes.size()) != rep->space_dim()) {
        std::ostringstream msg;
        msg << "custom probe has " << spec.amplitudes.size() << " amplitudes, " << rep->label()
            << " needs " << rep->space_dim();
        throw Error(ErrorCode::invalid_state, msg.str());
      }
      ComplexVector psi = Eigen::Map<const ComplexVector>(spec.amplitudes.data(), rep->space_dim());
      return ProbeState::normalized(std::move(rep), std::move(psi));
    }
  }
  throw Error(ErrorCode::invalid_argument, "unknown probe kind");
}

void canonicalize_phase(ComplexVector& psi) {
  for (Index i = 0; i < psi.size(); ++i) {
    const Real mag = std::abs(psi(i));
    if (mag > 1e-12) {
      psi *= std::conj(psi(i)) / mag;
      psi(i) = mag;
      return;
    }
  }
}

}  // namespace qmetro
