#ifndef QMETRO_PROBES_HPP
#define QMETRO_PROBES_HPP

#include "qmetro/metrology.hpp"

namespace qmetro {

enum class ProbeKind { ghz, noon, tetrahedron_j2, su3_cyclic, fock, custom };

const char* to_string(ProbeKind kind);

/// Declarative description of a probe state (see io.hpp for the JSON form).
struct ProbeSpec {
  ProbeKind kind = ProbeKind::ghz;
  int n = 2;
  int particles = 1;
  int k = 0;
  int l = 0;
  /// fock only: one occupation per mode.
  std::vector<int> occupations;
  /// custom only: amplitudes in the frozen Fock order; normalized on construction.
  std::vector<Complex> amplitudes;
};

/// Shared symmetric(n, N) representation over a fresh Gell-Mann basis.
ProbeState::RepPtr make_symmetric_rep(int n, int particles, Index cap = kDefaultDimensionCap);

/// (|N,0,..,0> + |0,N,..,0> + ... + |0,..,0,N>)/sqrt(n).
ProbeState make_ghz(int n, int particles, Index cap = kDefaultDimensionCap);

/// Two-mode GHZ state (|N,0> + |0,N>)/sqrt(2).
ProbeState make_noon(int particles, Index cap = kDefaultDimensionCap);

/// (|k-l,k,k+l> + |k,k+l,k-l> + |k+l,k-l,k>)/sqrt(3) on symmetric(3, 3k).
/// Requires 4 l^2 = 3 k (k+1) with k, l nonzero (diophantine_constraint) and
/// nonnegative occupations (occupation).
ProbeState make_su3_cyclic(int k, int l);

/// J = 2 tetrahedron state (|2,2> + sqrt(2)|2,-1>)/sqrt(3), i.e.
/// (|4,0> + sqrt(2)|1,3>)/sqrt(3) on symmetric(2, 4).
ProbeState make_tetrahedron_j2();

/// Single Fock state; n is the number of occupations, N their sum.
ProbeState make_fock(const std::vector<int>& occupations, Index cap = kDefaultDimensionCap);

ProbeState make_probe(const ProbeSpec& spec, Index cap = kDefaultDimensionCap);

/// Multiplies by a global phase so the first amplitude with modulus above
/// 1e-12 is real and positive.
void canonicalize_phase(ComplexVector& psi);

}  // namespace qmetro

#endif  // QMETRO_PROBES_HPP
