#include "qmetro/representation.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace qmetro {

namespace {

void enumerate_occupations(int modes_left, int remaining, FockBasis::Occupation& prefix,
                           std::vector<FockBasis::Occupation>& out) {
  if (modes_left == 1) {
    prefix.push_back(remaining);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int k = remaining; k >= 0; --k) {
    prefix.push_back(k);
    enumerate_occupations(modes_left - 1, remaining - k, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

FockBasis::FockBasis(int modes, int particles) : modes_(modes), particles_(particles) {
  if (modes < 1) throw Error(ErrorCode::invalid_dimension, "Fock basis needs at least one mode");
  if (particles < 0) throw Error(ErrorCode::invalid_dimension, "negative particle number");
  Occupation prefix;
  prefix.reserve(static_cast<std::size_t>(modes));
  enumerate_occupations(modes, particles, prefix, states_);
  for (std::size_t i = 0; i < states_.size(); ++i) lookup_.emplace(states_[i], static_cast<Index>(i));
}

std::optional<Index> FockBasis::index_of(const Occupation& occ) const {
  auto it = lookup_.find(occ);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

Index fock_dimension(int modes, int particles) {
  if (modes < 1 || particles < 0) return 0;
  // binomial(N + n - 1, n - 1) by the multiplicative formula.
  const int k = modes - 1;
  long double acc = 1.0L;
  for (int i = 1; i <= k; ++i) {
    acc = acc * static_cast<long double>(particles + i) / static_cast<long double>(i);
    if (acc > static_cast<long double>(std::numeric_limits<Index>::max() / 2)) {
      return std::numeric_limits<Index>::max();
    }
  }
  return static_cast<Index>(std::llround(static_cast<double>(acc)));
}

ComplexMatrix ladder_bilinear(const FockBasis& fock, int i, int j) {
  const Index dim = fock.size();
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (Index col = 0; col < dim; ++col) {
    FockBasis::Occupation occ = fock[col];
    const auto ui = static_cast<std::size_t>(i);
    const auto uj = static_cast<std::size_t>(j);
    if (i == j) {
      out(col, col) = static_cast<Real>(occ[ui]);
      continue;
    }
    if (occ[uj] == 0) continue;
    const Real amp = std::sqrt(static_cast<Real>(occ[uj]) * static_cast<Real>(occ[ui] + 1));
    occ[uj] -= 1;
    occ[ui] += 1;
    out(*fock.index_of(occ), col) = amp;
  }
  return out;
}

Representation::Representation(GeneratorBasis basis, RepresentationKind kind, int particles,
                               std::vector<ComplexMatrix> generators, std::optional<FockBasis> fock)
    : basis_(std::move(basis)),
      kind_(kind),
      particles_(particles),
      space_dim_(generators.empty() ? 0 : generators.front().rows()),
      generators_(std::move(generators)),
      fock_(std::move(fock)) {}

std::string Representation::label() const {
  std::ostringstream out;
  if (kind_ == RepresentationKind::fundamental) {
    out << "fundamental(" << n() << ")";
  } else {
    out << "symmetric(" << n() << "," << particles_ << ")";
  }
  return out.str();
}

RealVector Representation::coefficients(const ComplexMatrix& m) const {
  const Index d = algebra_dim();
  RealMatrix gram(d, d);
  RealVector rhs(d);
  for (Index a = 0; a < d; ++a) {
    rhs(a) = (generators_[static_cast<std::size_t>(a)].transpose().cwiseProduct(m)).sum().real();
    for (Index b = a; b < d; ++b) {
      gram(a, b) = (generators_[static_cast<std::size_t>(a)].transpose().cwiseProduct(
                        generators_[static_cast<std::size_t>(b)]))
                       .sum()
                       .real();
      gram(b, a) = gram(a, b);
    }
  }
  return gram.ldlt().solve(rhs);
}

Representation fundamental_representation(const GeneratorBasis& basis) {
  return Representation(basis, RepresentationKind::fundamental, 1, basis.generators(), std::nullopt);
}

Representation symmetric_representation(const GeneratorBasis& basis, int particles, Index cap) {
  if (particles < 1) {
    throw Error(ErrorCode::invalid_dimension, "symmetric representation needs N >= 1");
  }
  const int n = basis.n();
  const Index dim = fock_dimension(n, particles);
  if (dim > cap) {
    std::ostringstream msg;
    msg << "symmetric(" << n << "," << particles << ") has dimension " << dim
        << " above the cap " << cap;
    throw Error(ErrorCode::dimension_too_large, msg.str());
  }
  FockBasis fock(n, particles);
  const Index d = basis.dim();
  std::vector<ComplexMatrix> gens(static_cast<std::size_t>(d), ComplexMatrix::Zero(dim, dim));

  for (Index col = 0; col < dim; ++col) {
    const FockBasis::Occupation& occ = fock[col];
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const int mj = occ[static_cast<std::size_t>(j)];
        if (mj == 0) continue;
        Index row = col;
        Real amp = static_cast<Real>(mj);
        if (i != j) {
          FockBasis::Occupation moved = occ;
          moved[static_cast<std::size_t>(j)] -= 1;
          moved[static_cast<std::size_t>(i)] += 1;
          row = *fock.index_of(moved);
          amp = std::sqrt(static_cast<Real>(mj) * static_cast<Real>(moved[static_cast<std::size_t>(i)]));
        }
        for (Index a = 0; a < d; ++a) {
          const Complex xij = basis[a](i, j);
          if (xij != Complex(0.0)) gens[static_cast<std::size_t>(a)](row, col) += xij * amp;
        }
      }
    }
  }
  return Representation(basis, RepresentationKind::symmetric, particles, std::move(gens), std::move(fock));
}

Real casimir(const Representation& rep) {
  const Index dim = rep.space_dim();
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  for (const auto& x : rep.generators()) m.noalias() += x * x;
  const Real c = m.trace().real() / static_cast<Real>(dim);
  const Real deviation = (m - c * ComplexMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
  if (deviation > 1e-8 * std::max(std::abs(c), 1.0)) {
    std::ostringstream msg;
    msg << "sum of squared generators deviates from " << c << " * I by " << deviation;
    throw Error(ErrorCode::not_irreducible, msg.str());
  }
  return c;
}

Real symmetric_casimir_formula(int n, int particles) {
  return static_cast<Real>(particles) * (particles + n) * (n - 1) / (2.0 * n);
}

ComplexMatrix lift_unitary(const Representation& rep, const RealVector& h) {
  return exp_i_hermitian(rep.element(h));
}

}  // namespace qmetro
