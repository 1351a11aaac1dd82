#include "qmetro/io.hpp"

#include <cmath>
#include <fstream>
#include <string>

namespace qmetro {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::parse, what); }

template <typename T>
T field(const Json& j, const char* key, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    parse_error(std::string("field '") + key + "': " + e.what());
  }
}

template <typename T>
T required(const Json& j, const char* key) {
  if (!j.contains(key)) parse_error(std::string("missing field '") + key + "'");
  return field<T>(j, key, T{});
}

RealVector vector_from_json(const Json& j) {
  if (!j.is_array()) parse_error("expected an array of numbers");
  RealVector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) parse_error("expected an array of numbers");
    v(static_cast<Index>(i)) = j[i].get<Real>();
  }
  return v;
}

Json optional_matrix(const std::optional<RealMatrix>& m) { return m ? to_json(*m) : Json(nullptr); }

Json optional_number(const std::optional<Real>& x) { return x ? Json(round_decimal(*x)) : Json(nullptr); }

}  // namespace

Real round_decimal(Real value) {
  if (!std::isfinite(value)) return value;
  return std::stod(format_decimal(value));
}

Json to_json(const RealVector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(round_decimal(v(i)));
  return out;
}

Json to_json(const RealMatrix& m) {
  Json out = Json::array();
  for (Index r = 0; r < m.rows(); ++r) out.push_back(to_json(RealVector(m.row(r).transpose())));
  return out;
}

RealMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) parse_error("expected a non-empty array of rows");
  const auto rows = static_cast<Index>(j.size());
  const RealVector first = vector_from_json(j[0]);
  RealMatrix m(rows, first.size());
  for (Index r = 0; r < rows; ++r) {
    const RealVector row = vector_from_json(j[static_cast<std::size_t>(r)]);
    if (row.size() != m.cols()) parse_error("matrix rows have different lengths");
    m.row(r) = row.transpose();
  }
  return m;
}

Parametrization parametrization_from_json(const Json& j) {
  if (!j.is_object()) parse_error("parametrization must be a JSON object");
  const auto kind = required<std::string>(j, "kind");
  if (kind == "exponential") return Parametrization::exponential(required<int>(j, "n"));
  if (kind == "euler_su2") {
    if (field<int>(j, "n", 2) != 2) parse_error("euler_su2 requires n = 2");
    return Parametrization::euler_su2();
  }
  if (kind == "product_of_exponentials") {
    const int n = required<int>(j, "n");
    if (!j.contains("factors") || !j.at("factors").is_array()) parse_error("product_of_exponentials needs 'factors'");
    std::vector<RealVector> axes;
    for (const auto& f : j.at("factors")) axes.push_back(vector_from_json(f));
    return Parametrization::product_of_exponentials(n, std::move(axes));
  }
  parse_error("unknown parametrization kind '" + kind + "'");
}

Json to_json(const Parametrization& p) {
  Json out = {{"kind", to_string(p.kind())}, {"n", p.n()}};
  if (p.kind() == ParametrizationKind::product_of_exponentials) {
    Json factors = Json::array();
    for (const auto& a : p.axes()) factors.push_back(to_json(a));
    out["factors"] = factors;
  }
  return out;
}

ProbeSpec probe_spec_from_json(const Json& j) {
  if (!j.is_object()) parse_error("probe spec must be a JSON object");
  ProbeSpec spec;
  const auto kind = required<std::string>(j, "kind");
  if (kind == "ghz") {
    spec.kind = ProbeKind::ghz;
    spec.n = required<int>(j, "n");
    spec.particles = required<int>(j, "N");
  } else if (kind == "noon") {
    spec.kind = ProbeKind::noon;
    spec.particles = required<int>(j, "N");
  } else if (kind == "tetrahedron_j2") {
    spec.kind = ProbeKind::tetrahedron_j2;
    spec.n = 2;
    spec.particles = 4;
  } else if (kind == "su3_cyclic") {
    spec.kind = ProbeKind::su3_cyclic;
    spec.k = required<int>(j, "k");
    spec.l = required<int>(j, "l");
    spec.n = 3;
    spec.particles = 3 * spec.k;
  } else if (kind == "fock") {
    spec.kind = ProbeKind::fock;
    spec.occupations = required<std::vector<int>>(j, "occupations");
    spec.n = static_cast<int>(spec.occupations.size());
    spec.particles = 0;
    for (int o : spec.occupations) spec.particles += o;
  } else if (kind == "custom") {
    spec.kind = ProbeKind::custom;
    spec.n = required<int>(j, "n");
    spec.particles = required<int>(j, "N");
    if (!j.contains("amplitudes") || !j.at("amplitudes").is_array()) parse_error("custom probe needs 'amplitudes'");
    for (const auto& a : j.at("amplitudes")) {
      if (a.is_number()) {
        spec.amplitudes.emplace_back(a.get<Real>(), 0.0);
      } else if (a.is_array() && a.size() == 2 && a[0].is_number() && a[1].is_number()) {
        spec.amplitudes.emplace_back(a[0].get<Real>(), a[1].get<Real>());
      } else {
        parse_error("amplitudes must be numbers or [re, im] pairs");
      }
    }
  } else {
    parse_error("unknown probe kind '" + kind + "'");
  }
  return spec;
}

Json to_json(const ProbeSpec& spec) {
  Json out = {{"kind", to_string(spec.kind)}, {"n", spec.n}, {"N", spec.particles}};
  if (spec.kind == ProbeKind::su3_cyclic) {
    out["k"] = spec.k;
    out["l"] = spec.l;
  }
  if (spec.kind == ProbeKind::fock) out["occupations"] = spec.occupations;
  if (spec.kind == ProbeKind::custom) {
    Json amps = Json::array();
    for (const auto& a : spec.amplitudes) amps.push_back({a.real(), a.imag()});
    out["amplitudes"] = amps;
  }
  return out;
}

OptimizerConfig optimizer_config_from_json(const Json& j, OptimizerConfig base) {
  if (!j.is_object()) parse_error("optimizer config must be a JSON object");
  OptimizerConfig c = base;
  c.restarts = field<int>(j, "restarts", c.restarts);
  c.max_iters = field<int>(j, "max_iters", c.max_iters);
  c.tolerance = field<Real>(j, "tolerance", c.tolerance);
  c.seed = field<std::uint64_t>(j, "seed", c.seed);
  c.fd_step = field<Real>(j, "fd_step", c.fd_step);
  c.jobs = field<int>(j, "jobs", c.jobs);
  const auto method = field<std::string>(j, "method", to_string(c.method));
  if (method == "gradient_descent_on_sphere") {
    c.method = OptimizerMethod::gradient_descent_on_sphere;
  } else if (method == "simplex") {
    c.method = OptimizerMethod::simplex;
  } else {
    parse_error("unknown optimizer method '" + method + "'");
  }
  const auto gradient = field<std::string>(j, "gradient", to_string(c.gradient));
  if (gradient == "finite_difference") {
    c.gradient = GradientMode::finite_difference;
  } else if (gradient == "analytic") {
    c.gradient = GradientMode::analytic;
  } else {
    parse_error("unknown gradient mode '" + gradient + "'");
  }
  return c;
}

Json to_json(const BoundReport& report) {
  Json flags = {
      {"covariance_singular", report.flags.covariance_singular},
      {"qfim_singular", report.flags.qfim_singular},
      {"saturable", report.flags.saturable},
      {"unpolarized_order", report.flags.unpolarized_order},
      {"pseudo_inverse", report.flags.pseudo_inverse},
      {"covariance_rank", report.covariance_rank},
      {"qfim_rank", report.qfim_rank ? Json(*report.qfim_rank) : Json(nullptr)},
  };
  return {
      {"mean", to_json(report.mean)},
      {"covariance", to_json(report.covariance)},
      {"qfim", optional_matrix(report.qfim)},
      {"metric", optional_matrix(report.metric)},
      {"intrinsic_bound", optional_number(report.intrinsic_bound)},
      {"weighted_bound", optional_number(report.weighted_bound)},
      {"flags", flags},
  };
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    parse_error("'" + path + "': " + e.what());
  }
}

}  // namespace qmetro
