#ifndef QMETRO_IO_HPP
#define QMETRO_IO_HPP

#include "qmetro/scan.hpp"

#include <json.hpp>

namespace qmetro {

using Json = nlohmann::json;

/// Rounds to 12 significant digits so that serialized decimals are stable.
Real round_decimal(Real value);

Json to_json(const RealVector& v);
Json to_json(const RealMatrix& m);

/// {"kind": "exponential" | "euler_su2" | "product_of_exponentials",
///  "n": int, "factors": [[axis], ...]}   ("factors" only for the product form)
Parametrization parametrization_from_json(const Json& j);
Json to_json(const Parametrization& p);

/// {"kind": "ghz" | "noon" | "tetrahedron_j2" | "su3_cyclic" | "fock" | "custom",
///  "n": int, "N": int, "k": int, "l": int,
///  "occupations": [int, ...],          (fock)
///  "amplitudes": [re | [re, im], ...]} (custom)
ProbeSpec probe_spec_from_json(const Json& j);
Json to_json(const ProbeSpec& spec);

/// Every field optional: restarts, max_iters, tolerance, seed, method,
/// gradient, fd_step, jobs.
OptimizerConfig optimizer_config_from_json(const Json& j, OptimizerConfig base = {});

/// {"mean", "covariance", "qfim" | null, "metric" | null,
///  "intrinsic_bound" | null, "weighted_bound" | null, "flags": {...}}
Json to_json(const BoundReport& report);

RealMatrix matrix_from_json(const Json& j);

/// Parses a file; failures throw Error(parse).
Json read_json_file(const std::string& path);

}  // namespace qmetro

#endif  // QMETRO_IO_HPP
