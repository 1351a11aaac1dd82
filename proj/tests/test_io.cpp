#include <doctest.h>

#include "test_support.hpp"

#include <cstdio>
#include <fstream>

using namespace qmetro;
using namespace qmetro::test;

namespace {

void expect_parse_error(const std::function<void()>& fn) {
  try {
    fn();
    FAIL("expected parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::parse);
  }
}

}  // namespace

TEST_CASE("round_decimal keeps 12 significant digits") {
  CHECK(round_decimal(4.0 / 9.0) == 0.444444444444);
  CHECK(round_decimal(0.5625) == 0.5625);
  CHECK(round_decimal(0.0) == 0.0);
  CHECK(round_decimal(-123456.7890123456) == -123456.789012);
  CHECK(Json(round_decimal(1.0 / 3.0)).dump() == "0.333333333333");
}

TEST_CASE("parametrization JSON round trip") {
  const Parametrization expo = parametrization_from_json(Json::parse(R"({"kind": "exponential", "n": 3})"));
  CHECK(expo.kind() == ParametrizationKind::exponential);
  CHECK(expo.parameter_count() == 8);
  const Parametrization euler = parametrization_from_json(Json::parse(R"({"kind": "euler_su2"})"));
  CHECK(euler.kind() == ParametrizationKind::euler_su2);

  const Json prod = Json::parse(R"({"kind": "product_of_exponentials", "n": 2, "factors": [[1, 0, 0], [0, 0.6, 0.8]]})");
  const Parametrization p = parametrization_from_json(prod);
  CHECK(p.parameter_count() == 2);
  const Parametrization again = parametrization_from_json(to_json(p));
  RealVector t(2);
  t << 0.4, -1.3;
  CHECK(max_abs(unitary_at(p, t) - unitary_at(again, t)) == 0.0);

  expect_parse_error([] { parametrization_from_json(Json::parse(R"({"kind": "spherical"})")); });
  expect_parse_error([] { parametrization_from_json(Json::parse(R"({"n": 2})")); });
  expect_parse_error([] { parametrization_from_json(Json::parse(R"({"kind": "euler_su2", "n": 3})")); });
  expect_parse_error([] { parametrization_from_json(Json::parse(R"([1, 2])")); });
}

TEST_CASE("probe spec JSON") {
  const ProbeSpec su3 = probe_spec_from_json(Json::parse(R"({"kind": "su3_cyclic", "k": 3, "l": 3})"));
  CHECK(su3.kind == ProbeKind::su3_cyclic);
  CHECK(max_abs(make_probe(su3).vector() - make_su3_cyclic(3, 3).vector()) == 0.0);

  const ProbeSpec ghz = probe_spec_from_json(Json::parse(R"({"kind": "ghz", "n": 3, "N": 9})"));
  CHECK(max_abs(make_probe(ghz).vector() - make_ghz(3, 9).vector()) == 0.0);

  const ProbeSpec fock = probe_spec_from_json(Json::parse(R"({"kind": "fock", "occupations": [4, 0]})"));
  CHECK(fock.occupations == std::vector<int>{4, 0});

  const ProbeSpec custom =
      probe_spec_from_json(Json::parse(R"({"kind": "custom", "n": 2, "N": 1, "amplitudes": [0.6, [0, 0.8]]})"));
  REQUIRE(custom.amplitudes.size() == 2);
  CHECK(custom.amplitudes[1] == Complex(0.0, 0.8));
  const ProbeSpec back = probe_spec_from_json(to_json(custom));
  CHECK(back.amplitudes == custom.amplitudes);
  CHECK(probe_spec_from_json(to_json(su3)).k == 3);

  expect_parse_error([] { probe_spec_from_json(Json::parse(R"({"kind": "cat"})")); });
  expect_parse_error([] { probe_spec_from_json(Json::parse(R"({"kind": "ghz", "n": 3})")); });
  expect_parse_error([] { probe_spec_from_json(Json::parse(R"({"kind": "ghz", "n": "three", "N": 2})")); });
  expect_parse_error([] {
    probe_spec_from_json(Json::parse(R"({"kind": "custom", "n": 2, "N": 1, "amplitudes": ["x", 1]})"));
  });
}

TEST_CASE("optimizer config JSON") {
  const OptimizerConfig c = optimizer_config_from_json(
      Json::parse(R"({"restarts": 5, "method": "simplex", "gradient": "analytic", "tolerance": 1e-9})"));
  CHECK(c.restarts == 5);
  CHECK(c.method == OptimizerMethod::simplex);
  CHECK(c.gradient == GradientMode::analytic);
  CHECK(c.tolerance == 1e-9);
  CHECK(c.max_iters == OptimizerConfig{}.max_iters);
  expect_parse_error([] { optimizer_config_from_json(Json::parse(R"({"method": "annealing"})")); });
  expect_parse_error([] { optimizer_config_from_json(Json::parse(R"({"restarts": "many"})")); });
}

TEST_CASE("bound report JSON") {
  BoundRequest request;
  request.chart = Parametrization::exponential(2);
  request.theta = RealVector::Zero(3);
  const Json j = to_json(bound_report(make_noon(4), request));
  CHECK(j.at("intrinsic_bound").get<Real>() == doctest::Approx(0.5625));
  CHECK(j.at("weighted_bound").get<Real>() == doctest::Approx(0.5625));
  CHECK(j.at("covariance").size() == 3);
  CHECK(j.at("covariance")[2][2].get<Real>() == doctest::Approx(4.0));
  CHECK(j.at("flags").at("covariance_singular") == false);
  CHECK(j.at("flags").at("unpolarized_order") == 1);

  const Json singular = to_json(bound_report(make_fock({4, 0}), request));
  CHECK(singular.at("intrinsic_bound").is_null());
  CHECK(singular.at("flags").at("covariance_rank") == 2);

  const Json bare = to_json(bound_report(make_tetrahedron_j2(), BoundRequest{}));
  CHECK(bare.at("qfim").is_null());
  CHECK(bare.at("weighted_bound").is_null());
}

TEST_CASE("matrix and file helpers") {
  const RealMatrix m = matrix_from_json(Json::parse("[[1, 2], [3, 4]]"));
  CHECK(m(1, 0) == 3.0);
  expect_parse_error([] { matrix_from_json(Json::parse("[[1, 2], [3]]")); });
  expect_parse_error([] { matrix_from_json(Json::parse("[]")); });

  const std::string path = "qmetro_io_test.json";
  {
    std::ofstream out(path);
    out << R"({"kind": "noon", "N": 4})";
  }
  CHECK(read_json_file(path).at("N") == 4);
  {
    std::ofstream out(path);
    out << "{not json";
  }
  expect_parse_error([&] { read_json_file(path); });
  std::remove(path.c_str());
  expect_parse_error([] { read_json_file("no/such/file.json"); });
}
