#include <doctest.h>

#include "qmetro/qmetro.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using qmetro::Json;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

class Workdir {
 public:
  Workdir() {
    dir_ = fs::temp_directory_path() / ("qmetro_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  ~Workdir() { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& content) const {
    const fs::path p = dir_ / name;
    std::ofstream(p) << content;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  Run run(const std::string& args) const {
    const std::string err_path = path("stderr.txt");
    const std::string cmd = std::string(QMETRO_CLI) + " " + args + " 2>" + err_path;
    Run r;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, pipe)) > 0;) r.out.append(buf, n);
    const int status = ::pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(err_path);
    r.err.assign(std::istreambuf_iterator<char>(in), {});
    return r;
  }

 private:
  fs::path dir_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("bound: tetrahedron under the Euler chart") {
  Workdir w;
  const auto probe = w.file("tetra.json", R"({"kind": "tetrahedron_j2"})");
  const auto chart = w.file("euler.json", R"({"kind": "euler_su2"})");
  const Run r = w.run("bound " + probe + " " + chart + " --theta=0.3,1.1,-0.4 --weight intrinsic");
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j.at("intrinsic_bound").get<double>() == doctest::Approx(0.375).epsilon(1e-12));
  CHECK(j.at("weighted_bound").get<double>() == doctest::Approx(0.375).epsilon(1e-10));
  CHECK(j.at("flags").at("saturable") == true);
  CHECK(j.at("flags").at("unpolarized_order") == 2);

  const Run ident = w.run("bound " + probe + " " + chart + " --theta=0.3,1.1,-0.4 --weight identity");
  REQUIRE(ident.code == 0);
  CHECK(Json::parse(ident.out).at("weighted_bound").get<double>() != doctest::Approx(0.375));

  const auto weight = w.file("w.json", "[[2, 0, 0], [0, 1, 0], [0, 0, 1]]");
  CHECK(w.run("bound " + probe + " " + chart + " --theta=0.3,1.1,-0.4 --weight " + weight).code == 0);
}

TEST_CASE("bound: singular information exits with 2") {
  Workdir w;
  const auto stretched = w.file("fock.json", R"({"kind": "fock", "occupations": [4, 0]})");
  const auto tetra = w.file("tetra.json", R"({"kind": "tetrahedron_j2"})");
  const auto chart = w.file("euler.json", R"({"kind": "euler_su2"})");

  const Run cov = w.run("bound " + stretched + " " + chart + " --theta=0.3,1.1,-0.4");
  CHECK(cov.code == 2);
  const Json diag = Json::parse(cov.err);
  CHECK(diag.at("flags").at("covariance_singular") == true);
  CHECK(diag.at("rank") == 2);

  const Run pole = w.run("bound " + tetra + " " + chart + " --theta=0.3,0,-0.4 --weight identity");
  CHECK(pole.code == 2);
  CHECK(Json::parse(pole.err).at("flags").at("qfim_singular") == true);

  const Run pinv = w.run("bound " + stretched + " " + chart + " --theta=0.3,1.1,-0.4 --pseudo-inverse");
  CHECK(pinv.code == 0);
  CHECK(Json::parse(pinv.out).at("flags").at("pseudo_inverse") == true);
}

TEST_CASE("bound: usage and parse errors exit with 1") {
  Workdir w;
  const auto tetra = w.file("tetra.json", R"({"kind": "tetrahedron_j2"})");
  const auto chart = w.file("euler.json", R"({"kind": "euler_su2"})");
  const auto broken = w.file("broken.json", "{kind:");
  CHECK(w.run("bound " + tetra + " " + chart + " --theta=0.3,abc,1").code == 1);
  CHECK(w.run("bound " + tetra + " " + chart + " --theta=0.3,1").code == 1);
  CHECK(w.run("bound " + tetra + " " + broken).code == 1);
  CHECK(w.run("bound " + tetra + " " + w.path("missing.json")).code == 1);
  CHECK(w.run("bound " + tetra).code == 1);
  CHECK(w.run("").code == 1);
  CHECK(w.run("frobnicate").code == 1);
}

TEST_CASE("check subcommand") {
  Workdir w;
  const Run su3 = w.run("check " + w.file("su3.json", R"({"kind": "su3_cyclic", "k": 3, "l": 3})"));
  REQUIRE(su3.code == 0);
  const Json j = Json::parse(su3.out);
  CHECK(j.at("second_order") == true);
  CHECK(j.at("intrinsic_bound").get<double>() == doctest::Approx(j.at("floor").get<double>()).epsilon(1e-12));

  const Run ghz = w.run("check " + w.file("ghz.json", R"({"kind": "ghz", "n": 3, "N": 9})"));
  REQUIRE(ghz.code == 0);
  CHECK(Json::parse(ghz.out).at("second_order") == false);

  const Run tetra = w.run("check " + w.file("tetra.json", R"({"kind": "tetrahedron_j2"})"));
  REQUIRE(tetra.code == 0);
  CHECK(Json::parse(tetra.out).at("saturable") == true);

  CHECK(w.run("check " + w.file("bad.json", R"({"kind": "su3_cyclic", "k": 2, "l": 2})")).code == 1);
}

TEST_CASE("optimize subcommand") {
  Workdir w;
  const Run r = w.run("optimize --n 2 --N 4 --seed 7");
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(std::abs(j.at("bound_achieved").get<double>() - 0.375) < 0.00375);
  CHECK(j.at("converged") == true);
  CHECK(j.at("amplitudes").size() == 5);
  CHECK(w.run("optimize --n 2 --N 4 --seed 7").out == r.out);

  CHECK(w.run("optimize --n 2 --N 1 --seed 7").code == 2);
  CHECK(w.run("optimize --n 2 --N 4").code == 1);
  const auto one_step = w.file("cfg.json", R"({"max_iters": 1, "restarts": 2})");
  CHECK(w.run("optimize --n 3 --N 3 --seed 7 " + one_step).code == 3);
}

TEST_CASE("scan subcommand") {
  Workdir w;
  const std::string csv = w.path("scan.csv"), svg = w.path("scan.svg");
  const Run r = w.run("scan --n 2 --nmin 1 --nmax 8 --out " + csv + " --plot " + svg);
  REQUIRE(r.code == 0);
  const std::string text = slurp(csv);
  CHECK(text.rfind("n,N,casimir,cs_ghz,cs_floor,cs_optimized\n", 0) == 0);
  CHECK(text.find("\n2,4,6,0.5625,0.375,\n") != std::string::npos);
  CHECK(text.find("\n2,2,2,singular,1.125,\n") != std::string::npos);
  CHECK(slurp(svg).find("<svg") != std::string::npos);

  const Run stdout_run = w.run("scan --n 2 --nmin 1 --nmax 8");
  CHECK(stdout_run.out == text);

  const std::string opt = "scan --n 2 --nmin 2 --nmax 5 --states ghz,floor,optimized --seed 4 --jobs 2";
  const Run a = w.run(opt), b = w.run(opt);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);

  CHECK(w.run("scan --n 2 --nmin 1 --nmax 4 --states optimized").code == 1);
  CHECK(w.run("scan --n 2 --nmin 1 --nmax 4 --states ghz,squeezed").code == 1);
  CHECK(w.run("scan --n 2 --nmin 5 --nmax 4").code == 1);
}
