#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "gfbimap/cli.hpp"
#include "gfbimap/json_io.hpp"

using namespace gfbimap;

namespace {

struct RunResult {
  int code;
  std::string out, err;
};

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli_dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const Json& j) {
  std::string path = std::string("/tmp/gfbimap_test_") + name + ".json";
  std::ofstream f(path);
  f << j.dump();
  return path;
}

}  // namespace

TEST_CASE("json round trips") {
  Bimap sy = fixture_sympl2(3);
  Json j = bimap_to_json(sy);
  Bimap back = bimap_from_json(j);
  CHECK(back.w == sy.w);
  CHECK(back.slices[0] == sy.slices[0]);

  AlgebraPair A = adjoint_algebra(sy);
  AlgebraPair A2 = algebra_from_json(algebra_to_json(A));
  CHECK(A2.span == A.span);

  const Field& F4 = Field::get(2, 2);
  Mat M(F4, 2, 2);
  M.at(0, 0) = 3;  // a non-prime-subfield element, serialized as an array
  M.at(1, 1) = 2;
  Mat M2 = mat_from_json(F4, mat_to_json(M));
  CHECK(M2 == M);

  PGroupData G;
  G.p = 3;
  G.n = 2;
  G.m = 1;
  G.c[{0, 1}] = {1};
  PGroupData G2 = pgroup_from_json(pgroup_to_json(G));
  CHECK(G2.c == G.c);

  StarAlgebra SA = star_algebra_of_bimap(sy);
  StarAlgebra SA2 = star_algebra_from_json(star_algebra_to_json(SA));
  CHECK(SA2.span == SA.span);
  for (const Mat& x : SA.basis)
    CHECK(SA2.apply_star(x) == SA.apply_star(x));
}

TEST_CASE("cli adjoint and oracle on fixtures") {
  std::string bimap_path = write_temp("sympl23", bimap_to_json(fixture_sympl2(3)));
  auto r = run({"adjoint", "--in", bimap_path});
  CHECK(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j.at("dim") == 4);
  CHECK(j.at("algebra").contains("star"));

  auto r2 = run({"oracle", "pseudo", "--in", bimap_path});
  CHECK(r2.code == 0);
  CHECK(Json::parse(r2.out).at("order") == "48");

  auto r3 = run({"oracle", "isom", "--in", bimap_path});
  CHECK(Json::parse(r3.out).at("order") == "24");
}

TEST_CASE("cli tensor, exterior and lattice") {
  Bimap sy = fixture_sympl2(3);
  AlgebraPair A = adjoint_algebra(sy);
  std::string apath = write_temp("adj23", algebra_to_json(A));
  auto r = run({"tensor", "--in", apath});
  CHECK(r.code == 0);
  CHECK(Json::parse(r.out).at("dim") == 1);

  auto r2 = run({"exterior", "--in", apath, "--sign", "-"});
  CHECK(r2.code == 0);
  CHECK(Json::parse(r2.out).at("dim") == 1);

  std::string b1 = write_temp("b1", bimap_to_json(fixture_sympl2(3)));
  std::string b2 = write_temp("b2", bimap_to_json(fixture_sym2(3)));
  auto r3 = run({"lattice", "--in", b1, "--with", b2, "--op", "factors"});
  CHECK(r3.code == 0);
  CHECK(Json::parse(r3.out).at("factors_through") == false);
  auto r4 = run({"lattice", "--in", b1, "--with", b2, "--op", "meet"});
  CHECK(Json::parse(r4.out).at("bimap").at("dims").at("w") == 2);
}

TEST_CASE("cli normalizer and star-normalizer") {
  const Field& F2 = Field::get(2, 1);
  AlgebraPair sc = algebra_from_pairs(F2, 2, 2, {pair_identity(F2, 2, 2)});
  std::string apath = write_temp("scalars", algebra_to_json(sc));
  auto r = run({"normalizer", "--in", apath, "--seed", "3"});
  CHECK(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j.at("order") == "36");
  for (const auto& g : j.at("generators")) CHECK(g.contains("tag"));

  std::string bpath = write_temp("sympl23b", bimap_to_json(fixture_sympl2(3)));
  auto r2 = run({"star-normalizer", "--in", bpath});
  CHECK(r2.code == 0);
  CHECK(Json::parse(r2.out).at("order") == "48");

  auto r3 = run({"pseudo", "--in", write_temp("heis3", bimap_to_json(fixture_heis(3)))});
  CHECK(r3.code == 0);
  CHECK(Json::parse(r3.out).at("order") == "48");
}

TEST_CASE("cli quadstab and random") {
  const Field& F2 = Field::get(2, 1);
  StabilizerProblem P;
  P.F = &F2;
  P.a = 2;
  P.b = 2;
  P.W = Subspace::from_rows(mat_flatten(mat_identity(F2, 2)));
  std::string qpath = write_temp("quad", quadstab_to_json(P));
  auto r = run({"quadstab", "--in", qpath});
  CHECK(r.code == 0);
  CHECK(Json::parse(r.out).at("order") == "6");

  auto r2 = run({"random", "--kind", "bimap", "--p", "3", "--a", "2", "--b",
                 "2", "--w", "2", "--seed", "11"});
  CHECK(r2.code == 0);
  Bimap bm = bimap_from_json(Json::parse(r2.out));
  CHECK(bm.w == 2);
}

TEST_CASE("cli verify suites") {
  auto r = run({"verify", "--suite", "galois", "--trials", "10", "--seed", "7"});
  CHECK(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j.at("failed") == 0);
  CHECK(j.at("passed") == 30);  // three checks per trial
}

TEST_CASE("byte-identical output for identical inputs") {
  std::string bpath = write_temp("det", bimap_to_json(fixture_sympl2(3)));
  auto r1 = run({"adjoint", "--in", bpath, "--seed", "5"});
  auto r2 = run({"adjoint", "--in", bpath, "--seed", "5"});
  CHECK(r1.out == r2.out);
  auto r3 = run({"normalizer", "--in",
                 write_temp("detA", algebra_to_json(adjoint_algebra(fixture_sympl2(3)))),
                 "--seed", "5"});
  auto r4 = run({"normalizer", "--in",
                 write_temp("detA", algebra_to_json(adjoint_algebra(fixture_sympl2(3)))),
                 "--seed", "5"});
  CHECK(r3.out == r4.out);
}

TEST_CASE("cli error mapping") {
  auto r = run({"adjoint", "--in", "/nonexistent/x.json"});
  CHECK(r.code == 1);
  CHECK(r.err.find("error") != std::string::npos);

  // cap exceeded maps to exit 2
  std::string bpath = write_temp("heis5", bimap_to_json(fixture_heis(5)));
  auto r2 = run({"oracle", "pseudo", "--in", bpath, "--cap", "10"});
  CHECK(r2.code == 2);
  CHECK(r2.err.find("CapExceeded") != std::string::npos);
}
