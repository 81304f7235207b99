#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gfbimap/pgroup.hpp"

using namespace gfbimap;

TEST_CASE("Baer bimap of named groups") {
  // Heisenberg p^3: n = 2, m = 1, c_12 = 1 gives sympl2-p slice for slice
  for (auto p : {3, 5}) {
    PGroupData G;
    G.p = p;
    G.n = 2;
    G.m = 1;
    G.c[{0, 1}] = {Field::get(p, 1).one()};
    Bimap bm = baer_bimap(G);
    Bimap sy = fixture_sympl2(p);
    REQUIRE(bm.w == 1);
    CHECK(bm.slices[0] == sy.slices[0]);
    CHECK(bm.alternating);
  }

  // abelian group: w = 0 top bimap
  PGroupData A;
  A.p = 3;
  A.n = 3;
  A.m = 2;
  Bimap top = baer_bimap(A);
  CHECK(top.w == 0);

  // random alternating constants, n = 4, m = 2: full alternating bimap
  PGroupData R;
  R.p = 3;
  R.n = 4;
  R.m = 2;
  Rng rng(12);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      std::vector<Fe> v{static_cast<Fe>(rng.below(3)),
                        static_cast<Fe>(rng.below(3))};
      R.c[{i, j}] = v;
    }
  Bimap rb = baer_bimap(R);
  CHECK(rb.alternating);
  CHECK(rb.w <= 2);

  PGroupData bad;
  bad.p = 3;
  bad.n = 2;
  bad.m = 1;
  bad.c[{1, 0}] = {1};
  CHECK_THROWS_AS(baer_bimap(bad), NotAlternating);
}

TEST_CASE("pseudo isometry group of heis-3 via the star pipeline") {
  Bimap h3 = fixture_heis(3);
  Caps caps;
  PseudoIsometryResult r = pseudo_isometry_group(h3, 1, caps);
  REQUIRE(r.order.has_value());
  CHECK(*r.order == 48);  // (p^2-1)(p^2-p) at p = 3
  ElementTable brute = brute_pseudo_isometries(h3);
  CHECK(*r.order == brute.order());
  // every brute pseudo-isometry is in the closure of the returned gens
  auto elems = closure_elements_single(
      [&] {
        std::vector<Mat> out;
        for (auto& t : r.gens.gens) out.push_back(t.g);
        return out;
      }(),
      1000);
  CHECK(BigInt(elems.size()) == brute.order());
}

TEST_CASE("pseudo isometry group of heis-5") {
  Bimap h5 = fixture_heis(5);
  Caps caps;
  PseudoIsometryResult r = pseudo_isometry_group(h5, 2, caps);
  REQUIRE(r.order.has_value());
  CHECK(*r.order == 480);
  CHECK(brute_pseudo_isometries(h5).order() == 480);
}

TEST_CASE("wedge of the adjoint algebra has orbit 1 (equality case)") {
  // o = wedge-_A for A = Adj(sympl2-3): Pseudo = N* with no stabilizer cut
  Bimap sy = fixture_sympl2(3);
  Caps caps;
  PseudoIsometryResult r = pseudo_isometry_group(sy, 3, caps);
  CHECK(r.orbit == 1);
  REQUIRE(r.order.has_value());
  REQUIRE(r.nstar_order.has_value());
  CHECK(*r.order == *r.nstar_order);
}

TEST_CASE("quadstab embed shapes") {
  const Field& F3 = Field::get(3, 1);
  StabilizerProblem P;
  P.F = &F3;
  P.a = 2;
  P.b = 2;
  P.W = gram_span(fixture_sympl2(3));
  AlgebraPair A = quadstab_embed(P);
  CHECK(A.dim() == 3);  // 2 scalars + 1 radical
  CHECK(radical(A, 1).dim() == 1);

  // W = 0: block scalars, J = 0
  StabilizerProblem P0;
  P0.F = &F3;
  P0.a = 2;
  P0.b = 2;
  P0.W = Subspace::zero(F3, 4);
  AlgebraPair A0 = quadstab_embed(P0);
  CHECK(A0.dim() == 2);
  CHECK(radical(A0, 1).dim() == 0);

  // W = everything: radical of dimension ab
  StabilizerProblem Pf;
  Pf.F = &F3;
  Pf.a = 2;
  Pf.b = 2;
  Pf.W = Subspace::full(F3, 4);
  AlgebraPair Af = quadstab_embed(Pf);
  CHECK(radical(Af, 1).dim() == 4);
}

TEST_CASE("quadstab solve matches the brute filter") {
  Caps caps;
  const Field& F2 = Field::get(2, 1);

  // W = span{I2} over GF(2): order 6
  {
    StabilizerProblem P;
    P.F = &F2;
    P.a = 2;
    P.b = 2;
    P.W = Subspace::from_rows(mat_flatten(mat_identity(F2, 2)));
    QuadstabResult r = quadstab_solve(P, 1, caps);
    REQUIRE(r.order.has_value());
    CHECK(*r.order == 6);
    CHECK(brute_quadstab(F2, 2, 2, P.W).order() == 6);
  }
  // W = full space: all of GL_a x GL_b
  {
    StabilizerProblem P;
    P.F = &F2;
    P.a = 2;
    P.b = 2;
    P.W = Subspace::full(F2, 4);
    QuadstabResult r = quadstab_solve(P, 2, caps);
    REQUIRE(r.order.has_value());
    CHECK(*r.order == 36);
  }
  // W = gram span of sympl2-3: cross-checked against the brute filter
  {
    const Field& F3 = Field::get(3, 1);
    StabilizerProblem P;
    P.F = &F3;
    P.a = 2;
    P.b = 2;
    P.W = gram_span(fixture_sympl2(3));
    QuadstabResult r = quadstab_solve(P, 3, caps);
    REQUIRE(r.order.has_value());
    CHECK(*r.order == brute_quadstab(F3, 2, 2, P.W).order());
  }
  // random W over GF(2) and GF(3)
  Rng rng(999);
  for (int t = 0; t < 6; ++t) {
    const Field& F = Field::get(t % 2 ? 3 : 2, 1);
    Mat rows(F, 1 + static_cast<int>(rng.below(3)), 4);
    for (auto& x : rows.a) x = static_cast<Fe>(rng.below(F.q()));
    StabilizerProblem P;
    P.F = &F;
    P.a = 2;
    P.b = 2;
    P.W = Subspace::from_rows(rows);
    QuadstabResult r = quadstab_solve(P, rng.next(), caps);
    REQUIRE(r.order.has_value());
    CHECK(*r.order == brute_quadstab(F, 2, 2, P.W).order());
  }
}

TEST_CASE("autotopisms via the block embedding match the brute scan") {
  Caps caps;
  for (auto q : {2, 3}) {
    Bimap sy = fixture_sympl2(q);
    QuadstabResult r = autotopisms_via_embedding(sy, 5, caps);
    REQUIRE(r.order.has_value());
    CHECK(*r.order == brute_autotopisms(sy).order());
  }
  Rng rng(321);
  const Field& F2 = Field::get(2, 1);
  for (int t = 0; t < 4; ++t) {
    Bimap bm = random_full_bimap(F2, 2, 2, 1 + static_cast<int>(rng.below(3)), rng);
    QuadstabResult r = autotopisms_via_embedding(bm, rng.next(), caps);
    REQUIRE(r.order.has_value());
    CHECK(*r.order == brute_autotopisms(bm).order());
  }
}

TEST_CASE("hermitian stabilizer matches the brute filter") {
  Caps caps;
  const Field& F3 = Field::get(3, 1);
  // W = span{I2}, symmetric: x W x^T = W is the similitude group of I_2
  StabilizerProblem P;
  P.F = &F3;
  P.a = 2;
  P.b = 2;
  P.W = Subspace::from_rows(mat_flatten(mat_identity(F3, 2)));
  P.hermitian = true;
  HStabResult r = hermitian_stab_solve(P, 7, caps);
  REQUIRE(r.order.has_value());
  // brute: pseudo-isometries of sym2-3
  CHECK(*r.order == brute_pseudo_isometries(fixture_sym2(3)).order());
}
