#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gfbimap/normalizer.hpp"
#include "gfbimap/oracle.hpp"

using namespace gfbimap;

TEST_CASE("GL enumeration counts") {
  auto count_gl = [](int q, int n) {
    GLIterator it(Field::get(q, 1), n);
    Mat M;
    std::uint64_t c = 0;
    while (it.next(M)) {
      ++c;
    }
    return c;
  };
  CHECK(count_gl(2, 1) == 1);
  CHECK(count_gl(3, 1) == 2);
  CHECK(count_gl(2, 2) == 6);
  CHECK(count_gl(3, 2) == 48);
  CHECK(count_gl(2, 3) == 168);
  CHECK(count_gl(5, 2) == 480);
  CHECK(gl_order(BigInt(2), 4) == 20160);
}

TEST_CASE("brute autotopisms of fixtures") {
  // mult-2: GL_1(2) x GL_1(2) is trivial
  CHECK(brute_autotopisms(fixture_mult(2)).order() == 1);
  // mult-3: all scalar pairs work
  CHECK(brute_autotopisms(fixture_mult(3)).order() == 4);
  // sympl2-2: G is determined by F (q - 1 = 1)
  CHECK(brute_autotopisms(fixture_sympl2(2)).order() == 6);
  // at q = 3 the h-scalar contributes a factor q - 1
  CHECK(brute_autotopisms(fixture_sympl2(3)).order() == 96);
}

TEST_CASE("brute pseudo-isometries and isometries") {
  CHECK(brute_pseudo_isometries(fixture_sympl2(3)).order() == 48);
  CHECK(brute_isometries(fixture_sympl2(3)).order() == 24);  // Sp_2(3)
  CHECK(brute_pseudo_isometries(fixture_sym2(3)).order() == 16);
  CHECK(brute_isometries(fixture_sym2(3)).order() == 8);  // O_2(3), minus type
  CHECK(brute_isometries(fixture_mult(2)).order() == 1);
  CHECK(brute_isometries(fixture_mult(5)).order() == 2);  // {+1, -1}
  CHECK(brute_pseudo_isometries(fixture_heis(5)).order() == 480);
}

TEST_CASE("brute normalizer of simple pair algebras") {
  const Field& F2 = Field::get(2, 1);
  // scalars on k^2, k^2: everything normalizes
  AlgebraPair scalars =
      algebra_from_pairs(F2, 2, 2, {pair_identity(F2, 2, 2)});
  CHECK(brute_normalizer(scalars).order() == 36);

  // full M2 x M2
  std::vector<MatPair> gens;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Mat X(F2, 2, 2), Z(F2, 2, 2);
      X.at(i, j) = F2.one();
      gens.push_back({X, Z});
      gens.push_back({Z, X});
    }
  AlgebraPair full = algebra_from_pairs(F2, 2, 2, gens);
  CHECK(full.dim() == 8);
  CHECK(brute_normalizer(full).order() == 36);
}

TEST_CASE("element tables close under products") {
  Rng rng(1);
  ElementTable tab = brute_autotopisms(fixture_sympl2(3));
  CHECK(tab.closed_under_random_products(rng));
  ElementTable tab2 = brute_isometries(fixture_sym2(3));
  CHECK(tab2.closed_under_random_products(rng));
}

TEST_CASE("closure orders") {
  const Field& F3 = Field::get(3, 1);
  CHECK(closure_order(std::vector<GenPair>{}, 100) == 1);
  // one transvection has order p
  GenPair t{mat_from_ints(F3, 2, 2, {1, 1, 0, 1}), mat_identity(F3, 2)};
  CHECK(closure_order({t}, 100) == 3);
  // standard generating pair of GL_2(3)
  GenPair a{mat_from_ints(F3, 2, 2, {2, 0, 0, 1}), mat_identity(F3, 2)};
  GenPair b{mat_from_ints(F3, 2, 2, {2, 1, 2, 0}), mat_identity(F3, 2)};
  CHECK(closure_order({a, b, t}, 100) == 48);
  // cap fires
  CHECK_THROWS_AS(closure_order({a, b, t}, 10), ClosureCapExceeded);
}

TEST_CASE("caps guard the scans") {
  Caps tiny;
  tiny.filter = 10;
  CHECK_THROWS_AS(brute_autotopisms(fixture_sympl2(3), tiny), CapExceeded);
}

TEST_CASE("brute quadstab examples") {
  const Field& F2 = Field::get(2, 1);
  // W = span{I2}: order |GL_2(2)| = 6 (x free, y = x^-T scaled)
  Subspace W = Subspace::from_rows(mat_flatten(mat_identity(F2, 2)));
  CHECK(brute_quadstab(F2, 2, 2, W).order() == 6);
  // W = everything: all pairs
  CHECK(brute_quadstab(F2, 2, 2, Subspace::full(F2, 4)).order() == 36);
}
