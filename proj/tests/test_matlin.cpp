#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gfbimap/matlin.hpp"

using namespace gfbimap;

TEST_CASE("rref named examples") {
  const Field& F2 = Field::get(2, 1);
  auto r = rref(mat_from_ints(F2, 2, 2, {1, 1, 1, 1}));
  CHECK(r.rank == 1);
  CHECK(r.R.at(0, 0) == 1);
  CHECK(r.R.at(0, 1) == 1);

  const Field& F3 = Field::get(3, 1);
  auto r2 = rref(mat_from_ints(F3, 2, 2, {0, 1, 1, 0}));
  CHECK(r2.rank == 2);
  CHECK(r2.R == mat_identity(F3, 2));

  auto r3 = rref(mat_identity(F3, 3));
  CHECK(r3.rank == 3);
  CHECK(r3.R == mat_identity(F3, 3));
}

TEST_CASE("rref is idempotent and rank-nullity holds on random matrices") {
  Rng rng(404);
  for (auto q : {2, 3, 5}) {
    const Field& F = Field::get(q, 1);
    for (int t = 0; t < 50; ++t) {
      int rows = 1 + static_cast<int>(rng.below(5));
      int cols = 1 + static_cast<int>(rng.below(5));
      Mat M(F, rows, cols);
      for (auto& x : M.a) x = static_cast<Fe>(rng.below(q));
      auto r = rref(M);
      auto r2 = rref(r.R);
      CHECK(r2.R == r.R);
      CHECK(nullspace(M).dim() + r.rank == rows);
    }
  }
}

TEST_CASE("nullspace named examples") {
  const Field& F2 = Field::get(2, 1);
  CHECK(nullspace(mat_zero(F2, 2, 2)).dim() == 2);
  CHECK(nullspace(mat_identity(F2, 2)).dim() == 0);
  Subspace n = nullspace(mat_from_ints(F2, 2, 2, {1, 1, 1, 1}));
  CHECK(n.dim() == 1);
  CHECK(n.basis.at(0, 0) == 1);
  CHECK(n.basis.at(0, 1) == 1);
  // row convention: every basis vector x has x M = 0
  Mat M = mat_from_ints(F2, 2, 2, {1, 1, 1, 1});
  CHECK(mat_mul(n.basis, M).is_zero());
}

TEST_CASE("kronecker product") {
  const Field& F5 = Field::get(5, 1);
  CHECK(kronecker(mat_identity(F5, 2), mat_identity(F5, 2)) ==
        mat_identity(F5, 4));
  Mat s = mat_from_ints(F5, 2, 2, {0, 1, 1, 0});
  CHECK(kronecker(s, mat_identity(F5, 1)) == s);
  Mat a = mat_from_ints(F5, 1, 1, {2});
  CHECK(kronecker(a, a) == mat_from_ints(F5, 1, 1, {4}));
  // mixed-product property on random small matrices
  Rng rng(7);
  for (int t = 0; t < 10; ++t) {
    Mat A(F5, 2, 2), B(F5, 2, 2), C(F5, 2, 2), D(F5, 2, 2);
    for (auto m : {&A, &B, &C, &D})
      for (auto& x : m->a) x = static_cast<Fe>(rng.below(5));
    CHECK(mat_mul(kronecker(A, B), kronecker(C, D)) ==
          kronecker(mat_mul(A, C), mat_mul(B, D)));
  }
}

TEST_CASE("subspace canonical forms") {
  const Field& F3 = Field::get(3, 1);
  Rng rng(99);
  for (int t = 0; t < 30; ++t) {
    // two generating sets of the same space have identical RREF
    Mat A(F3, 3, 4);
    for (auto& x : A.a) x = static_cast<Fe>(rng.below(3));
    Subspace S = Subspace::from_rows(A);
    // random row operations
    Mat B = A;
    for (int ops = 0; ops < 5; ++ops) {
      int i = static_cast<int>(rng.below(3)), j = static_cast<int>(rng.below(3));
      Fe c = static_cast<Fe>(rng.below(3));
      if (i == j) continue;
      for (int col = 0; col < 4; ++col)
        B.at(i, col) = F3.add(B.at(i, col), F3.mul(c, B.at(j, col)));
    }
    CHECK(Subspace::from_rows(B) == S);
  }

  Subspace X = Subspace::from_rows(mat_from_ints(F3, 2, 3, {1, 0, 1, 0, 1, 1}));
  Subspace Y = Subspace::from_rows(mat_from_ints(F3, 1, 3, {1, 2, 0}));
  Subspace sum = subspace_sum(X, Y);
  Subspace inter = subspace_intersect(X, Y);
  CHECK(sum.dim() + inter.dim() == X.dim() + Y.dim());
  CHECK(sum.contains(X));
  CHECK(sum.contains(Y));
  CHECK(X.contains(inter));
  CHECK(Y.contains(inter));
}

TEST_CASE("spin closure") {
  const Field& F2 = Field::get(2, 1);
  // permutation (1 2) sends e1 to e2: spin(e1) = full space
  Mat P = mat_from_ints(F2, 2, 2, {0, 1, 1, 0});
  Subspace e1 = Subspace::from_rows(mat_from_ints(F2, 1, 2, {1, 0}));
  CHECK(spin(e1, {P}).dim() == 2);

  CHECK(spin(Subspace::full(F2, 2), {P}).is_full());

  const Field& F5 = Field::get(5, 1);
  Mat J2 = mat_from_ints(F5, 2, 2, {0, 1, 0, 0});
  Subspace e1f = Subspace::from_rows(mat_from_ints(F5, 1, 2, {1, 0}));
  // e1 J2 = e2, so the spin is the full plane
  Subspace sp = spin(e1f, {J2});
  CHECK(sp.dim() == 2);

  // spin is monotone and idempotent
  Subspace again = spin(sp, {J2});
  CHECK(again == sp);
}

TEST_CASE("solve_left and inverse") {
  const Field& F7 = Field::get(7, 1);
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    Mat A(F7, 3, 3);
    for (auto& x : A.a) x = static_cast<Fe>(rng.below(7));
    if (!mat_is_invertible(A)) continue;
    Mat inv = mat_inverse(A);
    CHECK(mat_mul(A, inv) == mat_identity(F7, 3));
    Mat B(F7, 2, 3);
    for (auto& x : B.a) x = static_cast<Fe>(rng.below(7));
    auto X = solve_left(A, B);
    REQUIRE(X.has_value());
    CHECK(mat_mul(*X, A) == B);
  }
  CHECK_THROWS_AS(mat_inverse(mat_zero(F7, 2, 2)), Singular);
}
