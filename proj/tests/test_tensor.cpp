#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gfbimap/tensor.hpp"

using namespace gfbimap;

namespace {

std::vector<MatPair> random_pair_set(const Field& F, int a, int b, int count,
                                     Rng& rng) {
  std::vector<MatPair> out;
  for (int t = 0; t < count; ++t) {
    MatPair p{Mat(F, a, a), Mat(F, b, b)};
    for (auto& x : p.X.a) x = static_cast<Fe>(rng.below(F.q()));
    for (auto& x : p.Y.a) x = static_cast<Fe>(rng.below(F.q()));
    out.push_back(p);
  }
  return out;
}

}  // namespace

TEST_CASE("tensor_over dimensions") {
  const Field& F2 = Field::get(2, 1);
  // S = scalars: plain tensor product of dimension 4
  auto T = tensor_over(F2, 2, 2, {pair_identity(F2, 2, 2)});
  CHECK(T.product.w == 4);

  // S = Adj(sympl2-3): dimension 1, and the relations have rank 3
  Bimap sy = fixture_sympl2(3);
  AlgebraPair A = adjoint_algebra(sy);
  auto T2 = tensor_over(*sy.F, 2, 2, A.basis);
  CHECK(T2.relations.dim() == 3);
  CHECK(T2.product.w == 1);

  // diagonal k x k with transposed actions: dimension 2
  const Field& F3 = Field::get(3, 1);
  Mat e11 = mat_from_ints(F3, 2, 2, {1, 0, 0, 0});
  Mat e22 = mat_from_ints(F3, 2, 2, {0, 0, 0, 1});
  auto T3 = tensor_over(F3, 2, 2, {{e11, e22}, {e22, e11}});
  CHECK(T3.product.w == 2);
}

TEST_CASE("exterior quotients") {
  const Field& F3 = Field::get(3, 1);
  // scalars, n = 2, sign -: dimension 1
  auto E1 = exterior_over(F3, 2, {pair_identity(F3, 2, 2)}, '-');
  CHECK(E1.product.w == 1);
  // n = 3: dimension 3
  auto E2 = exterior_over(F3, 3, {pair_identity(F3, 3, 3)}, '-');
  CHECK(E2.product.w == 3);
  // over Adj(sympl2-3): still dimension 1
  Bimap sy = fixture_sympl2(3);
  AlgebraPair A = adjoint_algebra(sy);
  auto E3 = exterior_over(F3, 2, A.basis, '-');
  CHECK(E3.product.w == 1);
  // v wedge v = 0 on the returned bimap
  for (int i = 0; i < 2; ++i) {
    Mat v(F3, 1, 2);
    v.at(0, i) = F3.one();
    CHECK(bimap_value(E3.product, v, v).is_zero());
  }
  // char 2 symmetric quotient is rejected
  const Field& F2 = Field::get(2, 1);
  CHECK_THROWS_AS(exterior_over(F2, 2, {pair_identity(F2, 2, 2)}, '+'),
                  CharTwo);
}

TEST_CASE("induced map and tensor recognition") {
  Bimap sy = fixture_sympl2(3);
  AlgebraPair A = adjoint_algebra(sy);
  InducedMap im = induced_map(sy, A.basis);
  CHECK(im.tau.rows == 1);
  CHECK(im.tau.cols == 1);
  CHECK(mat_is_invertible(im.tau));
  CHECK(is_tensor_product(sy));
  CHECK(is_tensor_product(fixture_mult(3)));

  // scalars only: the induced map is the flattened slice matrix
  InducedMap im2 = induced_map(sy, {pair_identity(*sy.F, 2, 2)});
  CHECK(im2.tau.rows == 4);
  CHECK(im2.tau.cols == 1);

  // a bimap that is not a tensor product: 3-dim quotient of the full tensor
  const Field& F2 = Field::get(2, 1);
  Subspace K = Subspace::from_rows(mat_from_ints(F2, 1, 4, {1, 0, 0, 1}));
  Bimap q = regular_mod(F2, 2, 2, K).bimap;
  AlgebraPair Aq = adjoint_algebra(q);
  if (Aq.dim() == 1) CHECK(!is_tensor_product(q));

  // NotAdjoint when S is outside Adj(o)
  const Field& F3 = Field::get(3, 1);
  Mat e12 = mat_from_ints(F3, 2, 2, {0, 1, 0, 0});
  CHECK_THROWS_AS(induced_map(sy, {{e12, mat_zero(F3, 2, 2)}}), NotAdjoint);
}

TEST_CASE("galois closure is idempotent and extensive") {
  Rng rng(606);
  for (auto q : {2, 3}) {
    const Field& F = Field::get(q, 1);
    for (int t = 0; t < 15; ++t) {
      auto S = random_pair_set(F, 2, 2, 1 + static_cast<int>(rng.below(2)), rng);
      AlgebraPair C1 = galois_closure(F, 2, 2, S);
      // extensive: S inside the closure
      for (const auto& s : S) CHECK(C1.contains(s));
      AlgebraPair C2 = galois_closure(F, 2, 2, C1.basis);
      CHECK(C1.span == C2.span);
    }
  }
  // closure identity: Adj(tensor_over(Adj(o))) = Adj(o)
  for (auto q : {2, 3}) {
    Bimap sy = fixture_sympl2(q);
    AlgebraPair A = adjoint_algebra(sy);
    AlgebraPair C = galois_closure(*sy.F, 2, 2, A.basis);
    CHECK(C.span == A.span);
  }
}

TEST_CASE("Galois biconditional on random instances") {
  Rng rng(707);
  const Field& F2 = Field::get(2, 1);
  int checked = 0;
  for (int t = 0; t < 60; ++t) {
    Bimap bm = random_full_bimap(F2, 2, 2, 1 + static_cast<int>(rng.below(3)), rng);
    auto S = random_pair_set(F2, 2, 2, 1, rng);
    // S <= Adj(o) iff tensor_over(S) factors through o
    bool inside = true;
    for (const auto& s : S)
      for (const Mat& M : bm.slices)
        if (!(mat_mul(s.X, M) == mat_mul(M, s.Y))) inside = false;
    TensorPresentation T = tensor_over(F2, 2, 2, S);
    bool factors = factors_through(T.product, bm).has_value();
    CHECK(inside == factors);
    ++checked;
  }
  CHECK(checked == 60);
}

TEST_CASE("tensor dimension is antitone in S") {
  Rng rng(808);
  const Field& F3 = Field::get(3, 1);
  for (int t = 0; t < 10; ++t) {
    auto S1 = random_pair_set(F3, 2, 2, 1, rng);
    auto S2 = S1;
    S2.push_back(random_pair_set(F3, 2, 2, 1, rng)[0]);
    CHECK(tensor_over(F3, 2, 2, S1).product.w >=
          tensor_over(F3, 2, 2, S2).product.w);
  }
}
