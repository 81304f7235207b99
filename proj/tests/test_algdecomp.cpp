#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gfbimap/algdecomp.hpp"
#include "gfbimap/pgroup.hpp"

using namespace gfbimap;

namespace {

AlgebraPair upper_triangular_pair(const Field& F) {
  Mat e11 = mat_from_ints(F, 2, 2, {1, 0, 0, 0});
  Mat e12 = mat_from_ints(F, 2, 2, {0, 1, 0, 0});
  Mat e22 = mat_from_ints(F, 2, 2, {0, 0, 0, 1});
  return algebra_from_pairs(F, 2, 2, {{e11, e11}, {e12, e12}, {e22, e22}});
}

AlgebraPair full_matrix_pair(const Field& F, int n) {
  std::vector<MatPair> gens;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Mat X(F, n, n);
      X.at(i, j) = F.one();
      gens.push_back({X, X});
    }
  return algebra_from_pairs(F, n, n, gens);
}

AlgebraPair random_envelope(const Field& F, int a, int b, int ngens, Rng& rng) {
  std::vector<MatPair> gens;
  for (int t = 0; t < ngens; ++t) {
    MatPair p{Mat(F, a, a), Mat(F, b, b)};
    for (auto& x : p.X.a) x = static_cast<Fe>(rng.below(F.q()));
    for (auto& x : p.Y.a) x = static_cast<Fe>(rng.below(F.q()));
    gens.push_back(p);
  }
  return envelope(F, a, b, gens);
}

}  // namespace

TEST_CASE("envelope examples") {
  const Field& F2 = Field::get(2, 1);
  AlgebraPair trivial = envelope(F2, 2, 2, {});
  CHECK(trivial.dim() == 1);
  CHECK(trivial.unital);

  // (E12, 0) in M2 x M1: E12^2 = 0 gives a 2-dimensional algebra
  Mat e12 = mat_from_ints(F2, 2, 2, {0, 1, 0, 0});
  AlgebraPair nil = envelope(F2, 2, 1, {{e12, mat_zero(F2, 1, 1)}});
  CHECK(nil.dim() == 2);

  // permutation of order 2 over GF(3): group algebra of C2, dim 2
  const Field& F3 = Field::get(3, 1);
  Mat P = mat_from_ints(F3, 2, 2, {0, 1, 1, 0});
  AlgebraPair grp = envelope(F3, 2, 2, {{P, P}});
  CHECK(grp.dim() == 2);
  CHECK(algebra_is_closed(grp));
}

TEST_CASE("radical examples") {
  const Field& F3 = Field::get(3, 1);
  // full M2 diagonal pair is semisimple
  AlgebraPair full = full_matrix_pair(F3, 2);
  CHECK(radical(full, 1).dim() == 0);

  // upper-triangular: radical is the strict upper part
  AlgebraPair ut = upper_triangular_pair(F3);
  Subspace J = radical(ut, 2);
  CHECK(J.dim() == 1);
  MatPair z = subspace_pairs(F3, J, 2, 2)[0];
  CHECK(z.X.at(0, 0) == 0);
  CHECK(z.X.at(1, 1) == 0);
  CHECK(z.X.at(1, 0) == 0);
  CHECK(z.X.at(0, 1) != 0);

  // 3.4-style block algebra of sympl2-3: radical has the dimension of the
  // Gram span
  StabilizerProblem P;
  P.F = &F3;
  P.a = 2;
  P.b = 2;
  P.W = gram_span(fixture_sympl2(3));
  AlgebraPair blk = quadstab_embed(P);
  CHECK(blk.dim() == 3);
  CHECK(radical(blk, 3).dim() == 1);
}

TEST_CASE("wedderburn complement examples") {
  const Field& F3 = Field::get(3, 1);
  AlgebraPair full = full_matrix_pair(F3, 2);
  Subspace J0 = radical(full, 1);
  CHECK(wedderburn_complement(full, J0, 1) == full.span);

  AlgebraPair ut = upper_triangular_pair(F3);
  Subspace J = radical(ut, 2);
  Subspace S = wedderburn_complement(ut, J, 2);
  CHECK(S.dim() == 2);
  // S is a subalgebra intersecting J trivially
  CHECK(subspace_intersect(S, J).dim() == 0);
  for (const auto& p : subspace_pairs(F3, S, 2, 2))
    for (const auto& q : subspace_pairs(F3, S, 2, 2))
      CHECK(S.contains(pair_flatten(pair_mul(p, q))));

  // block algebra: complement = block scalars, dim 2
  StabilizerProblem P;
  P.F = &F3;
  P.a = 2;
  P.b = 2;
  P.W = gram_span(fixture_sympl2(3));
  AlgebraPair blk = quadstab_embed(P);
  Subspace Jb = radical(blk, 3);
  Subspace Sb = wedderburn_complement(blk, Jb, 3);
  CHECK(Sb.dim() == 2);
}

TEST_CASE("central primitive idempotents") {
  const Field& F2 = Field::get(2, 1);
  // scalars: single idempotent 1
  AlgebraPair sc = envelope(F2, 2, 2, {});
  auto E1 = central_primitive_idempotents(sc, sc.span, 1);
  CHECK(E1.size() == 1);
  CHECK(pair_eq(E1[0], pair_identity(F2, 2, 2)));

  // diagonal 2x2 over GF(2): {E11, E22}
  Mat e11 = mat_from_ints(F2, 2, 2, {1, 0, 0, 0});
  Mat e22 = mat_from_ints(F2, 2, 2, {0, 0, 0, 1});
  AlgebraPair diag = algebra_from_pairs(F2, 2, 2, {{e11, e11}, {e22, e22}});
  auto E2 = central_primitive_idempotents(diag, diag.span, 1);
  CHECK(E2.size() == 2);

  // GF(4) as scalars over GF(2): one factor with m = 2
  Mat C = mat_from_ints(F2, 2, 2, {0, 1, 1, 1});
  AlgebraPair gf4 = envelope(F2, 2, 2, {{C, C}});
  CHECK(gf4.dim() == 2);
  auto E3 = central_primitive_idempotents(gf4, gf4.span, 1);
  CHECK(E3.size() == 1);
}

TEST_CASE("wedderburn decomposition with factor parameters") {
  const Field& F3 = Field::get(3, 1);
  // full M2-pair: single factor with d = 2, m = 1
  WedderburnData W = wedderburn_decompose(full_matrix_pair(F3, 2), 5);
  REQUIRE(W.factors.size() == 1);
  CHECK(W.factors[0].d == 2);
  CHECK(W.factors[0].m == 1);
  CHECK(W.c == 0);

  // GF(4)-scalars: d = 1, m = 2
  const Field& F2 = Field::get(2, 1);
  Mat C = mat_from_ints(F2, 2, 2, {0, 1, 1, 1});
  WedderburnData W4 = wedderburn_decompose(envelope(F2, 2, 2, {{C, C}}), 5);
  REQUIRE(W4.factors.size() == 1);
  CHECK(W4.factors[0].d == 1);
  CHECK(W4.factors[0].m == 2);

  // iso round-trip on the M2 factor
  const auto& f = W.factors[0];
  for (const auto& p : f.ese_basis) {
    DMat img = iso_apply(W.A, f, p);
    MatPair back = iso_inverse(W.A, f, img);
    CHECK(pair_eq(back, p));
  }
  // iso is multiplicative
  for (const auto& p : f.ese_basis)
    for (const auto& q : f.ese_basis) {
      DMat lhs = iso_apply(W.A, f, pair_mul(p, q));
      // multiply images over Delta
      const Field& F = F3;
      DMat a = iso_apply(W.A, f, p), b = iso_apply(W.A, f, q);
      DMat prod(4);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          for (int k = 0; k < 2; ++k)
            prod[i * 2 + j] = poly_mod(
                F,
                poly_add(F, prod[i * 2 + j],
                         poly_mul(F, a[i * 2 + k], b[k * 2 + j])),
                f.omega_minpoly);
      for (int t = 0; t < 4; ++t)
        CHECK(poly_mod(F, lhs[t], f.omega_minpoly) == prod[t]);
    }
}

TEST_CASE("radical series layers") {
  const Field& F3 = Field::get(3, 1);
  // semisimple: single layer X0 = U
  WedderburnData W = wedderburn_decompose(full_matrix_pair(F3, 2), 7);
  LayerData L = radical_series_layers(W);
  CHECK(L.X.size() == 1);
  CHECK(L.X[0].is_full());
  CHECK(L.Y[0].is_full());
  CHECK(L.m[0][0] == 1);
  CHECK(L.n[0][0] == 1);

  // upper-triangular: series of length 2, UJ = span{e2 is hit}
  AlgebraPair ut = upper_triangular_pair(F3);
  WedderburnData Wu = wedderburn_decompose(ut, 8);
  CHECK(Wu.c == 1);
  LayerData Lu = radical_series_layers(Wu);
  CHECK(Lu.UJ[1].dim() == 1);
  CHECK(Lu.X.size() == 2);
  CHECK(Lu.X[0].dim() + Lu.X[1].dim() == 2);

  // block algebra of sympl2-3: c = 1, layer dims 2 + 2
  StabilizerProblem P;
  P.F = &F3;
  P.a = 2;
  P.b = 2;
  P.W = gram_span(fixture_sympl2(3));
  WedderburnData Wb = wedderburn_decompose(quadstab_embed(P), 9);
  CHECK(Wb.c == 1);
  LayerData Lb = radical_series_layers(Wb);
  CHECK(Lb.X[0].dim() == 2);
  CHECK(Lb.X[1].dim() == 2);
  REQUIRE(Wb.factors.size() == 2);
  // each factor supports one layer with multiplicity 2 on each side
  for (size_t e = 0; e < 2; ++e) {
    int total_m = 0, total_n = 0;
    for (int i = 0; i <= Wb.c; ++i) {
      total_m += Lb.m[e][i];
      total_n += Lb.n[e][i];
    }
    CHECK(total_m == 2);
    CHECK(total_n == 2);
  }
}

TEST_CASE("idempotent equivalence witnesses") {
  const Field& F3 = Field::get(3, 1);
  // diagonal k x k acting diagonally with symmetric layers: coordinate swap
  Mat e11 = mat_from_ints(F3, 2, 2, {1, 0, 0, 0});
  Mat e22 = mat_from_ints(F3, 2, 2, {0, 0, 0, 1});
  AlgebraPair diag = algebra_from_pairs(F3, 2, 2, {{e11, e11}, {e22, e22}});
  WedderburnData W = wedderburn_decompose(diag, 11);
  REQUIRE(W.factors.size() == 2);
  LayerData L = radical_series_layers(W);
  auto sw = idempotent_equivalent(W, L, 0, 1, 3);
  REQUIRE(sw.has_value());
  CHECK(normalizes(*sw, diag));
  // identity witness for e = e'
  auto id = idempotent_equivalent(W, L, 0, 0, 3);
  REQUIRE(id.has_value());
  CHECK(gp_is_identity(*id));

  // m mismatch: k x GF(4)-factor pair
  const Field& F2 = Field::get(2, 1);
  Mat C = mat_from_ints(F2, 2, 2, {0, 1, 1, 1});
  Mat X(F2, 3, 3), Y(F2, 3, 3);
  // block diag: GF(4) block on coords 0,1 and the scalar block on coord 2
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) X.at(i, j) = C.at(i, j);
  AlgebraPair mixed = envelope(F2, 3, 3, {{X, X}});
  WedderburnData Wm = wedderburn_decompose(mixed, 13);
  REQUIRE(Wm.factors.size() == 2);
  LayerData Lm = radical_series_layers(Wm);
  CHECK(!idempotent_equivalent(Wm, Lm, 0, 1, 5).has_value());
}

TEST_CASE("malcev transitivity smoke test") {
  const Field& F3 = Field::get(3, 1);
  AlgebraPair ut = upper_triangular_pair(F3);
  Subspace J = radical(ut, 17);
  Subspace S1 = wedderburn_complement(ut, J, 17);
  Subspace S2 = wedderburn_complement(ut, J, 99);
  // some 1 + z conjugates S1 to S2
  auto u = find_malcev_conjugator(ut, J, S1, S2);
  CHECK(u.has_value());
}

TEST_CASE("wedderburn invariants on random envelopes") {
  Rng rng(20260809);
  int done = 0;
  for (int trial = 0; done < 12 && trial < 60; ++trial) {
    bool three = trial % 2 == 0;
    const Field& F = Field::get(three ? 3 : 2, 1);
    int a = three ? 2 : 3, b = three ? 2 : 3;
    AlgebraPair A = random_envelope(F, a, b, 1 + trial % 3, rng);
    WedderburnData W = wedderburn_decompose(A, rng.next());
    ++done;

    // A = J + S with trivial intersection
    CHECK(W.J.dim() + W.S.dim() == A.dim());
    CHECK(subspace_intersect(W.J, W.S).dim() == 0);
    // J nilpotent: the power ladder reached zero (c is its length)
    if (W.c > 0) CHECK(W.j_powers[W.c - 1].dim() > 0);
    // idempotent axioms
    MatPair sum{mat_zero(F, a, a), mat_zero(F, b, b)};
    for (const auto& f : W.factors) {
      CHECK(pair_eq(pair_mul(f.e, f.e), f.e));
      sum = pair_add(sum, f.e);
      for (const auto& s : W.s_basis) {
        CHECK(pair_eq(pair_mul(f.e, s), pair_mul(s, f.e)));
      }
    }
    CHECK(pair_eq(sum, pair_identity(F, a, b)));
    // sum d^2 m = dim S
    int total = 0;
    for (const auto& f : W.factors) total += f.d * f.d * f.m;
    CHECK(total == W.S.dim());
    // layer dimensions add up
    LayerData L = radical_series_layers(W);
    int xsum = 0;
    for (const auto& X : L.X) xsum += X.dim();
    CHECK(xsum == a);
  }
  CHECK(done == 12);
}
