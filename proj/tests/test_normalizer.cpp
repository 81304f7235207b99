#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gfbimap/normalizer.hpp"
#include "gfbimap/oracle.hpp"
#include "gfbimap/pgroup.hpp"

using namespace gfbimap;

namespace {

AlgebraPair scalars_pair(const Field& F, int a, int b) {
  return algebra_from_pairs(F, a, b, {pair_identity(F, a, b)});
}

AlgebraPair gf4_scalars(const Field& F2) {
  Mat C = mat_from_ints(F2, 2, 2, {0, 1, 1, 1});
  return envelope(F2, 2, 2, {{C, C}});
}

AlgebraPair upper_triangular_pair(const Field& F) {
  Mat e11 = mat_from_ints(F, 2, 2, {1, 0, 0, 0});
  Mat e12 = mat_from_ints(F, 2, 2, {0, 1, 0, 0});
  Mat e22 = mat_from_ints(F, 2, 2, {0, 0, 0, 1});
  return algebra_from_pairs(F, 2, 2, {{e11, e11}, {e12, e12}, {e22, e22}});
}

}  // namespace

TEST_CASE("normalizes examples") {
  const Field& F3 = Field::get(3, 1);
  AlgebraPair sc = scalars_pair(F3, 2, 2);
  CHECK(normalizes(gp_identity(F3, 2, 2), sc));
  // anything normalizes the scalars
  GenPair g{mat_from_ints(F3, 2, 2, {1, 2, 0, 1}),
            mat_from_ints(F3, 2, 2, {2, 0, 1, 1})};
  CHECK(normalizes(g, sc));

  // the swap does not normalize the upper-triangular pair
  AlgebraPair ut = upper_triangular_pair(F3);
  Mat P = mat_from_ints(F3, 2, 2, {0, 1, 1, 0});
  CHECK(!normalizes(GenPair{P, mat_identity(F3, 2)}, ut));
  CHECK_THROWS_AS(normalizes(GenPair{mat_zero(F3, 2, 2), P}, ut), Singular);
}

TEST_CASE("unipotent generators") {
  const Field& F3 = Field::get(3, 1);
  AlgebraPair sc = scalars_pair(F3, 2, 2);
  CHECK(unipotent_generators(sc, radical(sc, 1)).gens.empty());

  AlgebraPair ut = upper_triangular_pair(F3);
  Subspace J = radical(ut, 1);
  GeneratorSet uni = unipotent_generators(ut, J);
  REQUIRE(uni.gens.size() == 1);
  CHECK(uni.gens[0].tag == GenTag::unipotent);
  // the generator embeds the ring unit 1 + z: its group element lies in 1+J
  MatPair back = group_to_unit(uni.gens[0].g);
  MatPair z = pair_sub(back, pair_identity(F3, 2, 2));
  CHECK(J.contains(pair_flatten(z)));
  CHECK(normalizes(uni.gens[0].g, ut));
}

TEST_CASE("nsj order formula matches closure: scalars") {
  const Field& F2 = Field::get(2, 1);
  AlgebraPair sc = scalars_pair(F2, 2, 2);
  WedderburnData W = wedderburn_decompose(sc, 1);
  LayerData L = radical_series_layers(W);
  GeneratorSet nsj = nsj_generators(W, L, 1);
  CHECK(*nsj.nsj_order == 36);  // GL_2(2) x GL_2(2)
  CHECK(closure_order(nsj.pairs(), 100000) == 36);
}

TEST_CASE("nsj order formula matches closure: GF(4) scalars") {
  const Field& F2 = Field::get(2, 1);
  AlgebraPair A = gf4_scalars(F2);
  WedderburnData W = wedderburn_decompose(A, 2);
  LayerData L = radical_series_layers(W);
  GeneratorSet nsj = nsj_generators(W, L, 2);
  // Galois-tied pair group: |GammaL_1(4)|^2 / matching = 2 * 3 * 3 = 18
  CHECK(*nsj.nsj_order == 18);
  CHECK(closure_order(nsj.pairs(), 100000) == 18);
  // cross-check against the brute normalizer (J = 0 so N(A) = N(S))
  CHECK(brute_normalizer(A).order() == 18);
}

TEST_CASE("nsj order formula matches closure: upper triangular") {
  const Field& F3 = Field::get(3, 1);
  AlgebraPair ut = upper_triangular_pair(F3);
  WedderburnData W = wedderburn_decompose(ut, 3);
  LayerData L = radical_series_layers(W);
  GeneratorSet nsj = nsj_generators(W, L, 3);
  CHECK(*nsj.nsj_order == 16);
  CHECK(closure_order(nsj.pairs(), 100000) == 16);
}

TEST_CASE("nsj order formula matches closure: sympl2-2 block algebra") {
  const Field& F2 = Field::get(2, 1);
  StabilizerProblem P;
  P.F = &F2;
  P.a = 2;
  P.b = 2;
  P.W = gram_span(fixture_sympl2(2));
  AlgebraPair blk = quadstab_embed(P);
  WedderburnData W = wedderburn_decompose(blk, 4);
  LayerData L = radical_series_layers(W);
  GeneratorSet nsj = nsj_generators(W, L, 4);
  // per factor: |GL_2(2)|^2 = 36; two factors
  CHECK(*nsj.nsj_order == 36 * 36);
  CHECK(closure_order(nsj.pairs(), 100000) == 36 * 36);
}

TEST_CASE("nsj includes swaps for equivalent factors") {
  const Field& F3 = Field::get(3, 1);
  Mat e11 = mat_from_ints(F3, 2, 2, {1, 0, 0, 0});
  Mat e22 = mat_from_ints(F3, 2, 2, {0, 0, 0, 1});
  AlgebraPair diag = algebra_from_pairs(F3, 2, 2, {{e11, e11}, {e22, e22}});
  WedderburnData W = wedderburn_decompose(diag, 5);
  LayerData L = radical_series_layers(W);
  auto classes = factor_classes(W, L);
  REQUIRE(classes.size() == 1);
  CHECK(classes[0].size() == 2);
  GeneratorSet nsj = nsj_generators(W, L, 5);
  // ((q-1)^2 per factor tied with one-sided slack: H = 2*2*2/2 = 4)^2 * 2!
  CHECK(*nsj.nsj_order == 4 * 4 * 2);
  CHECK(closure_order(nsj.pairs(), 100000) == 32);
  bool has_swap = false;
  for (auto& t : nsj.gens) has_swap |= t.tag == GenTag::swap;
  CHECK(has_swap);
}

TEST_CASE("stabilize_subspace") {
  const Field& F3 = Field::get(3, 1);
  AlgebraPair ut = upper_triangular_pair(F3);
  WedderburnData W = wedderburn_decompose(ut, 6);
  LayerData L = radical_series_layers(W);
  GeneratorSet nsj = nsj_generators(W, L, 6);
  Caps caps;
  auto st = stabilize_subspace(nsj.pairs(), W.J, conjugation_action(2, 2), caps);
  // orbit of span{(E12, E12)} under the 16-element torus has size 2
  CHECK(st.orbit_size == 2);

  // a target fixed by everything: stabilizer = whole group, orbit 1
  auto st2 = stabilize_subspace(nsj.pairs(), Subspace::zero(F3, 8),
                                conjugation_action(2, 2), caps);
  CHECK(st2.orbit_size == 1);

  Caps tiny;
  tiny.orbit = 1;
  CHECK_THROWS_AS(
      stabilize_subspace(nsj.pairs(), W.J, conjugation_action(2, 2), tiny),
      OrbitCapExceeded);
}

TEST_CASE("normalizer_of equals brute force on desk instances") {
  const Field& F2 = Field::get(2, 1);
  const Field& F3 = Field::get(3, 1);
  Caps caps;

  // scalars over GF(2)
  {
    NormalizerResult N = normalizer_of(scalars_pair(F2, 2, 2), 1, caps);
    REQUIRE(N.gens.order.has_value());
    CHECK(*N.gens.order == 36);
    CHECK(closure_order(N.gens.pairs(), 100000) == 36);
  }
  // GF(4)-scalars
  {
    NormalizerResult N = normalizer_of(gf4_scalars(F2), 2, caps);
    REQUIRE(N.gens.order.has_value());
    CHECK(*N.gens.order == 18);
  }
  // upper-triangular over GF(3): brute gives 24
  {
    AlgebraPair ut = upper_triangular_pair(F3);
    NormalizerResult N = normalizer_of(ut, 3, caps);
    REQUIRE(N.gens.order.has_value());
    CHECK(*N.gens.order == brute_normalizer(ut).order());
    CHECK(closure_order(N.gens.pairs(), 100000) == *N.gens.order);
  }
  // scalars with a != b
  {
    AlgebraPair sc = scalars_pair(F2, 2, 3);
    NormalizerResult N = normalizer_of(sc, 4, caps);
    REQUIRE(N.gens.order.has_value());
    CHECK(*N.gens.order == 6 * 168);
  }
  // the nilpotent envelope with flag-mixing commutant parts
  {
    Mat e12 = mat_from_ints(F3, 2, 2, {0, 1, 0, 0});
    AlgebraPair nil = envelope(F3, 2, 2, {{e12, e12}});
    NormalizerResult N = normalizer_of(nil, 5, caps);
    REQUIRE(N.gens.order.has_value());
    CHECK(*N.gens.order == brute_normalizer(nil).order());  // 72
  }
}

TEST_CASE("normalizer_of on random envelopes matches brute force") {
  Rng rng(4242);
  Caps caps;
  int done = 0;
  for (int trial = 0; trial < 40 && done < 8; ++trial) {
    const Field& F = Field::get(trial % 2 ? 3 : 2, 1);
    int a = 2, b = 2;
    std::vector<MatPair> gens;
    for (int t = 0; t < 1 + static_cast<int>(rng.below(2)); ++t) {
      MatPair p{Mat(F, a, a), Mat(F, b, b)};
      for (auto& x : p.X.a) x = static_cast<Fe>(rng.below(F.q()));
      for (auto& x : p.Y.a) x = static_cast<Fe>(rng.below(F.q()));
      gens.push_back(p);
    }
    AlgebraPair A = envelope(F, a, b, gens);
    NormalizerResult N = normalizer_of(A, rng.next(), caps);
    if (!N.gens.order.has_value()) continue;
    ElementTable brute = brute_normalizer(A);
    CHECK(*N.gens.order == brute.order());
    // soundness of every generator was asserted inside; completeness:
    CHECK(closure_order(N.gens.pairs(), 2000000) == brute.order());
    ++done;
  }
  CHECK(done == 8);
}

TEST_CASE("thm norm(ii) sampled: nsj element is in N(A) iff it fixes J") {
  const Field& F3 = Field::get(3, 1);
  AlgebraPair ut = upper_triangular_pair(F3);
  WedderburnData W = wedderburn_decompose(ut, 7);
  LayerData L = radical_series_layers(W);
  GeneratorSet nsj = nsj_generators(W, L, 7);
  auto elems = closure_elements(nsj.pairs(), 100000);
  for (const auto& g : elems) {
    bool fixes = gp_conjugate_space(g, W.J, 2, 2) == W.J;
    CHECK(fixes == normalizes(g, ut));
  }
}
