#include "gfbimap/pgroup.hpp"

#include <unordered_map>
#include <unordered_set>

namespace gfbimap {

Bimap baer_bimap(const PGroupData& G) {
  const Field& F = Field::get(G.p, 1);
  std::vector<Mat> slices;
  for (int l = 0; l < G.m; ++l) slices.push_back(mat_zero(F, G.n, G.n));
  for (const auto& [key, vals] : G.c) {
    auto [i, j] = key;
    if (!(0 <= i && i < j && j < G.n))
      throw NotAlternating("structure constants need 0 <= i < j < n");
    require(static_cast<int>(vals.size()) == G.m, "constant length mismatch");
    for (int l = 0; l < G.m; ++l) {
      slices[l].at(i, j) = vals[l];
      slices[l].at(j, i) = F.neg(vals[l]);
    }
  }
  auto full = make_full(F, G.n, G.n, slices);
  require(full.bimap.w == 0 || full.bimap.alternating,
          "Baer bimap is not alternating");
  return full.bimap;
}

PseudoIsometryResult pseudo_isometry_group(const Bimap& bm, std::uint64_t seed,
                                           const Caps& caps) {
  const Field& F = *bm.F;
  if (F.p() == 2) throw CharTwo("pseudo-isometry pipeline needs odd p");
  if (!bm.alternating) throw NotSymmetricOrAlternating("need an alternating bimap");
  if (!is_nondegenerate(bm)) throw Degenerate("need a nondegenerate bimap");
  int n = bm.a;

  AlgebraPair adj = adjoint_algebra(bm);
  StarAlgebra A = star_algebra_of_bimap(bm);
  StarNormalizerResult nstar = star_normalizer(A, seed, caps);

  // V wedge_A V and the induced map to W.
  TensorPresentation wedge = exterior_over(F, n, adj.basis, '-');
  int wdim = wedge.product.w;
  Mat H = hat_matrix(bm);
  auto freec = wedge.relations.nonpivot_coords();
  Mat tau(F, wdim, bm.w);
  for (int t = 0; t < wdim; ++t)
    for (int l = 0; l < bm.w; ++l) tau.at(t, l) = H.at(freec[t], l);
  Subspace kernel = nullspace(tau);

  // induced action of g on the wedge coordinates
  auto wedge_action = [&](const Mat& g) {
    Mat A2(F, wdim, wdim);
    Mat kron = kronecker(g, g);
    for (int t = 0; t < wdim; ++t) {
      Mat e(F, 1, n * n);
      e.at(0, freec[t]) = F.one();
      Mat img = mat_mul(mat_mul(e, kron), wedge.quotient_map);
      for (int s = 0; s < wdim; ++s) A2.at(t, s) = img.at(0, s);
    }
    return A2;
  };

  PseudoIsometryResult out;
  out.nstar_order = nstar.gens.order;
  out.gens.F = &F;
  out.gens.n = n;
  for (auto& w : nstar.gens.warnings) out.gens.warnings.push_back(w);

  // orbit-stabilizer of ker tau under the induced action
  std::vector<Mat> pool = nstar.gens.mats();
  std::unordered_map<std::string, int> index;
  std::vector<Subspace> orbit{kernel};
  std::vector<Mat> witness{mat_identity(F, n)};
  std::unordered_set<std::string> seen;
  index[kernel.key()] = 0;
  for (size_t head = 0; head < orbit.size(); ++head) {
    for (const Mat& g : pool) {
      Mat Ag = wedge_action(g);
      Subspace W2 = orbit[head].dim()
                        ? Subspace::from_rows(mat_mul(orbit[head].basis, Ag))
                        : orbit[head];
      Mat u2 = mat_mul(witness[head], g);
      auto it = index.find(W2.key());
      if (it == index.end()) {
        if (orbit.size() >= caps.orbit)
          throw OrbitCapExceeded("wedge kernel orbit exceeded cap");
        index.emplace(W2.key(), static_cast<int>(orbit.size()));
        orbit.push_back(std::move(W2));
        witness.push_back(std::move(u2));
      } else {
        Mat s = mat_mul(u2, mat_inverse(witness[it->second]));
        if (s == mat_identity(F, n)) continue;
        if (seen.insert(mat_key(s)).second)
          out.gens.gens.push_back({std::move(s), GenTag::stabilizer});
      }
    }
  }
  out.orbit = orbit.size();
  if (nstar.gens.order.has_value()) {
    require(*nstar.gens.order % out.orbit == 0, "orbit does not divide N*");
    out.order = *nstar.gens.order / out.orbit;
  }
  // soundness: emitted generators are pseudo-isometries
  for (const auto& t : out.gens.gens)
    require(autotopism_h(bm, t.g, t.g).has_value(),
            "emitted generator is not a pseudo-isometry");
  return out;
}

AlgebraPair quadstab_embed(const StabilizerProblem& P) {
  const Field& F = *P.F;
  int a = P.a, b = P.b, n = a + b;
  std::vector<MatPair> gens;
  Mat s1x(F, n, n), s2x(F, n, n);
  for (int i = 0; i < a; ++i) s1x.at(i, i) = F.one();
  for (int i = 0; i < b; ++i) s2x.at(a + i, a + i) = F.one();
  // The Y-side carries the block scalars swapped: with the componentwise
  // pair product this is what closes the ring (the op twist).
  gens.push_back({s1x, s2x});
  gens.push_back({s2x, s1x});
  for (int r = 0; r < P.W.dim(); ++r) {
    Mat Z = mat_unflatten(F, mat_row(P.W.basis, r).a, a, b);
    Mat X(F, n, n), Y(F, n, n);
    for (int i = 0; i < a; ++i)
      for (int j = 0; j < b; ++j) {
        X.at(i, a + j) = Z.at(i, j);
        Y.at(a + j, i) = Z.at(i, j);
      }
    gens.push_back({X, Y});
  }
  AlgebraPair A = algebra_from_pairs(F, n, n, gens);
  require(A.unital, "embedded algebra must be unital");
  require(algebra_is_closed(A), "embedded algebra must be closed");
  return A;
}

QuadstabResult quadstab_solve(const StabilizerProblem& P, std::uint64_t seed,
                              const Caps& caps) {
  const Field& F = *P.F;
  int a = P.a, b = P.b, n = a + b;
  AlgebraPair A = quadstab_embed(P);
  NormalizerResult N = normalizer_of(A, seed, caps);

  // restrict to the subgroup preserving the two coordinate blocks of U
  Mat ub(F, a, n), vb(F, b, n);
  for (int i = 0; i < a; ++i) ub.at(i, i) = F.one();
  for (int i = 0; i < b; ++i) vb.at(i, a + i) = F.one();
  Subspace Ublock = Subspace::from_rows(ub);
  Subspace Vblock = Subspace::from_rows(vb);

  PairAction act = [](const GenPair& g, const Subspace& W) {
    if (W.dim() == 0) return W;
    return Subspace::from_rows(mat_mul(W.basis, g.F));
  };
  std::vector<GenPair> pool = N.gens.pairs();
  StabilizeResult st = stabilize_subspace_tuple(pool, {Ublock, Vblock}, act, caps);
  std::vector<GenPair> block_gens;
  for (const auto& t : st.gens) block_gens.push_back(t.g);
  for (const auto& g : pool)
    if (Subspace::from_rows(mat_mul(Ublock.basis, g.F)) == Ublock &&
        Subspace::from_rows(mat_mul(Vblock.basis, g.F)) == Vblock)
      block_gens.push_back(g);

  QuadstabResult out;
  std::unordered_set<std::string> seen;
  for (const auto& g : block_gens) {
    // extract diagonal blocks of the F-side: (x, y) = (F1, F2^-T)
    Mat F1(F, a, a), F2(F, b, b);
    for (int i = 0; i < a; ++i)
      for (int j = 0; j < a; ++j) F1.at(i, j) = g.F.at(i, j);
    for (int i = 0; i < b; ++i)
      for (int j = 0; j < b; ++j) F2.at(i, j) = g.F.at(a + i, a + j);
    GenPair xy{F1, mat_inverse(mat_transpose(F2))};
    if (gp_is_identity(xy)) continue;
    if (seen.insert(gp_key(xy)).second) out.gens.push_back(xy);
  }
  if (out.gens.empty())
    out.gens.push_back(gp_identity(F, a, b));
  out.gens = reduce_generators(out.gens, caps.closure);
  // soundness: x W y^T = W for every generator
  for (const auto& g : out.gens) {
    Mat rows(F, P.W.dim(), a * b);
    Mat yt = mat_transpose(g.G);
    for (int i = 0; i < P.W.dim(); ++i) {
      Mat img = mat_mul(mat_mul(g.F, mat_unflatten(F, mat_row(P.W.basis, i).a, a, b)), yt);
      for (int t = 0; t < a * b; ++t) rows.at(i, t) = img.a[t];
    }
    Subspace img = P.W.dim() ? Subspace::from_rows(rows)
                             : Subspace::zero(F, a * b);
    require(img == P.W, "extracted pair does not stabilize W");
  }
  try {
    out.order = closure_order(out.gens, caps.closure);
  } catch (const ClosureCapExceeded&) {
  }
  return out;
}

QuadstabResult autotopisms_via_embedding(const Bimap& bm, std::uint64_t seed,
                                         const Caps& caps) {
  StabilizerProblem P;
  P.F = bm.F;
  P.a = bm.a;
  P.b = bm.b;
  P.W = gram_span(bm);
  return quadstab_solve(P, seed, caps);
}

HStabResult hermitian_stab_solve(const StabilizerProblem& P, std::uint64_t seed,
                                 const Caps& caps) {
  (void)seed;
  const Field& F = *P.F;
  require(P.a == P.b, "Hermitian stabilizer needs a = b");
  int a = P.a;
  // Direct filter of GL_a by x W x^T = W (trivial field automorphism); the
  // Hermitian flag only constrains the input shape.
  for (int r = 0; r < P.W.dim(); ++r) {
    Mat Z = mat_unflatten(F, mat_row(P.W.basis, r).a, a, a);
    Mat Zt = mat_transpose(Z);
    Mat eps = (P.epsilon == '-') ? mat_neg(Zt) : Zt;
    require(P.W.contains(mat_flatten(eps)), "W is not eps-Hermitian");
  }
  BigInt total = gl_order(BigInt(F.q()), a);
  if (total > BigInt(caps.filter))
    throw CapExceeded("Hermitian stabilizer scan of " + to_decimal(total));
  HStabResult out;
  GLIterator it(F, a);
  Mat x;
  while (it.next(x)) {
    Mat xt = mat_transpose(x);
    Mat rows(F, P.W.dim(), a * a);
    for (int i = 0; i < P.W.dim(); ++i) {
      Mat img = mat_mul(mat_mul(x, mat_unflatten(F, mat_row(P.W.basis, i).a, a, a)), xt);
      for (int t = 0; t < a * a; ++t) rows.at(i, t) = img.a[t];
    }
    Subspace img = P.W.dim() ? Subspace::from_rows(rows)
                             : Subspace::zero(F, a * a);
    if (img == P.W) out.gens.push_back(x);
  }
  out.order = BigInt(out.gens.size());
  return out;
}

}  // namespace gfbimap
