#include "gfbimap/normalizer.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace gfbimap {

const char* gen_tag_name(GenTag t) {
  switch (t) {
    case GenTag::unipotent: return "unipotent";
    case GenTag::torus: return "torus";
    case GenTag::semilinear: return "semilinear";
    case GenTag::tensor_factor: return "tensor-factor";
    case GenTag::swap: return "swap";
    case GenTag::stabilizer: return "stabilizer";
  }
  return "?";
}

bool normalizes_span(const GenPair& g, const std::vector<MatPair>& basis,
                     const Subspace& span, int a, int b) {
  (void)a;
  (void)b;
  Mat Finv = mat_inverse(g.F);
  Mat Gt = mat_transpose(g.G);
  Mat Gti = mat_inverse(Gt);
  for (const auto& p : basis) {
    MatPair c{mat_mul(mat_mul(Finv, p.X), g.F), mat_mul(mat_mul(Gt, p.Y), Gti)};
    if (!span.contains(pair_flatten(c))) return false;
  }
  return true;
}

bool normalizes(const GenPair& g, const AlgebraPair& A) {
  if (!mat_is_invertible(g.F) || !mat_is_invertible(g.G))
    throw Singular("normalizer test requires invertible pairs");
  return normalizes_span(g, A.basis, A.span, A.a, A.b);
}

BigInt gl_order(const BigInt& q, int n) {
  BigInt order = 1;
  BigInt qn = 1;
  for (int i = 0; i < n; ++i) qn *= q;
  BigInt qi = 1;
  for (int i = 0; i < n; ++i) {
    order *= (qn - qi);
    qi *= q;
  }
  return order;
}

BigInt parabolic_order(const BigInt& q, const std::vector<int>& blocks) {
  BigInt order = 1;
  for (int bsz : blocks) order *= gl_order(q, bsz);
  long long cross = 0;
  for (size_t i = 0; i < blocks.size(); ++i)
    for (size_t j = i + 1; j < blocks.size(); ++j)
      cross += static_cast<long long>(blocks[i]) * blocks[j];
  BigInt qc = 1;
  for (long long i = 0; i < cross; ++i) qc *= q;
  return order * qc;
}

GeneratorSet unipotent_generators(const AlgebraPair& A, const Subspace& J) {
  const Field& F = *A.F;
  GeneratorSet out;
  out.F = &F;
  out.a = A.a;
  out.b = A.b;
  auto powers = radical_powers(A, J);
  std::unordered_set<std::string> seen;
  for (const auto& Ji : powers) {
    for (int r = 0; r < Ji.dim(); ++r) {
      MatPair z = pair_unflatten(F, mat_row(Ji.basis, r), A.a, A.b);
      MatPair u = pair_add(pair_identity(F, A.a, A.b), z);
      GenPair g = unit_to_group(u);
      std::string key = gp_key(g);
      if (seen.insert(key).second)
        out.gens.push_back({std::move(g), GenTag::unipotent});
    }
  }
  return out;
}

// --- N(S;J) generators -------------------------------------------------------

namespace {

// t x t blueprints over Delta = k[x]/(mu) generating GL_t(Delta):
// diag(omega,1,...,1), the cycle, and both elementary transvections.
std::vector<DMat> gl_blueprints(const Field& F, int t, const Poly& mu) {
  std::vector<DMat> out;
  if (t == 0) return out;
  Poly one({F.one()});
  Poly omega = poly_mod(F, poly_x(F), mu);
  auto ident = [&]() {
    DMat m(static_cast<size_t>(t) * t);
    for (int i = 0; i < t; ++i) m[static_cast<size_t>(i) * t + i] = one;
    return m;
  };
  if (!(omega == one)) {
    DMat d = ident();
    d[0] = omega;
    out.push_back(std::move(d));
  }
  if (t >= 2) {
    DMat cyc(static_cast<size_t>(t) * t);
    for (int i = 0; i < t; ++i)
      cyc[static_cast<size_t>(i) * t + (i + 1) % t] = one;
    out.push_back(std::move(cyc));
    DMat t01 = ident();
    t01[1] = one;  // E_{01}
    out.push_back(std::move(t01));
    DMat t10 = ident();
    t10[static_cast<size_t>(t)] = one;  // E_{10}
    out.push_back(std::move(t10));
  }
  return out;
}

struct FactorWorkspace {
  std::vector<MatPair> pows;          // omega^j
  std::vector<MatPair> units_row;     // iso^-1(E_{0s}), U side
  std::vector<MatPair> units_col;     // iso^-1(E_{s0}), V side
  MatPair eps;                        // iso^-1(E_{00})
  std::vector<MoritaBlock> blocksU;   // per layer (empty rows when mult 0)
  std::vector<MoritaBlock> blocksV;
  Mat frameU, frameU_inv;             // factor blocks first, then the rest
  Mat frameV, frameV_inv;
  std::vector<int> offU, offV;        // row offset of each layer block
  int factor_rows_u = 0, factor_rows_v = 0;
};

FactorWorkspace build_workspace(const WedderburnData& W, const LayerData& L,
                                int fi) {
  const Field& F = *W.A.F;
  const auto& f = W.factors[fi];
  FactorWorkspace ws;
  ws.pows = omega_powers(f);
  ws.eps = factor_matrix_unit(W.A, f, 0, 0);
  for (int s = 0; s < f.d; ++s) {
    ws.units_row.push_back(factor_matrix_unit(W.A, f, 0, s));
    ws.units_col.push_back(factor_matrix_unit(W.A, f, s, 0));
  }
  int a = W.A.a, b = W.A.b;
  Mat frameU(F, 0, a), frameV(F, 0, b);
  for (int i = 0; i <= W.c; ++i) {
    ws.offU.push_back(frameU.rows);
    MoritaBlock bu;
    if (L.m[fi][i] > 0) {
      bu = morita_block(F, layer_factor_part(L.X[i], f.e, true), f.d, f.m,
                        ws.pows, ws.units_row, ws.eps, true, L.m[fi][i]);
      frameU = mat_vstack(frameU, bu.rows);
    } else {
      bu.cvecs = Mat(F, 0, a);
      bu.rows = Mat(F, 0, a);
    }
    ws.blocksU.push_back(std::move(bu));

    ws.offV.push_back(frameV.rows);
    MoritaBlock bv;
    if (L.n[fi][i] > 0) {
      bv = morita_block(F, layer_factor_part(L.Y[i], f.e, false), f.d, f.m,
                        ws.pows, ws.units_col, ws.eps, false, L.n[fi][i]);
      frameV = mat_vstack(frameV, bv.rows);
    } else {
      bv.cvecs = Mat(F, 0, b);
      bv.rows = Mat(F, 0, b);
    }
    ws.blocksV.push_back(std::move(bv));
  }
  ws.factor_rows_u = frameU.rows;
  ws.factor_rows_v = frameV.rows;
  // other factors: plain layer-part bases
  for (int i = 0; i <= W.c; ++i)
    for (size_t fj = 0; fj < W.factors.size(); ++fj) {
      if (static_cast<int>(fj) == fi) continue;
      Subspace pU = layer_factor_part(L.X[i], W.factors[fj].e, true);
      if (pU.dim()) frameU = mat_vstack(frameU, pU.basis);
      Subspace pV = layer_factor_part(L.Y[i], W.factors[fj].e, false);
      if (pV.dim()) frameV = mat_vstack(frameV, pV.basis);
    }
  require(frameU.rows == a && frameV.rows == b, "frame incomplete");
  ws.frameU = frameU;
  ws.frameU_inv = mat_inverse(frameU);
  ws.frameV = frameV;
  ws.frameV_inv = mat_inverse(frameV);
  return ws;
}

// Map with given images for the factor rows and identity on the rest.
Mat frame_map(const FactorWorkspace& ws, bool side_u, const Mat& images) {
  const Mat& frame = side_u ? ws.frameU : ws.frameV;
  const Mat& inv = side_u ? ws.frameU_inv : ws.frameV_inv;
  int head = side_u ? ws.factor_rows_u : ws.factor_rows_v;
  require(images.rows == head, "frame image row mismatch");
  Mat img = images;
  for (int r = head; r < frame.rows; ++r) img = mat_vstack(img, mat_row(frame, r));
  return mat_mul(inv, img);
}

// Element of Delta given by a polynomial, as a pair (acting through e).
MatPair delta_element(const Field& F, const WedderburnFactor& f,
                      const FactorWorkspace& ws, const Poly& delta) {
  Poly d = poly_mod(F, delta, f.omega_minpoly);
  MatPair out{mat_zero(F, ws.eps.X.rows, ws.eps.X.cols),
              mat_zero(F, ws.eps.Y.rows, ws.eps.Y.cols)};
  for (int j = 0; j <= d.degree(); ++j)
    if (d.c[j] != 0) out = pair_add(out, pair_scale(ws.pows[j], d.c[j]));
  return out;
}

}  // namespace

std::vector<std::vector<int>> factor_classes(const WedderburnData& W,
                                             const LayerData& L) {
  std::vector<std::vector<int>> classes;
  std::vector<bool> used(W.factors.size(), false);
  for (size_t i = 0; i < W.factors.size(); ++i) {
    if (used[i]) continue;
    std::vector<int> cls{static_cast<int>(i)};
    used[i] = true;
    for (size_t j = i + 1; j < W.factors.size(); ++j) {
      if (used[j]) continue;
      if (W.factors[i].d != W.factors[j].d || W.factors[i].m != W.factors[j].m)
        continue;
      if (L.m[i] != L.m[j] || L.n[i] != L.n[j]) continue;
      cls.push_back(static_cast<int>(j));
      used[j] = true;
    }
    classes.push_back(std::move(cls));
  }
  return classes;
}

BigInt nsj_order_formula(const WedderburnData& W, const LayerData& L,
                         const std::vector<std::vector<int>>& classes) {
  const Field& F = *W.A.F;
  BigInt total = 1;
  for (const auto& cls : classes) {
    const auto& f = W.factors[cls[0]];
    BigInt Q = 1;
    for (int i = 0; i < f.m; ++i) Q *= F.q();
    BigInt H = f.m;  // Galois part
    H *= gl_order(Q, f.d);
    H *= parabolic_order(Q, L.m[cls[0]]);
    H *= parabolic_order(Q, L.n[cls[0]]);
    require(H % (Q - 1) == 0, "order formula divisibility");
    H /= (Q - 1);
    BigInt part = 1;
    for (size_t r = 0; r < cls.size(); ++r) part *= H;
    for (size_t r = 2; r <= cls.size(); ++r) part *= r;
    total *= part;
  }
  return total;
}

GeneratorSet nsj_generators(const WedderburnData& W, const LayerData& L,
                            std::uint64_t seed) {
  const Field& F = *W.A.F;
  int a = W.A.a, b = W.A.b;
  GeneratorSet out;
  out.F = &F;
  out.a = a;
  out.b = b;

  AlgebraPair Salg = algebra_from_pairs(F, a, b, W.s_basis);
  MatPair one = pair_identity(F, a, b);

  for (size_t fi = 0; fi < W.factors.size(); ++fi) {
    const auto& f = W.factors[fi];
    FactorWorkspace ws = build_workspace(W, L, static_cast<int>(fi));

    // (a) inner units realizing GL_d(Delta) = (eSe)^x through iso.
    for (const DMat& bp : gl_blueprints(F, f.d, f.omega_minpoly)) {
      MatPair s = iso_inverse(W.A, f, bp);
      MatPair u = pair_add(s, pair_sub(one, f.e));
      GenPair g = unit_to_group(u);
      require(normalizes_span(g, W.s_basis, W.S, a, b),
              "inner generator does not normalize S");
      out.gens.push_back({std::move(g), GenTag::torus});
    }

    // (b) Frobenius semilinear generator acting as x -> x^q on the chosen
    // Delta-bases of Ue and eV simultaneously.
    if (f.m > 1) {
      bool ok = true;
      Mat imgU(F, 0, a), imgV(F, 0, b);
      for (int i = 0; i <= W.c; ++i) {
        for (int t = 0; t < L.m[fi][i]; ++t)
          for (int s = 0; s < f.d; ++s)
            for (int j = 0; j < f.m; ++j) {
              Poly pj = poly_powmod(F, poly_x(F), BigInt(j) * F.q(),
                                    f.omega_minpoly);
              Mat v = pair_act_side(mat_row(ws.blocksU[i].cvecs, t),
                                    ws.units_row[s], true);
              v = pair_act_side(v, delta_element(F, f, ws, pj), true);
              imgU = mat_vstack(imgU, v);
            }
        for (int t = 0; t < L.n[fi][i]; ++t)
          for (int s = 0; s < f.d; ++s)
            for (int j = 0; j < f.m; ++j) {
              Poly pj = poly_powmod(F, poly_x(F), BigInt(j) * F.q(),
                                    f.omega_minpoly);
              Mat v = pair_act_side(mat_row(ws.blocksV[i].cvecs, t),
                                    ws.units_col[s], false);
              v = pair_act_side(v, delta_element(F, f, ws, pj), false);
              imgV = mat_vstack(imgV, v);
            }
      }
      GenPair g{frame_map(ws, true, imgU), frame_map(ws, false, imgV)};
      if (normalizes_span(g, W.s_basis, W.S, a, b)) {
        out.gens.push_back({std::move(g), GenTag::semilinear});
      } else {
        ok = false;
        out.warnings.push_back("Frobenius generator demoted for factor " +
                               std::to_string(fi));
      }
      require(ok, "Frobenius generator failed the N(S) check");
    }

    // (c) one-sided layer factors: GL_{mult}(Delta) on X_i e resp. e Y_i.
    for (int i = 0; i <= W.c; ++i) {
      for (bool side_u : {true, false}) {
        int mult = side_u ? L.m[fi][i] : L.n[fi][i];
        if (mult == 0) continue;
        const MoritaBlock& blk = side_u ? ws.blocksU[i] : ws.blocksV[i];
        const auto& units = side_u ? ws.units_row : ws.units_col;
        for (const DMat& bp : gl_blueprints(F, mult, f.omega_minpoly)) {
          Mat img(F, 0, side_u ? a : b);
          // rows of the other layers stay put inside the factor part
          for (int i2 = 0; i2 <= W.c; ++i2) {
            int mult2 = side_u ? L.m[fi][i2] : L.n[fi][i2];
            if (mult2 == 0) continue;
            const MoritaBlock& blk2 = side_u ? ws.blocksU[i2] : ws.blocksV[i2];
            if (i2 != i) {
              img = mat_vstack(img, blk2.rows);
              continue;
            }
            for (int t = 0; t < mult; ++t)
              for (int s = 0; s < f.d; ++s)
                for (int j = 0; j < f.m; ++j) {
                  Mat v(F, 1, side_u ? a : b);
                  for (int tp = 0; tp < mult; ++tp) {
                    const Poly& entry = bp[static_cast<size_t>(tp) * mult + t];
                    if (entry.is_zero()) continue;
                    Poly dj = poly_mod(
                        F, poly_mul(F, entry, poly_powmod(F, poly_x(F),
                                                          BigInt(j),
                                                          f.omega_minpoly)),
                        f.omega_minpoly);
                    Mat w = pair_act_side(mat_row(blk.cvecs, tp), units[s],
                                          side_u);
                    w = pair_act_side(w, delta_element(F, f, ws, dj), side_u);
                    v = mat_add(v, w);
                  }
                  img = mat_vstack(img, v);
                }
          }
          Mat P = frame_map(ws, side_u, img);
          GenPair g = side_u ? GenPair{P, mat_identity(F, b)}
                             : GenPair{mat_identity(F, a), P};
          require(normalizes_span(g, W.s_basis, W.S, a, b),
                  "layer factor generator does not normalize S");
          out.gens.push_back({std::move(g), GenTag::tensor_factor});
        }
      }
    }

    // (d) flag transvections between layers i < j with the same factor.
    for (bool side_u : {true, false}) {
      const auto& mults = side_u ? L.m[fi] : L.n[fi];
      for (int i = 0; i <= W.c; ++i)
        for (int j = i + 1; j <= W.c; ++j) {
          if (mults[i] == 0 || mults[j] == 0) continue;
          for (int t = 0; t < mults[i]; ++t)
            for (int tp = 0; tp < mults[j]; ++tp) {
              Mat img(F, 0, side_u ? a : b);
              for (int i2 = 0; i2 <= W.c; ++i2) {
                int mult2 = mults[i2];
                if (mult2 == 0) continue;
                const MoritaBlock& blk2 =
                    side_u ? ws.blocksU[i2] : ws.blocksV[i2];
                if (i2 != i) {
                  img = mat_vstack(img, blk2.rows);
                  continue;
                }
                const MoritaBlock& blkj =
                    side_u ? ws.blocksU[j] : ws.blocksV[j];
                for (int t2 = 0; t2 < mult2; ++t2)
                  for (int s = 0; s < f.d; ++s)
                    for (int jj = 0; jj < f.m; ++jj) {
                      int row = (t2 * f.d + s) * f.m + jj;
                      Mat v = mat_row(blk2.rows, row);
                      if (t2 == t) {
                        int row_j = (tp * f.d + s) * f.m + jj;
                        v = mat_add(v, mat_row(blkj.rows, row_j));
                      }
                      img = mat_vstack(img, v);
                    }
              }
              Mat P = frame_map(ws, side_u, img);
              GenPair g = side_u ? GenPair{P, mat_identity(F, b)}
                                 : GenPair{mat_identity(F, a), P};
              require(normalizes_span(g, W.s_basis, W.S, a, b),
                      "flag transvection does not normalize S");
              out.gens.push_back({std::move(g), GenTag::tensor_factor});
            }
        }
    }
  }

  // (e) swap witnesses generating each S_r.
  auto classes = factor_classes(W, L);
  for (const auto& cls : classes)
    for (size_t r = 1; r < cls.size(); ++r) {
      auto sw = idempotent_equivalent(W, L, cls[0], cls[r], seed + r);
      require(sw.has_value(), "equivalent factors without witness");
      require(normalizes_span(*sw, W.s_basis, W.S, a, b),
              "swap witness does not normalize S");
      out.gens.push_back({*sw, GenTag::swap});
    }

  out.nsj_order = nsj_order_formula(W, L, classes);
  (void)Salg;
  return out;
}

// --- orbit-stabilizer ----------------------------------------------------------

PairAction conjugation_action(int a, int b) {
  // generator inverses are cached: orbit BFS applies the same few
  // generators millions of times
  struct Prepared {
    Mat Finv, Gt, Gti, Fm;
  };
  auto cache = std::make_shared<std::unordered_map<std::string, Prepared>>();
  return [a, b, cache](const GenPair& g, const Subspace& W) {
    std::string key = gp_key(g);
    auto it = cache->find(key);
    if (it == cache->end()) {
      Mat Gt = mat_transpose(g.G);
      it = cache
               ->emplace(key, Prepared{mat_inverse(g.F), Gt, mat_inverse(Gt),
                                       g.F})
               .first;
    }
    const Prepared& pr = it->second;
    const Field& F = *W.F;
    if (W.dim() == 0) return W;
    Mat rows(F, W.dim(), W.ambient);
    for (int i = 0; i < W.dim(); ++i) {
      MatPair p = pair_unflatten(F, mat_row(W.basis, i), a, b);
      MatPair c{mat_mul(mat_mul(pr.Finv, p.X), pr.Fm),
                mat_mul(mat_mul(pr.Gt, p.Y), pr.Gti)};
      Mat f = pair_flatten(c);
      for (int j = 0; j < W.ambient; ++j) rows.at(i, j) = f.at(0, j);
    }
    return Subspace::from_rows(rows);
  };
}

StabilizeResult stabilize_subspace_tuple(const std::vector<GenPair>& gens,
                                         const std::vector<Subspace>& targets,
                                         const PairAction& act,
                                         const Caps& caps) {
  StabilizeResult out;
  std::unordered_map<std::string, int> index;
  std::vector<std::vector<Subspace>> orbit{targets};
  std::vector<GenPair> witness;
  std::unordered_set<std::string> seen;
  if (gens.empty()) {
    out.orbit_size = 1;
    return out;
  }
  auto tuple_key = [](const std::vector<Subspace>& t) {
    std::string s;
    for (const Subspace& w : t) {
      s += w.key();
      s.push_back(';');
    }
    return s;
  };
  const Field& F = *gens[0].F.F;
  witness.push_back(gp_identity(F, gens[0].F.rows, gens[0].G.rows));
  index[tuple_key(targets)] = 0;
  // witness inverses computed once per orbit node, not per closing edge
  std::vector<std::optional<GenPair>> winv{gp_identity(
      F, gens[0].F.rows, gens[0].G.rows)};

  for (size_t head = 0; head < orbit.size(); ++head) {
    for (const GenPair& g : gens) {
      std::vector<Subspace> next;
      next.reserve(orbit[head].size());
      for (const Subspace& w : orbit[head]) next.push_back(act(g, w));
      auto it = index.find(tuple_key(next));
      if (it == index.end()) {
        if (orbit.size() >= caps.orbit)
          throw OrbitCapExceeded("subspace orbit exceeded cap");
        index.emplace(tuple_key(next), static_cast<int>(orbit.size()));
        orbit.push_back(std::move(next));
        witness.push_back(gp_mul(witness[head], g));
        winv.emplace_back(std::nullopt);
      } else {
        if (!winv[it->second].has_value())
          winv[it->second] = gp_inv(witness[it->second]);
        GenPair s = gp_mul(gp_mul(witness[head], g), *winv[it->second]);
        if (gp_is_identity(s)) continue;
        std::string key = gp_key(s);
        if (seen.insert(key).second)
          out.gens.push_back({std::move(s), GenTag::stabilizer});
      }
    }
  }
  out.orbit_size = orbit.size();
  return out;
}

StabilizeResult stabilize_subspace(const std::vector<GenPair>& gens,
                                   const Subspace& target,
                                   const PairAction& act, const Caps& caps) {
  return stabilize_subspace_tuple(gens, {target}, act, caps);
}

std::vector<GenPair> reduce_generators(const std::vector<GenPair>& gens,
                                       std::uint64_t cap) {
  if (gens.size() <= 2) return gens;
  std::vector<GenPair> kept;
  std::unordered_set<std::string> known;
  try {
    for (const GenPair& g : gens) {
      if (gp_is_identity(g)) continue;
      if (known.count(gp_key(g))) continue;
      kept.push_back(g);
      known.clear();
      for (const GenPair& e : closure_elements(kept, cap))
        known.insert(gp_key(e));
    }
  } catch (const ClosureCapExceeded&) {
    return gens;
  }
  return kept;
}

// --- the full pipeline ----------------------------------------------------------

NormalizerResult normalizer_of(const AlgebraPair& A, std::uint64_t seed,
                               const Caps& caps) {
  const Field& F = *A.F;
  require(A.unital, "normalizer_of needs a unital algebra");
  NormalizerResult out;
  out.wedderburn = wedderburn_decompose(A, seed);
  out.layers = radical_series_layers(out.wedderburn);
  const WedderburnData& W = out.wedderburn;

  GeneratorSet nsj = nsj_generators(W, out.layers, seed);
  out.nsj_order = *nsj.nsj_order;

  StabilizeResult stab;
  if (W.J.dim() == 0) {
    for (auto& t : nsj.gens) stab.gens.push_back(t);
    stab.orbit_size = 1;
  } else {
    stab = stabilize_subspace(nsj.pairs(), W.J, conjugation_action(A.a, A.b),
                              caps);
    // generators of N(S;J) that already stabilize J stay in the group
    for (auto& t : nsj.gens)
      if (gp_conjugate_space(t.g, W.J, A.a, A.b) == W.J)
        stab.gens.push_back(t);
  }
  out.stab_gens = stab.gens;
  out.orbit = stab.orbit_size;
  require(out.nsj_order % out.orbit == 0, "orbit does not divide group order");
  out.stab_order = out.nsj_order / out.orbit;

  GeneratorSet uni = unipotent_generators(A, W.J);
  out.gens.F = &F;
  out.gens.a = A.a;
  out.gens.b = A.b;
  out.gens.nsj_order = out.nsj_order;
  for (auto& t : uni.gens) out.gens.gens.push_back(t);
  for (auto& t : stab.gens) out.gens.gens.push_back(t);
  for (auto& w : nsj.warnings) out.gens.warnings.push_back(w);

  // soundness: every emitted generator normalizes A
  for (const auto& t : out.gens.gens)
    require(normalizes(t.g, A), "emitted generator fails normalizes()");

  // |N(A)| = |1+J| * |Stab| / |(1+J) ∩ Stab|; the intersection is found by
  // enumerating 1+J under the closure cap.
  int dj = W.J.dim();
  BigInt ujorder = 1;
  bool enumerable = true;
  std::uint64_t count = 1;
  for (int i = 0; i < dj; ++i) {
    ujorder *= F.q();
    if (enumerable) {
      count *= F.q();
      if (count > caps.closure) enumerable = false;
    }
  }
  if (enumerable) {
    auto jb = subspace_pairs(F, W.J, A.a, A.b);
    std::uint64_t inter = 0;
    std::vector<Fe> coeff(dj, 0);
    for (std::uint64_t it = 0; it < count; ++it) {
      MatPair z{mat_zero(F, A.a, A.a), mat_zero(F, A.b, A.b)};
      for (int i = 0; i < dj; ++i)
        if (coeff[i] != 0) z = pair_add(z, pair_scale(jb[i], coeff[i]));
      GenPair g = unit_to_group(pair_add(pair_identity(F, A.a, A.b), z));
      if (normalizes_span(g, W.s_basis, W.S, A.a, A.b)) ++inter;
      for (int i = 0; i < dj; ++i) {
        coeff[i] = static_cast<Fe>((coeff[i] + 1) % F.q());
        if (coeff[i] != 0) break;
      }
    }
    out.intersection = BigInt(inter);
    BigInt num = ujorder * out.stab_order;
    require(num % BigInt(inter) == 0, "intersection does not divide");
    out.gens.order = num / BigInt(inter);
  } else {
    out.gens.warnings.push_back("closure cap: exact order omitted");
  }
  return out;
}

}  // namespace gfbimap
