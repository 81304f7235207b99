#include "gfbimap/algdecomp.hpp"

#include <algorithm>
#include <map>

namespace gfbimap {

namespace {

Mat act_u(const Mat& v, const MatPair& p) { return mat_mul(v, p.X); }
Mat act_v(const Mat& v, const MatPair& p) {
  return mat_mul(v, mat_transpose(p.Y));
}
Mat act_side(const Mat& v, const MatPair& p, bool side_u) {
  return side_u ? act_u(v, p) : act_v(v, p);
}

// Block-diagonal embedding of a pair, used to reuse single-matrix helpers
// (minimal polynomials, matrix fields) on pair elements.
Mat pair_embed(const MatPair& p) {
  const Field& F = *p.X.F;
  int a = p.X.rows, b = p.Y.rows;
  Mat M(F, a + b, a + b);
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < a; ++j) M.at(i, j) = p.X.at(i, j);
  for (int i = 0; i < b; ++i)
    for (int j = 0; j < b; ++j) M.at(a + i, a + j) = p.Y.at(i, j);
  return M;
}

MatPair pair_extract(const Field& F, const Mat& M, int a, int b) {
  MatPair p{Mat(F, a, a), Mat(F, b, b)};
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < a; ++j) p.X.at(i, j) = M.at(i, j);
  for (int i = 0; i < b; ++i)
    for (int j = 0; j < b; ++j) p.Y.at(i, j) = M.at(a + i, a + j);
  return p;
}

Mat stack_pairs(const Field& F, const std::vector<MatPair>& ps) {
  require(!ps.empty(), "stack_pairs empty");
  int w = ps[0].X.rows * ps[0].X.cols + ps[0].Y.rows * ps[0].Y.cols;
  Mat rows(F, static_cast<int>(ps.size()), w);
  for (size_t i = 0; i < ps.size(); ++i) {
    Mat f = pair_flatten(ps[i]);
    for (int j = 0; j < w; ++j) rows.at(static_cast<int>(i), j) = f.at(0, j);
  }
  return rows;
}

}  // namespace

std::vector<MatPair> subspace_pairs(const Field& F, const Subspace& S, int a,
                                    int b) {
  std::vector<MatPair> out;
  for (int i = 0; i < S.dim(); ++i)
    out.push_back(pair_unflatten(F, mat_row(S.basis, i), a, b));
  return out;
}

MatPair eval_poly_pair(const Field& F, const Poly& f, const MatPair& z,
                       const MatPair& unit) {
  MatPair acc{mat_zero(F, z.X.rows, z.X.cols), mat_zero(F, z.Y.rows, z.Y.cols)};
  for (int i = f.degree(); i >= 0; --i) {
    acc = pair_mul(acc, z);
    if (f.c[i] != 0) acc = pair_add(acc, pair_scale(unit, f.c[i]));
  }
  return acc;
}

// --- modules ---------------------------------------------------------------

ModuleAction module_restrict(const ModuleAction& M, const Subspace& W) {
  ModuleAction out;
  out.F = M.F;
  out.dim = W.dim();
  for (const Mat& T : M.actors) {
    Mat img = mat_mul(W.basis, T);
    auto sol = solve_left(W.basis, img);
    require(sol.has_value(), "module_restrict: subspace not invariant");
    out.actors.push_back(*sol);
  }
  return out;
}

ModuleAction module_quotient(const ModuleAction& M, const Subspace& W) {
  const Field& F = *M.F;
  auto free_coords = W.nonpivot_coords();
  int q = static_cast<int>(free_coords.size());
  ModuleAction out;
  out.F = M.F;
  out.dim = q;
  for (const Mat& T : M.actors) {
    Mat A(F, q, q);
    for (int c = 0; c < q; ++c) {
      Mat e(F, 1, M.dim);
      e.at(0, free_coords[c]) = F.one();
      Mat img = W.reduce(mat_mul(e, T));
      for (int t = 0; t < q; ++t) A.at(c, t) = img.at(0, free_coords[t]);
    }
    out.actors.push_back(std::move(A));
  }
  return out;
}

std::vector<Mat> module_endomorphisms(const ModuleAction& M) {
  const Field& F = *M.F;
  int t = M.dim;
  // unknown vec(T) row; condition T A - A T = 0 per actor
  Mat sys(F, t * t, static_cast<int>(M.actors.size()) * t * t);
  for (size_t ai = 0; ai < M.actors.size(); ++ai) {
    const Mat& A = M.actors[ai];
    for (int i = 0; i < t; ++i)
      for (int j = 0; j < t; ++j) {
        int col = static_cast<int>(ai) * t * t + i * t + j;
        // (T A)_{ij} = sum_s T_{is} A_{sj}; (A T)_{ij} = sum_s A_{is} T_{sj}
        for (int s = 0; s < t; ++s) {
          sys.at(i * t + s, col) = F.add(sys.at(i * t + s, col), A.at(s, j));
          sys.at(s * t + j, col) = F.sub(sys.at(s * t + j, col), A.at(i, s));
        }
      }
  }
  Subspace sol = nullspace(sys);
  std::vector<Mat> out;
  for (int i = 0; i < sol.dim(); ++i)
    out.push_back(mat_unflatten(F, mat_row(sol.basis, i).a, t, t));
  return out;
}

std::optional<Subspace> meataxe_find_submodule(const ModuleAction& M, Rng& rng,
                                               int budget) {
  const Field& F = *M.F;
  int t = M.dim;
  require(t > 0, "meataxe on zero module");
  if (t == 1) return std::nullopt;
  require(!M.actors.empty(), "meataxe without actors");

  for (int attempt = 0; attempt < budget; ++attempt) {
    // Random element of the acting algebra (actors span it at call sites).
    Mat a = mat_zero(F, t, t);
    for (const Mat& T : M.actors)
      a = mat_add(a, mat_scale(T, static_cast<Fe>(rng.below(F.q()))));
    if (a.is_zero()) continue;

    Poly mp = minimal_polynomial(a);
    auto factors = poly_factor(F, mp, rng.next());
    std::sort(factors.begin(), factors.end(),
              [](const auto& x, const auto& y) {
                if (x.first.degree() != y.first.degree())
                  return x.first.degree() < y.first.degree();
                return x.first.c < y.first.c;
              });
    for (auto& [g, mult] : factors) {
      Mat b = mat_zero(F, t, t);
      for (int i = g.degree(); i >= 0; --i) {
        b = mat_mul(b, a);
        if (g.c[i] != 0)
          b = mat_add(b, mat_scale(mat_identity(F, t), g.c[i]));
      }
      Subspace K = nullspace(b);
      if (K.dim() == 0) continue;
      Mat v = mat_row(K.basis, 0);
      Subspace W = spin(Subspace::from_rows(v), M.actors);
      if (W.dim() < t) return W;
      if (K.dim() == g.degree()) {
        // Norton's dual test with the transposed action.
        std::vector<Mat> dual;
        for (const Mat& T : M.actors) dual.push_back(mat_transpose(T));
        Subspace Kd = nullspace(mat_transpose(b));
        require(Kd.dim() > 0, "dual kernel empty");
        Mat w = mat_row(Kd.basis, 0);
        Subspace Wd = spin(Subspace::from_rows(w), dual);
        if (Wd.dim() < t) {
          // perp of a dual submodule is a submodule
          Subspace P = nullspace(mat_transpose(Wd.basis));
          require(P.dim() > 0 && P.dim() < t, "bad perp dimensions");
          return P;
        }
        return std::nullopt;  // irreducible, proven
      }
    }
  }
  throw RandomnessExhausted("meataxe budget exhausted");
}

bool module_is_irreducible(const ModuleAction& M, Rng& rng, int budget) {
  return !meataxe_find_submodule(M, rng, budget).has_value();
}

std::vector<ModuleAction> composition_factors(const ModuleAction& M, Rng& rng) {
  std::vector<ModuleAction> out;
  std::vector<ModuleAction> stack;
  if (M.dim > 0) stack.push_back(M);
  while (!stack.empty()) {
    ModuleAction cur = std::move(stack.back());
    stack.pop_back();
    if (cur.dim == 0) continue;
    auto sub = meataxe_find_submodule(cur, rng);
    if (!sub.has_value()) {
      out.push_back(std::move(cur));
      continue;
    }
    stack.push_back(module_restrict(cur, *sub));
    stack.push_back(module_quotient(cur, *sub));
  }
  return out;
}

// --- envelope ---------------------------------------------------------------

AlgebraPair envelope(const Field& F, int a, int b,
                     const std::vector<MatPair>& gens) {
  int amb = a * a + b * b;
  IncrementalSpan span(F, amb);
  std::vector<MatPair> list;
  auto push = [&](const MatPair& p) {
    if (span.add(pair_flatten(p))) {
      list.push_back(pair_unflatten(F, span.rows().back(), a, b));
      return true;
    }
    return false;
  };
  push(pair_identity(F, a, b));
  for (const MatPair& g : gens) push(g);
  for (size_t i = 0; i < list.size(); ++i)
    for (size_t j = 0; j <= i; ++j) {
      push(pair_mul(list[i], list[j]));
      if (i != j) push(pair_mul(list[j], list[i]));
    }
  return algebra_from_pairs(F, a, b, list);
}

// --- radical ----------------------------------------------------------------

std::vector<Subspace> radical_powers(const AlgebraPair& A, const Subspace& J) {
  const Field& F = *A.F;
  std::vector<Subspace> powers;
  if (J.dim() == 0) return powers;
  powers.push_back(J);
  auto j_basis = subspace_pairs(F, J, A.a, A.b);
  while (true) {
    auto prev = subspace_pairs(F, powers.back(), A.a, A.b);
    if (prev.empty()) break;
    std::vector<MatPair> products;
    for (const auto& p : prev)
      for (const auto& q : j_basis) products.push_back(pair_mul(p, q));
    Subspace next = Subspace::from_rows(stack_pairs(F, products));
    if (next.dim() == 0) break;
    powers.push_back(next);
    require(static_cast<int>(powers.size()) <= A.dim() + 1,
            "radical not nilpotent");
  }
  return powers;
}

Subspace radical(const AlgebraPair& A, std::uint64_t seed) {
  const Field& F = *A.F;
  int N = A.dim();
  require(N > 0, "radical of the zero algebra");
  require(A.unital, "radical needs a unital algebra");

  // Left regular module: actor for basis element i sends coordinate row x of
  // xi to coords(b_i * xi).
  Mat basis_rows = stack_pairs(F, A.basis);
  ModuleAction regular;
  regular.F = &F;
  regular.dim = N;
  for (int i = 0; i < N; ++i) {
    std::vector<MatPair> prods;
    for (int j = 0; j < N; ++j) prods.push_back(pair_mul(A.basis[i], A.basis[j]));
    auto coords = solve_left(basis_rows, stack_pairs(F, prods));
    require(coords.has_value(), "regular module: product escapes algebra");
    regular.actors.push_back(*coords);
  }

  Rng rng(seed);
  auto factors = composition_factors(regular, rng);

  // J = {sum l_i b_i : the element annihilates every composition factor}.
  int total = 0;
  for (const auto& f : factors) total += f.dim * f.dim;
  Mat sys(F, N, total);
  int off = 0;
  for (const auto& f : factors) {
    for (int i = 0; i < N; ++i)
      for (int t = 0; t < f.dim * f.dim; ++t)
        sys.at(i, off + t) = f.actors[i].a[t];
    off += f.dim * f.dim;
  }
  Subspace lam = nullspace(sys);
  // convert coefficient rows to pair-space rows
  Subspace J = lam.dim() == 0
                   ? Subspace::zero(F, A.a * A.a + A.b * A.b)
                   : Subspace::from_rows(mat_mul(lam.basis, basis_rows));

  // Post-verification: J nilpotent (radical_powers throws otherwise) and the
  // quotient semisimple is re-checked by wedderburn_decompose.
  radical_powers(A, J);
  return J;
}

// --- Wedderburn complement ---------------------------------------------------

namespace {

// Projection of a pair-space vector to quotient coordinates mod Q.
Mat quotient_coords(const Subspace& Q, const Mat& v,
                    const std::vector<int>& free_coords) {
  Mat r = Q.reduce(v);
  Mat out(*v.F, 1, static_cast<int>(free_coords.size()));
  for (size_t t = 0; t < free_coords.size(); ++t)
    out.at(0, static_cast<int>(t)) = r.at(0, free_coords[t]);
  return out;
}

}  // namespace

Subspace wedderburn_complement(const AlgebraPair& A, const Subspace& J,
                               std::uint64_t seed) {
  (void)seed;
  const Field& F = *A.F;
  int amb = A.a * A.a + A.b * A.b;
  if (J.dim() == 0) return A.span;

  // Initial lifts: basis vectors of A extending J.
  IncrementalSpan span(F, amb);
  for (int i = 0; i < J.dim(); ++i) span.add(mat_row(J.basis, i));
  std::vector<MatPair> lifts;
  for (const MatPair& p : A.basis)
    if (span.add(pair_flatten(p)))
      lifts.push_back(p);
  int r = static_cast<int>(lifts.size());
  require(r == A.dim() - J.dim(), "complement lift count mismatch");

  // Structure constants of A/J in the lift basis (fixed for all stages).
  Mat full_rows(F, r + J.dim(), amb);
  for (int i = 0; i < r; ++i) {
    Mat f = pair_flatten(lifts[i]);
    for (int j = 0; j < amb; ++j) full_rows.at(i, j) = f.at(0, j);
  }
  for (int i = 0; i < J.dim(); ++i)
    for (int j = 0; j < amb; ++j) full_rows.at(r + i, j) = J.basis.at(i, j);
  std::vector<std::vector<std::vector<Fe>>> c(
      r, std::vector<std::vector<Fe>>(r, std::vector<Fe>(r, 0)));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      auto sol = solve_left(full_rows, pair_flatten(pair_mul(lifts[i], lifts[j])));
      require(sol.has_value(), "structure constant solve failed");
      for (int k = 0; k < r; ++k) c[i][j][k] = sol->at(0, k);
    }

  auto powers = radical_powers(A, J);  // J^1..J^c
  auto power_at = [&](int m) -> Subspace {
    if (m <= static_cast<int>(powers.size())) return powers[m - 1];
    return Subspace::zero(F, amb);
  };

  int m = 1;
  while (power_at(m).dim() > 0) {
    Subspace Jm = power_at(m);
    Subspace J2m = power_at(2 * m);
    auto jm_pairs = subspace_pairs(F, Jm, A.a, A.b);
    int dm = Jm.dim();
    auto freec = J2m.nonpivot_coords();
    int qdim = static_cast<int>(freec.size());

    // Unknowns: lambda[i][l], corrections t_i = sum_l lambda[i][l] jm_l.
    // Equations per (i,j): pi(s_i t_j + t_i s_j - sum_k c_ijk t_k) =
    // -pi(e_ij) in quotient coords mod J^{2m}.
    int nunk = r * dm;
    Mat sys(F, nunk, r * r * qdim);
    Mat rhs(F, 1, r * r * qdim);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        int base = (i * r + j) * qdim;
        MatPair e_ij = pair_mul(lifts[i], lifts[j]);
        for (int k = 0; k < r; ++k)
          if (c[i][j][k] != 0)
            e_ij = pair_sub(e_ij, pair_scale(lifts[k], c[i][j][k]));
        Mat pe = quotient_coords(J2m, pair_flatten(e_ij), freec);
        for (int t = 0; t < qdim; ++t) rhs.at(0, base + t) = F.neg(pe.at(0, t));
        for (int l = 0; l < dm; ++l) {
          // coefficient of lambda[j][l]: pi(s_i jm_l)
          Mat p1 = quotient_coords(J2m, pair_flatten(pair_mul(lifts[i], jm_pairs[l])), freec);
          for (int t = 0; t < qdim; ++t)
            sys.at(j * dm + l, base + t) =
                F.add(sys.at(j * dm + l, base + t), p1.at(0, t));
          // coefficient of lambda[i][l]: pi(jm_l s_j)
          Mat p2 = quotient_coords(J2m, pair_flatten(pair_mul(jm_pairs[l], lifts[j])), freec);
          for (int t = 0; t < qdim; ++t)
            sys.at(i * dm + l, base + t) =
                F.add(sys.at(i * dm + l, base + t), p2.at(0, t));
          // coefficient of lambda[k][l]: -c_ijk pi(jm_l)
          Mat p3 = quotient_coords(J2m, pair_flatten(jm_pairs[l]), freec);
          for (int k = 0; k < r; ++k) {
            if (c[i][j][k] == 0) continue;
            for (int t = 0; t < qdim; ++t)
              sys.at(k * dm + l, base + t) =
                  F.sub(sys.at(k * dm + l, base + t), F.mul(c[i][j][k], p3.at(0, t)));
          }
        }
      }
    auto sol = solve_left(sys, rhs);
    require(sol.has_value(), "Wedderburn lifting system unsolvable");
    for (int i = 0; i < r; ++i) {
      MatPair t{mat_zero(F, A.a, A.a), mat_zero(F, A.b, A.b)};
      for (int l = 0; l < dm; ++l) {
        Fe lam = sol->at(0, i * dm + l);
        if (lam != 0) t = pair_add(t, pair_scale(jm_pairs[l], lam));
      }
      lifts[i] = pair_add(lifts[i], t);
    }
    m *= 2;
  }

  Subspace S = Subspace::from_rows(stack_pairs(F, lifts));
  require(S.dim() == r, "complement degenerated");
  // exactness: closed under product, intersects J trivially
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      require(S.contains(pair_flatten(pair_mul(lifts[i], lifts[j]))),
              "complement is not a subalgebra");
  require(subspace_intersect(S, J).dim() == 0, "complement meets radical");
  return S;
}

// --- central-primitive idempotents ------------------------------------------

namespace {

Poly pair_minpoly_rel(const MatPair& z, const MatPair& unit) {
  const Field& F = *z.X.F;
  Poly fx = minimal_polynomial_rel(z.X, unit.X);
  Poly fy = minimal_polynomial_rel(z.Y, unit.Y);
  return poly_lcm(F, fx, fy);
}

}  // namespace

std::vector<MatPair> central_primitive_idempotents(const AlgebraPair& A,
                                                   const Subspace& S,
                                                   std::uint64_t seed,
                                                   const MatPair* unit) {
  const Field& F = *A.F;
  MatPair top_unit = unit ? *unit : pair_identity(F, A.a, A.b);
  auto s_basis = subspace_pairs(F, S, A.a, A.b);
  int ns = static_cast<int>(s_basis.size());
  require(ns > 0, "empty semisimple part");

  // Center of S.
  Mat s_rows = stack_pairs(F, s_basis);
  Mat sys(F, ns, ns * s_rows.cols);
  for (int j = 0; j < ns; ++j) {
    for (int i = 0; i < ns; ++i) {
      MatPair comm = pair_sub(pair_mul(s_basis[i], s_basis[j]),
                              pair_mul(s_basis[j], s_basis[i]));
      Mat f = pair_flatten(comm);
      for (int t = 0; t < s_rows.cols; ++t)
        sys.at(i, j * s_rows.cols + t) = f.at(0, t);
    }
  }
  Subspace lam = nullspace(sys);
  std::vector<MatPair> z_basis;
  for (int i = 0; i < lam.dim(); ++i) {
    MatPair z{mat_zero(F, A.a, A.a), mat_zero(F, A.b, A.b)};
    for (int j = 0; j < ns; ++j) {
      Fe cc = lam.basis.at(i, j);
      if (cc != 0) z = pair_add(z, pair_scale(s_basis[j], cc));
    }
    z_basis.push_back(z);
  }

  Rng rng(seed);
  std::vector<MatPair> done;
  struct Block {
    MatPair unit;
    std::vector<MatPair> basis;  // of unit * Z
  };
  std::vector<Block> work;
  work.push_back({top_unit, z_basis});

  while (!work.empty()) {
    Block blk = std::move(work.back());
    work.pop_back();
    // canonicalize block basis
    {
      IncrementalSpan sp(F, A.a * A.a + A.b * A.b);
      std::vector<MatPair> canon;
      for (const auto& z : blk.basis)
        if (sp.add(pair_flatten(z)))
          canon.push_back(pair_unflatten(F, sp.rows().back(), A.a, A.b));
      blk.basis = std::move(canon);
    }
    int dimb = static_cast<int>(blk.basis.size());
    require(dimb > 0, "empty center block");
    if (dimb == 1) {
      done.push_back(blk.unit);
      continue;
    }
    bool split = false;
    for (int attempt = 0; attempt < 64 && !split; ++attempt) {
      MatPair z{mat_zero(F, A.a, A.a), mat_zero(F, A.b, A.b)};
      for (const auto& bb : blk.basis)
        z = pair_add(z, pair_scale(bb, static_cast<Fe>(rng.below(F.q()))));
      Poly f = pair_minpoly_rel(z, blk.unit);
      if (f.degree() < 1) continue;
      auto factors = poly_factor(F, f, rng.next());
      if (factors.size() == 1 && factors[0].second == 1) {
        if (f.degree() == dimb) {
          done.push_back(blk.unit);  // the block is a field
          split = true;
        }
        continue;  // generates a proper subfield; retry
      }
      // split via CRT idempotents of k[z] = prod k[x]/(g)
      for (auto& [g, mult] : factors) {
        require(mult == 1, "center minpoly not squarefree");
        Poly h = poly_divmod(F, f, g).first;
        auto [gg, sg, tg] = poly_egcd(F, h, g);
        require(gg.degree() == 0, "CRT gcd not 1");
        // idempotent: (sg * h)(z), constant acting through blk.unit
        Poly idem_poly = poly_mul(F, sg, h);
        MatPair u = eval_poly_pair(F, idem_poly, z, blk.unit);
        require(pair_eq(pair_mul(u, u), u), "CRT element not idempotent");
        if (pair_is_zero(u)) continue;
        Block nb;
        nb.unit = u;
        for (const auto& zb : blk.basis) nb.basis.push_back(pair_mul(u, zb));
        work.push_back(std::move(nb));
      }
      split = true;
    }
    if (!split) throw RandomnessExhausted("idempotent splitting budget");
  }

  // Deterministic order + axioms.
  std::sort(done.begin(), done.end(), [](const MatPair& x, const MatPair& y) {
    return pair_flatten(x).a < pair_flatten(y).a;
  });
  MatPair sum{mat_zero(F, A.a, A.a), mat_zero(F, A.b, A.b)};
  for (const auto& e : done) {
    require(pair_eq(pair_mul(e, e), e), "idempotent axiom failed");
    sum = pair_add(sum, e);
  }
  require(pair_eq(sum, top_unit), "idempotents do not sum to the unit");
  for (size_t i = 0; i < done.size(); ++i)
    for (size_t j = 0; j < done.size(); ++j)
      if (i != j)
        require(pair_is_zero(pair_mul(done[i], done[j])),
                "idempotents not orthogonal");
  return done;
}

// --- simple factor analysis ---------------------------------------------------

namespace {

std::vector<MatPair> ese_basis_of(const Field& F, const AlgebraPair& A,
                                  const std::vector<MatPair>& s_basis,
                                  const MatPair& e) {
  IncrementalSpan sp(F, A.a * A.a + A.b * A.b);
  std::vector<MatPair> out;
  for (const auto& s : s_basis) {
    MatPair p = pair_mul(pair_mul(e, s), e);
    if (sp.add(pair_flatten(p)))
      out.push_back(pair_unflatten(F, sp.rows().back(), A.a, A.b));
  }
  return out;
}

// Simple submodule of the given module, with its ambient basis tracked.
Mat find_simple_submodule(const Field& F, Mat ambient_basis,
                          std::vector<MatPair> acting, bool side_u, Rng& rng) {
  while (true) {
    ModuleAction mod;
    mod.F = &F;
    mod.dim = ambient_basis.rows;
    Subspace cur = Subspace::from_rows(ambient_basis);
    for (const auto& p : acting) {
      Mat img(F, ambient_basis.rows, ambient_basis.cols);
      for (int i = 0; i < ambient_basis.rows; ++i) {
        Mat v = act_side(mat_row(ambient_basis, i), p, side_u);
        for (int j = 0; j < ambient_basis.cols; ++j) img.at(i, j) = v.at(0, j);
      }
      auto sol = solve_left(ambient_basis, img);
      require(sol.has_value(), "module not invariant in simple search");
      mod.actors.push_back(*sol);
    }
    auto sub = meataxe_find_submodule(mod, rng);
    if (!sub.has_value()) return ambient_basis;
    ambient_basis = mat_mul(sub->basis, ambient_basis);
  }
}

}  // namespace

WedderburnData wedderburn_decompose(const AlgebraPair& A, std::uint64_t seed) {
  Subspace J = radical(A, seed);
  Subspace S = wedderburn_complement(A, J, seed + 1);
  return wedderburn_from(A, J, S, seed);
}

WedderburnData wedderburn_from(const AlgebraPair& A, const Subspace& J,
                               const Subspace& S, std::uint64_t seed) {
  const Field& F = *A.F;
  WedderburnData W;
  W.A = A;
  W.J = J;
  W.S = S;
  W.j_basis = subspace_pairs(F, W.J, A.a, A.b);
  W.s_basis = subspace_pairs(F, W.S, A.a, A.b);
  W.j_powers = radical_powers(A, W.J);
  W.c = static_cast<int>(W.j_powers.size());

  // Semisimplicity of the quotient: the complement has zero radical.
  {
    AlgebraPair Salg = algebra_from_pairs(F, A.a, A.b, W.s_basis);
    require(Salg.unital, "complement not unital");
    require(radical(Salg, seed + 2).dim() == 0, "complement has a radical");
  }

  auto idems = central_primitive_idempotents(A, W.S, seed + 3);
  Rng rng(seed + 4);
  for (const auto& e : idems)
    W.factors.push_back(analyze_simple_factor(A, W.s_basis, e, rng));

  // dim S = sum d^2 m
  {
    int total = 0;
    for (const auto& f : W.factors) total += f.d * f.d * f.m;
    require(total == W.S.dim(), "factor dimensions do not add up");
  }
  return W;
}

WedderburnFactor analyze_simple_factor(const AlgebraPair& A,
                                       const std::vector<MatPair>& s_basis,
                                       const MatPair& e, Rng& rng) {
  const Field& F = *A.F;
  {
    WedderburnFactor f;
    f.e = e;
    f.ese_basis = ese_basis_of(F, A, s_basis, e);
    int dim_ese = static_cast<int>(f.ese_basis.size());

    // Center of eSe as a matrix field.
    {
      Mat rows = stack_pairs(F, f.ese_basis);
      Mat sys(F, dim_ese, dim_ese * rows.cols);
      for (int j = 0; j < dim_ese; ++j)
        for (int i = 0; i < dim_ese; ++i) {
          MatPair comm = pair_sub(pair_mul(f.ese_basis[i], f.ese_basis[j]),
                                  pair_mul(f.ese_basis[j], f.ese_basis[i]));
          Mat flat = pair_flatten(comm);
          for (int t = 0; t < rows.cols; ++t)
            sys.at(i, j * rows.cols + t) = flat.at(0, t);
        }
      Subspace lam = nullspace(sys);
      std::vector<Mat> center_embedded;
      for (int i = 0; i < lam.dim(); ++i) {
        MatPair z{mat_zero(F, A.a, A.a), mat_zero(F, A.b, A.b)};
        for (int j = 0; j < dim_ese; ++j) {
          Fe cc = lam.basis.at(i, j);
          if (cc != 0) z = pair_add(z, pair_scale(f.ese_basis[j], cc));
        }
        center_embedded.push_back(pair_embed(z));
      }
      f.m = static_cast<int>(center_embedded.size());
      MatrixField L = make_matrix_field(F, center_embedded, pair_embed(e),
                                        rng.next());
      f.omega = pair_extract(F, L.gen, A.a, A.b);
      f.omega_minpoly = L.minpoly;
      require(L.m == f.m, "center field degree mismatch");
    }
    require(dim_ese % f.m == 0, "dim eSe not divisible by m");
    int d2 = dim_ese / f.m;
    f.d = 0;
    while ((f.d + 1) * (f.d + 1) <= d2) ++f.d;
    require(f.d * f.d == d2, "dim eSe / m is not a square");

    // Simple module side and basis.
    f.side_u = !e.X.is_zero();
    Subspace big = f.side_u ? Subspace::from_rows(e.X)
                            : Subspace::from_rows(mat_transpose(e.Y));
    require(big.dim() > 0, "idempotent acts as zero on both sides");
    f.w0 = find_simple_submodule(F, big.basis, f.ese_basis, f.side_u, rng);
    require(f.w0.rows == f.d * f.m, "simple module dimension mismatch");

    // Delta-basis of W0 by greedy omega-spinning.
    std::vector<MatPair> omega_pows;  // omega^0 = e, ..., omega^(m-1)
    {
      MatPair p = e;
      for (int j = 0; j < f.m; ++j) {
        omega_pows.push_back(p);
        p = pair_mul(p, f.omega);
      }
    }
    {
      IncrementalSpan dspan(F, f.w0.cols);
      Mat dvecs(F, 0, f.w0.cols);
      for (int i = 0; i < f.w0.rows && dvecs.rows < f.d; ++i) {
        Mat v = mat_row(f.w0, i);
        if (dspan.contains(v)) continue;
        dvecs = mat_vstack(dvecs, v);
        for (int j = 0; j < f.m; ++j)
          dspan.add(act_side(v, omega_pows[j], f.side_u));
      }
      require(dvecs.rows == f.d, "Delta-basis extraction failed");
      f.delta_vectors = dvecs;
      Mat wb(F, 0, f.w0.cols);
      for (int s = 0; s < f.d; ++s)
        for (int j = 0; j < f.m; ++j)
          wb = mat_vstack(wb, act_side(mat_row(dvecs, s), omega_pows[j], f.side_u));
      f.w_basis = wb;
      require(rref(wb).rank == f.d * f.m, "w_basis not independent");
    }

    // iso images of the eSe basis.
    for (const auto& bt : f.ese_basis) {
      Mat img(F, f.d, f.w0.cols);
      for (int s = 0; s < f.d; ++s) {
        Mat v = act_side(mat_row(f.delta_vectors, s), bt, f.side_u);
        for (int j = 0; j < f.w0.cols; ++j) img.at(s, j) = v.at(0, j);
      }
      auto sol = solve_left(f.w_basis, img);
      require(sol.has_value(), "iso coordinate solve failed");
      std::vector<DPoly> dmat(static_cast<size_t>(f.d) * f.d);
      for (int s = 0; s < f.d; ++s)
        for (int sp = 0; sp < f.d; ++sp) {
          std::vector<Fe> coeffs(f.m);
          for (int j = 0; j < f.m; ++j) coeffs[j] = sol->at(s, sp * f.m + j);
          // V-side actions are op-twisted; transposing restores a genuine
          // ring isomorphism.
          if (f.side_u)
            dmat[static_cast<size_t>(s) * f.d + sp] = Poly(coeffs);
          else
            dmat[static_cast<size_t>(sp) * f.d + s] = Poly(coeffs);
        }
      f.iso_images.push_back(std::move(dmat));
    }
    return f;
  }
}

DMat iso_apply(const AlgebraPair& A, const WedderburnFactor& f,
               const MatPair& p) {
  const Field& F = *A.F;
  Mat rows = stack_pairs(F, f.ese_basis);
  auto sol = solve_left(rows, pair_flatten(p));
  require(sol.has_value(), "iso_apply: element outside eSe");
  DMat out(static_cast<size_t>(f.d) * f.d);
  for (int t = 0; t < static_cast<int>(f.ese_basis.size()); ++t) {
    Fe cc = sol->at(0, t);
    if (cc == 0) continue;
    for (size_t idx = 0; idx < out.size(); ++idx)
      out[idx] = poly_add(F, out[idx],
                          poly_scale(F, f.iso_images[t][idx], cc));
  }
  for (auto& e : out) e = poly_mod(F, e, f.omega_minpoly);
  return out;
}

MatPair iso_inverse(const AlgebraPair& A, const WedderburnFactor& f,
                    const DMat& dm) {
  const Field& F = *A.F;
  int n = static_cast<int>(f.ese_basis.size());
  // Solve sum_t x_t iso_images[t] = dm over k: coordinates are the m poly
  // coefficients of each of the d*d entries.
  int cols = f.d * f.d * f.m;
  Mat sys(F, n, cols);
  for (int t = 0; t < n; ++t)
    for (int idx = 0; idx < f.d * f.d; ++idx)
      for (int j = 0; j < f.m; ++j)
        sys.at(t, idx * f.m + j) = f.iso_images[t][idx].coeff(j);
  Mat rhs(F, 1, cols);
  for (int idx = 0; idx < f.d * f.d; ++idx) {
    Poly e = poly_mod(F, dm[idx], f.omega_minpoly);
    for (int j = 0; j < f.m; ++j) rhs.at(0, idx * f.m + j) = e.coeff(j);
  }
  auto sol = solve_left(sys, rhs);
  require(sol.has_value(), "iso_inverse: matrix outside iso image");
  MatPair p{mat_zero(F, A.a, A.a), mat_zero(F, A.b, A.b)};
  for (int t = 0; t < n; ++t) {
    Fe cc = sol->at(0, t);
    if (cc != 0) p = pair_add(p, pair_scale(f.ese_basis[t], cc));
  }
  return p;
}

MatPair factor_matrix_unit(const AlgebraPair& A, const WedderburnFactor& f,
                           int s, int t) {
  const Field& F = *A.F;
  DMat dm(static_cast<size_t>(f.d) * f.d);
  dm[static_cast<size_t>(s) * f.d + t] = Poly({F.one()});
  return iso_inverse(A, f, dm);
}

MatPair factor_scalar(const AlgebraPair& A, const WedderburnFactor& f,
                      const DPoly& delta) {
  const Field& F = *A.F;
  DMat dm(static_cast<size_t>(f.d) * f.d);
  for (int s = 0; s < f.d; ++s) dm[static_cast<size_t>(s) * f.d + s] =
      poly_mod(F, delta, f.omega_minpoly);
  return iso_inverse(A, f, dm);
}

// --- layers -------------------------------------------------------------------

Subspace invariant_complement(const Subspace& big, const Subspace& sub,
                              const std::vector<Mat>& actors) {
  const Field& F = *big.F;
  if (sub.dim() == 0) return big;
  int nb = big.dim(), ns = sub.dim();
  require(big.contains(sub), "sub not inside big");

  // Coordinates of sub inside big.
  auto coordsS = solve_left(big.basis, sub.basis);
  require(coordsS.has_value(), "sub coordinates failed");
  // Action on big and sub coordinates.
  std::vector<Mat> rho_big, rho_sub;
  for (const Mat& T : actors) {
    auto rb = solve_left(big.basis, mat_mul(big.basis, T));
    auto rs = solve_left(sub.basis, mat_mul(sub.basis, T));
    require(rb.has_value() && rs.has_value(), "spaces not invariant");
    rho_big.push_back(*rb);
    rho_sub.push_back(*rs);
  }

  // Unknown P (nb x ns) with rho_big(T) P = P rho_sub(T) and coordsS P = I.
  int ncond = static_cast<int>(actors.size()) * nb * ns + ns * ns;
  Mat sys(F, nb * ns, ncond);
  Mat rhs(F, 1, ncond);
  int off = 0;
  for (size_t t = 0; t < actors.size(); ++t) {
    const Mat& Rb = rho_big[t];
    const Mat& Rs = rho_sub[t];
    for (int i = 0; i < nb; ++i)
      for (int j = 0; j < ns; ++j) {
        int col = off + i * ns + j;
        for (int s = 0; s < nb; ++s)
          sys.at(s * ns + j, col) = F.add(sys.at(s * ns + j, col), Rb.at(i, s));
        for (int s = 0; s < ns; ++s)
          sys.at(i * ns + s, col) = F.sub(sys.at(i * ns + s, col), Rs.at(s, j));
      }
    off += nb * ns;
  }
  for (int i = 0; i < ns; ++i)
    for (int j = 0; j < ns; ++j) {
      int col = off + i * ns + j;
      for (int s = 0; s < nb; ++s)
        sys.at(s * ns + j, col) = coordsS->at(i, s);
      rhs.at(0, col) = (i == j) ? F.one() : F.zero();
    }
  auto sol = solve_left(sys, rhs);
  require(sol.has_value(), "equivariant projection unsolvable");
  Mat P(F, nb, ns);
  for (int i = 0; i < nb; ++i)
    for (int j = 0; j < ns; ++j) P.at(i, j) = sol->at(0, i * ns + j);

  Subspace kerP = nullspace(P);  // in big coordinates
  require(kerP.dim() == nb - ns, "complement dimension mismatch");
  return Subspace::from_rows(mat_mul(kerP.basis, big.basis));
}

LayerData radical_series_layers(const WedderburnData& W) {
  const Field& F = *W.A.F;
  int a = W.A.a, b = W.A.b;
  LayerData L;

  // chains
  L.UJ.push_back(Subspace::full(F, a));
  L.JV.push_back(Subspace::full(F, b));
  for (int i = 1; i <= W.c + 1; ++i) {
    const Subspace& prevU = L.UJ.back();
    Mat rowsU(F, 0, a);
    for (int r = 0; r < prevU.dim(); ++r)
      for (const auto& z : W.j_basis)
        rowsU = mat_vstack(rowsU, act_u(mat_row(prevU.basis, r), z));
    L.UJ.push_back(rowsU.rows ? Subspace::from_rows(rowsU)
                              : Subspace::zero(F, a));
    const Subspace& prevV = L.JV.back();
    Mat rowsV(F, 0, b);
    for (int r = 0; r < prevV.dim(); ++r)
      for (const auto& z : W.j_basis)
        rowsV = mat_vstack(rowsV, act_v(mat_row(prevV.basis, r), z));
    L.JV.push_back(rowsV.rows ? Subspace::from_rows(rowsV)
                              : Subspace::zero(F, b));
  }
  require(L.UJ[W.c + 1].dim() == 0 && L.JV[W.c + 1].dim() == 0,
          "module chain longer than radical chain");

  std::vector<Mat> actU, actV;
  for (const auto& s : W.s_basis) {
    actU.push_back(s.X);
    actV.push_back(mat_transpose(s.Y));
  }
  for (int i = 0; i <= W.c; ++i) {
    L.X.push_back(invariant_complement(L.UJ[i], L.UJ[i + 1], actU));
    L.Y.push_back(invariant_complement(L.JV[i], L.JV[i + 1], actV));
  }

  for (const auto& f : W.factors) {
    std::vector<int> mrow, nrow;
    for (int i = 0; i <= W.c; ++i) {
      Mat mu(F, 0, a);
      for (int r = 0; r < L.X[i].dim(); ++r)
        mu = mat_vstack(mu, act_u(mat_row(L.X[i].basis, r), f.e));
      int dx = mu.rows ? rref(mu).rank : 0;
      require(dx % (f.d * f.m) == 0, "X_i e dimension not divisible");
      mrow.push_back(dx / (f.d * f.m));
      Mat nu(F, 0, b);
      for (int r = 0; r < L.Y[i].dim(); ++r)
        nu = mat_vstack(nu, act_v(mat_row(L.Y[i].basis, r), f.e));
      int dy = nu.rows ? rref(nu).rank : 0;
      require(dy % (f.d * f.m) == 0, "e Y_i dimension not divisible");
      nrow.push_back(dy / (f.d * f.m));
    }
    L.m.push_back(std::move(mrow));
    L.n.push_back(std::move(nrow));
  }
  return L;
}

// --- Malcev conjugator (validation helper) ------------------------------------

std::optional<MatPair> find_malcev_conjugator(const AlgebraPair& A,
                                              const Subspace& J,
                                              const Subspace& S1,
                                              const Subspace& S2,
                                              std::uint64_t cap) {
  const Field& F = *A.F;
  auto jb = subspace_pairs(F, J, A.a, A.b);
  int dj = static_cast<int>(jb.size());
  std::uint64_t total = 1;
  for (int i = 0; i < dj; ++i) {
    total *= F.q();
    if (total > cap) throw CapExceeded("malcev search too large");
  }
  auto s1 = subspace_pairs(F, S1, A.a, A.b);
  std::vector<Fe> coeff(dj, 0);
  for (std::uint64_t it = 0; it < total; ++it) {
    MatPair z{mat_zero(F, A.a, A.a), mat_zero(F, A.b, A.b)};
    for (int i = 0; i < dj; ++i)
      if (coeff[i] != 0) z = pair_add(z, pair_scale(jb[i], coeff[i]));
    MatPair u = pair_add(pair_identity(F, A.a, A.b), z);
    // conjugate S1 by the unit u inside the ring
    MatPair uinv{mat_inverse(u.X), mat_inverse(u.Y)};
    Mat rows(F, static_cast<int>(s1.size()), A.a * A.a + A.b * A.b);
    for (size_t r = 0; r < s1.size(); ++r) {
      MatPair c = pair_mul(pair_mul(uinv, s1[r]), u);
      Mat fl = pair_flatten(c);
      for (int t = 0; t < fl.cols; ++t) rows.at(static_cast<int>(r), t) = fl.at(0, t);
    }
    if (Subspace::from_rows(rows) == S2) return u;
    for (int i = 0; i < dj; ++i) {
      coeff[i] = static_cast<Fe>((coeff[i] + 1) % F.q());
      if (coeff[i] != 0) break;
    }
  }
  return std::nullopt;
}

// --- Morita blocks ----------------------------------------------------------------

Mat pair_act_side(const Mat& v, const MatPair& p, bool side_u) {
  return act_side(v, p, side_u);
}

std::vector<MatPair> omega_powers(const WedderburnFactor& f) {
  std::vector<MatPair> pows;
  MatPair p = f.e;
  for (int j = 0; j < f.m; ++j) {
    pows.push_back(p);
    p = pair_mul(p, f.omega);
  }
  return pows;
}

Subspace layer_factor_part(const Subspace& layer, const MatPair& e,
                           bool side_u) {
  const Field& F = *layer.F;
  Mat rows(F, 0, layer.ambient);
  for (int r = 0; r < layer.dim(); ++r)
    rows = mat_vstack(rows, act_side(mat_row(layer.basis, r), e, side_u));
  return rows.rows ? Subspace::from_rows(rows)
                   : Subspace::zero(F, layer.ambient);
}

MoritaBlock morita_block(const Field& F, const Subspace& layer_part, int d,
                         int m, const std::vector<MatPair>& omega_pows,
                         const std::vector<MatPair>& units, const MatPair& eps,
                         bool side_u, int mult) {
  int amb = layer_part.ambient;
  // multiplicity space C = layer_part * eps
  Mat crows(F, 0, amb);
  for (int r = 0; r < layer_part.dim(); ++r)
    crows = mat_vstack(crows, act_side(mat_row(layer_part.basis, r), eps, side_u));
  Subspace C = crows.rows ? Subspace::from_rows(crows) : Subspace::zero(F, amb);
  require(C.dim() == m * mult, "multiplicity space dimension mismatch");

  MoritaBlock blk;
  // Greedy Delta-basis of C.
  IncrementalSpan dspan(F, amb);
  blk.cvecs = Mat(F, 0, amb);
  for (int i = 0; i < C.dim() && blk.cvecs.rows < mult; ++i) {
    Mat v = mat_row(C.basis, i);
    if (dspan.contains(v)) continue;
    blk.cvecs = mat_vstack(blk.cvecs, v);
    for (int j = 0; j < m; ++j) dspan.add(act_side(v, omega_pows[j], side_u));
  }
  require(blk.cvecs.rows == mult, "multiplicity Delta-basis failed");

  blk.rows = Mat(F, 0, amb);
  for (int t = 0; t < mult; ++t)
    for (int s = 0; s < d; ++s)
      for (int j = 0; j < m; ++j) {
        Mat v = act_side(mat_row(blk.cvecs, t), units[s], side_u);
        v = act_side(v, omega_pows[j], side_u);
        blk.rows = mat_vstack(blk.rows, v);
      }
  require(rref(blk.rows).rank == mult * d * m, "Morita basis not independent");
  return blk;
}

MoritaBlock factor_morita_block(const AlgebraPair& A, const WedderburnFactor& f,
                                const Subspace& layer, bool side_u, int mult) {
  const Field& F = *A.F;
  Subspace part = layer_factor_part(layer, f.e, side_u);
  std::vector<MatPair> pows = omega_powers(f);
  std::vector<MatPair> units;
  MatPair eps = factor_matrix_unit(A, f, 0, 0);
  for (int s = 0; s < f.d; ++s)
    units.push_back(side_u ? factor_matrix_unit(A, f, 0, s)
                           : factor_matrix_unit(A, f, s, 0));
  return morita_block(F, part, f.d, f.m, pows, units, eps, side_u, mult);
}

// --- idempotent equivalence witness --------------------------------------------

std::optional<GenPair> idempotent_equivalent(const WedderburnData& W,
                                             const LayerData& L, int e1,
                                             int e2, std::uint64_t seed) {
  const Field& F = *W.A.F;
  int a = W.A.a, b = W.A.b;
  const auto& f1 = W.factors[e1];
  const auto& f2 = W.factors[e2];
  if (e1 == e2) return gp_identity(F, a, b);
  if (f1.d != f2.d || f1.m != f2.m) return std::nullopt;
  for (int i = 0; i <= W.c; ++i)
    if (L.m[e1][i] != L.m[e2][i] || L.n[e1][i] != L.n[e2][i])
      return std::nullopt;
  int d = f1.d, m = f1.m;

  // Field alignment: tau in Z(e2 S e2) a root of omega1's minimal polynomial.
  std::vector<Mat> z2_basis;
  {
    MatPair p = f2.e;
    for (int j = 0; j < m; ++j) {
      z2_basis.push_back(pair_embed(p));
      p = pair_mul(p, f2.omega);
    }
  }
  Mat tau_embed = root_in_algebra(F, f1.omega_minpoly, z2_basis,
                                  pair_embed(f2.e), seed);
  MatPair tau = pair_extract(F, tau_embed, a, b);

  // omega powers for both factors; factor 2 uses tau so that the induced
  // ring map is index-aligned.
  std::vector<MatPair> pow1, pow2;
  {
    MatPair p1 = f1.e, p2 = f2.e;
    for (int j = 0; j < m; ++j) {
      pow1.push_back(p1);
      pow2.push_back(p2);
      p1 = pair_mul(p1, f1.omega);
      p2 = pair_mul(p2, tau);
    }
  }
  std::vector<MatPair> units1_row, units2_row, units1_col, units2_col;
  for (int s = 0; s < d; ++s) {
    units1_row.push_back(factor_matrix_unit(W.A, f1, 0, s));
    units2_row.push_back(factor_matrix_unit(W.A, f2, 0, s));
    units1_col.push_back(factor_matrix_unit(W.A, f1, s, 0));
    units2_col.push_back(factor_matrix_unit(W.A, f2, s, 0));
  }
  MatPair eps1 = factor_matrix_unit(W.A, f1, 0, 0);
  MatPair eps2 = factor_matrix_unit(W.A, f2, 0, 0);

  // Assemble the U-side and V-side basis maps.
  Mat fullU(F, 0, a), imgU(F, 0, a);
  Mat fullV(F, 0, b), imgV(F, 0, b);
  for (int i = 0; i <= W.c; ++i) {
    for (size_t fi = 0; fi < W.factors.size(); ++fi) {
      const auto& ff = W.factors[fi];
      // U side
      Subspace partU = layer_factor_part(L.X[i], ff.e, true);
      if (partU.dim() > 0) {
        if (static_cast<int>(fi) == e1 || static_cast<int>(fi) == e2) {
          bool first = static_cast<int>(fi) == e1;
          MoritaBlock blk_this = morita_block(F, partU, d, m,
                                              first ? pow1 : pow2,
                                              first ? units1_row : units2_row,
                                              first ? eps1 : eps2, true,
                                              L.m[fi][i]);
          Subspace partU_other =
              layer_factor_part(L.X[i], (first ? f2 : f1).e, true);
          MoritaBlock blk_other = morita_block(F, partU_other, d, m,
                                               first ? pow2 : pow1,
                                               first ? units2_row : units1_row,
                                               first ? eps2 : eps1, true,
                                               L.m[fi][i]);
          fullU = mat_vstack(fullU, blk_this.rows);
          imgU = mat_vstack(imgU, blk_other.rows);
        } else {
          fullU = mat_vstack(fullU, partU.basis);
          imgU = mat_vstack(imgU, partU.basis);
        }
      }
      // V side
      Subspace partV = layer_factor_part(L.Y[i], ff.e, false);
      if (partV.dim() > 0) {
        if (static_cast<int>(fi) == e1 || static_cast<int>(fi) == e2) {
          bool first = static_cast<int>(fi) == e1;
          MoritaBlock blk_this = morita_block(F, partV, d, m,
                                              first ? pow1 : pow2,
                                              first ? units1_col : units2_col,
                                              first ? eps1 : eps2, false,
                                              L.n[fi][i]);
          Subspace partV_other =
              layer_factor_part(L.Y[i], (first ? f2 : f1).e, false);
          MoritaBlock blk_other = morita_block(F, partV_other, d, m,
                                               first ? pow2 : pow1,
                                               first ? units2_col : units1_col,
                                               first ? eps2 : eps1, false,
                                               L.n[fi][i]);
          fullV = mat_vstack(fullV, blk_this.rows);
          imgV = mat_vstack(imgV, blk_other.rows);
        } else {
          fullV = mat_vstack(fullV, partV.basis);
          imgV = mat_vstack(imgV, partV.basis);
        }
      }
    }
  }
  require(fullU.rows == a && fullV.rows == b, "swap basis incomplete");

  // P solves fullU * P = imgU  =>  P = fullU^-1 imgU.
  Mat PU = mat_mul(mat_inverse(fullU), imgU);
  Mat PV = mat_mul(mat_inverse(fullV), imgV);
  GenPair g{PU, PV};

  // The witness must normalize S, exchange e1/e2 and fix the others.
  MatPair ce1 = gp_conjugate(g, f1.e);
  MatPair ce2 = gp_conjugate(g, f2.e);
  require(pair_eq(ce1, f2.e) && pair_eq(ce2, f1.e), "swap misses idempotents");
  for (const auto& s : W.s_basis)
    require(W.S.contains(pair_flatten(gp_conjugate(g, s))),
            "swap does not normalize S");
  return g;
}

}  // namespace gfbimap
