#include "gfbimap/adjoint.hpp"

namespace gfbimap {

MatPair pair_identity(const Field& F, int a, int b) {
  return {mat_identity(F, a), mat_identity(F, b)};
}
MatPair pair_add(const MatPair& p, const MatPair& q) {
  return {mat_add(p.X, q.X), mat_add(p.Y, q.Y)};
}
MatPair pair_sub(const MatPair& p, const MatPair& q) {
  return {mat_sub(p.X, q.X), mat_sub(p.Y, q.Y)};
}
MatPair pair_mul(const MatPair& p, const MatPair& q) {
  return {mat_mul(p.X, q.X), mat_mul(p.Y, q.Y)};
}
MatPair pair_scale(const MatPair& p, Fe s) {
  return {mat_scale(p.X, s), mat_scale(p.Y, s)};
}
MatPair pair_neg(const MatPair& p) { return {mat_neg(p.X), mat_neg(p.Y)}; }
bool pair_eq(const MatPair& p, const MatPair& q) {
  return p.X == q.X && p.Y == q.Y;
}
bool pair_is_zero(const MatPair& p) { return p.X.is_zero() && p.Y.is_zero(); }

Mat pair_flatten(const MatPair& p) {
  const Field& F = *p.X.F;
  int a2 = p.X.rows * p.X.cols, b2 = p.Y.rows * p.Y.cols;
  Mat v(F, 1, a2 + b2);
  for (int i = 0; i < a2; ++i) v.at(0, i) = p.X.a[i];
  for (int i = 0; i < b2; ++i) v.at(0, a2 + i) = p.Y.a[i];
  return v;
}

MatPair pair_unflatten(const Field& F, const Mat& v, int a, int b) {
  require(v.cols == a * a + b * b, "pair_unflatten size mismatch");
  MatPair p{Mat(F, a, a), Mat(F, b, b)};
  for (int i = 0; i < a * a; ++i) p.X.a[i] = v.at(0, i);
  for (int i = 0; i < b * b; ++i) p.Y.a[i] = v.at(0, a * a + i);
  return p;
}

std::vector<Fe> AlgebraPair::coordinates(const MatPair& p) const {
  Mat rows(*F, dim(), a * a + b * b);
  for (int i = 0; i < dim(); ++i) {
    Mat f = pair_flatten(basis[i]);
    for (int j = 0; j < f.cols; ++j) rows.at(i, j) = f.at(0, j);
  }
  auto sol = solve_left(rows, pair_flatten(p));
  require(sol.has_value(), "pair outside algebra span");
  std::vector<Fe> c(dim());
  for (int i = 0; i < dim(); ++i) c[i] = sol->at(0, i);
  return c;
}

MatPair AlgebraPair::from_coordinates(const std::vector<Fe>& c) const {
  require(static_cast<int>(c.size()) == dim(), "coordinate size mismatch");
  MatPair p{mat_zero(*F, a, a), mat_zero(*F, b, b)};
  for (int i = 0; i < dim(); ++i)
    if (c[i] != 0) p = pair_add(p, pair_scale(basis[i], c[i]));
  return p;
}

AlgebraPair algebra_from_pairs(const Field& F, int a, int b,
                               const std::vector<MatPair>& gens) {
  Mat rows(F, static_cast<int>(gens.size()), a * a + b * b);
  for (size_t i = 0; i < gens.size(); ++i) {
    Mat f = pair_flatten(gens[i]);
    for (int j = 0; j < f.cols; ++j) rows.at(static_cast<int>(i), j) = f.at(0, j);
  }
  AlgebraPair A;
  A.F = &F;
  A.a = a;
  A.b = b;
  A.span = gens.empty() ? Subspace::zero(F, a * a + b * b)
                        : Subspace::from_rows(rows);
  for (int i = 0; i < A.span.dim(); ++i)
    A.basis.push_back(pair_unflatten(F, mat_row(A.span.basis, i), a, b));
  A.unital = A.contains(pair_identity(F, a, b));
  return A;
}

bool algebra_is_closed(const AlgebraPair& A) {
  for (const MatPair& p : A.basis)
    for (const MatPair& q : A.basis)
      if (!A.contains(pair_mul(p, q))) return false;
  return true;
}

AlgebraPair adjoint_algebra(const Bimap& bm) {
  const Field& F = *bm.F;
  int a = bm.a, b = bm.b;
  // Unknown row z = (vec X | vec Y); one column per (slice, i, j) encoding
  // (X M_l - M_l Y)_{ij} = 0.  Assembled slice-major.
  Mat B(F, a * a + b * b, bm.w * a * b);
  for (int l = 0; l < bm.w; ++l) {
    const Mat& M = bm.slices[l];
    for (int i = 0; i < a; ++i)
      for (int j = 0; j < b; ++j) {
        int col = l * a * b + i * b + j;
        // coefficient of X[i][t] is M[t][j]
        for (int t = 0; t < a; ++t) B.at(i * a + t, col) = M.at(t, j);
        // coefficient of Y[s][j] is -M[i][s]
        for (int s = 0; s < b; ++s)
          B.at(a * a + s * b + j, col) = F.neg(M.at(i, s));
      }
  }
  Subspace sol = nullspace(B);
  AlgebraPair A;
  A.F = &F;
  A.a = a;
  A.b = b;
  A.span = sol;
  for (int i = 0; i < sol.dim(); ++i)
    A.basis.push_back(pair_unflatten(F, mat_row(sol.basis, i), a, b));
  A.unital = A.contains(pair_identity(F, a, b));
  require(A.unital, "adjoint algebra must contain the identity pair");
  return A;
}

MatPair apply_involution(const AlgebraPair& A, const Involution& st,
                         const MatPair& p) {
  auto c = A.coordinates(p);
  std::vector<Fe> img(A.dim(), 0);
  for (int i = 0; i < A.dim(); ++i) {
    if (c[i] == 0) continue;
    for (int j = 0; j < A.dim(); ++j)
      img[j] = A.F->add(img[j], A.F->mul(c[i], st.matrix.at(i, j)));
  }
  return A.from_coordinates(img);
}

Involution star_involution(const Bimap& bm, const AlgebraPair& adj) {
  if (bm.a != bm.b) throw NotSquare("star needs a = b");
  if (!bm.symmetric && !bm.alternating)
    throw NotSymmetricOrAlternating("star needs a symmetric or alternating bimap");
  if (!is_nondegenerate(bm)) throw Degenerate("star needs a nondegenerate bimap");

  const Field& F = *bm.F;
  Involution st;
  st.matrix = Mat(F, adj.dim(), adj.dim());
  for (int i = 0; i < adj.dim(); ++i) {
    // Operator-level swap (x, y) -> (y, x); with Y stored as the left-action
    // matrix this reads (X, Y) -> (Y^T, X^T), an anti-automorphism.
    MatPair swapped{mat_transpose(adj.basis[i].Y), mat_transpose(adj.basis[i].X)};
    require(adj.contains(swapped), "star image escapes Adj");
    auto c = adj.coordinates(swapped);
    for (int j = 0; j < adj.dim(); ++j) st.matrix.at(i, j) = c[j];
  }
  // order <= 2
  require(mat_mul(st.matrix, st.matrix) == mat_identity(F, adj.dim()),
          "star involution is not of order <= 2");
  return st;
}

}  // namespace gfbimap
