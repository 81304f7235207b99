#include "gfbimap/tensor.hpp"

namespace gfbimap {

namespace {

// (e_i X) (x) e_j - e_i (x) (e_j Y^T) flattened into k^(ab).
Mat midlinear_relations(const Field& F, int a, int b,
                        const std::vector<MatPair>& s_elements) {
  int count = static_cast<int>(s_elements.size()) * a * b;
  Mat rows(F, count, a * b);
  int r = 0;
  for (const auto& s : s_elements) {
    for (int i = 0; i < a; ++i)
      for (int j = 0; j < b; ++j) {
        for (int ip = 0; ip < a; ++ip)
          rows.at(r, ip * b + j) = F.add(rows.at(r, ip * b + j), s.X.at(i, ip));
        for (int jp = 0; jp < b; ++jp)
          rows.at(r, i * b + jp) = F.sub(rows.at(r, i * b + jp), s.Y.at(jp, j));
        ++r;
      }
  }
  return rows;
}

}  // namespace

TensorPresentation tensor_over(const Field& F, int a, int b,
                               const std::vector<MatPair>& s_elements) {
  TensorPresentation T;
  T.F = &F;
  T.a = a;
  T.b = b;
  T.s_elements = s_elements;
  Mat rels = midlinear_relations(F, a, b, s_elements);
  T.relations = rels.rows ? Subspace::from_rows(rels)
                          : Subspace::zero(F, a * b);
  auto reg = regular_mod(F, a, b, T.relations);
  T.product = std::move(reg.bimap);
  T.quotient_map = std::move(reg.quotient_map);
  return T;
}

TensorPresentation exterior_over(const Field& F, int n,
                                 const std::vector<MatPair>& a_elements,
                                 char sign) {
  require(sign == '+' || sign == '-', "sign must be + or -");
  for (const auto& p : a_elements)
    if (p.X.rows != n || p.Y.rows != n) throw NotSquare("exterior needs a = b");
  if (sign == '+' && F.p() == 2)
    throw CharTwo("symmetric quotient excluded in characteristic 2");

  Mat rels = midlinear_relations(F, n, n, a_elements);
  if (sign == '-') {
    // <v (x) v>: e_i (x) e_i and the polarized e_i (x) e_j + e_j (x) e_i.
    for (int i = 0; i < n; ++i) {
      Mat r(F, 1, n * n);
      r.at(0, i * n + i) = F.one();
      rels = mat_vstack(rels, r);
    }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        Mat r(F, 1, n * n);
        r.at(0, i * n + j) = F.one();
        r.at(0, j * n + i) = F.one();
        rels = mat_vstack(rels, r);
      }
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        Mat r(F, 1, n * n);
        r.at(0, i * n + j) = F.one();
        r.at(0, j * n + i) = F.neg(F.one());
        rels = mat_vstack(rels, r);
      }
  }
  TensorPresentation T;
  T.F = &F;
  T.a = n;
  T.b = n;
  T.s_elements = a_elements;
  T.relations = rels.rows ? Subspace::from_rows(rels)
                          : Subspace::zero(F, n * n);
  auto reg = regular_mod(F, n, n, T.relations);
  T.product = std::move(reg.bimap);
  T.quotient_map = std::move(reg.quotient_map);
  return T;
}

InducedMap induced_map(const Bimap& bm, const std::vector<MatPair>& s_elements) {
  const Field& F = *bm.F;
  for (const auto& s : s_elements)
    for (const Mat& M : bm.slices)
      if (!(mat_mul(s.X, M) == mat_mul(M, s.Y)))
        throw NotAdjoint("element outside Adj of the bimap");

  InducedMap out;
  out.presentation = tensor_over(F, bm.a, bm.b, s_elements);
  Mat H = hat_matrix(bm);
  auto freec = out.presentation.relations.nonpivot_coords();
  out.tau = Mat(F, static_cast<int>(freec.size()), bm.w);
  for (size_t t = 0; t < freec.size(); ++t)
    for (int l = 0; l < bm.w; ++l)
      out.tau.at(static_cast<int>(t), l) = H.at(freec[t], l);
  out.kernel = nullspace(out.tau);
  return out;
}

bool is_tensor_product(const Bimap& bm) {
  AlgebraPair adj = adjoint_algebra(bm);
  InducedMap im = induced_map(bm, adj.basis);
  return im.tau.rows == im.tau.cols && mat_is_invertible(im.tau);
}

AlgebraPair galois_closure(const Field& F, int a, int b,
                           const std::vector<MatPair>& s_elements) {
  TensorPresentation T = tensor_over(F, a, b, s_elements);
  return adjoint_algebra(T.product);
}

}  // namespace gfbimap
