#include "gfbimap/group.hpp"

#include <unordered_set>

namespace gfbimap {

GenPair gp_identity(const Field& F, int a, int b) {
  return {mat_identity(F, a), mat_identity(F, b)};
}

GenPair gp_mul(const GenPair& x, const GenPair& y) {
  return {mat_mul(x.F, y.F), mat_mul(x.G, y.G)};
}

GenPair gp_inv(const GenPair& x) {
  return {mat_inverse(x.F), mat_inverse(x.G)};
}

bool gp_eq(const GenPair& x, const GenPair& y) {
  return x.F == y.F && x.G == y.G;
}

bool gp_is_identity(const GenPair& x) {
  return x.F == mat_identity(*x.F.F, x.F.rows) &&
         x.G == mat_identity(*x.G.F, x.G.rows);
}

std::string mat_key(const Mat& m) {
  std::string s;
  s.reserve(m.a.size() * 2);
  for (Fe x : m.a) {
    s.push_back(static_cast<char>(x & 0xff));
    s.push_back(static_cast<char>((x >> 8) & 0xff));
  }
  return s;
}

std::string gp_key(const GenPair& x) {
  std::string s = mat_key(x.F);
  s.push_back('|');
  s += mat_key(x.G);
  return s;
}

MatPair gp_conjugate(const GenPair& g, const MatPair& p) {
  Mat Finv = mat_inverse(g.F);
  Mat Gt = mat_transpose(g.G);
  Mat Gti = mat_inverse(Gt);
  return {mat_mul(mat_mul(Finv, p.X), g.F), mat_mul(mat_mul(Gt, p.Y), Gti)};
}

Subspace gp_conjugate_space(const GenPair& g, const Subspace& W, int a, int b) {
  const Field& F = *W.F;
  Mat Finv = mat_inverse(g.F);
  Mat Gt = mat_transpose(g.G);
  Mat Gti = mat_inverse(Gt);
  Mat rows(F, W.dim(), W.ambient);
  for (int i = 0; i < W.dim(); ++i) {
    MatPair p = pair_unflatten(F, mat_row(W.basis, i), a, b);
    MatPair c{mat_mul(mat_mul(Finv, p.X), g.F), mat_mul(mat_mul(Gt, p.Y), Gti)};
    Mat f = pair_flatten(c);
    for (int j = 0; j < W.ambient; ++j) rows.at(i, j) = f.at(0, j);
  }
  if (W.dim() == 0) return W;
  return Subspace::from_rows(rows);
}

GenPair unit_to_group(const MatPair& u) {
  return {u.X, mat_inverse(mat_transpose(u.Y))};
}

MatPair group_to_unit(const GenPair& g) {
  return {g.F, mat_inverse(mat_transpose(g.G))};
}

Mat conjugate_single(const Mat& g, const Mat& x) {
  return mat_mul(mat_mul(mat_inverse(g), x), g);
}

Subspace conjugate_single_space(const Mat& g, const Subspace& W, int n) {
  const Field& F = *W.F;
  Mat ginv = mat_inverse(g);
  Mat rows(F, W.dim(), W.ambient);
  for (int i = 0; i < W.dim(); ++i) {
    Mat x = mat_unflatten(F, mat_row(W.basis, i).a, n, n);
    Mat c = mat_mul(mat_mul(ginv, x), g);
    for (int j = 0; j < W.ambient; ++j) rows.at(i, j) = c.a[j];
  }
  if (W.dim() == 0) return W;
  return Subspace::from_rows(rows);
}

std::vector<GenPair> closure_elements(const std::vector<GenPair>& gens,
                                      std::uint64_t cap) {
  require(!gens.empty() || true, "closure");
  std::vector<GenPair> elements;
  std::unordered_set<std::string> seen;
  if (gens.empty()) return elements;
  const Field& F = *gens[0].F.F;
  GenPair id = gp_identity(F, gens[0].F.rows, gens[0].G.rows);
  elements.push_back(id);
  seen.insert(gp_key(id));
  for (size_t head = 0; head < elements.size(); ++head) {
    for (const GenPair& g : gens) {
      GenPair next = gp_mul(elements[head], g);
      std::string key = gp_key(next);
      if (seen.insert(key).second) {
        if (elements.size() >= cap)
          throw ClosureCapExceeded("group closure exceeded cap");
        elements.push_back(std::move(next));
      }
    }
  }
  return elements;
}

BigInt closure_order(const std::vector<GenPair>& gens, std::uint64_t cap) {
  if (gens.empty()) return 1;
  return BigInt(closure_elements(gens, cap).size());
}

std::vector<Mat> closure_elements_single(const std::vector<Mat>& gens,
                                         std::uint64_t cap) {
  std::vector<Mat> elements;
  std::unordered_set<std::string> seen;
  if (gens.empty()) return elements;
  const Field& F = *gens[0].F;
  Mat id = mat_identity(F, gens[0].rows);
  elements.push_back(id);
  seen.insert(mat_key(id));
  for (size_t head = 0; head < elements.size(); ++head) {
    for (const Mat& g : gens) {
      Mat next = mat_mul(elements[head], g);
      std::string key = mat_key(next);
      if (seen.insert(key).second) {
        if (elements.size() >= cap)
          throw ClosureCapExceeded("group closure exceeded cap");
        elements.push_back(std::move(next));
      }
    }
  }
  return elements;
}

BigInt closure_order_single(const std::vector<Mat>& gens, std::uint64_t cap) {
  if (gens.empty()) return 1;
  return BigInt(closure_elements_single(gens, cap).size());
}

}  // namespace gfbimap
