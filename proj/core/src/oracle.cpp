#include "gfbimap/oracle.hpp"

#include <unordered_map>

namespace gfbimap {

GLIterator::GLIterator(const Field& F, int n) : F_(&F), n_(n) {
  qn_ = 1;
  for (int i = 0; i < n; ++i) qn_ *= F.q();
  idx_.assign(n, 0);
  rows_.assign(n, Mat(F, 1, n));
}

Mat GLIterator::decode(std::uint64_t v) const {
  Mat row(*F_, 1, n_);
  for (int j = 0; j < n_; ++j) {
    row.at(0, j) = static_cast<Fe>(v % F_->q());
    v /= F_->q();
  }
  return row;
}

// Find, for `level`, the least index >= idx_[level] whose vector is
// independent of the rows above; returns false when none exists.
bool GLIterator::fill_level(int level) {
  IncrementalSpan span(*F_, n_);
  for (int i = 0; i < level; ++i) span.add(rows_[i]);
  for (std::uint64_t v = idx_[level]; v < qn_; ++v) {
    Mat row = decode(v);
    if (!span.contains(row)) {
      idx_[level] = v;
      rows_[level] = row;
      return true;
    }
  }
  return false;
}

bool GLIterator::next(Mat& out) {
  if (exhausted_) return false;
  if (n_ == 0) {
    if (started_) return false;
    started_ = true;
    out = Mat(*F_, 0, 0);
    return true;
  }
  if (!started_) {
    started_ = true;
    for (int l = 0; l < n_; ++l) {
      idx_[l] = 0;
      require(fill_level(l), "empty GL");
    }
  } else {
    int level = n_ - 1;
    while (level >= 0) {
      ++idx_[level];
      if (fill_level(level)) {
        for (int l = level + 1; l < n_; ++l) {
          idx_[l] = 0;
          require(fill_level(l), "refill failed");
        }
        break;
      }
      --level;
    }
    if (level < 0) {
      exhausted_ = true;
      return false;
    }
  }
  Mat M(*F_, n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) M.at(i, j) = rows_[i].at(0, j);
  out = std::move(M);
  return true;
}

bool ElementTable::closed_under_random_products(Rng& rng, int trials) const {
  if (!pairs.empty()) {
    std::unordered_map<std::string, int> keys;
    for (size_t i = 0; i < pairs.size(); ++i) keys[gp_key(pairs[i])] = 1;
    for (int t = 0; t < trials; ++t) {
      const GenPair& x = pairs[rng.below(pairs.size())];
      const GenPair& y = pairs[rng.below(pairs.size())];
      if (!keys.count(gp_key(gp_mul(x, y)))) return false;
    }
    return true;
  }
  if (!singles.empty()) {
    std::unordered_map<std::string, int> keys;
    for (size_t i = 0; i < singles.size(); ++i) keys[mat_key(singles[i])] = 1;
    for (int t = 0; t < trials; ++t) {
      const Mat& x = singles[rng.below(singles.size())];
      const Mat& y = singles[rng.below(singles.size())];
      if (!keys.count(mat_key(mat_mul(x, y)))) return false;
    }
  }
  return true;
}

namespace {

void check_pair_cap(const Field& F, int a, int b, const Caps& caps) {
  BigInt total = gl_order(BigInt(F.q()), a) * gl_order(BigInt(F.q()), b);
  if (total > BigInt(caps.filter))
    throw CapExceeded("brute scan of " + to_decimal(total) + " pairs");
}

void check_single_cap(const Field& F, int n, const Caps& caps) {
  BigInt total = gl_order(BigInt(F.q()), n);
  if (total > BigInt(caps.filter))
    throw CapExceeded("brute scan of " + to_decimal(total) + " elements");
}

}  // namespace

ElementTable brute_autotopisms(const Bimap& bm, const Caps& caps) {
  const Field& F = *bm.F;
  check_pair_cap(F, bm.a, bm.b, caps);
  Subspace gram = gram_span(bm);
  ElementTable out;
  GLIterator fit(F, bm.a);
  Mat Fm;
  while (fit.next(Fm)) {
    std::vector<Mat> fslices;
    for (const Mat& M : bm.slices) fslices.push_back(mat_mul(Fm, M));
    GLIterator git(F, bm.b);
    Mat Gm;
    while (git.next(Gm)) {
      Mat Gt = mat_transpose(Gm);
      Mat rows(F, bm.w, bm.a * bm.b);
      for (int l = 0; l < bm.w; ++l) {
        Mat img = mat_mul(fslices[l], Gt);
        for (int i = 0; i < bm.a * bm.b; ++i) rows.at(l, i) = img.a[i];
      }
      if (Subspace::from_rows(rows) == gram)
        out.pairs.push_back({Fm, Gm});
    }
  }
  return out;
}

ElementTable brute_pseudo_isometries(const Bimap& bm, const Caps& caps) {
  require(bm.a == bm.b, "pseudo-isometries need a = b");
  const Field& F = *bm.F;
  check_single_cap(F, bm.a, caps);
  Subspace gram = gram_span(bm);
  ElementTable out;
  GLIterator it(F, bm.a);
  Mat Fm;
  while (it.next(Fm)) {
    Mat Ft = mat_transpose(Fm);
    Mat rows(F, bm.w, bm.a * bm.b);
    for (int l = 0; l < bm.w; ++l) {
      Mat img = mat_mul(mat_mul(Fm, bm.slices[l]), Ft);
      for (int i = 0; i < bm.a * bm.b; ++i) rows.at(l, i) = img.a[i];
    }
    if (Subspace::from_rows(rows) == gram) out.singles.push_back(Fm);
  }
  return out;
}

ElementTable brute_isometries(const Bimap& bm, const Caps& caps) {
  require(bm.a == bm.b, "isometries need a = b");
  const Field& F = *bm.F;
  check_single_cap(F, bm.a, caps);
  ElementTable out;
  GLIterator it(F, bm.a);
  Mat Fm;
  while (it.next(Fm)) {
    Mat Ft = mat_transpose(Fm);
    bool ok = true;
    for (const Mat& M : bm.slices)
      if (!(mat_mul(mat_mul(Fm, M), Ft) == M)) {
        ok = false;
        break;
      }
    if (ok) out.singles.push_back(Fm);
  }
  return out;
}

ElementTable brute_normalizer(const AlgebraPair& A, const Caps& caps) {
  const Field& F = *A.F;
  check_pair_cap(F, A.a, A.b, caps);
  ElementTable out;
  GLIterator fit(F, A.a);
  Mat Fm;
  while (fit.next(Fm)) {
    Mat Finv = mat_inverse(Fm);
    std::vector<Mat> xconj;
    for (const auto& p : A.basis) xconj.push_back(mat_mul(mat_mul(Finv, p.X), Fm));
    GLIterator git(F, A.b);
    Mat Gm;
    while (git.next(Gm)) {
      Mat Gt = mat_transpose(Gm);
      Mat Gti = mat_inverse(Gt);
      bool ok = true;
      for (size_t i = 0; i < A.basis.size() && ok; ++i) {
        MatPair c{xconj[i], mat_mul(mat_mul(Gt, A.basis[i].Y), Gti)};
        ok = A.span.contains(pair_flatten(c));
      }
      if (ok) out.pairs.push_back({Fm, Gm});
    }
  }
  return out;
}

ElementTable brute_star_normalizer(const StarAlgebra& A, const Caps& caps) {
  const Field& F = *A.F;
  check_single_cap(F, A.n, caps);
  ElementTable out;
  GLIterator it(F, A.n);
  Mat g;
  while (it.next(g)) {
    if (star_normalizes(g, A)) out.singles.push_back(g);
  }
  return out;
}

ElementTable brute_quadstab(const Field& F, int a, int b, const Subspace& W,
                            const Caps& caps) {
  check_pair_cap(F, a, b, caps);
  require(W.ambient == a * b, "quadstab subspace ambient mismatch");
  ElementTable out;
  GLIterator xit(F, a);
  Mat x;
  while (xit.next(x)) {
    std::vector<Mat> xw;
    for (int i = 0; i < W.dim(); ++i)
      xw.push_back(mat_mul(x, mat_unflatten(F, mat_row(W.basis, i).a, a, b)));
    GLIterator yit(F, b);
    Mat y;
    while (yit.next(y)) {
      Mat yt = mat_transpose(y);
      Mat rows(F, W.dim(), a * b);
      for (int i = 0; i < W.dim(); ++i) {
        Mat img = mat_mul(xw[i], yt);
        for (int t = 0; t < a * b; ++t) rows.at(i, t) = img.a[t];
      }
      Subspace img = W.dim() ? Subspace::from_rows(rows)
                             : Subspace::zero(F, a * b);
      if (img == W) out.pairs.push_back({x, y});
    }
  }
  return out;
}

}  // namespace gfbimap
