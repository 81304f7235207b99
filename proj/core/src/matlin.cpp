#include "gfbimap/matlin.hpp"

#include <algorithm>

namespace gfbimap {

namespace {
void check_same_field(const Mat& A, const Mat& B) {
  require(A.F == B.F, "matrices over different fields");
}
}  // namespace

Mat mat_identity(const Field& F, int n) {
  Mat I(F, n, n);
  for (int i = 0; i < n; ++i) I.at(i, i) = F.one();
  return I;
}

Mat mat_zero(const Field& F, int r, int c) { return Mat(F, r, c); }

Mat mat_from_ints(const Field& F, int r, int c,
                  std::initializer_list<std::int64_t> entries) {
  require(static_cast<int>(entries.size()) == r * c, "entry count mismatch");
  Mat M(F, r, c);
  int idx = 0;
  for (auto e : entries) M.a[idx++] = F.from_int(e);
  return M;
}

Mat mat_add(const Mat& A, const Mat& B) {
  check_same_field(A, B);
  require(A.rows == B.rows && A.cols == B.cols, "shape mismatch in add");
  Mat C(*A.F, A.rows, A.cols);
  for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = A.F->add(A.a[i], B.a[i]);
  return C;
}

Mat mat_sub(const Mat& A, const Mat& B) {
  check_same_field(A, B);
  require(A.rows == B.rows && A.cols == B.cols, "shape mismatch in sub");
  Mat C(*A.F, A.rows, A.cols);
  for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = A.F->sub(A.a[i], B.a[i]);
  return C;
}

Mat mat_neg(const Mat& A) {
  Mat C(*A.F, A.rows, A.cols);
  for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = A.F->neg(A.a[i]);
  return C;
}

Mat mat_scale(const Mat& A, Fe s) {
  Mat C(*A.F, A.rows, A.cols);
  for (size_t i = 0; i < A.a.size(); ++i) C.a[i] = A.F->mul(A.a[i], s);
  return C;
}

Mat mat_mul(const Mat& A, const Mat& B) {
  check_same_field(A, B);
  require(A.cols == B.rows, "shape mismatch in mul");
  const Field& F = *A.F;
  Mat C(F, A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int t = 0; t < A.cols; ++t) {
      Fe x = A.at(i, t);
      if (x == 0) continue;
      for (int j = 0; j < B.cols; ++j)
        C.at(i, j) = F.add(C.at(i, j), F.mul(x, B.at(t, j)));
    }
  return C;
}

Mat mat_transpose(const Mat& A) {
  Mat C(*A.F, A.cols, A.rows);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) C.at(j, i) = A.at(i, j);
  return C;
}

Mat mat_pow(const Mat& A, std::uint64_t e) {
  require(A.is_square(), "pow of non-square matrix");
  Mat r = mat_identity(*A.F, A.rows);
  Mat base = A;
  while (e) {
    if (e & 1) r = mat_mul(r, base);
    base = mat_mul(base, base);
    e >>= 1;
  }
  return r;
}

Fe mat_trace(const Mat& A) {
  Fe t = 0;
  for (int i = 0; i < std::min(A.rows, A.cols); ++i) t = A.F->add(t, A.at(i, i));
  return t;
}

Mat mat_hstack(const Mat& A, const Mat& B) {
  check_same_field(A, B);
  require(A.rows == B.rows, "hstack row mismatch");
  Mat C(*A.F, A.rows, A.cols + B.cols);
  for (int i = 0; i < A.rows; ++i) {
    for (int j = 0; j < A.cols; ++j) C.at(i, j) = A.at(i, j);
    for (int j = 0; j < B.cols; ++j) C.at(i, A.cols + j) = B.at(i, j);
  }
  return C;
}

Mat mat_vstack(const Mat& A, const Mat& B) {
  check_same_field(A, B);
  require(A.cols == B.cols, "vstack col mismatch");
  Mat C(*A.F, A.rows + B.rows, A.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) C.at(i, j) = A.at(i, j);
  for (int i = 0; i < B.rows; ++i)
    for (int j = 0; j < B.cols; ++j) C.at(A.rows + i, j) = B.at(i, j);
  return C;
}

Mat mat_flatten(const Mat& A) {
  Mat v(*A.F, 1, A.rows * A.cols);
  v.a = A.a;
  return v;
}

Mat mat_unflatten(const Field& F, const std::vector<Fe>& v, int r, int c) {
  require(static_cast<int>(v.size()) == r * c, "unflatten size mismatch");
  Mat M(F, r, c);
  M.a = v;
  return M;
}

Mat mat_row(const Mat& A, int i) {
  Mat v(*A.F, 1, A.cols);
  for (int j = 0; j < A.cols; ++j) v.at(0, j) = A.at(i, j);
  return v;
}

bool mat_is_nilpotent(const Mat& A) {
  require(A.is_square(), "nilpotency of non-square matrix");
  Mat P = A;
  for (int i = 0; i < A.rows; ++i) {
    if (P.is_zero()) return true;
    P = mat_mul(P, A);
  }
  return P.is_zero();
}

RrefResult rref(const Mat& M) {
  const Field& F = *M.F;
  RrefResult out;
  out.R = M;
  Mat& R = out.R;
  int lead = 0;
  for (int col = 0; col < R.cols && lead < R.rows; ++col) {
    int piv = -1;
    for (int i = lead; i < R.rows; ++i)
      if (R.at(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != lead)
      for (int j = 0; j < R.cols; ++j) std::swap(R.at(piv, j), R.at(lead, j));
    Fe inv = F.inv(R.at(lead, col));
    for (int j = 0; j < R.cols; ++j) R.at(lead, j) = F.mul(R.at(lead, j), inv);
    for (int i = 0; i < R.rows; ++i) {
      if (i == lead) continue;
      Fe f = R.at(i, col);
      if (f == 0) continue;
      for (int j = 0; j < R.cols; ++j)
        R.at(i, j) = F.sub(R.at(i, j), F.mul(f, R.at(lead, j)));
    }
    out.pivots.push_back(col);
    ++lead;
  }
  out.rank = static_cast<int>(out.pivots.size());
  return out;
}

Mat mat_inverse(const Mat& A) {
  require(A.is_square(), "inverse of non-square matrix");
  auto r = rref(mat_hstack(A, mat_identity(*A.F, A.rows)));
  if (r.rank < A.rows ||
      (r.rank > 0 && r.pivots[r.rank - 1] >= A.cols))
    throw Singular("matrix not invertible");
  for (int i = 0; i < A.rows; ++i)
    if (r.pivots[i] != i) throw Singular("matrix not invertible");
  Mat inv(*A.F, A.rows, A.rows);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.rows; ++j) inv.at(i, j) = r.R.at(i, A.cols + j);
  return inv;
}

bool mat_is_invertible(const Mat& A) {
  if (!A.is_square()) return false;
  return rref(A).rank == A.rows;
}

std::optional<Mat> solve_left(const Mat& A, const Mat& B) {
  check_same_field(A, B);
  require(A.cols == B.cols, "solve_left shape mismatch");
  // x A = b  <=>  A^T x^T = b^T; eliminate on [A^T | B^T].
  Mat At = mat_transpose(A);
  Mat Bt = mat_transpose(B);
  auto r = rref(mat_hstack(At, Bt));
  // Consistency: no pivot may fall in the right block.
  for (int p : r.pivots)
    if (p >= At.cols) return std::nullopt;
  Mat X(*A.F, B.rows, A.rows);
  for (int i = 0; i < r.rank; ++i) {
    int var = r.pivots[i];
    for (int j = 0; j < B.rows; ++j) X.at(j, var) = r.R.at(i, At.cols + j);
  }
  return X;
}

// --- Subspace ------------------------------------------------------------

Subspace Subspace::zero(const Field& F, int ambient) {
  Subspace s;
  s.F = &F;
  s.ambient = ambient;
  s.basis = Mat(F, 0, ambient);
  return s;
}

Subspace Subspace::full(const Field& F, int ambient) {
  Subspace s;
  s.F = &F;
  s.ambient = ambient;
  s.basis = mat_identity(F, ambient);
  return s;
}

Subspace Subspace::from_rows(const Mat& gens) {
  auto r = rref(gens);
  Subspace s;
  s.F = gens.F;
  s.ambient = gens.cols;
  s.basis = Mat(*gens.F, r.rank, gens.cols);
  for (int i = 0; i < r.rank; ++i)
    for (int j = 0; j < gens.cols; ++j) s.basis.at(i, j) = r.R.at(i, j);
  return s;
}

Mat Subspace::reduce(const Mat& v) const {
  require(v.rows == 1 && v.cols == ambient, "reduce shape mismatch");
  Mat r = v;
  for (int i = 0; i < basis.rows; ++i) {
    // pivot of row i
    int p = -1;
    for (int j = 0; j < ambient; ++j)
      if (basis.at(i, j) != 0) {
        p = j;
        break;
      }
    Fe c = r.at(0, p);
    if (c == 0) continue;
    for (int j = 0; j < ambient; ++j)
      r.at(0, j) = F->sub(r.at(0, j), F->mul(c, basis.at(i, j)));
  }
  return r;
}

bool Subspace::contains(const Mat& v) const { return reduce(v).is_zero(); }

bool Subspace::contains(const Subspace& other) const {
  for (int i = 0; i < other.basis.rows; ++i)
    if (!contains(mat_row(other.basis, i))) return false;
  return true;
}

std::vector<int> Subspace::nonpivot_coords() const {
  std::vector<bool> used(ambient, false);
  for (int i = 0; i < basis.rows; ++i)
    for (int j = 0; j < ambient; ++j)
      if (basis.at(i, j) != 0) {
        used[j] = true;
        break;
      }
  std::vector<int> out;
  for (int j = 0; j < ambient; ++j)
    if (!used[j]) out.push_back(j);
  return out;
}

std::string Subspace::key() const {
  std::string s;
  s.reserve(basis.a.size() * 2 + 8);
  s.push_back(static_cast<char>(basis.rows & 0xff));
  s.push_back(static_cast<char>((basis.rows >> 8) & 0xff));
  for (Fe x : basis.a) {
    s.push_back(static_cast<char>(x & 0xff));
    s.push_back(static_cast<char>((x >> 8) & 0xff));
  }
  return s;
}

Subspace subspace_sum(const Subspace& A, const Subspace& B) {
  require(A.F == B.F && A.ambient == B.ambient, "subspace sum mismatch");
  return Subspace::from_rows(mat_vstack(A.basis, B.basis));
}

Subspace subspace_intersect(const Subspace& A, const Subspace& B) {
  require(A.F == B.F && A.ambient == B.ambient, "subspace intersect mismatch");
  const Field& F = *A.F;
  int n = A.ambient;
  // Zassenhaus: echelonize [A|A; B|0]; rows with zero left half carry the
  // intersection in their right half.
  Mat top = mat_hstack(A.basis, A.basis);
  Mat bot = mat_hstack(B.basis, mat_zero(F, B.basis.rows, n));
  auto r = rref(mat_vstack(top, bot));
  Mat rows(F, 0, n);
  for (int i = 0; i < r.R.rows; ++i) {
    bool left_zero = true;
    for (int j = 0; j < n; ++j)
      if (r.R.at(i, j) != 0) {
        left_zero = false;
        break;
      }
    if (!left_zero) continue;
    Mat right(F, 1, n);
    bool nonzero = false;
    for (int j = 0; j < n; ++j) {
      right.at(0, j) = r.R.at(i, n + j);
      nonzero |= right.at(0, j) != 0;
    }
    if (nonzero) rows = mat_vstack(rows, right);
  }
  return Subspace::from_rows(rows.rows ? rows : mat_zero(F, 0, n));
}

Subspace nullspace(const Mat& M) {
  const Field& F = *M.F;
  // left nullspace of M == right kernel of M^T
  Mat N = mat_transpose(M);  // N y = 0, y in k^rows(M)
  auto r = rref(N);
  int n = N.cols;
  std::vector<bool> is_pivot(n, false);
  std::vector<int> pivot_of_col(n, -1);
  for (int i = 0; i < r.rank; ++i) {
    is_pivot[r.pivots[i]] = true;
    pivot_of_col[r.pivots[i]] = i;
  }
  Mat rows(F, 0, n);
  for (int f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Mat y(F, 1, n);
    y.at(0, f) = F.one();
    for (int c = 0; c < n; ++c)
      if (is_pivot[c]) y.at(0, c) = F.neg(r.R.at(pivot_of_col[c], f));
    rows = mat_vstack(rows, y);
  }
  return Subspace::from_rows(rows.rows ? rows : mat_zero(F, 0, n));
}

Mat kronecker(const Mat& A, const Mat& B) {
  check_same_field(A, B);
  const Field& F = *A.F;
  Mat C(F, A.rows * B.rows, A.cols * B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < B.rows; ++j)
      for (int k = 0; k < A.cols; ++k)
        for (int l = 0; l < B.cols; ++l)
          C.at(i * B.rows + j, k * B.cols + l) = F.mul(A.at(i, k), B.at(j, l));
  return C;
}

// --- IncrementalSpan ------------------------------------------------------

bool IncrementalSpan::add(Mat v) {
  require(v.rows == 1 && v.cols == ambient_, "span add shape mismatch");
  v = reduce(std::move(v));
  int p = -1;
  for (int j = 0; j < ambient_; ++j)
    if (v.at(0, j) != 0) {
      p = j;
      break;
    }
  if (p < 0) return false;
  Fe inv = F_->inv(v.at(0, p));
  for (int j = 0; j < ambient_; ++j) v.at(0, j) = F_->mul(v.at(0, j), inv);
  pivot_row_[p] = static_cast<int>(rows_.size());
  rows_.push_back(std::move(v));
  return true;
}

Mat IncrementalSpan::reduce(Mat v) const {
  for (int j = 0; j < ambient_; ++j) {
    Fe c = v.at(0, j);
    if (c == 0 || pivot_row_[j] < 0) continue;
    const Mat& row = rows_[pivot_row_[j]];
    for (int t = j; t < ambient_; ++t)
      v.at(0, t) = F_->sub(v.at(0, t), F_->mul(c, row.at(0, t)));
  }
  return v;
}

bool IncrementalSpan::contains(const Mat& v) const {
  Mat r = reduce(v);
  return r.is_zero();
}

Subspace IncrementalSpan::to_subspace() const {
  Mat rows(*F_, 0, ambient_);
  for (const Mat& r : rows_) rows = mat_vstack(rows, r);
  if (rows_.empty()) return Subspace::zero(*F_, ambient_);
  return Subspace::from_rows(rows);
}

Subspace spin(const Subspace& vectors, const std::vector<Mat>& actors) {
  const Field& F = *vectors.F;
  int n = vectors.ambient;
  for (const Mat& T : actors)
    require(T.rows == n && T.cols == n, "spin actor shape mismatch");
  IncrementalSpan span(F, n);
  std::vector<Mat> queue;
  for (int i = 0; i < vectors.basis.rows; ++i) {
    Mat v = mat_row(vectors.basis, i);
    if (span.add(v)) queue.push_back(span.rows().back());
  }
  for (size_t head = 0; head < queue.size(); ++head) {
    Mat v = queue[head];
    for (const Mat& T : actors) {
      Mat w = mat_mul(v, T);
      if (span.add(w)) queue.push_back(span.rows().back());
    }
  }
  return span.to_subspace();
}

}  // namespace gfbimap
